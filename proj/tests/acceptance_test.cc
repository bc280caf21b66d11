// Copyright 2026 The NLPD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fd_check.h"
#include "nlpd/fit.h"
#include "nlpd/image_io.h"
#include "nlpd/nlp.h"
#include "nlpd/optimize.h"
#include "nlpd/params_io.h"
#include "nlpd/pyramid.h"
#include "oracle/reference.h"
#include "test_util.h"

namespace nlpd {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult RunCli(const std::vector<std::string>& args, const fs::path& scratch) {
  auto quote = [](const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
  };
  std::string cmd = "env -u NLPD_PARAMS " + quote(NLPD_CLI_PATH);
  for (const std::string& a : args) cmd += " " + quote(a);
  cmd += " >" + quote((scratch / "out.txt").string()) + " 2>" +
         quote((scratch / "err.txt").string());
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ReadFile(scratch / "out.txt"),
          ReadFile(scratch / "err.txt")};
}

std::vector<fs::path> CorpusFiles() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(NLPD_CORPUS_DIR)) {
    if (e.path().extension() == ".png") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

Outcome PerfectReconstruction() {
  const auto start = std::chrono::steady_clock::now();
  const std::array<std::array<int, 2>, 5> sizes = {
      {{1, 1}, {5, 7}, {16, 16}, {31, 33}, {64, 64}}};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto [w, h] = sizes[i % 5];
    const int stages = std::min(1 + (i / 5) % 6, MaxStages(w, h));
    const Image im = testing::RandomImage(w, h, i % 2 ? 3 : 1, 1000 + i);
    for (const Plane& p : SplitChannels(im)) {
      const Plane rec =
          Reconstruct(BuildPyramid(p, Kernel2D::Binomial5(), stages), Kernel2D::Binomial5());
      worst = std::max(worst, testing::MaxAbsDiff(rec, p));
    }
  }
  const double secs = Seconds(start);
  return {worst <= 1e-12 && secs < 10.0,
          "max error " + Fmt("%.3g", worst) + ", " + Fmt("%.2f", secs) + " s"};
}

Outcome MetricAxioms() {
  std::mt19937_64 gen(7);
  int violations = 0;
  double worst_sym = 0.0, worst_mean = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int w = 32 + static_cast<int>(gen() % 17);
    const int h = 32 + static_cast<int>(gen() % 17);
    const int c = gen() % 2 ? 3 : 1;
    const Image a = testing::RandomImage(w, h, c, 2 * i);
    const Image b = testing::RandomImage(w, h, c, 2 * i + 1);
    const DistanceReport ab = Nlpd(a, b, DefaultParams());
    const DistanceReport ba = Nlpd(b, a, DefaultParams());
    double mean = 0.0;
    for (double d : ab.per_stage) mean += d;
    mean /= static_cast<double>(ab.per_stage.size());
    worst_sym = std::max(worst_sym, std::abs(ab.total - ba.total));
    worst_mean = std::max(worst_mean, std::abs(ab.total - mean));
    if (Nlpd(a, a, DefaultParams()).total != 0.0 || ab.total < 0.0) ++violations;
  }
  return {violations == 0 && worst_sym <= 1e-15 && worst_mean <= 1e-15,
          "identity/sign violations " + std::to_string(violations) + ", max |d(a,b)-d(b,a)| " +
              Fmt("%.3g", worst_sym) + ", max |total-mean| " + Fmt("%.3g", worst_mean)};
}

Outcome OracleEquivalence() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int size = i < 10 ? 8 : 16;
    const int c = i % 2 ? 3 : 1;
    const Image a = testing::RandomImage(size, size, c, 300 + i);
    const Image b = testing::RandomImage(size, size, c, 400 + i);
    const NlpParams params =
        i % 3 == 0 ? DefaultParams().Truncated(3) : testing::RandomParams(3, 500 + i);
    const double lib = Nlpd(a, b, params).total;
    const double ref = oracle::Nlpd(testing::ToGrids(a), testing::ToGrids(b),
                                    testing::ToOracleParams(params), nullptr);
    worst = std::max(worst, std::abs(lib - ref));
  }
  return {worst <= 1e-12, "max |library - reference| " + Fmt("%.3g", worst)};
}

Outcome GradientCheck() {
  const auto start = std::chrono::steady_clock::now();
  int failures = 0, checked = 0, masked = 0;
  double worst_rel = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int c = i < 5 ? 1 : 3;
    const Image a = testing::RandomImage(16, 16, c, 600 + i);
    const Image ref = testing::RandomImage(16, 16, c, 700 + i);
    const testing::FdStats s =
        testing::CheckAgainstFiniteDifferences(a, ref, DefaultParams().Truncated(3));
    failures += s.failures;
    checked += s.checked;
    masked += s.masked;
    worst_rel = std::max(worst_rel, s.worst_rel);
  }
  const double secs = Seconds(start);
  return {failures == 0 && secs < 60.0,
          std::to_string(checked) + " partials checked, " + std::to_string(masked) +
              " kink-masked, " + std::to_string(failures) + " over tolerance, worst rel " +
              Fmt("%.2g", worst_rel) + ", " + Fmt("%.2f", secs) + " s"};
}

double DescentRatio(uint64_t ref_seed, bool* monotone) {
  const Image ref = UniformNoiseImage(32, 32, 1, ref_seed);
  const OptimizeTrace t = OptimizeImage(ref, FlatImage(32, 32, 1, 0.5), 500,
                                        kDefaultStepSize, DefaultParams());
  if (monotone != nullptr) {
    *monotone = true;
    for (size_t i = 1; i < t.iterations.size(); ++i) {
      *monotone &= t.iterations[i].objective <= t.iterations[i - 1].objective;
    }
  }
  return t.iterations.back().objective / t.iterations.front().objective;
}

Outcome OptimizationDescent() {
  bool monotone = false;
  const double ratio = DescentRatio(0, &monotone);
  // The fixture is reference seed 0; other seeds are reported for context.
  int others = 0;
  for (uint64_t seed = 1; seed <= 9; ++seed) others += DescentRatio(seed, nullptr) <= 0.1;
  return {ratio <= 0.1 && monotone,
          "final/initial " + Fmt("%.4f", ratio) + (monotone ? ", nonincreasing" : ", INCREASED") +
              ", step size " + Fmt("%g", kDefaultStepSize) + "; seeds 1-9 within 10%: " +
              std::to_string(others) + "/9"};
}

Outcome FilterFitting(const fs::path& scratch) {
  const std::vector<fs::path> files = CorpusFiles();
  if (files.size() != 15) return {false, "expected 15 corpus images"};
  std::vector<Image> train, held_out;
  for (size_t i = 0; i < files.size(); ++i) {
    (i < 10 ? train : held_out).push_back(LoadImage(files[i]));
  }
  const FitResult fit = FitNormalization(train, FitConfig{});
  std::string detail = "held-out MSE fitted/uniform per stage:";
  bool pass = true;
  for (int k = 1; k <= fit.params.stages; ++k) {
    NlpParams uniform = fit.params;
    uniform.norm_filters[k - 1] = UniformFilterLike(fit.params.norm_filters[k - 1]);
    const double fitted_mse = AmplitudePredictionMse(held_out, fit.params, k);
    const double uniform_mse = AmplitudePredictionMse(held_out, uniform, k);
    pass &= fitted_mse < uniform_mse;
    detail += " " + Fmt("%.3f", fitted_mse / uniform_mse);
  }

  const fs::path p1 = scratch / "fit1.json";
  const fs::path p2 = scratch / "fit2.json";
  const std::string corpus = NLPD_CORPUS_DIR;
  const int c1 = RunCli({"fit", corpus, "--sigma", "0.17", "--out", p1.string()}, scratch).code;
  const int c2 = RunCli({"fit", corpus, "--sigma", "0.17", "--out", p2.string()}, scratch).code;
  const bool identical = c1 == 0 && c2 == 0 && ReadFile(p1) == ReadFile(p2);
  const bool bundled = identical && ReadFile(p1) == ReadFile(NLPD_DEFAULT_PARAMS_PATH);
  detail += identical ? "; reruns byte-identical" : "; reruns DIFFER";
  detail += bundled ? ", match bundled defaults" : ", bundled defaults DIFFER";
  return {pass && identical && bundled, detail};
}

Outcome DefaultConfig() {
  const NlpParams& p = DefaultParams();
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Image a = testing::RandomImage(40, 34, 3, 800 + i);
    const Image b = testing::RandomImage(40, 34, 3, 900 + i);
    const double base = Nlpd(a, b, p).total;
    for (const auto& order : {std::array{1, 2, 0}, std::array{2, 1, 0}}) {
      auto permute = [&](const Image& im) {
        std::vector<double> data;
        for (int c : order) data.insert(data.end(), im.channel(c).begin(), im.channel(c).end());
        return Image(im.width(), im.height(), 3, std::move(data));
      };
      worst = std::max(worst, std::abs(Nlpd(permute(a), permute(b), p).total - base));
    }
  }
  return {p.stages == 6 && worst <= 1e-15,
          "stages " + std::to_string(p.stages) + ", max permutation change " +
              Fmt("%.3g", worst)};
}

Outcome CliDeterminism(const fs::path& scratch) {
  std::ofstream manifest(scratch / "m.csv");
  manifest << "path_a,path_b,id\n";
  for (int i = 0; i < 20; ++i) {
    const int w = 32 + 3 * i;
    const int c = i % 3 == 0 ? 3 : 1;
    SaveImage(UniformNoiseImage(w, 40, c, i), scratch / ("a" + std::to_string(i) + ".png"));
    SaveImage(UniformNoiseImage(w, 40, c, 50 + i), scratch / ("b" + std::to_string(i) + ".png"));
    manifest << "a" << i << ".png,b" << i << ".png,p" << i << "\n";
  }
  manifest.close();
  bool identical = true;
  for (const char* format : {"json", "csv"}) {
    const CliResult one = RunCli(
        {"batch", (scratch / "m.csv").string(), "--jobs", "1", "--format", format}, scratch);
    const CliResult eight = RunCli(
        {"batch", (scratch / "m.csv").string(), "--jobs", "8", "--format", format}, scratch);
    identical &= one.code == 0 && eight.code == 0 && one.out == eight.out && !one.out.empty();
  }

  const std::string a = (scratch / "a0.png").string();
  const std::string b = (scratch / "b0.png").string();
  const std::string other = (scratch / "a1.png").string();
  const std::string gone = (scratch / "gone.png").string();
  SaveImage(UniformNoiseImage(8, 8, 1, 1), scratch / "small.png");
  const std::string small = (scratch / "small.png").string();
  std::ofstream(scratch / "bad.json") << "{}";
  NlpParams tiny = DefaultParams();
  for (double& s : tiny.sigmas) s = 1e-308;
  for (Kernel2D& f : tiny.norm_filters) f = Kernel2D(5, 5, std::vector<double>(25, 0.0));
  SaveParams(tiny, scratch / "tiny.json");
  std::ofstream(scratch / "partial.csv") << "path_a,path_b,id\na0.png,b0.png,x\n"
                                         << "a0.png,gone.png,y\n";
  fs::create_directories(scratch / "empty");

  struct Case {
    std::vector<std::string> args;
    int code;
    const char* prefix;
  };
  const std::vector<Case> cases = {
      {{"dist", a, gone}, 2, "ERR_IO"},
      {{"dist", a, other}, 3, "ERR_SHAPE"},
      {{"dist", a, b, "--params", (scratch / "bad.json").string()}, 4, "ERR_PARAMS"},
      {{"dist", small, small}, 5, "ERR_STAGES"},
      {{"dist", a, b, "--params", (scratch / "tiny.json").string()}, 6, "ERR_NONFINITE"},
      {{"dist", a}, 64, "ERR_USAGE"},
      {{"batch", (scratch / "partial.csv").string()}, 1, ""},
      {{"batch", gone}, 2, "ERR_IO"},
      {{"fit", (scratch / "empty").string(), "--out", (scratch / "f.json").string()}, 2,
       "ERR_IO"},
      {{"fit", NLPD_CORPUS_DIR, "--stages", "10", "--out", (scratch / "f.json").string()}, 5,
       "ERR_STAGES"},
      {{"optimize", gone, "--out", (scratch / "o.png").string()}, 2, "ERR_IO"},
      {{"optimize", a, "--init", "file", "--init-path", other, "--out",
        (scratch / "o.png").string()},
       3, "ERR_SHAPE"},
      {{"optimize", a, "--params", (scratch / "tiny.json").string(), "--steps", "1", "--out",
        (scratch / "o.png").string()},
       6, "ERR_NONFINITE"},
      {{"pyramid", small, "--stages", "5", "--out-dir", (scratch / "d").string()}, 5,
       "ERR_STAGES"},
      {{"pyramid", gone, "--out-dir", (scratch / "d").string()}, 2, "ERR_IO"},
  };
  int wrong = 0;
  std::string first_wrong;
  for (const Case& c : cases) {
    const CliResult r = RunCli(c.args, scratch);
    const bool ok = r.code == c.code && r.err.rfind(c.prefix, 0) == 0;
    if (!ok && first_wrong.empty()) {
      first_wrong = "; first mismatch: " + c.args[0] + " exited " + std::to_string(r.code) +
                    " (expected " + std::to_string(c.code) + ")";
    }
    wrong += !ok;
  }
  return {identical && wrong == 0,
          std::string(identical ? "--jobs 1 and 8 identical" : "--jobs outputs DIFFER") +
              ", error paths " + std::to_string(cases.size() - wrong) + "/" +
              std::to_string(cases.size()) + " with documented codes" + first_wrong};
}

Outcome NoiseMonotonicity() {
  const std::vector<fs::path> files = CorpusFiles();
  const std::vector<double> scales = {0.02, 0.05, 0.1, 0.2};
  int monotone_images = 0;
  std::string medians;
  for (int b = 0; b < 5; ++b) {
    // 64x64 crop of a corpus image.
    const Image full = LoadImage(files[b]);
    std::vector<double> crop;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) crop.push_back(full.at(96 + x, 96 + y, 0));
    }
    const Image base(64, 64, 1, crop);
    std::mt19937_64 gen(1000 + b);
    std::normal_distribution<double> normal;
    std::vector<std::vector<double>> dists(scales.size());
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> v(crop.size());
      double sq = 0.0;
      for (double& e : v) {
        e = normal(gen);
        sq += e * e;
      }
      const double unit = std::sqrt(static_cast<double>(v.size()) / sq);
      for (size_t s = 0; s < scales.size(); ++s) {
        std::vector<Plane> planes = SplitChannels(base);
        for (size_t i = 0; i < v.size(); ++i) planes[0][i] += scales[s] * unit * v[i];
        dists[s].push_back(Nlpd(base, ClampToImage(planes), DefaultParams()).total);
      }
    }
    bool monotone = true;
    double previous = 0.0;
    for (auto& d : dists) {
      std::sort(d.begin(), d.end());
      const double median = 0.5 * (d[24] + d[25]);
      monotone &= median >= previous;
      previous = median;
    }
    monotone_images += monotone;
    medians += " " + Fmt("%.3f", dists.front()[25]) + ".." + Fmt("%.3f", dists.back()[25]);
  }
  return {monotone_images == 5,
          std::to_string(monotone_images) + "/5 images nondecreasing; median ranges" + medians};
}

}  // namespace
}  // namespace nlpd

int main() {
  namespace fs = std::filesystem;
  const fs::path scratch =
      fs::temp_directory_path() / ("nlpd_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);

  using nlpd::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"perfect reconstruction", nlpd::PerfectReconstruction},
      {"metric axioms", nlpd::MetricAxioms},
      {"oracle equivalence", nlpd::OracleEquivalence},
      {"gradient check", nlpd::GradientCheck},
      {"optimization descent", nlpd::OptimizationDescent},
      {"filter fitting", [&] { return nlpd::FilterFitting(scratch); }},
      {"default config fidelity", nlpd::DefaultConfig},
      {"CLI determinism and exit codes", [&] { return nlpd::CliDeterminism(scratch); }},
      {"noise monotonicity", nlpd::NoiseMonotonicity},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(scratch);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
