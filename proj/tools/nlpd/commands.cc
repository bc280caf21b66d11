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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "manifest.h"
#include "nlpd/fit.h"
#include "nlpd/image.h"
#include "nlpd/image_io.h"
#include "nlpd/nlp.h"
#include "nlpd/optimize.h"
#include "nlpd/params_io.h"
#include "nlpd/pyramid.h"
#include "nlpd/pyramid_dump.h"

namespace nlpd::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

NlpParams ResolveParams(const CommonOptions& opt) {
  if (!opt.params_path.empty()) return LoadParams(opt.params_path);
  if (const char* env = std::getenv("NLPD_PARAMS"); env != nullptr && *env) {
    return LoadParams(env);
  }
  return DefaultParams();
}

StagePolicy PolicyOf(const CommonOptions& opt) {
  return opt.auto_clamp ? StagePolicy::kAutoClamp : StagePolicy::kStrict;
}

Json ReportJson(const Image& a, const Image& b, const NlpParams& params,
                StagePolicy policy) {
  RequireSameShape(a, b, "dist");
  const DistanceReport r = Nlpd(a, b, params, policy);
  if (!std::isfinite(r.total)) {
    throw Error(ErrorCode::kNonFinite, "distance is not finite");
  }
  Json j;
  j["total"] = r.total;
  j["per_stage"] = r.per_stage;
  j["per_channel"] = r.per_channel;
  j["baselines"] = {{"l1", BaselineDistance(a, b, BaselineKind::kL1)},
                    {"l2", BaselineDistance(a, b, BaselineKind::kL2)},
                    {"rmse", BaselineDistance(a, b, BaselineKind::kRmse)}};
  j["effective_n"] = r.effective_n;
  j["width"] = a.width();
  j["height"] = a.height();
  j["channels"] = a.channels();
  return j;
}

std::string ErrorReason(const Error& e) {
  return std::string(ReasonFor(e.code())) + " " + e.what();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string Number(double v) { return Json(v).dump(); }

struct BatchRow {
  std::string id;
  Json report;  // null on failure
  std::string error;
};

std::string FormatCsvRow(const BatchRow& row, int stages) {
  std::string line = CsvField(row.id) + ",";
  const int trailing = stages + 7;  // s1..sN, l1, l2, rmse, n, w, h, c
  if (row.report.is_null()) {
    line += CsvField(row.error);
    line += std::string(trailing, ',');
    return line;
  }
  const Json& r = row.report;
  line += Number(r["total"].get<double>());
  const auto& per_stage = r["per_stage"];
  for (int k = 0; k < stages; ++k) {
    line += ",";
    if (k < static_cast<int>(per_stage.size())) line += Number(per_stage[k].get<double>());
  }
  for (const char* key : {"l1", "l2", "rmse"}) {
    line += "," + Number(r["baselines"][key].get<double>());
  }
  for (const char* key : {"effective_n", "width", "height", "channels"}) {
    line += "," + std::to_string(r[key].get<int>());
  }
  return line;
}

bool HasImageExtension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kCorruptFile:
    case ErrorCode::kIo:
    case ErrorCode::kInvalidImage:
    case ErrorCode::kEmptyCorpus:
      return kExitIo;
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kDimensionMismatch:
      return kExitShape;
    case ErrorCode::kParams:
      return kExitParams;
    case ErrorCode::kTooManyStages:
    case ErrorCode::kKernelTooLarge:
      return kExitStages;
    case ErrorCode::kNonFinite:
      return kExitNonFinite;
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
  }
  return kExitUsage;
}

const char* ReasonFor(ErrorCode code) {
  switch (ExitCodeFor(code)) {
    case kExitIo:
      return "ERR_IO";
    case kExitShape:
      return "ERR_SHAPE";
    case kExitParams:
      return "ERR_PARAMS";
    case kExitStages:
      return "ERR_STAGES";
    case kExitNonFinite:
      return "ERR_NONFINITE";
    default:
      return "ERR_USAGE";
  }
}

int RunDist(const DistOptions& opt) {
  const NlpParams params = ResolveParams(opt.common);
  const Image a = LoadImage(opt.a);
  const Image b = LoadImage(opt.b);
  std::cout << ReportJson(a, b, params, PolicyOf(opt.common)).dump(2) << "\n";
  return kExitOk;
}

int RunBatch(const BatchOptions& opt) {
  if (opt.format != "json" && opt.format != "csv") {
    throw Error(ErrorCode::kInvalidArgument, "--format must be json or csv");
  }
  if (opt.jobs < 1) throw Error(ErrorCode::kInvalidArgument, "--jobs must be >= 1");
  const NlpParams params = ResolveParams(opt.common);
  const std::vector<ManifestEntry> entries = ReadManifest(opt.manifest);
  const StagePolicy policy = PolicyOf(opt.common);

  std::vector<BatchRow> rows(entries.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < entries.size(); i = next++) {
      BatchRow& row = rows[i];
      row.id = entries[i].id;
      try {
        row.report = ReportJson(LoadImage(entries[i].path_a),
                                LoadImage(entries[i].path_b), params, policy);
      } catch (const Error& e) {
        row.error = ErrorReason(e);
      } catch (const std::exception& e) {
        row.error = std::string("ERR_IO ") + e.what();
      }
    }
  };
  const int workers =
      std::min<int>(opt.jobs, static_cast<int>(entries.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  bool failed = false;
  if (opt.format == "csv") {
    std::cout << "id,total";
    for (int k = 1; k <= params.stages; ++k) std::cout << ",s" << k;
    std::cout << ",l1,l2,rmse,effective_n,width,height,channels\n";
  }
  for (const BatchRow& row : rows) {
    failed |= row.report.is_null();
    if (opt.format == "csv") {
      std::cout << FormatCsvRow(row, params.stages) << "\n";
      continue;
    }
    Json j;
    j["id"] = row.id;
    if (row.report.is_null()) {
      j["status"] = "error";
      j["error"] = row.error;
    } else {
      j["status"] = "ok";
      for (const auto& [key, value] : row.report.items()) j[key] = value;
    }
    std::cout << j.dump() << "\n";
  }
  return failed ? kExitPartial : kExitOk;
}

int RunFit(const FitOptions& opt) {
  const fs::path dir = opt.corpus_dir;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kFileNotFound, "corpus directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && HasImageExtension(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Image> corpus;
  for (const fs::path& f : files) corpus.push_back(LoadImage(f));

  FitConfig cfg;
  cfg.stages = opt.stages;
  cfg.neighborhood = opt.neighborhood;
  cfg.ridge = opt.ridge;
  FitResult fit;
  try {
    fit = FitNormalization(corpus, cfg);
  } catch (const Error& e) {
    // Name the offending file rather than its index.
    if (e.code() == ErrorCode::kTooManyStages) {
      for (size_t i = 0; i < corpus.size(); ++i) {
        if (cfg.stages > MaxStages(corpus[i].width(), corpus[i].height())) {
          throw Error(ErrorCode::kTooManyStages,
                      files[i].string() + " cannot hold " +
                          std::to_string(cfg.stages) + " stages");
        }
      }
    }
    throw;
  }
  if (opt.sigma) {
    for (double& s : fit.params.sigmas) s = *opt.sigma;
    fit.params.Validate();
  }
  SaveParams(fit.params, opt.out);

  Json report;
  report["images"] = corpus.size();
  report["neighborhood"] = cfg.neighborhood;
  report["ridge"] = cfg.ridge;
  Json stages = Json::array();
  for (size_t k = 0; k < fit.stages.size(); ++k) {
    const StageFitStats& s = fit.stages[k];
    stages.push_back({{"stage", k + 1},
                      {"samples", s.samples},
                      {"mse_before", s.mse_before},
                      {"mse_after", s.mse_after},
                      {"fitted_sigma", s.fitted_sigma},
                      {"sigma", fit.params.sigmas[k]}});
  }
  report["stages"] = stages;
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int RunOptimize(const OptimizeOptions& opt) {
  NlpParams params = ResolveParams(opt.common);
  const Image ref = LoadImage(opt.ref);
  params = params.Truncated(ResolveStages(ref.width(), ref.height(), params.stages,
                                          PolicyOf(opt.common)));
  Image init = FlatImage(ref.width(), ref.height(), ref.channels(), 0.5);
  if (opt.init == "noise") {
    init = UniformNoiseImage(ref.width(), ref.height(), ref.channels(), opt.seed);
  } else if (opt.init == "file") {
    if (opt.init_path.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--init file requires --init-path");
    }
    init = LoadImage(opt.init_path);
    RequireSameShape(ref, init, "init");
  } else if (opt.init != "flat") {
    throw Error(ErrorCode::kInvalidArgument, "--init must be noise, flat or file");
  }

  const OptimizeTrace trace = OptimizeImage(ref, init, opt.steps, opt.lr, params);
  SaveImage(trace.final, opt.out, 16);

  const double initial = trace.iterations.front().objective;
  const double final_value = trace.iterations.back().objective;
  if (!opt.trace_out.empty()) {
    Json t;
    t["generator"] = std::string(kNoiseGenerator);
    t["seed"] = opt.seed;
    t["init"] = opt.init;
    t["steps"] = opt.steps;
    t["lr"] = opt.lr;
    t["stages"] = params.stages;
    Json iterations = Json::array();
    for (const OptimizeStep& s : trace.iterations) {
      iterations.push_back(
          {{"step", s.step}, {"objective", s.objective}, {"step_size", s.step_size}});
    }
    t["iterations"] = iterations;
    WriteText(opt.trace_out, t.dump(2) + "\n");
  }
  Json summary;
  summary["initial_objective"] = initial;
  summary["final_objective"] = final_value;
  summary["ratio"] = initial > 0.0 ? final_value / initial : 0.0;
  summary["steps"] = opt.steps;
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int RunPyramid(const PyramidOptions& opt) {
  const NlpParams params = ResolveParams(opt.common);
  const Image image = LoadImage(opt.image);
  const int requested = opt.stages.value_or(params.stages);
  if (requested < 1) throw Error(ErrorCode::kInvalidArgument, "--stages must be >= 1");
  const int stages = ResolveStages(image.width(), image.height(), requested,
                                   PolicyOf(opt.common));
  if (opt.normalized && stages > params.stages) {
    throw Error(ErrorCode::kTooManyStages,
                "params provide only " + std::to_string(params.stages) + " stages");
  }

  std::vector<std::vector<Plane>> bands;  // [channel][stage]
  if (opt.normalized) {
    bands = NlpTransform(image, params.Truncated(stages)).subbands;
  } else {
    for (const Plane& channel : SplitChannels(image)) {
      bands.push_back(BuildPyramid(channel, params.lowpass, stages).bands);
    }
  }

  const fs::path out_dir = opt.out_dir;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string());
  Json listing = Json::array();
  for (size_t c = 0; c < bands.size(); ++c) {
    for (int k = 0; k < stages; ++k) {
      const std::string stem = BandDumpStem(k + 1, static_cast<int>(c));
      const BandDumpInfo info =
          DumpBand(bands[c][k], k + 1, static_cast<int>(c), out_dir / stem);
      listing.push_back({{"stem", stem},
                         {"stage", info.stage},
                         {"channel", info.channel},
                         {"width", info.width},
                         {"height", info.height},
                         {"min", info.min},
                         {"max", info.max}});
    }
  }
  Json report;
  report["kind"] = opt.normalized ? "normalized" : "laplacian";
  report["stages"] = stages;
  report["bands"] = listing;
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace nlpd::cli
