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

#include "nlpd/fit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlpd/error.h"
#include "nlpd/nnls.h"
#include "nlpd/pyramid.h"

namespace nlpd {
namespace {

// Sufficient statistics of the amplitude regression for one stage of one
// image. Feature 0 is the intercept; features 1.. are neighbor magnitudes
// in row-major tap order with the center skipped.
struct StageMoments {
  std::vector<double> gram;
  std::vector<double> rhs;
  double target_sq = 0.0;
  double target_sum = 0.0;
  int64_t count = 0;

  explicit StageMoments(int n) : gram(n * n, 0.0), rhs(n, 0.0) {}

  void Add(const StageMoments& o) {
    for (size_t i = 0; i < gram.size(); ++i) gram[i] += o.gram[i];
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += o.rhs[i];
    target_sq += o.target_sq;
    target_sum += o.target_sum;
    count += o.count;
  }

  bool operator<(const StageMoments& o) const {
    if (gram != o.gram) return gram < o.gram;
    if (rhs != o.rhs) return rhs < o.rhs;
    if (target_sq != o.target_sq) return target_sq < o.target_sq;
    if (target_sum != o.target_sum) return target_sum < o.target_sum;
    return count < o.count;
  }
};

struct TapOffset {
  int dx;
  int dy;
};

// Source offsets matching Convolve(): tap (r, c) reads the sample at
// (x - (c - radius), y - (r - radius)).
std::vector<TapOffset> NeighborOffsets(int size) {
  const int radius = size / 2;
  std::vector<TapOffset> offsets;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      if (r == radius && c == radius) continue;
      offsets.push_back({-(c - radius), -(r - radius)});
    }
  }
  return offsets;
}

Plane Magnitude(const Plane& band) {
  Plane out = band;
  for (double& v : out.data()) v = std::abs(v);
  return out;
}

void Accumulate(const Plane& magnitude, const std::vector<TapOffset>& offsets,
                int64_t stride, int64_t& linear, StageMoments& m) {
  const int n = static_cast<int>(offsets.size()) + 1;
  const int w = magnitude.width();
  const int h = magnitude.height();
  std::vector<double> f(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x, ++linear) {
      if (linear % stride != 0) continue;
      f[0] = 1.0;
      for (int j = 1; j < n; ++j) {
        const TapOffset& o = offsets[j - 1];
        f[j] = magnitude.at(ReflectIndex(x + o.dx, w), ReflectIndex(y + o.dy, h));
      }
      const double t = magnitude.at(x, y);
      for (int i = 0; i < n; ++i) {
        double* row = &m.gram[i * n];
        const double fi = f[i];
        for (int j = 0; j < n; ++j) row[j] += fi * f[j];
        m.rhs[i] += fi * t;
      }
      m.target_sq += t * t;
      m.target_sum += t;
      ++m.count;
    }
  }
}

// Residual sum of squares of x from the (ridge-free) moments.
double MseFromMoments(const StageMoments& m, const std::vector<double>& x) {
  if (m.count == 0) return 0.0;
  const int n = static_cast<int>(x.size());
  double quad = 0.0;
  double lin = 0.0;
  for (int i = 0; i < n; ++i) {
    lin += x[i] * m.rhs[i];
    for (int j = 0; j < n; ++j) quad += x[i] * m.gram[i * n + j] * x[j];
  }
  return std::max(0.0, (m.target_sq - 2.0 * lin + quad) / m.count);
}

Kernel2D FilterFromSolution(const std::vector<double>& x, int size) {
  const int radius = size / 2;
  std::vector<double> taps(static_cast<size_t>(size) * size, 0.0);
  size_t next = 1;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      if (r == radius && c == radius) continue;
      taps[r * size + c] = x[next++];
    }
  }
  return Kernel2D(size, size, std::move(taps));
}

}  // namespace

void FitConfig::Validate() const {
  if (neighborhood < 3 || neighborhood % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "neighborhood must be odd and >= 3, got " +
                    std::to_string(neighborhood));
  }
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw Error(ErrorCode::kInvalidArgument, "ridge must be >= 0");
  }
  if (stages < 1) {
    throw Error(ErrorCode::kInvalidArgument, "stages must be >= 1");
  }
  if (sample_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "sample_cap must be >= 1");
  }
}

FitResult FitNormalization(std::span<const Image> corpus, const FitConfig& cfg,
                           const Kernel2D& lowpass) {
  cfg.Validate();
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot fit on an empty corpus");
  }
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Image& im = corpus[i];
    if (cfg.stages > MaxStages(im.width(), im.height())) {
      throw Error(ErrorCode::kTooManyStages,
                  "corpus image " + std::to_string(i) + " (" +
                      std::to_string(im.width()) + "x" +
                      std::to_string(im.height()) + ") cannot hold " +
                      std::to_string(cfg.stages) + " stages");
    }
  }

  const std::vector<TapOffset> offsets = NeighborOffsets(cfg.neighborhood);
  const int n = static_cast<int>(offsets.size()) + 1;
  const int64_t per_image_cap =
      (cfg.sample_cap + static_cast<int64_t>(corpus.size()) - 1) /
      static_cast<int64_t>(corpus.size());

  // per_image[k][i]: moments of stage k for image i.
  std::vector<std::vector<StageMoments>> per_image(cfg.stages);
  for (const Image& im : corpus) {
    std::vector<Pyramid> pyramids;
    for (const Plane& channel : SplitChannels(im)) {
      pyramids.push_back(BuildPyramid(channel, lowpass, cfg.stages));
    }
    for (int k = 0; k < cfg.stages; ++k) {
      const int64_t samples = static_cast<int64_t>(pyramids[0].dims[k].width) *
                              pyramids[0].dims[k].height * im.channels();
      const int64_t stride = std::max<int64_t>(
          1, (samples + per_image_cap - 1) / per_image_cap);
      StageMoments m(n);
      int64_t linear = 0;
      for (const Pyramid& pyr : pyramids) {
        Accumulate(Magnitude(pyr.bands[k]), offsets, stride, linear, m);
      }
      per_image[k].push_back(std::move(m));
    }
  }

  FitResult result;
  result.params.stages = cfg.stages;
  result.params.lowpass = lowpass;
  for (int k = 0; k < cfg.stages; ++k) {
    std::vector<StageMoments>& parts = per_image[k];
    std::sort(parts.begin(), parts.end());
    StageMoments total(n);
    for (const StageMoments& part : parts) total.Add(part);

    NormalEquations eq{n, total.gram, total.rhs};
    for (int i = 1; i < n; ++i) eq.gram[i * n + i] += cfg.ridge;
    std::vector<double> lower(n, 0.0);
    lower[0] = kSigmaFloor;
    const BoundedSolveResult solved = SolveBoundedNormalEquations(eq, lower);

    StageFitStats stats;
    stats.samples = total.count;
    std::vector<double> intercept_only(n, 0.0);
    intercept_only[0] =
        total.count > 0 ? total.target_sum / static_cast<double>(total.count) : 0.0;
    stats.mse_before = MseFromMoments(total, intercept_only);
    stats.mse_after = MseFromMoments(total, solved.x);
    stats.fitted_sigma = solved.x[0];
    result.stages.push_back(stats);

    result.params.norm_filters.push_back(
        FilterFromSolution(solved.x, cfg.neighborhood));
    result.params.sigmas.push_back(solved.x[0]);
  }
  result.params.Validate();
  return result;
}

double AmplitudePredictionMse(std::span<const Image> images,
                              const NlpParams& params, int stage) {
  params.Validate();
  if (stage < 1 || stage > params.stages) {
    throw Error(ErrorCode::kInvalidArgument,
                "stage " + std::to_string(stage) + " out of range");
  }
  const Kernel2D& filter = params.norm_filters[stage - 1];
  const double sigma = params.sigmas[stage - 1];
  double sum = 0.0;
  int64_t count = 0;
  for (const Image& im : images) {
    for (const Plane& channel : SplitChannels(im)) {
      const Pyramid pyr = BuildPyramid(channel, params.lowpass, params.stages);
      const Plane magnitude = Magnitude(pyr.bands[stage - 1]);
      const Plane predicted = Convolve(magnitude, filter);
      for (size_t i = 0; i < magnitude.size(); ++i) {
        const double e = magnitude[i] - sigma - predicted[i];
        sum += e * e;
      }
      count += static_cast<int64_t>(magnitude.size());
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

Kernel2D UniformFilterLike(const Kernel2D& filter) {
  const size_t others = filter.taps().size() - 1;
  const double each = others > 0 ? filter.Sum() / static_cast<double>(others) : 0.0;
  std::vector<double> taps(filter.taps().size(), each);
  taps[filter.radius_y() * filter.cols() + filter.radius_x()] = 0.0;
  return Kernel2D(filter.rows(), filter.cols(), std::move(taps));
}

}  // namespace nlpd
