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

#include "nlpd/nlp.h"

#include <cmath>
#include <string>

#include "nlpd/error.h"
#include "nlpd/params_io.h"

namespace nlpd {

// Defined in the generated default_params_data.cc.
extern const char kDefaultParamsJson[];

namespace {

[[noreturn]] void BadParams(const std::string& what) {
  throw Error(ErrorCode::kParams, "invalid params: " + what);
}

}  // namespace

void NlpParams::Validate() const {
  if (stages < 1) BadParams("stages must be >= 1");
  if (static_cast<int>(norm_filters.size()) != stages) {
    BadParams("expected " + std::to_string(stages) + " norm_filters, got " +
              std::to_string(norm_filters.size()));
  }
  if (static_cast<int>(sigmas.size()) != stages) {
    BadParams("expected " + std::to_string(stages) + " sigmas, got " +
              std::to_string(sigmas.size()));
  }
  if (std::abs(lowpass.Sum() - 1.0) > 1e-12) {
    BadParams("lowpass taps must sum to 1");
  }
  for (int k = 0; k < stages; ++k) {
    const Kernel2D& f = norm_filters[k];
    for (double t : f.taps()) {
      if (t < 0.0) {
        BadParams("norm_filters[" + std::to_string(k) + "] has a negative tap");
      }
    }
    if (f.center() != 0.0) {
      BadParams("norm_filters[" + std::to_string(k) +
                "] center tap must be 0");
    }
    if (!(sigmas[k] > 0.0) || !std::isfinite(sigmas[k])) {
      BadParams("sigmas[" + std::to_string(k) + "] must be positive");
    }
  }
}

NlpParams NlpParams::Truncated(int n) const {
  NlpParams out = *this;
  out.stages = n;
  out.norm_filters.resize(n, Kernel2D::Identity());
  out.sigmas.resize(n);
  return out;
}

NlpParams DefaultParams() {
  static const NlpParams params = ParseParams(kDefaultParamsJson);
  return params;
}

Plane NormalizeStage(const Plane& band, const Kernel2D& filter, double sigma) {
  Plane magnitude = band;
  for (double& v : magnitude.data()) v = std::abs(v);
  Plane out = Convolve(magnitude, filter);
  for (size_t i = 0; i < out.size(); ++i) out[i] = band[i] / (sigma + out[i]);
  return out;
}

NlpRepresentation NlpTransform(const Image& image, const NlpParams& params,
                               StagePolicy policy) {
  params.Validate();
  const int n =
      ResolveStages(image.width(), image.height(), params.stages, policy);
  NlpRepresentation rep;
  for (const Plane& channel : SplitChannels(image)) {
    Pyramid pyr = BuildPyramid(channel, params.lowpass, n);
    std::vector<Plane> subbands;
    subbands.reserve(n);
    for (int k = 0; k < n; ++k) {
      subbands.push_back(
          NormalizeStage(pyr.bands[k], params.norm_filters[k], params.sigmas[k]));
    }
    rep.subbands.push_back(std::move(subbands));
    if (rep.dims.empty()) rep.dims = std::move(pyr.dims);
  }
  return rep;
}

DistanceReport CompareRepresentations(const NlpRepresentation& a,
                                      const NlpRepresentation& b) {
  if (a.channels() != b.channels() || a.dims != b.dims) {
    throw Error(ErrorCode::kShapeMismatch,
                "representations differ in channels or stage dims");
  }
  const int n = a.stages();
  const int channels = a.channels();
  DistanceReport report;
  report.effective_n = n;
  report.per_stage.resize(n);
  report.stage_pixel_counts.resize(n);
  report.per_channel.assign(channels, 0.0);
  for (int k = 0; k < n; ++k) {
    const int64_t pixels =
        static_cast<int64_t>(a.dims[k].width) * a.dims[k].height;
    double pooled = 0.0;
    for (int c = 0; c < channels; ++c) {
      const Plane& ya = a.subbands[c][k];
      const Plane& yb = b.subbands[c][k];
      double sum = 0.0;
      for (size_t i = 0; i < ya.size(); ++i) {
        const double d = ya[i] - yb[i];
        sum += d * d;
      }
      pooled += sum;
      report.per_channel[c] +=
          std::sqrt(sum) / std::sqrt(static_cast<double>(pixels));
    }
    report.stage_pixel_counts[k] = pixels * channels;
    report.per_stage[k] = std::sqrt(pooled) /
                          std::sqrt(static_cast<double>(pixels * channels));
  }
  double total = 0.0;
  for (double d : report.per_stage) total += d;
  report.total = total / n;
  for (double& d : report.per_channel) d /= n;
  return report;
}

DistanceReport Nlpd(const Image& a, const Image& b, const NlpParams& params,
                    StagePolicy policy) {
  RequireSameShape(a, b, "nlpd");
  return CompareRepresentations(NlpTransform(a, params, policy),
                                NlpTransform(b, params, policy));
}

double BaselineDistance(const Image& a, const Image& b, BaselineKind kind) {
  RequireSameShape(a, b, "baseline distance");
  const auto da = a.data();
  const auto db = b.data();
  double sum = 0.0;
  for (size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    sum += kind == BaselineKind::kL1 ? std::abs(d) : d * d;
  }
  const double mean = sum / static_cast<double>(da.size());
  return kind == BaselineKind::kRmse ? std::sqrt(mean) : mean;
}

}  // namespace nlpd
