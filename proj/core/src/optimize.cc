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

#include "nlpd/optimize.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nlpd/error.h"
#include "nlpd/gradient.h"

namespace nlpd {
namespace {

std::vector<double> Step(std::span<const double> x, std::span<const double> g,
                         double s) {
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(x[i] - s * g[i], 0.0, 1.0);
  }
  return out;
}

[[noreturn]] void NonFinite(int step) {
  throw Error(ErrorCode::kNonFinite,
              "objective became non-finite at step " + std::to_string(step));
}

}  // namespace

OptimizeTrace OptimizeImage(const Image& ref, const Image& init, int steps,
                            double step_size, const NlpParams& params) {
  RequireSameShape(ref, init, "optimize");
  if (steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "steps must be >= 1");
  }
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw Error(ErrorCode::kInvalidArgument, "step size must be positive");
  }
  const NlpRepresentation ref_rep = NlpTransform(ref, params);

  Image x = init;
  NlpdGradientResult current = NlpdGradient(x, ref, params);
  if (!std::isfinite(current.value)) NonFinite(0);

  OptimizeTrace trace{{}, init};
  trace.iterations.reserve(steps + 1);
  trace.iterations.push_back({0, current.value, 0.0});
  for (int step = 1; step <= steps; ++step) {
    double s = step_size;
    bool accepted = false;
    for (int halvings = 0; halvings <= kMaxHalvings; ++halvings, s *= 0.5) {
      Image candidate(x.width(), x.height(), x.channels(),
                      Step(x.data(), current.gradient.data, s));
      const double f =
          CompareRepresentations(NlpTransform(candidate, params), ref_rep).total;
      if (!std::isfinite(f)) NonFinite(step);
      if (f <= current.value) {
        x = std::move(candidate);
        accepted = true;
        break;
      }
    }
    if (accepted) {
      current = NlpdGradient(x, ref, params);
      if (!std::isfinite(current.value)) NonFinite(step);
    }
    trace.iterations.push_back({step, current.value, accepted ? s : 0.0});
  }
  trace.final = std::move(x);
  return trace;
}

Image UniformNoiseImage(int width, int height, int channels, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> data(static_cast<size_t>(width) * height * channels);
  for (double& v : data) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return Image(width, height, channels, std::move(data));
}

Image FlatImage(int width, int height, int channels, double value) {
  return Image(width, height, channels,
               std::vector<double>(static_cast<size_t>(width) * height * channels,
                                   value));
}

}  // namespace nlpd
