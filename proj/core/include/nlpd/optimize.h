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

#ifndef NLPD_OPTIMIZE_H_
#define NLPD_OPTIMIZE_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "nlpd/image.h"
#include "nlpd/nlp.h"

namespace nlpd {

struct OptimizeStep {
  int step = 0;
  double objective = 0.0;
  // Step size actually taken; 0 when every backtracking attempt failed and
  // the iterate was kept.
  double step_size = 0.0;
};

struct OptimizeTrace {
  // Entry 0 is the initial image (step 0, step_size 0).
  std::vector<OptimizeStep> iterations;
  Image final;
};

inline constexpr int kMaxHalvings = 20;

// Initial step size used by the CLI. Chosen by sweeping step sizes on
// 32x32 uniform-noise references (seeds 100-109) from a flat start.
inline constexpr double kDefaultStepSize = 300.0;

// Projected gradient descent on NLPD(x, ref):
//   x <- clamp_[0,1](x - s * grad)
// Each step starts from `step_size` and halves s while the objective would
// increase, up to kMaxHalvings times. Throws kNonFinite naming the step.
OptimizeTrace OptimizeImage(const Image& ref, const Image& init, int steps,
                            double step_size, const NlpParams& params);

// Identifier of the generator behind UniformNoiseImage, recorded in traces.
inline constexpr std::string_view kNoiseGenerator = "mt19937_64/u53-v1";

// Samples uniform in [0, 1) from std::mt19937_64 seeded with `seed`, using
// the top 53 bits of each draw. Identical on every conforming platform.
Image UniformNoiseImage(int width, int height, int channels, uint64_t seed);

Image FlatImage(int width, int height, int channels, double value);

}  // namespace nlpd

#endif  // NLPD_OPTIMIZE_H_
