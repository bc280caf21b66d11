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

#ifndef NLPD_FIT_H_
#define NLPD_FIT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "nlpd/image.h"
#include "nlpd/kernel.h"
#include "nlpd/nlp.h"

namespace nlpd {

inline constexpr double kSigmaFloor = 1e-3;

struct FitConfig {
  int neighborhood = 5;
  int stages = 6;
  double ridge = 1e-6;
  // Upper bound on samples drawn per stage across the whole corpus. Each
  // image contributes at most ceil(sample_cap / corpus size) pixels, taken at
  // a fixed stride.
  int64_t sample_cap = int64_t{1} << 22;

  void Validate() const;
};

struct StageFitStats {
  int64_t samples = 0;
  // Best intercept-only prediction (sigma alone).
  double mse_before = 0.0;
  double mse_after = 0.0;
  // The intercept as fitted, before any override by the caller.
  double fitted_sigma = 0.0;
};

struct FitResult {
  NlpParams params;
  std::vector<StageFitStats> stages;
};

// For every stage k fits the local amplitude model
//   |z_k(i)| ~ sigma_k + sum_j p_j |z_k(i + offset_j)|
// over all pixels of every channel of every corpus image, with p >= 0, the
// center tap fixed at zero and sigma_k >= kSigmaFloor. Ridge applies to the
// taps only. Per-image normal equations are summed in a canonical order, so
// the result does not depend on corpus order.
// Throws kEmptyCorpus, or kTooManyStages naming the index of the first image
// that cannot hold cfg.stages.
FitResult FitNormalization(std::span<const Image> corpus, const FitConfig& cfg,
                           const Kernel2D& lowpass = Kernel2D::Binomial5());

// Mean squared error of the amplitude model above for one stage (1-based),
// pooled over the images, using filter and sigma from `params`.
double AmplitudePredictionMse(std::span<const Image> images,
                              const NlpParams& params, int stage);

// Same support as `filter`, every non-center tap equal, same tap sum.
Kernel2D UniformFilterLike(const Kernel2D& filter);

}  // namespace nlpd

#endif  // NLPD_FIT_H_
