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

#ifndef NLPD_NLP_H_
#define NLPD_NLP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "nlpd/image.h"
#include "nlpd/kernel.h"
#include "nlpd/pyramid.h"

namespace nlpd {

// Everything the normalized pyramid needs. norm_filters[k] and sigmas[k]
// apply to stage k + 1; the last entry normalizes the low-pass residual.
struct NlpParams {
  int stages = 0;
  Kernel2D lowpass = Kernel2D::Binomial5();
  std::vector<Kernel2D> norm_filters;
  std::vector<double> sigmas;

  // Throws kParams describing the first violated invariant: matching
  // lengths, non-negative taps, zero center tap, sigma > 0, unit-sum
  // low-pass.
  void Validate() const;

  // Copy restricted to the first `stages` stages.
  NlpParams Truncated(int stages) const;
};

// Six stages, binomial low-pass, and normalization filters fitted on the
// bundled corpus. See core/data/README.md for provenance.
NlpParams DefaultParams();

// Default sigma shipped with the bundled parameters.
inline constexpr double kDefaultSigma = 0.17;

// y = z / (sigma + filter * |z|), the filter applied with the same mirrored
// convolution as the pyramid.
Plane NormalizeStage(const Plane& band, const Kernel2D& filter, double sigma);

struct NlpRepresentation {
  // subbands[c][k] is channel c at stage k + 1.
  std::vector<std::vector<Plane>> subbands;
  std::vector<StageDims> dims;

  int channels() const { return static_cast<int>(subbands.size()); }
  int stages() const { return static_cast<int>(dims.size()); }
};

// Per channel: Laplacian pyramid, then every stage (residual included)
// divisively normalized.
NlpRepresentation NlpTransform(const Image& image, const NlpParams& params,
                               StagePolicy policy = StagePolicy::kStrict);

struct DistanceReport {
  double total = 0.0;
  std::vector<double> per_stage;
  // NLPD restricted to one channel at a time.
  std::vector<double> per_channel;
  // Samples pooled at each stage: channels * stage pixels.
  std::vector<int64_t> stage_pixel_counts;
  int effective_n = 0;
};

// Pools all channels of stage k into one norm:
//   d_k = ||y_a^(k) - y_b^(k)||_2 / sqrt(C * pixels_k),  total = mean_k d_k.
DistanceReport CompareRepresentations(const NlpRepresentation& a,
                                      const NlpRepresentation& b);

DistanceReport Nlpd(const Image& a, const Image& b, const NlpParams& params,
                    StagePolicy policy = StagePolicy::kStrict);

enum class BaselineKind { kL1, kL2, kRmse };

// L1 = mean |a - b|, L2 = mean (a - b)^2, RMSE = sqrt(L2).
double BaselineDistance(const Image& a, const Image& b, BaselineKind kind);

}  // namespace nlpd

#endif  // NLPD_NLP_H_
