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

#ifndef NLPD_PYRAMID_H_
#define NLPD_PYRAMID_H_

#include <vector>

#include "nlpd/image.h"
#include "nlpd/kernel.h"

namespace nlpd {

struct StageDims {
  int width = 0;
  int height = 0;

  friend bool operator==(const StageDims&, const StageDims&) = default;
};

// What to do when the requested stage count does not fit the image.
enum class StagePolicy {
  kStrict,     // throw kTooManyStages
  kAutoClamp,  // reduce to MaxStages()
};

// Largest N with min(width, height) >= 2^(N-1), i.e. floor(log2(min)) + 1.
int MaxStages(int width, int height);

// Returns the stage count to use, or throws kTooManyStages under kStrict.
int ResolveStages(int width, int height, int requested, StagePolicy policy);

// Mirror reflection without repeating the edge sample:
// ..., p[2], p[1] | p[0], p[1], ..., p[n-1] | p[n-2], ...
// Periodic with period 2(n-1), so any offset is well defined.
int ReflectIndex(int i, int n);

// Same-size 2-D convolution (kernel flipped, anchored at its center) with
// mirror boundaries. Throws kKernelTooLarge when a kernel half-width exceeds
// twice the plane extent along that axis.
Plane Convolve(const Plane& plane, const Kernel2D& kernel);

// Exact adjoint of Convolve for the same kernel and plane shape: every
// reflected read in the forward pass becomes a scattered write here.
Plane ConvolveAdjoint(const Plane& grad, const Kernel2D& kernel);

// Keeps even rows/columns; output is ceil(dims / 2).
Plane Downsample2(const Plane& plane);

// Adjoint of Downsample2: places samples at even indices of a zero plane of
// the target size.
Plane ZeroInsert2(const Plane& plane, StageDims target);

// Zero insertion to `target` followed by convolution with 4 * lowpass.
// Requires ceil(target / 2) == plane dims, otherwise kDimensionMismatch.
Plane Upsample2(const Plane& plane, StageDims target,
                const Kernel2D& lowpass = Kernel2D::Binomial5());

// Adjoint of Upsample2: maps a target-sized gradient back to the coarse grid.
Plane Upsample2Adjoint(const Plane& grad, const Kernel2D& lowpass);

// Band-pass planes for stages 1..N-1 followed by the low-pass residual at
// stage N. dims[k] is the size of bands[k].
struct Pyramid {
  std::vector<Plane> bands;
  std::vector<StageDims> dims;

  int stages() const { return static_cast<int>(bands.size()); }
};

// Laplacian pyramid. Per stage this costs one low-pass convolution before
// decimation and one inside Upsample2; the normalization filter applied in
// nlp.h is the third convolution of a stage.
Pyramid BuildPyramid(const Plane& plane, const Kernel2D& lowpass, int stages,
                     StagePolicy policy = StagePolicy::kStrict);

// Inverse of BuildPyramid: from the residual upward, plane_k = band_k +
// Upsample2(plane_{k+1}). Throws kDimensionMismatch for inconsistent dims.
Plane Reconstruct(const Pyramid& pyramid, const Kernel2D& lowpass);

}  // namespace nlpd

#endif  // NLPD_PYRAMID_H_
