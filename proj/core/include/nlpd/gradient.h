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

#ifndef NLPD_GRADIENT_H_
#define NLPD_GRADIENT_H_

#include <vector>

#include "nlpd/image.h"
#include "nlpd/nlp.h"

namespace nlpd {

// Partial derivatives with the layout of the differentiated Image.
struct GradientImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;  // channel-planar

  double at(int x, int y, int c) const {
    return data[(static_cast<size_t>(c) * height + y) * width + x];
  }
};

struct NlpdGradientResult {
  double value = 0.0;
  GradientImage gradient;
};

// NLPD(a, ref) and its gradient with respect to `a`, by reverse-mode
// differentiation through normalization, the pyramid resampling and the
// convolutions. d|z|/dz is taken as 0 at z = 0, and a stage whose pooled
// difference norm is exactly 0 contributes no gradient. `value` equals
// Nlpd(a, ref, params).total bit for bit.
NlpdGradientResult NlpdGradient(const Image& a, const Image& ref,
                                const NlpParams& params);

}  // namespace nlpd

#endif  // NLPD_GRADIENT_H_
