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

#include "nlpd/pyramid.h"

#include <algorithm>
#include <string>

#include "nlpd/error.h"

namespace nlpd {
namespace {

// Reflected source index for every output position and tap along one axis:
// table[i * taps + t] = ReflectIndex(i - (t - radius), n). Taps are indexed
// so that this is a true convolution.
std::vector<int> ReflectTable(int n, int taps) {
  const int radius = taps / 2;
  std::vector<int> table(static_cast<size_t>(n) * taps);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < taps; ++t) {
      table[static_cast<size_t>(i) * taps + t] =
          ReflectIndex(i - (t - radius), n);
    }
  }
  return table;
}

void CheckKernelFits(const Plane& plane, const Kernel2D& kernel) {
  if (kernel.radius_x() > 2 * plane.width() ||
      kernel.radius_y() > 2 * plane.height()) {
    throw Error(ErrorCode::kKernelTooLarge,
                "kernel " + std::to_string(kernel.rows()) + "x" +
                    std::to_string(kernel.cols()) + " is too large for plane " +
                    std::to_string(plane.width()) + "x" +
                    std::to_string(plane.height()));
  }
}

Plane RowPass(const Plane& in, std::span<const double> taps) {
  const int w = in.width();
  const int h = in.height();
  const int n = static_cast<int>(taps.size());
  const std::vector<int> idx = ReflectTable(w, n);
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    const double* src = &in.data()[static_cast<size_t>(y) * w];
    double* dst = &out.data()[static_cast<size_t>(y) * w];
    for (int x = 0; x < w; ++x) {
      const int* ix = &idx[static_cast<size_t>(x) * n];
      double acc = 0.0;
      for (int t = 0; t < n; ++t) acc += taps[t] * src[ix[t]];
      dst[x] = acc;
    }
  }
  return out;
}

Plane ColPass(const Plane& in, std::span<const double> taps) {
  const int w = in.width();
  const int h = in.height();
  const int n = static_cast<int>(taps.size());
  const std::vector<int> idx = ReflectTable(h, n);
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    const int* iy = &idx[static_cast<size_t>(y) * n];
    double* dst = &out.data()[static_cast<size_t>(y) * w];
    for (int t = 0; t < n; ++t) {
      const double* src = &in.data()[static_cast<size_t>(iy[t]) * w];
      const double k = taps[t];
      for (int x = 0; x < w; ++x) dst[x] += k * src[x];
    }
  }
  return out;
}

Plane RowPassAdjoint(const Plane& grad, std::span<const double> taps) {
  const int w = grad.width();
  const int h = grad.height();
  const int n = static_cast<int>(taps.size());
  const std::vector<int> idx = ReflectTable(w, n);
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    const double* src = &grad.data()[static_cast<size_t>(y) * w];
    double* dst = &out.data()[static_cast<size_t>(y) * w];
    for (int x = 0; x < w; ++x) {
      const int* ix = &idx[static_cast<size_t>(x) * n];
      for (int t = 0; t < n; ++t) dst[ix[t]] += taps[t] * src[x];
    }
  }
  return out;
}

Plane ColPassAdjoint(const Plane& grad, std::span<const double> taps) {
  const int w = grad.width();
  const int h = grad.height();
  const int n = static_cast<int>(taps.size());
  const std::vector<int> idx = ReflectTable(h, n);
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    const int* iy = &idx[static_cast<size_t>(y) * n];
    const double* src = &grad.data()[static_cast<size_t>(y) * w];
    for (int t = 0; t < n; ++t) {
      double* dst = &out.data()[static_cast<size_t>(iy[t]) * w];
      const double k = taps[t];
      for (int x = 0; x < w; ++x) dst[x] += k * src[x];
    }
  }
  return out;
}

void CheckUpsampleTarget(const Plane& plane, StageDims target) {
  if (target.width < 1 || target.height < 1 ||
      (target.width + 1) / 2 != plane.width() ||
      (target.height + 1) / 2 != plane.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot upsample " + std::to_string(plane.width()) + "x" +
                    std::to_string(plane.height()) + " to " +
                    std::to_string(target.width) + "x" +
                    std::to_string(target.height));
  }
}

}  // namespace

int MaxStages(int width, int height) {
  int m = std::min(width, height);
  int stages = 0;
  while (m >= 1) {
    ++stages;
    m /= 2;
  }
  return stages;
}

int ResolveStages(int width, int height, int requested, StagePolicy policy) {
  if (requested < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "stage count must be at least 1, got " +
                    std::to_string(requested));
  }
  const int max_stages = MaxStages(width, height);
  if (requested <= max_stages) return requested;
  if (policy == StagePolicy::kAutoClamp) return max_stages;
  throw Error(ErrorCode::kTooManyStages,
              std::to_string(requested) + " stages need min dimension >= " +
                  std::to_string(1LL << (requested - 1)) + ", image is " +
                  std::to_string(width) + "x" + std::to_string(height) +
                  " (max " + std::to_string(max_stages) + ")");
}

int ReflectIndex(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

Plane Convolve(const Plane& plane, const Kernel2D& kernel) {
  CheckKernelFits(plane, kernel);
  if (kernel.separable()) {
    return ColPass(RowPass(plane, kernel.row_taps()), kernel.col_taps());
  }
  const int w = plane.width();
  const int h = plane.height();
  const int kr = kernel.rows();
  const int kc = kernel.cols();
  const std::vector<int> ix = ReflectTable(w, kc);
  const std::vector<int> iy = ReflectTable(h, kr);
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int r = 0; r < kr; ++r) {
        const double* src =
            &plane.data()[static_cast<size_t>(iy[y * kr + r]) * w];
        for (int c = 0; c < kc; ++c) {
          acc += kernel.at(r, c) * src[ix[x * kc + c]];
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

Plane ConvolveAdjoint(const Plane& grad, const Kernel2D& kernel) {
  CheckKernelFits(grad, kernel);
  if (kernel.separable()) {
    return RowPassAdjoint(ColPassAdjoint(grad, kernel.col_taps()),
                          kernel.row_taps());
  }
  const int w = grad.width();
  const int h = grad.height();
  const int kr = kernel.rows();
  const int kc = kernel.cols();
  const std::vector<int> ix = ReflectTable(w, kc);
  const std::vector<int> iy = ReflectTable(h, kr);
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double g = grad.at(x, y);
      if (g == 0.0) continue;
      for (int r = 0; r < kr; ++r) {
        double* dst = &out.data()[static_cast<size_t>(iy[y * kr + r]) * w];
        for (int c = 0; c < kc; ++c) {
          dst[ix[x * kc + c]] += kernel.at(r, c) * g;
        }
      }
    }
  }
  return out;
}

Plane Downsample2(const Plane& plane) {
  const int w = (plane.width() + 1) / 2;
  const int h = (plane.height() + 1) / 2;
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.at(x, y) = plane.at(2 * x, 2 * y);
  }
  return out;
}

Plane ZeroInsert2(const Plane& plane, StageDims target) {
  CheckUpsampleTarget(plane, target);
  Plane out(target.width, target.height);
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      out.at(2 * x, 2 * y) = plane.at(x, y);
    }
  }
  return out;
}

Plane Upsample2(const Plane& plane, StageDims target, const Kernel2D& lowpass) {
  // Three of every four samples are inserted zeros, hence the gain of 4.
  return Convolve(ZeroInsert2(plane, target), lowpass.Scaled(4.0));
}

Plane Upsample2Adjoint(const Plane& grad, const Kernel2D& lowpass) {
  return Downsample2(ConvolveAdjoint(grad, lowpass.Scaled(4.0)));
}

Pyramid BuildPyramid(const Plane& plane, const Kernel2D& lowpass, int stages,
                     StagePolicy policy) {
  const int n = ResolveStages(plane.width(), plane.height(), stages, policy);
  Pyramid pyr;
  pyr.bands.reserve(n);
  pyr.dims.reserve(n);
  Plane current = plane;
  for (int k = 1; k < n; ++k) {
    const StageDims dims{current.width(), current.height()};
    Plane next = Downsample2(Convolve(current, lowpass));
    Plane band = current;
    const Plane approx = Upsample2(next, dims, lowpass);
    for (size_t i = 0; i < band.size(); ++i) band[i] -= approx[i];
    pyr.bands.push_back(std::move(band));
    pyr.dims.push_back(dims);
    current = std::move(next);
  }
  pyr.dims.push_back({current.width(), current.height()});
  pyr.bands.push_back(std::move(current));
  return pyr;
}

Plane Reconstruct(const Pyramid& pyramid, const Kernel2D& lowpass) {
  const int n = pyramid.stages();
  if (n < 1 || pyramid.dims.size() != pyramid.bands.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "pyramid is empty or malformed");
  }
  for (int k = 0; k < n; ++k) {
    const Plane& b = pyramid.bands[k];
    const StageDims& d = pyramid.dims[k];
    if (b.width() != d.width || b.height() != d.height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "band " + std::to_string(k + 1) +
                      " does not match its recorded dims");
    }
  }
  Plane current = pyramid.bands[n - 1];
  for (int k = n - 2; k >= 0; --k) {
    Plane up = Upsample2(current, pyramid.dims[k], lowpass);
    const Plane& band = pyramid.bands[k];
    for (size_t i = 0; i < up.size(); ++i) up[i] += band[i];
    current = std::move(up);
  }
  return current;
}

}  // namespace nlpd
