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

#include "nlpd/gradient.h"

#include <cmath>

#include "nlpd/error.h"
#include "nlpd/pyramid.h"

namespace nlpd {
namespace {

// Forward values of one channel that the backward pass needs.
struct ChannelForward {
  Pyramid pyramid;                   // z_k, and the stage dims
  std::vector<Plane> denominators;   // sigma_k + P_k * |z_k|
  std::vector<Plane> normalized;     // y_k
};

ChannelForward Forward(const Plane& channel, const NlpParams& params) {
  ChannelForward fw;
  fw.pyramid = BuildPyramid(channel, params.lowpass, params.stages);
  for (int k = 0; k < params.stages; ++k) {
    const Plane& z = fw.pyramid.bands[k];
    // Same arithmetic as NormalizeStage so the value matches Nlpd() exactly.
    Plane magnitude = z;
    for (double& v : magnitude.data()) v = std::abs(v);
    Plane den = Convolve(magnitude, params.norm_filters[k]);
    Plane y(z.width(), z.height());
    for (size_t i = 0; i < den.size(); ++i) {
      den[i] = params.sigmas[k] + den[i];
      y[i] = z[i] / den[i];
    }
    fw.denominators.push_back(std::move(den));
    fw.normalized.push_back(std::move(y));
  }
  return fw;
}

// d/dz of y = z / (sigma + P * |z|) applied to an upstream gradient g_y.
Plane NormalizationBackward(const Plane& z, const Plane& den, const Plane& g_y,
                            const Kernel2D& filter) {
  Plane g_z(z.width(), z.height());
  Plane g_den(z.width(), z.height());
  for (size_t i = 0; i < z.size(); ++i) {
    g_z[i] = g_y[i] / den[i];
    g_den[i] = -g_y[i] * z[i] / (den[i] * den[i]);
  }
  const Plane g_mag = ConvolveAdjoint(g_den, filter);
  for (size_t i = 0; i < z.size(); ++i) {
    if (z[i] > 0.0) {
      g_z[i] += g_mag[i];
    } else if (z[i] < 0.0) {
      g_z[i] -= g_mag[i];
    }
  }
  return g_z;
}

// Adjoint of the Laplacian pyramid: band gradients in, input gradient out.
//   z_k = p_k - Upsample2(p_{k+1}),  p_{k+1} = Downsample2(L * p_k),  z_N = p_N
Plane PyramidBackward(const std::vector<Plane>& g_band,
                      const Kernel2D& lowpass) {
  const int n = static_cast<int>(g_band.size());
  std::vector<Plane> g_p = g_band;
  for (int k = 0; k + 1 < n; ++k) {
    const Plane up_adj = Upsample2Adjoint(g_band[k], lowpass);
    Plane& next = g_p[k + 1];
    for (size_t i = 0; i < next.size(); ++i) next[i] -= up_adj[i];
  }
  // Coarsest first, so g_p[k + 1] is complete before it is pushed back.
  for (int k = n - 2; k >= 0; --k) {
    const StageDims dims{g_p[k].width(), g_p[k].height()};
    const Plane back = ConvolveAdjoint(ZeroInsert2(g_p[k + 1], dims), lowpass);
    for (size_t i = 0; i < back.size(); ++i) g_p[k][i] += back[i];
  }
  return std::move(g_p[0]);
}

}  // namespace

NlpdGradientResult NlpdGradient(const Image& a, const Image& ref,
                                const NlpParams& params) {
  RequireSameShape(a, ref, "nlpd gradient");
  params.Validate();
  ResolveStages(a.width(), a.height(), params.stages, StagePolicy::kStrict);

  const int n = params.stages;
  const int channels = a.channels();
  std::vector<ChannelForward> forward;
  NlpRepresentation rep_a;
  for (const Plane& channel : SplitChannels(a)) {
    forward.push_back(Forward(channel, params));
    rep_a.subbands.push_back(forward.back().normalized);
  }
  rep_a.dims = forward[0].pyramid.dims;
  const NlpRepresentation rep_ref = NlpTransform(ref, params);
  const DistanceReport report = CompareRepresentations(rep_a, rep_ref);

  // Per-stage scale of d total / d y_a = diff / (N * sqrt(C n_k) * ||diff||).
  std::vector<double> stage_scale(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double pooled = 0.0;
    for (int c = 0; c < channels; ++c) {
      const Plane& ya = rep_a.subbands[c][k];
      const Plane& yb = rep_ref.subbands[c][k];
      for (size_t i = 0; i < ya.size(); ++i) {
        const double d = ya[i] - yb[i];
        pooled += d * d;
      }
    }
    if (pooled > 0.0) {
      const double count = static_cast<double>(report.stage_pixel_counts[k]);
      stage_scale[k] = 1.0 / (n * std::sqrt(count) * std::sqrt(pooled));
    }
  }

  NlpdGradientResult result;
  result.value = report.total;
  result.gradient.width = a.width();
  result.gradient.height = a.height();
  result.gradient.channels = channels;
  result.gradient.data.reserve(a.data().size());
  for (int c = 0; c < channels; ++c) {
    const ChannelForward& fw = forward[c];
    std::vector<Plane> g_band;
    g_band.reserve(n);
    for (int k = 0; k < n; ++k) {
      const Plane& ya = rep_a.subbands[c][k];
      const Plane& yb = rep_ref.subbands[c][k];
      Plane g_y(ya.width(), ya.height());
      for (size_t i = 0; i < ya.size(); ++i) {
        g_y[i] = stage_scale[k] * (ya[i] - yb[i]);
      }
      g_band.push_back(NormalizationBackward(fw.pyramid.bands[k],
                                             fw.denominators[k], g_y,
                                             params.norm_filters[k]));
    }
    const Plane g = PyramidBackward(g_band, params.lowpass);
    for (double v : g.data()) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFinite, "non-finite gradient");
      }
    }
    result.gradient.data.insert(result.gradient.data.end(), g.data().begin(),
                                g.data().end());
  }
  return result;
}

}  // namespace nlpd
