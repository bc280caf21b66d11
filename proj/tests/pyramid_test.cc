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

#include <gtest/gtest.h>

#include "nlpd/error.h"
#include "oracle/reference.h"
#include "test_util.h"

namespace nlpd {
namespace {

using testing::MaxAbsDiff;
using testing::RandomPlane;
using testing::ToGrid;
using testing::ToTaps;

double Dot(const Plane& a, const Plane& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Kernel2D RandomKernel(int rows, int cols, uint64_t seed) {
  const Plane p = RandomPlane(rows, cols, seed);
  // Plane is width x height; reinterpret as rows x cols.
  return Kernel2D(rows, cols,
                  std::vector<double>(p.data().begin(), p.data().end()));
}

TEST(ReflectIndexTest, MirrorsWithoutRepeatingEdge) {
  EXPECT_EQ(ReflectIndex(-1, 5), 1);
  EXPECT_EQ(ReflectIndex(-2, 5), 2);
  EXPECT_EQ(ReflectIndex(5, 5), 3);
  EXPECT_EQ(ReflectIndex(6, 5), 2);
  EXPECT_EQ(ReflectIndex(-3, 2), 1);
  EXPECT_EQ(ReflectIndex(7, 1), 0);
  for (int n = 1; n < 9; ++n) {
    for (int i = -20; i < 20; ++i) EXPECT_EQ(ReflectIndex(i, n), oracle::Mirror(i, n));
  }
}

TEST(ConvolveTest, IdentityKernelIsIdentity) {
  const Plane p = RandomPlane(7, 4, 1);
  EXPECT_EQ(Convolve(p, Kernel2D::Identity()), p);
  EXPECT_EQ(Convolve(p, Kernel2D(1, 1, {1.0})), p);
}

TEST(ConvolveTest, UnitSumLowpassPreservesConstant) {
  for (int w : {1, 2, 3, 8}) {
    const Plane p(w, 5, 0.37);
    const Plane out = Convolve(p, Kernel2D::Binomial5());
    for (double v : out.data()) EXPECT_NEAR(v, 0.37, 1e-15);
  }
}

TEST(ConvolveTest, MatchesNestedLoopOracle) {
  const Plane p = RandomPlane(6, 6, 7);
  const Kernel2D k = RandomKernel(5, 5, 8);
  EXPECT_LE(MaxAbsDiff(Convolve(p, k), oracle::Conv(ToGrid(p), ToTaps(k))), 1e-13);
  // Separable path and small planes where reflection wraps more than once.
  for (auto [w, h] : {std::pair{6, 6}, {1, 1}, {2, 3}, {9, 2}}) {
    const Plane q = RandomPlane(w, h, w * 10 + h);
    EXPECT_LE(MaxAbsDiff(Convolve(q, Kernel2D::Binomial5()),
                         oracle::Conv(ToGrid(q), ToTaps(Kernel2D::Binomial5()))),
              1e-13);
    const Kernel2D asym = RandomKernel(3, 5, w + h);
    EXPECT_LE(MaxAbsDiff(Convolve(q, asym), oracle::Conv(ToGrid(q), ToTaps(asym))),
              1e-13);
  }
}

TEST(ConvolveTest, IsLinear) {
  const Plane p = RandomPlane(11, 7, 1);
  const Plane q = RandomPlane(11, 7, 2);
  const Kernel2D k = RandomKernel(5, 3, 3);
  const double a = 0.7, b = -1.3;
  Plane combo(11, 7);
  for (size_t i = 0; i < combo.size(); ++i) combo[i] = a * p[i] + b * q[i];
  const Plane lhs = Convolve(combo, k);
  const Plane cp = Convolve(p, k);
  const Plane cq = Convolve(q, k);
  for (size_t i = 0; i < lhs.size(); ++i) {
    EXPECT_NEAR(lhs[i], a * cp[i] + b * cq[i], 1e-12);
  }
}

TEST(ConvolveTest, RejectsKernelsFarLargerThanPlane) {
  try {
    Convolve(Plane(2, 2), Kernel2D(11, 1, std::vector<double>(11, 0.1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKernelTooLarge);
  }
  // A 5-tap kernel on a single sample is still well defined.
  EXPECT_NO_THROW(Convolve(Plane(1, 1, 2.0), Kernel2D::Binomial5()));
}

TEST(ConvolveTest, AdjointSatisfiesInnerProductIdentity) {
  for (auto [w, h] : {std::pair{1, 1}, {2, 2}, {5, 3}, {8, 8}, {13, 6}}) {
    const Plane x = RandomPlane(w, h, 100 + w);
    const Plane y = RandomPlane(w, h, 200 + h);
    for (const Kernel2D& k :
         {Kernel2D::Binomial5(), RandomKernel(5, 5, w * h), RandomKernel(3, 5, w)}) {
      EXPECT_NEAR(Dot(Convolve(x, k), y), Dot(x, ConvolveAdjoint(y, k)), 1e-12);
    }
  }
}

TEST(ResampleTest, DownsampleKeepsEvenIndices) {
  EXPECT_EQ(Downsample2(Plane(1, 1, 3.0)), Plane(1, 1, 3.0));
  Plane p(4, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) p.at(x, y) = 10 * y + x;
  }
  const Plane d = Downsample2(p);
  ASSERT_EQ(d.width(), 2);
  ASSERT_EQ(d.height(), 2);
  EXPECT_EQ(d.at(0, 0), 0);
  EXPECT_EQ(d.at(1, 0), 2);
  EXPECT_EQ(d.at(0, 1), 20);
  EXPECT_EQ(d.at(1, 1), 22);
  const Plane odd = Downsample2(Plane(5, 5));
  EXPECT_EQ(odd.width(), 3);
  EXPECT_EQ(odd.height(), 3);
}

TEST(ResampleTest, UpsampleOfSingleSampleMatchesOracle) {
  // With one sample every reflected read hits it, so the result is the full
  // 4x kernel gain: 4c.
  const Plane p(1, 1, 0.25);
  const Plane up = Upsample2(p, {1, 1});
  const oracle::Grid ref = oracle::Up(ToGrid(p), 1, 1, oracle::Binomial5());
  EXPECT_NEAR(up[0], ref.v[0], 1e-15);
  EXPECT_NEAR(up[0], 1.0, 1e-15);
}

TEST(ResampleTest, UpsampleMatchesOracleForAllParities) {
  for (auto [w, h] : {std::pair{2, 2}, {3, 3}, {4, 7}, {9, 6}, {16, 16}}) {
    const Plane coarse = RandomPlane((w + 1) / 2, (h + 1) / 2, w * h);
    EXPECT_LE(MaxAbsDiff(Upsample2(coarse, {w, h}),
                         oracle::Up(ToGrid(coarse), w, h, oracle::Binomial5())),
              1e-13);
  }
}

TEST(ResampleTest, UpsampledConstantStaysConstant) {
  for (auto [w, h] : {std::pair{2, 2}, {4, 6}, {8, 8}, {5, 7}, {3, 2}}) {
    const Plane up = Upsample2(Plane((w + 1) / 2, (h + 1) / 2, 0.6), {w, h});
    for (double v : up.data()) EXPECT_NEAR(v, 0.6, 1e-12);
  }
}

TEST(ResampleTest, UpsampleOfZeroIsZeroAndChecksDims) {
  const Plane up = Upsample2(Plane(3, 2), {6, 4});
  for (double v : up.data()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(Upsample2(Plane(3, 2), {8, 4}), Error);
  try {
    Upsample2(Plane(3, 2), {5, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(ResampleTest, AdjointsSatisfyInnerProductIdentity) {
  for (auto [w, h] : {std::pair{1, 1}, {2, 2}, {5, 3}, {8, 8}, {7, 12}}) {
    const StageDims fine{w, h};
    const Plane coarse = RandomPlane((w + 1) / 2, (h + 1) / 2, w);
    const Plane g = RandomPlane(w, h, h + 50);
    const Kernel2D lp = Kernel2D::Binomial5();
    EXPECT_NEAR(Dot(Upsample2(coarse, fine, lp), g),
                Dot(coarse, Upsample2Adjoint(g, lp)), 1e-12);
    EXPECT_NEAR(Dot(Downsample2(g), coarse), Dot(g, ZeroInsert2(coarse, fine)),
                1e-12);
  }
}

TEST(ResampleTest, DownsampleOfUpsampleIsFourTimesKernelWeighted) {
  // On even indices, zero insertion followed by 4L reads only original
  // samples, so Downsample2(Upsample2(p)) == 4 * (even-phase taps of L) * p.
  // With odd fine dims the fine-grid mirror lands on even indices exactly
  // where the coarse-grid mirror does.
  const Plane p = RandomPlane(5, 4, 9);
  const Plane round = Downsample2(Upsample2(p, {9, 7}));
  const oracle::Taps lp = oracle::Binomial5();
  oracle::Taps even(3, std::vector<double>(3));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) even[r][c] = 4.0 * lp[2 * r][2 * c];
  }
  EXPECT_LE(MaxAbsDiff(round, oracle::Conv(ToGrid(p), even)), 1e-13);
}

TEST(StagesTest, MaxStagesIsFloorLog2PlusOne) {
  EXPECT_EQ(MaxStages(1, 1), 1);
  EXPECT_EQ(MaxStages(2, 9), 2);
  EXPECT_EQ(MaxStages(31, 40), 5);
  EXPECT_EQ(MaxStages(32, 32), 6);
  EXPECT_EQ(MaxStages(64, 64), 7);
}

TEST(StagesTest, StrictThrowsAutoClampReduces) {
  EXPECT_EQ(ResolveStages(16, 16, 5, StagePolicy::kStrict), 5);
  EXPECT_EQ(ResolveStages(16, 16, 9, StagePolicy::kAutoClamp), 5);
  try {
    ResolveStages(16, 16, 6, StagePolicy::kStrict);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooManyStages);
  }
  EXPECT_THROW(ResolveStages(16, 16, 0, StagePolicy::kAutoClamp), Error);
}

TEST(PyramidTest, SingleStageIsTheInput) {
  const Plane p = RandomPlane(6, 5, 3);
  const Pyramid pyr = BuildPyramid(p, Kernel2D::Binomial5(), 1);
  ASSERT_EQ(pyr.stages(), 1);
  EXPECT_EQ(pyr.bands[0], p);
  EXPECT_EQ(Reconstruct(pyr, Kernel2D::Binomial5()), p);
}

TEST(PyramidTest, ZeroPlaneGivesZeroBands) {
  const Pyramid pyr = BuildPyramid(Plane(16, 12), Kernel2D::Binomial5(), 4);
  for (const Plane& b : pyr.bands) {
    for (double v : b.data()) EXPECT_EQ(v, 0.0);
  }
}

TEST(PyramidTest, StageDimsHalveWithCeil) {
  const Pyramid pyr = BuildPyramid(Plane(31, 33), Kernel2D::Binomial5(), 5);
  const std::vector<StageDims> expected = {
      {31, 33}, {16, 17}, {8, 9}, {4, 5}, {2, 3}};
  EXPECT_EQ(pyr.dims, expected);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(pyr.bands[k].width(), expected[k].width);
    EXPECT_EQ(pyr.bands[k].height(), expected[k].height);
  }
}

TEST(PyramidTest, BandsMatchOracle) {
  const Plane p = RandomPlane(32, 32, 11, 0.0, 1.0);
  const Pyramid pyr = BuildPyramid(p, Kernel2D::Binomial5(), 4);
  const auto ref = oracle::Laplacian(ToGrid(p), oracle::Binomial5(), 4);
  for (int k = 0; k < 4; ++k) {
    EXPECT_LE(MaxAbsDiff(pyr.bands[k], ref[k]), 1e-12) << "stage " << k + 1;
  }
}

TEST(PyramidTest, ReconstructionIsExact) {
  for (auto [w, h] : {std::pair{1, 1}, {2, 2}, {5, 7}, {16, 16}, {31, 33},
                      {64, 64}, {67, 67}, {40, 3}}) {
    for (int n = 1; n <= std::min(6, MaxStages(w, h)); ++n) {
      const Plane p = RandomPlane(w, h, w * 100 + h * 10 + n, 0.0, 1.0);
      const Plane back =
          Reconstruct(BuildPyramid(p, Kernel2D::Binomial5(), n), Kernel2D::Binomial5());
      EXPECT_LE(MaxAbsDiff(back, p), 1e-12) << w << "x" << h << " N=" << n;
    }
  }
}

TEST(PyramidTest, ZeroingFinestBandGivesLowpassApproximation) {
  const Plane p = RandomPlane(20, 14, 5, 0.0, 1.0);
  Pyramid pyr = BuildPyramid(p, Kernel2D::Binomial5(), 3);
  for (double& v : pyr.bands[0].data()) v = 0.0;
  const Plane approx = Reconstruct(pyr, Kernel2D::Binomial5());
  const oracle::Taps lp = oracle::Binomial5();
  const oracle::Grid next = oracle::Down(oracle::Conv(ToGrid(p), lp));
  EXPECT_LE(MaxAbsDiff(approx, oracle::Up(next, 20, 14, lp)), 1e-12);
}

TEST(PyramidTest, AdditiveConstantOnlyMovesResidual) {
  const Plane p = RandomPlane(24, 19, 8, 0.0, 0.5);
  Plane shifted = p;
  for (double& v : shifted.data()) v += 0.3;
  const Pyramid a = BuildPyramid(p, Kernel2D::Binomial5(), 4);
  const Pyramid b = BuildPyramid(shifted, Kernel2D::Binomial5(), 4);
  for (int k = 0; k < 3; ++k) EXPECT_LE(MaxAbsDiff(a.bands[k], b.bands[k]), 1e-12);
  EXPECT_GT(MaxAbsDiff(a.bands[3], b.bands[3]), 0.29);
}

TEST(PyramidTest, TooManyStagesAndMalformedInput) {
  EXPECT_THROW(BuildPyramid(Plane(8, 8), Kernel2D::Binomial5(), 5), Error);
  const Pyramid clamped = BuildPyramid(Plane(8, 8), Kernel2D::Binomial5(), 9,
                                       StagePolicy::kAutoClamp);
  EXPECT_EQ(clamped.stages(), 4);
  Pyramid bad = BuildPyramid(Plane(8, 8), Kernel2D::Binomial5(), 3);
  bad.dims[1] = {5, 5};
  try {
    Reconstruct(bad, Kernel2D::Binomial5());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

}  // namespace
}  // namespace nlpd
