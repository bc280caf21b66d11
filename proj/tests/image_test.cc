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

#include "nlpd/image.h"

#include <gtest/gtest.h>

#include "nlpd/error.h"
#include "test_util.h"

namespace nlpd {
namespace {

TEST(ImageTest, RejectsOutOfRangeAndBadShapes) {
  EXPECT_THROW(Image(1, 1, 1, {1.5}), Error);
  EXPECT_THROW(Image(1, 1, 1, {-0.1}), Error);
  EXPECT_THROW(Image(1, 1, 1, {std::nan("")}), Error);
  EXPECT_THROW(Image(2, 1, 1, {0.0}), Error);
  EXPECT_THROW(Image(1, 1, 2, {0.0, 0.0}), Error);
  EXPECT_THROW(Image(0, 1, 1, {}), Error);
  try {
    Image(1, 1, 1, {2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidImage);
  }
}

TEST(ImageTest, SplitSingleChannelIsIdentity) {
  const Image im = testing::RandomImage(4, 3, 1, 1);
  const auto planes = SplitChannels(im);
  ASSERT_EQ(planes.size(), 1u);
  EXPECT_TRUE(std::equal(planes[0].data().begin(), planes[0].data().end(),
                         im.data().begin()));
}

TEST(ImageTest, SplitRgbHoldsChannelPerPlane) {
  const Image im = testing::RandomImage(5, 2, 3, 2);
  const auto planes = SplitChannels(im);
  ASSERT_EQ(planes.size(), 3u);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < 2; ++y) {
      for (int x = 0; x < 5; ++x) EXPECT_EQ(planes[c].at(x, y), im.at(x, y, c));
    }
  }
}

TEST(ImageTest, MergeOfSplitIsIdentity) {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    const int w = 1 + static_cast<int>(seed % 7);
    const int h = 1 + static_cast<int>((seed * 5) % 9);
    const int c = seed % 2 ? 3 : 1;
    const Image im = testing::RandomImage(w, h, c, seed);
    EXPECT_EQ(MergeChannels(SplitChannels(im)), im);
  }
}

TEST(ImageTest, MergeRejectsMismatchedPlanes) {
  const std::vector<Plane> planes = {Plane(2, 2), Plane(2, 3), Plane(2, 2)};
  EXPECT_THROW(MergeChannels(planes), Error);
}

TEST(ImageTest, ShapeMismatchNamesShapes) {
  const Image a = testing::RandomImage(2, 2, 1, 1);
  const Image b = testing::RandomImage(2, 3, 1, 1);
  try {
    RequireSameShape(a, b, "test");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
    EXPECT_NE(std::string(e.what()).find("2x2x1 vs 2x3x1"), std::string::npos);
  }
}

TEST(ImageTest, ClampToImageClampsButRejectsNan) {
  Plane p(2, 1, std::vector<double>{-0.5, 1.5});
  const Image im = ClampToImage(std::vector<Plane>{p});
  EXPECT_EQ(im.data()[0], 0.0);
  EXPECT_EQ(im.data()[1], 1.0);
  p[0] = std::nan("");
  EXPECT_THROW(ClampToImage(std::vector<Plane>{p}), Error);
}

}  // namespace
}  // namespace nlpd
