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

#include <algorithm>
#include <cmath>
#include <string>

#include "nlpd/error.h"

namespace nlpd {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidImage, "invalid image: " + what);
}

}  // namespace

Plane::Plane(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "plane dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  data_.assign(static_cast<size_t>(width) * height, fill);
}

Plane::Plane(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1 ||
      data_.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument,
                "plane data does not match " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

Image::Image(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  if (width < 1 || height < 1) Invalid("dimensions must be positive");
  if (channels != 1 && channels != 3) {
    Invalid("channel count must be 1 or 3, got " + std::to_string(channels));
  }
  if (data_.size() != pixels() * channels) {
    Invalid("sample count " + std::to_string(data_.size()) +
            " does not match " + std::to_string(width) + "x" +
            std::to_string(height) + "x" + std::to_string(channels));
  }
  for (size_t i = 0; i < data_.size(); ++i) {
    const double v = data_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      Invalid("sample " + std::to_string(i) + " = " + std::to_string(v) +
              " outside [0, 1]");
    }
  }
}

std::vector<Plane> SplitChannels(const Image& image) {
  std::vector<Plane> planes;
  planes.reserve(image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    const auto src = image.channel(c);
    planes.emplace_back(image.width(), image.height(),
                        std::vector<double>(src.begin(), src.end()));
  }
  return planes;
}

Image MergeChannels(std::span<const Plane> planes) {
  if (planes.empty()) Invalid("no channels to merge");
  const int w = planes[0].width();
  const int h = planes[0].height();
  std::vector<double> data;
  data.reserve(planes.size() * planes[0].size());
  for (const Plane& p : planes) {
    if (p.width() != w || p.height() != h) Invalid("channel sizes differ");
    data.insert(data.end(), p.data().begin(), p.data().end());
  }
  return Image(w, h, static_cast<int>(planes.size()), std::move(data));
}

Image ClampToImage(std::span<const Plane> planes) {
  std::vector<Plane> clamped(planes.begin(), planes.end());
  for (Plane& p : clamped) {
    for (double& v : p.data()) {
      if (std::isnan(v)) Invalid("NaN sample");
      v = std::clamp(v, 0.0, 1.0);
    }
  }
  return MergeChannels(clamped);
}

void RequireSameShape(const Image& a, const Image& b, const char* what) {
  if (a.SameShape(b)) return;
  auto shape = [](const Image& im) {
    return std::to_string(im.width()) + "x" + std::to_string(im.height()) +
           "x" + std::to_string(im.channels());
  };
  throw Error(ErrorCode::kShapeMismatch, std::string(what) + ": " + shape(a) +
                                             " vs " + shape(b));
}

}  // namespace nlpd
