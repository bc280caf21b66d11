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

#ifndef NLPD_IMAGE_H_
#define NLPD_IMAGE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace nlpd {

// Single-channel working buffer, row-major. Samples are unbounded (pyramid
// coefficients go negative) but must stay finite.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);
  Plane(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
  double at(int x, int y) const {
    return data_[static_cast<size_t>(y) * width_ + x];
  }
  double& operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool SameShape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Immutable H x W x C raster of samples in [0, 1], stored channel-planar:
// all of channel 0 row-major, then channel 1, and so on. C is 1 or 3.
// Construction validates every invariant and throws kInvalidImage otherwise.
class Image {
 public:
  Image(int width, int height, int channels, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  size_t pixels() const { return static_cast<size_t>(width_) * height_; }

  std::span<const double> data() const { return data_; }
  std::span<const double> channel(int c) const {
    return std::span<const double>(data_).subspan(c * pixels(), pixels());
  }
  double at(int x, int y, int c) const {
    return data_[c * pixels() + static_cast<size_t>(y) * width_ + x];
  }

  bool SameShape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<double> data_;
};

std::vector<Plane> SplitChannels(const Image& image);

// Inverse of SplitChannels. Planes must share dimensions and hold samples in
// [0, 1].
Image MergeChannels(std::span<const Plane> planes);

// Clamps every sample into [0, 1]. NaN is rejected rather than clamped.
Image ClampToImage(std::span<const Plane> planes);

// Throws kShapeMismatch naming `what` when the two images differ in shape.
void RequireSameShape(const Image& a, const Image& b, const char* what);

}  // namespace nlpd

#endif  // NLPD_IMAGE_H_
