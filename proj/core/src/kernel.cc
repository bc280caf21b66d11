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

#include "nlpd/kernel.h"

#include <cmath>
#include <numeric>
#include <string>

#include "nlpd/error.h"

namespace nlpd {

Kernel2D::Kernel2D(int rows, int cols, std::vector<double> taps)
    : rows_(rows), cols_(cols), taps_(std::move(taps)) {
  if (rows < 1 || cols < 1 || rows % 2 == 0 || cols % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel dimensions must be odd, got " + std::to_string(rows) +
                    "x" + std::to_string(cols));
  }
  if (taps_.size() != static_cast<size_t>(rows) * cols) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel has " + std::to_string(taps_.size()) +
                    " taps, expected " + std::to_string(rows * cols));
  }
  for (double t : taps_) {
    if (!std::isfinite(t)) {
      throw Error(ErrorCode::kInvalidArgument, "kernel tap is not finite");
    }
  }
}

Kernel2D Kernel2D::Separable(std::vector<double> col, std::vector<double> row) {
  std::vector<double> taps;
  taps.reserve(col.size() * row.size());
  for (double c : col) {
    for (double r : row) taps.push_back(c * r);
  }
  Kernel2D k(static_cast<int>(col.size()), static_cast<int>(row.size()),
             std::move(taps));
  k.col_ = std::move(col);
  k.row_ = std::move(row);
  return k;
}

Kernel2D Kernel2D::Identity() { return Separable({1.0}, {1.0}); }

Kernel2D Kernel2D::Binomial5() {
  const std::vector<double> b = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16,
                                 1.0 / 16};
  return Separable(b, b);
}

double Kernel2D::Sum() const {
  return std::accumulate(taps_.begin(), taps_.end(), 0.0);
}

Kernel2D Kernel2D::Scaled(double factor) const {
  if (separable()) {
    // Put the whole factor on the column pass so both factor vectors stay
    // exact for power-of-two scales.
    std::vector<double> col(col_->begin(), col_->end());
    for (double& c : col) c *= factor;
    return Separable(std::move(col), *row_);
  }
  std::vector<double> taps = taps_;
  for (double& t : taps) t *= factor;
  return Kernel2D(rows_, cols_, std::move(taps));
}

}  // namespace nlpd
