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

#ifndef NLPD_KERNEL_H_
#define NLPD_KERNEL_H_

#include <optional>
#include <span>
#include <vector>

namespace nlpd {

// Odd-by-odd filter taps, row-major, anchored at the center tap. A kernel
// built from row/column vectors remembers its factors so convolution can
// run as two 1-D passes.
class Kernel2D {
 public:
  Kernel2D(int rows, int cols, std::vector<double> taps);

  // Outer product col * row^T.
  static Kernel2D Separable(std::vector<double> col, std::vector<double> row);
  static Kernel2D Identity();
  // Burt-Adelson [1 4 6 4 1] / 16 in each direction.
  static Kernel2D Binomial5();

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int radius_y() const { return rows_ / 2; }
  int radius_x() const { return cols_ / 2; }
  double at(int r, int c) const { return taps_[r * cols_ + c]; }
  double center() const { return at(radius_y(), radius_x()); }
  std::span<const double> taps() const { return taps_; }

  bool separable() const { return col_.has_value(); }
  std::span<const double> col_taps() const { return *col_; }
  std::span<const double> row_taps() const { return *row_; }

  double Sum() const;
  Kernel2D Scaled(double factor) const;

  friend bool operator==(const Kernel2D&, const Kernel2D&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<double> taps_;
  std::optional<std::vector<double>> col_;
  std::optional<std::vector<double>> row_;
};

}  // namespace nlpd

#endif  // NLPD_KERNEL_H_
