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

#include "nlpd/nnls.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nlpd/error.h"

namespace nlpd {
namespace {

// Gradient of the quadratic, G x - r.
std::vector<double> Residual(const NormalEquations& eq,
                             const std::vector<double>& x) {
  std::vector<double> g(eq.n);
  for (int i = 0; i < eq.n; ++i) {
    double acc = -eq.rhs[i];
    for (int j = 0; j < eq.n; ++j) acc += eq.gram[i * eq.n + j] * x[j];
    g[i] = acc;
  }
  return g;
}

// Solves the system restricted to coordinates strictly above their bound,
// holding the rest at the bound. Accepts the result only if it is feasible
// and the bound coordinates have non-negative gradient (KKT).
bool PolishFreeSet(const NormalEquations& eq, const std::vector<double>& lower,
                   std::vector<double>& x) {
  std::vector<int> free;
  for (int i = 0; i < eq.n; ++i) {
    if (x[i] > lower[i] && eq.gram[i * eq.n + i] > 0.0) free.push_back(i);
  }
  if (free.empty()) return false;
  const int m = static_cast<int>(free.size());
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd b(m);
  for (int r = 0; r < m; ++r) {
    double rhs = eq.rhs[free[r]];
    for (int j = 0; j < eq.n; ++j) {
      if (std::find(free.begin(), free.end(), j) == free.end()) {
        rhs -= eq.gram[free[r] * eq.n + j] * x[j];
      }
    }
    b(r) = rhs;
    for (int c = 0; c < m; ++c) a(r, c) = eq.gram[free[r] * eq.n + free[c]];
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
  const Eigen::VectorXd sol = ldlt.solve(b);
  std::vector<double> candidate = x;
  for (int r = 0; r < m; ++r) {
    if (!std::isfinite(sol(r)) || sol(r) < lower[free[r]]) return false;
    candidate[free[r]] = sol(r);
  }
  const std::vector<double> g = Residual(eq, candidate);
  double scale = 0.0;
  for (double v : eq.rhs) scale = std::max(scale, std::abs(v));
  const double slack = 1e-12 * std::max(scale, 1.0);
  for (int i = 0; i < eq.n; ++i) {
    const bool is_free = std::find(free.begin(), free.end(), i) != free.end();
    if (!is_free && g[i] < -slack) return false;
  }
  x = std::move(candidate);
  return true;
}

}  // namespace

BoundedSolveResult SolveBoundedNormalEquations(const NormalEquations& eq,
                                               const std::vector<double>& lower,
                                               double tolerance,
                                               int max_sweeps) {
  if (eq.n < 1 || eq.gram.size() != static_cast<size_t>(eq.n) * eq.n ||
      eq.rhs.size() != static_cast<size_t>(eq.n) ||
      lower.size() != static_cast<size_t>(eq.n)) {
    throw Error(ErrorCode::kInvalidArgument, "malformed normal equations");
  }
  BoundedSolveResult result;
  result.x = lower;
  std::vector<double>& x = result.x;
  // Running gradient G x - r, updated incrementally per coordinate move.
  std::vector<double> g = Residual(eq, x);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int i = 0; i < eq.n; ++i) {
      const double diag = eq.gram[i * eq.n + i];
      if (diag <= 0.0) continue;
      const double updated = std::max(lower[i], x[i] - g[i] / diag);
      const double delta = updated - x[i];
      if (delta == 0.0) continue;
      x[i] = updated;
      for (int j = 0; j < eq.n; ++j) g[j] += eq.gram[j * eq.n + i] * delta;
      max_change = std::max(max_change, std::abs(delta));
    }
    result.sweeps = sweep + 1;
    if (max_change <= tolerance) {
      result.converged = true;
      break;
    }
  }
  PolishFreeSet(eq, lower, x);
  return result;
}

}  // namespace nlpd
