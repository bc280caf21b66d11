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

#ifndef NLPD_NNLS_H_
#define NLPD_NNLS_H_

#include <vector>

namespace nlpd {

// Dense symmetric n x n system, row-major.
struct NormalEquations {
  int n = 0;
  std::vector<double> gram;  // A^T A (+ ridge on the diagonal)
  std::vector<double> rhs;   // A^T b
};

struct BoundedSolveResult {
  std::vector<double> x;
  int sweeps = 0;
  bool converged = false;
};

// Minimizes 0.5 x^T G x - r^T x subject to x >= lower, coordinate by
// coordinate with projection onto the bound, until no coordinate moves by
// more than `tolerance` or `max_sweeps` is reached. The free set found by
// the sweeps is then re-solved exactly; that solution replaces the iterate
// only if it stays feasible and satisfies the KKT conditions.
// Coordinates with a zero diagonal stay at their bound.
BoundedSolveResult SolveBoundedNormalEquations(const NormalEquations& eq,
                                               const std::vector<double>& lower,
                                               double tolerance = 1e-10,
                                               int max_sweeps = 10000);

}  // namespace nlpd

#endif  // NLPD_NNLS_H_
