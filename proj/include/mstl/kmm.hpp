// Copyright 2026 The mstl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "mstl/kernel.hpp"
#include "mstl/types.hpp"

namespace mstl {

struct KmmConfig {
  double upper_bound = 5.0;  // per-instance weight cap
  // Tolerance on |mean(alpha) - 1|; negative means the (sqrt(n)-1)/sqrt(n)
  // default is picked per instance size.
  double slack = -1.0;
  int max_iters = 5000;
  double tol = 1e-8;  // projected-gradient residual

  void validate() const;
  double resolved_slack(Index n) const;
};

struct KmmSolution {
  Vector alpha;          // per-instance weights over the source aggregate
  double objective = 0;  // 0.5 a'Ka/n^2 - k'a/(n n_T), constant term dropped
  double kkt_residual = 0;
  int iterations = 0;
  bool converged = false;
};

// Euclidean projection onto { lo <= x_i <= hi, sum_lo <= sum(x) <= sum_up }
// (box plus a slab on the coordinate sum), by bisection on the shift that
// makes the clipped sum hit the violated bound.
Vector project_box_sum(const Vector& v, double lo, double hi, double sum_lo,
                       double sum_up);

// Matches the weighted source kernel mean to the target kernel mean:
// minimizes 0.5 a'Ka/n^2 - k'a/(n n_T) over the box [0, upper_bound]^n
// intersected with |sum(a) - n| <= n * slack, by projected gradient descent
// with fixed step 1/L, L = max row sum of K/n^2. Deterministic (starts from
// all-ones). Non-convergence within max_iters is reported via the flag, not
// an error.
KmmSolution solve_kmm(const Matrix& source_points, const Matrix& target_points,
                      const KernelConfig& kernel_config,
                      const KmmConfig& kmm_config,
                      std::vector<double>* objective_trace = nullptr);

// Audit dump: one row per instance as `index,alpha,pool` where pool is
// "labeled" for indices below n_labeled and "unlabeled" otherwise.
void write_kmm_csv(const KmmSolution& solution, Index n_labeled,
                   const std::string& path);

}  // namespace mstl
