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

#include "mstl/kmm.hpp"

#include <cmath>
#include <stdexcept>

#include "mstl/csv.hpp"

namespace mstl {

void KmmConfig::validate() const {
  if (!(upper_bound >= 1.0)) {
    throw std::invalid_argument("kmm upper_bound must be >= 1");
  }
  if (max_iters < 1) throw std::invalid_argument("kmm max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("kmm tol must be positive");
}

double KmmConfig::resolved_slack(Index n) const {
  if (slack >= 0.0) return slack;
  const double root = std::sqrt(static_cast<double>(n));
  return (root - 1.0) / root;
}

Vector project_box_sum(const Vector& v, double lo, double hi, double sum_lo,
                       double sum_up) {
  auto clipped_sum = [&](double shift) {
    return (v.array() - shift).cwiseMax(lo).cwiseMin(hi).sum();
  };
  const double plain = clipped_sum(0.0);
  double target;
  if (plain > sum_up) {
    target = sum_up;
  } else if (plain < sum_lo) {
    target = sum_lo;
  } else {
    return v.cwiseMax(lo).cwiseMin(hi);
  }
  // clipped_sum is non-increasing in the shift; bracket then bisect.
  double a = 0.0, b = 0.0;
  const double span = (v.cwiseAbs().maxCoeff() + std::abs(hi) + std::abs(lo) + 1.0);
  if (plain > target) {
    b = span;
    while (clipped_sum(b) > target) b *= 2.0;
  } else {
    a = -span;
    while (clipped_sum(a) < target) a *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (clipped_sum(mid) > target) {
      a = mid;
    } else {
      b = mid;
    }
    if (b - a < 1e-15 * (1.0 + std::abs(a))) break;
  }
  const double shift = 0.5 * (a + b);
  return (v.array() - shift).cwiseMax(lo).cwiseMin(hi);
}

KmmSolution solve_kmm(const Matrix& source_points, const Matrix& target_points,
                      const KernelConfig& kernel_config,
                      const KmmConfig& kmm_config,
                      std::vector<double>* objective_trace) {
  kmm_config.validate();
  if (source_points.rows() == 0 || target_points.rows() == 0) {
    throw std::invalid_argument("solve_kmm: empty input");
  }
  if (source_points.cols() != target_points.cols()) {
    throw std::invalid_argument("solve_kmm: dimension mismatch");
  }

  const Index n = source_points.rows();
  const Index n_t = target_points.rows();
  const double dn = static_cast<double>(n);

  const Matrix gram =
      kernel_matrix(source_points, source_points, kernel_config) / (dn * dn);
  const Vector affinity =
      kernel_matrix(source_points, target_points, kernel_config).rowwise().sum() /
      (dn * static_cast<double>(n_t));

  const double slack = kmm_config.resolved_slack(n);
  const double sum_lo = dn * (1.0 - slack);
  const double sum_up = dn * (1.0 + slack);
  const double cap = kmm_config.upper_bound;

  // Gershgorin bound on the largest eigenvalue; K has positive entries.
  const double lipschitz = gram.rowwise().sum().maxCoeff();
  const double step = 1.0 / lipschitz;

  auto objective = [&](const Vector& a) {
    return 0.5 * a.dot(gram * a) - affinity.dot(a);
  };

  KmmSolution sol;
  sol.alpha = project_box_sum(Vector::Ones(n), 0.0, cap, sum_lo, sum_up);
  double obj = objective(sol.alpha);
  if (objective_trace != nullptr) objective_trace->push_back(obj);

  while (sol.iterations < kmm_config.max_iters) {
    const Vector grad = gram * sol.alpha - affinity;
    sol.kkt_residual = (sol.alpha - project_box_sum(sol.alpha - grad, 0.0, cap,
                                                    sum_lo, sum_up))
                           .norm();
    if (sol.kkt_residual <= kmm_config.tol) {
      sol.converged = true;
      break;
    }
    sol.alpha =
        project_box_sum(sol.alpha - step * grad, 0.0, cap, sum_lo, sum_up);
    ++sol.iterations;
    const double next_obj = objective(sol.alpha);
    if (next_obj > obj + 1e-12 * (1.0 + std::abs(obj))) {
      throw std::logic_error("solve_kmm: objective increased");
    }
    obj = next_obj;
    if (objective_trace != nullptr) objective_trace->push_back(obj);
  }
  if (!sol.converged) {
    const Vector grad = gram * sol.alpha - affinity;
    sol.kkt_residual = (sol.alpha - project_box_sum(sol.alpha - grad, 0.0, cap,
                                                    sum_lo, sum_up))
                           .norm();
    sol.converged = sol.kkt_residual <= kmm_config.tol;
  }
  sol.objective = obj;
  return sol;
}

void write_kmm_csv(const KmmSolution& solution, Index n_labeled,
                   const std::string& path) {
  CsvWriter w(path);
  w.raw("index,alpha,pool");
  for (Index i = 0; i < solution.alpha.size(); ++i) {
    w.row({std::to_string(i), format_double(solution.alpha[i]),
           i < n_labeled ? "labeled" : "unlabeled"});
  }
}

}  // namespace mstl
