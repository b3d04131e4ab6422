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

#include "mstl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mstl {

void KernelConfig::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw std::invalid_argument("kernel bandwidth must be positive and finite");
  }
}

KernelConfig median_bandwidth(const Matrix& points) {
  const Index n = points.rows();
  if (n < 2) {
    throw std::invalid_argument("median_bandwidth needs at least 2 points");
  }
  std::vector<double> sq;
  sq.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      sq.push_back((points.row(i) - points.row(j)).squaredNorm());
    }
  }
  const std::size_t m = sq.size();
  std::sort(sq.begin(), sq.end());
  double median = (m % 2 == 1) ? sq[m / 2] : 0.5 * (sq[m / 2 - 1] + sq[m / 2]);
  if (median <= 0.0) {
    // Duplicate-heavy set: use the smallest positive squared distance.
    auto it = std::upper_bound(sq.begin(), sq.end(), 0.0);
    if (it == sq.end()) {
      throw std::invalid_argument("median_bandwidth: all points identical");
    }
    median = *it;
  }
  return KernelConfig{median};
}

double gaussian_kernel(const RowView& x, const RowView& y,
                       const KernelConfig& config) {
  config.validate();
  if (x.size() != y.size()) {
    throw std::invalid_argument("gaussian_kernel: dimension mismatch");
  }
  return std::exp(-(x - y).squaredNorm() / config.bandwidth);
}

Matrix kernel_matrix(const Matrix& a, const Matrix& b,
                     const KernelConfig& config) {
  config.validate();
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("kernel_matrix: dimension mismatch");
  }
  // |x-y|^2 = |x|^2 + |y|^2 - 2 x.y, assembled with one GEMM.
  const Vector a_sq = a.rowwise().squaredNorm();
  const Vector b_sq = b.rowwise().squaredNorm();
  Matrix dist = -2.0 * (a * b.transpose());
  dist.colwise() += a_sq;
  dist.rowwise() += b_sq.transpose();
  return (-dist.cwiseMax(0.0) / config.bandwidth).array().exp();
}

MmdValue compute_mmd(const Matrix& a, const Matrix& b,
                     const KernelConfig& config) {
  if (a.rows() == 0 || b.rows() == 0) {
    throw std::invalid_argument("compute_mmd: empty input");
  }
  const double within_a = kernel_matrix(a, a, config).mean();
  const double within_b = kernel_matrix(b, b, config).mean();
  const double cross = kernel_matrix(a, b, config).mean();
  return MmdValue{std::max(0.0, within_a + within_b - 2.0 * cross)};
}

}  // namespace mstl
