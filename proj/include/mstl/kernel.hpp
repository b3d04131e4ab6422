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

#include "mstl/types.hpp"

namespace mstl {

struct KernelConfig {
  double bandwidth = 1.0;  // gamma in k(x,y) = exp(-|x-y|^2 / gamma)

  void validate() const;
};

// Median of the squared pairwise distances (median heuristic). Falls back to
// the smallest positive squared distance when the median is zero; throws
// std::invalid_argument on fewer than two points or an all-duplicates set.
KernelConfig median_bandwidth(const Matrix& points);

// exp(-|x-y|^2 / gamma); throws on dimension mismatch.
double gaussian_kernel(const RowView& x, const RowView& y,
                       const KernelConfig& config);

// Pairwise kernel values, rows of `a` against rows of `b`.
Matrix kernel_matrix(const Matrix& a, const Matrix& b,
                     const KernelConfig& config);

struct MmdValue {
  double value = 0.0;  // squared RKHS distance, clamped at 0
};

// Biased squared-MMD estimate (diagonal terms included):
//   mean k(a,a') + mean k(b,b') - 2 mean k(a,b).
MmdValue compute_mmd(const Matrix& a, const Matrix& b,
                     const KernelConfig& config);

}  // namespace mstl
