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

#include <vector>

namespace mstl {

double mean(const std::vector<double>& v);

// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
double sample_stddev(const std::vector<double>& v);

// Regularized incomplete beta function I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed paired t-test. All-zero differences give p = 1; nonzero
// differences with zero variance give the 1e-12 reporting floor.
double paired_t_pvalue(const std::vector<double>& a,
                       const std::vector<double>& b);

}  // namespace mstl
