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

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "mstl/kernel.hpp"
#include "mstl/rng.hpp"

using namespace mstl;

namespace {

Matrix points_1d(std::initializer_list<double> values) {
  Matrix m(static_cast<Index>(values.size()), 1);
  Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

Matrix random_points(Index n, Index d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  }
  return m;
}

}  // namespace

TEST_CASE("median bandwidth of {0,1,3} is 4") {
  // Pairs: (0,1)->1, (0,3)->9, (1,3)->4; median of {1,4,9} is 4.
  const auto cfg = median_bandwidth(points_1d({0.0, 1.0, 3.0}));
  CHECK(cfg.bandwidth == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("median bandwidth falls back past duplicate pairs") {
  // Pairs: (a,a)->0, (a,b)->1, (a,b)->1; median is 1 here, but with two
  // duplicates and one distinct the zero can be the median.
  const auto cfg = median_bandwidth(points_1d({2.0, 2.0, 2.0, 3.0}));
  // Pairs: three zeros and three ones; median = 0.5 by averaging, still > 0.
  CHECK(cfg.bandwidth > 0.0);
  const auto tiny = median_bandwidth(points_1d({5.0, 5.0, 5.0, 5.0, 6.0}));
  // Six zero pairs out of ten; the median is 0 and the fallback kicks in.
  CHECK(tiny.bandwidth == doctest::Approx(1.0));
}

TEST_CASE("median bandwidth rejects degenerate input") {
  CHECK_THROWS_AS(median_bandwidth(points_1d({1.0})), std::invalid_argument);
  CHECK_THROWS_AS(median_bandwidth(points_1d({2.0, 2.0, 2.0})),
                  std::invalid_argument);
}

TEST_CASE("gaussian kernel values") {
  const KernelConfig cfg{2.0};
  Eigen::RowVectorXd x(2), y(2);
  x << 1.0, 0.0;
  y << 1.0, 0.0;
  CHECK(gaussian_kernel(x, y, cfg) == 1.0);
  y << 1.0, std::sqrt(2.0);  // squared distance = bandwidth
  CHECK(gaussian_kernel(x, y, cfg) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("gaussian kernel is symmetric and in (0,1]") {
  const KernelConfig cfg{1.5};
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::RowVectorXd x(3), y(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = rng.normal();
      y[j] = rng.normal();
    }
    const double kxy = gaussian_kernel(x, y, cfg);
    CHECK(kxy == gaussian_kernel(y, x, cfg));
    CHECK(kxy > 0.0);
    CHECK(kxy <= 1.0);
  }
}

TEST_CASE("gaussian kernel rejects dimension mismatch") {
  const KernelConfig cfg{1.0};
  Eigen::RowVectorXd x(2), y(3);
  x.setZero();
  y.setZero();
  CHECK_THROWS_AS(gaussian_kernel(x, y, cfg), std::invalid_argument);
}

TEST_CASE("mmd of a set against itself is exactly zero") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix a = random_points(8, 3, seed);
    const auto cfg = median_bandwidth(a);
    CHECK(compute_mmd(a, a, cfg).value == 0.0);
  }
}

TEST_CASE("mmd closed form for two singletons at bandwidth distance") {
  const KernelConfig cfg{4.0};
  const Matrix a = points_1d({0.0});
  const Matrix b = points_1d({2.0});  // squared distance 4 = bandwidth
  CHECK(compute_mmd(a, b, cfg).value ==
        doctest::Approx(2.0 - 2.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("mmd is invariant to permutations within each sample") {
  const Matrix a = random_points(7, 2, 11);
  const Matrix b = random_points(9, 2, 12);
  const KernelConfig cfg{3.0};
  Matrix a_perm = a;
  a_perm.row(0).swap(a_perm.row(6));
  a_perm.row(2).swap(a_perm.row(4));
  Matrix b_perm = b;
  b_perm.row(1).swap(b_perm.row(8));
  const double base = compute_mmd(a, b, cfg).value;
  CHECK(compute_mmd(a_perm, b_perm, cfg).value == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("mmd rejects empty inputs") {
  const Matrix a = random_points(3, 2, 1);
  Matrix empty(0, 2);
  CHECK_THROWS_AS(compute_mmd(a, empty, KernelConfig{1.0}), std::invalid_argument);
}

TEST_CASE("gram matrices are positive semidefinite within 1e-9") {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const Matrix pts = random_points(10, 4, seed);
    const auto cfg = median_bandwidth(pts);
    const Matrix gram = kernel_matrix(pts, pts, cfg);
    CHECK((gram - gram.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(gram.minCoeff() > 0.0);
    CHECK(gram.maxCoeff() <= 1.0);
    Eigen::SelfAdjointEigenSolver<Matrix> eigen(gram);
    CHECK(eigen.eigenvalues().minCoeff() >= -1e-9);
  }
}
