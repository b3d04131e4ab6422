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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mstl/dataset.hpp"
#include "mstl/types.hpp"

namespace testutil {

// Spearman rank correlation with average ranks on ties.
inline double spearman(const std::vector<double>& a,
                       const std::vector<double>& b) {
  const std::size_t n = a.size();
  auto ranks = [&](const std::vector<double>& v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i2 = 0; i2 < n; ++i2) {
    num += (ra[i2] - ma) * (rb[i2] - mb);
    da += (ra[i2] - ma) * (ra[i2] - ma);
    db += (rb[i2] - mb) * (rb[i2] - mb);
  }
  return num / std::sqrt(da * db);
}

// FNV-1a over the raw bytes of a dataset's matrices; order-sensitive.
inline std::uint64_t hash_bytes(std::uint64_t h, const void* data,
                                std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t hash_dataset(const mstl::DomainDataset& d) {
  std::uint64_t h = 1469598103934665603ULL;
  h = hash_bytes(h, d.labeled_x.data(),
                 sizeof(double) * static_cast<std::size_t>(d.labeled_x.size()));
  h = hash_bytes(h, d.labeled_y.data(),
                 sizeof(int) * static_cast<std::size_t>(d.labeled_y.size()));
  h = hash_bytes(h, d.unlabeled_x.data(),
                 sizeof(double) * static_cast<std::size_t>(d.unlabeled_x.size()));
  h = hash_bytes(h, d.hidden_labels.data(),
                 sizeof(int) * static_cast<std::size_t>(d.hidden_labels.size()));
  return h;
}

// ---- independent matching-weight oracle -------------------------------
// Shares nothing with the library solver: its own kernel evaluation and an
// exhaustive scan of the alpha grid {0, step, ..., cap}^n for the objective
//   0.5 a'Ka/n^2 - kappa'a/(n nT).

struct GridOracle {
  double objective = 0.0;
  std::vector<double> alpha;
};

inline double oracle_kernel(const mstl::Matrix& a, mstl::Index i,
                            const mstl::Matrix& b, mstl::Index j,
                            double bandwidth) {
  double sq = 0.0;
  for (mstl::Index c = 0; c < a.cols(); ++c) {
    const double diff = a(i, c) - b(j, c);
    sq += diff * diff;
  }
  return std::exp(-sq / bandwidth);
}

// sum_lo/sum_up: optional sum constraint (pass -inf/+inf to disable). The
// innermost coordinate is resolved by scanning candidate grid points around
// the 1-D parabola vertex, which equals the full-grid minimum; all other
// coordinates enumerate exhaustively.
inline GridOracle kmm_grid_oracle(const mstl::Matrix& source,
                                  const mstl::Matrix& target, double bandwidth,
                                  double cap, double step,
                                  double sum_lo = -1e300,
                                  double sum_up = 1e300) {
  const mstl::Index n = source.rows();
  const mstl::Index nt = target.rows();
  const double dn = static_cast<double>(n);
  std::vector<std::vector<double>> h(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (mstl::Index i = 0; i < n; ++i) {
    for (mstl::Index j = 0; j < n; ++j) {
      h[i][j] = oracle_kernel(source, i, source, j, bandwidth) / (dn * dn);
    }
    for (mstl::Index j = 0; j < nt; ++j) {
      c[i] += oracle_kernel(source, i, target, j, bandwidth);
    }
    c[i] /= dn * static_cast<double>(nt);
  }

  const int levels = static_cast<int>(std::llround(cap / step)) + 1;
  const bool constrained = sum_lo > -1e299 || sum_up < 1e299;

  GridOracle best;
  best.objective = 1e300;
  std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);

  auto eval = [&](const std::vector<double>& a) {
    double quad = 0.0, lin = 0.0;
    for (mstl::Index i = 0; i < n; ++i) {
      lin += c[i] * a[i];
      for (mstl::Index j = 0; j < n; ++j) quad += h[i][j] * a[i] * a[j];
    }
    return 0.5 * quad - lin;
  };

  auto consider = [&](const std::vector<double>& a) {
    if (constrained) {
      const double total = std::accumulate(a.begin(), a.end(), 0.0);
      if (total < sum_lo - 1e-12 || total > sum_up + 1e-12) return;
    }
    const double obj = eval(a);
    if (obj < best.objective) {
      best.objective = obj;
      best.alpha = a;
    }
  };

  const mstl::Index last = n - 1;
  auto recurse = [&](auto&& self, mstl::Index depth) -> void {
    if (depth == last) {
      if (constrained) {
        // With a sum constraint active, scan the last coordinate fully.
        for (int l = 0; l < levels; ++l) {
          alpha[last] = l * step;
          consider(alpha);
        }
        return;
      }
      // Unconstrained in the sum: the objective is a convex parabola in the
      // last coordinate, so the grid minimum sits next to its vertex.
      double b = -c[last];
      for (mstl::Index j = 0; j < last; ++j) b += h[last][j] * alpha[j];
      const double vertex = -b / h[last][last];
      const int center = static_cast<int>(std::floor(vertex / step));
      for (int l = std::max(0, center - 2);
           l <= std::min(levels - 1, center + 2); ++l) {
        alpha[last] = l * step;
        consider(alpha);
      }
      // Box ends, in case the vertex falls outside.
      alpha[last] = 0.0;
      consider(alpha);
      alpha[last] = (levels - 1) * step;
      consider(alpha);
      return;
    }
    for (int l = 0; l < levels; ++l) {
      alpha[depth] = l * step;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace testutil
