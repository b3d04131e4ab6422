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

#include <cstdint>
#include <vector>

#include "mstl/dataset.hpp"
#include "mstl/types.hpp"

namespace mstl {

// Gaussian multi-domain generator. Source k draws features from
// N(target_mean + proximity[k] * shift_k, noise_sigma^2 I) where shift_k is a
// per-domain standard-normal vector scaled by fluctuation_scale; a larger
// proximity value therefore means a source farther from the target. Labels
// come from sign((base_weights + label_drift * drift)' x + eps) with a
// per-domain drift vector and per-example Gaussian noise eps.
struct SyntheticConfig {
  int num_sources = 5;
  int dim = 10;
  Vector target_mean;        // empty means all-zeros
  double fluctuation_scale = 0.65;
  std::vector<double> proximity = {0.2, 0.4, 0.6, 0.8, 1.0};
  double noise_sigma = 1.0;
  Vector base_weights;       // empty means normalized all-ones
  double label_drift = 0.09;
  double label_noise_sigma = 0.1;
  int per_source_pos = 50;
  int per_source_neg = 50;
  int target_test_size = 400;
  long max_attempts = 1000000;  // per domain, rejection-sampling cap
  std::uint64_t seed = 0;

  void validate() const;
  Vector resolved_target_mean() const;
  Vector resolved_base_weights() const;
};

// The per-domain parameters drawn before any sampling: feature mean and
// labeling weight vector. Index 0..K-1 are sources, index K is the target.
struct DomainBlueprint {
  Vector mean;
  Vector labeler_weights;
};

// Deterministic per (config, seed); consumes the same RNG prefix as
// generate_synthetic so both views agree.
std::vector<DomainBlueprint> synthetic_blueprints(const SyntheticConfig& config);

struct SyntheticData {
  std::vector<DomainDataset> sources;  // fully labeled, balanced
  DomainDataset target;  // labeled = held-out test set, unlabeled = training pool
};

// Rejection-samples exact class counts per domain. Identical seeds give
// bit-identical datasets. Throws std::runtime_error when a domain's labeler
// is too one-sided to fill a class within config.max_attempts.
SyntheticData generate_synthetic(const SyntheticConfig& config);

}  // namespace mstl
