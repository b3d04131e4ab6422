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

#include "mstl/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mstl/rng.hpp"

namespace mstl {

void SyntheticConfig::validate() const {
  if (num_sources < 1) throw std::invalid_argument("num_sources must be >= 1");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (static_cast<int>(proximity.size()) != num_sources) {
    throw std::invalid_argument("proximity must have num_sources entries");
  }
  for (double p : proximity) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("proximity entries must be non-negative");
    }
  }
  if (!(fluctuation_scale > 0.0)) {
    throw std::invalid_argument("fluctuation_scale must be positive");
  }
  if (!(noise_sigma > 0.0)) {
    throw std::invalid_argument("noise_sigma must be positive");
  }
  if (label_drift < 0.0 || label_noise_sigma < 0.0) {
    throw std::invalid_argument("label_drift/label_noise_sigma must be >= 0");
  }
  if (per_source_pos < 1 || per_source_neg < 1 || target_test_size < 1) {
    throw std::invalid_argument("per-class and test counts must be positive");
  }
  if (target_mean.size() != 0 && target_mean.size() != dim) {
    throw std::invalid_argument("target_mean has wrong dimension");
  }
  if (base_weights.size() != 0 && base_weights.size() != dim) {
    throw std::invalid_argument("base_weights has wrong dimension");
  }
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
}

Vector SyntheticConfig::resolved_target_mean() const {
  if (target_mean.size() == dim) return target_mean;
  return Vector::Zero(dim);
}

Vector SyntheticConfig::resolved_base_weights() const {
  if (base_weights.size() == dim) return base_weights;
  return Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

namespace {

Vector draw_standard_normal(Rng& rng, Index d) {
  Vector v(d);
  for (Index i = 0; i < d; ++i) v[i] = rng.normal();
  return v;
}

std::vector<DomainBlueprint> draw_blueprints(const SyntheticConfig& cfg,
                                             Rng& rng) {
  const Vector mu_target = cfg.resolved_target_mean();
  const Vector w_base = cfg.resolved_base_weights();
  std::vector<DomainBlueprint> out;
  out.reserve(static_cast<std::size_t>(cfg.num_sources) + 1);
  for (int k = 0; k < cfg.num_sources; ++k) {
    const Vector shift =
        cfg.fluctuation_scale * draw_standard_normal(rng, cfg.dim);
    const Vector drift = draw_standard_normal(rng, cfg.dim);
    DomainBlueprint bp;
    bp.mean = mu_target + cfg.proximity[static_cast<std::size_t>(k)] * shift;
    bp.labeler_weights = w_base + cfg.label_drift * drift;
    out.push_back(std::move(bp));
  }
  const Vector drift_target = draw_standard_normal(rng, cfg.dim);
  DomainBlueprint target_bp;
  target_bp.mean = mu_target;
  target_bp.labeler_weights = w_base + cfg.label_drift * drift_target;
  out.push_back(std::move(target_bp));
  return out;
}

// Fills `x` with exactly `n_pos` rows labeled +1 followed by `n_neg` rows
// labeled -1 (row order is acceptance order within each class block).
void sample_balanced(const SyntheticConfig& cfg, const DomainBlueprint& bp,
                     Rng& rng, Index n_pos, Index n_neg,
                     const std::string& domain, Matrix& x, IntVector& y) {
  x.resize(n_pos + n_neg, cfg.dim);
  y.resize(n_pos + n_neg);
  Index got_pos = 0, got_neg = 0;
  std::vector<Vector> pos_rows, neg_rows;
  pos_rows.reserve(static_cast<std::size_t>(n_pos));
  neg_rows.reserve(static_cast<std::size_t>(n_neg));
  long attempts = 0;
  while (got_pos < n_pos || got_neg < n_neg) {
    if (++attempts > cfg.max_attempts) {
      throw std::runtime_error("synthetic generation failed for '" + domain +
                               "': class counts unreachable within attempt cap"
                               " (degenerate labeler)");
    }
    Vector sample = bp.mean + cfg.noise_sigma * draw_standard_normal(rng, cfg.dim);
    const double noise = cfg.label_noise_sigma * rng.normal();
    const double score = bp.labeler_weights.dot(sample) + noise;
    const int label = score >= 0.0 ? 1 : -1;
    if (label > 0 && got_pos < n_pos) {
      pos_rows.push_back(std::move(sample));
      ++got_pos;
    } else if (label < 0 && got_neg < n_neg) {
      neg_rows.push_back(std::move(sample));
      ++got_neg;
    }
  }
  for (Index i = 0; i < n_pos; ++i) {
    x.row(i) = pos_rows[static_cast<std::size_t>(i)];
    y[i] = 1;
  }
  for (Index i = 0; i < n_neg; ++i) {
    x.row(n_pos + i) = neg_rows[static_cast<std::size_t>(i)];
    y[n_pos + i] = -1;
  }
}

}  // namespace

std::vector<DomainBlueprint> synthetic_blueprints(const SyntheticConfig& config) {
  config.validate();
  Rng rng(config.seed);
  return draw_blueprints(config, rng);
}

SyntheticData generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const auto blueprints = draw_blueprints(config, rng);

  SyntheticData out;
  out.sources.resize(static_cast<std::size_t>(config.num_sources));
  for (int k = 0; k < config.num_sources; ++k) {
    DomainDataset& ds = out.sources[static_cast<std::size_t>(k)];
    ds.name = "source" + std::to_string(k + 1);
    sample_balanced(config, blueprints[static_cast<std::size_t>(k)], rng,
                    config.per_source_pos, config.per_source_neg, ds.name,
                    ds.labeled_x, ds.labeled_y);
  }

  const DomainBlueprint& target_bp = blueprints.back();
  DomainDataset& target = out.target;
  target.name = "target";

  // Unlabeled training pool, same size as one source and balanced the same
  // way; its labels stay hidden (there is no target oracle downstream).
  const Index pool_total = config.per_source_pos + config.per_source_neg;
  const Index pool_pos = (pool_total + 1) / 2;
  Matrix pool_x;
  IntVector pool_y;
  sample_balanced(config, target_bp, rng, pool_pos, pool_total - pool_pos,
                  "target-pool", pool_x, pool_y);
  target.unlabeled_x = std::move(pool_x);
  target.hidden_labels = std::move(pool_y);

  // Held-out balanced test set, stored as the target's labeled block.
  const Index test_pos = (config.target_test_size + 1) / 2;
  sample_balanced(config, target_bp, rng, test_pos,
                  config.target_test_size - test_pos, "target-test",
                  target.labeled_x, target.labeled_y);

  for (const auto& s : out.sources) s.validate();
  target.validate();
  return out;
}

}  // namespace mstl
