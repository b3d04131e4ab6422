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

#include "mstl/active.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mstl/csv.hpp"

namespace mstl {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kAmsat: return "AMSAT";
    case Strategy::kAmsatUs: return "AMSAT_US";
    case Strategy::kRandom: return "Random";
    case Strategy::kUncertainty: return "Uncertainty";
    case Strategy::kRepresentative: return "Representative";
    case Strategy::kProximity: return "Proximity";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "AMSAT") return Strategy::kAmsat;
  if (name == "AMSAT_US") return Strategy::kAmsatUs;
  if (name == "Random") return Strategy::kRandom;
  if (name == "Uncertainty") return Strategy::kUncertainty;
  if (name == "Representative") return Strategy::kRepresentative;
  if (name == "Proximity") return Strategy::kProximity;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

Matrix SourcePool::labeled_x() const {
  Matrix out(static_cast<Index>(labeled.size()), x.cols());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    out.row(static_cast<Index>(i)) = x.row(labeled[i]);
  }
  return out;
}

IntVector SourcePool::labeled_y() const {
  IntVector out(static_cast<Index>(labeled.size()));
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    out[static_cast<Index>(i)] = labels[labeled[i]];
  }
  return out;
}

Vector SourcePool::labeled_weights(const Vector& alpha) const {
  Vector out(static_cast<Index>(labeled.size()));
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    out[static_cast<Index>(i)] = alpha[labeled[i]];
  }
  return out;
}

Index ActiveState::total_unlabeled() const {
  Index total = 0;
  for (const auto& pool : pools) {
    total += static_cast<Index>(pool.unlabeled.size());
  }
  return total;
}

namespace {

Vector current_ratios(const std::vector<SourcePool>& pools) {
  const Index k = static_cast<Index>(pools.size());
  Vector ratios(k);
  double total = 0.0;
  for (Index i = 0; i < k; ++i) {
    ratios[i] = static_cast<double>(pools[static_cast<std::size_t>(i)].labeled.size());
    total += ratios[i];
  }
  if (total > 0.0) {
    ratios /= total;
  } else {
    ratios.setConstant(1.0 / static_cast<double>(k));
  }
  return ratios;
}

LinearModel retrain(const ActiveState& state, int source) {
  const SourcePool& pool = state.pools[static_cast<std::size_t>(source)];
  const Vector& alpha = state.alphas[static_cast<std::size_t>(source)];
  return train_source_model(pool.labeled_x(), pool.labeled_y(),
                            pool.labeled_weights(alpha), state.train_config);
}

int sample_from(Rng& rng, const Vector& probabilities) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (Index i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (u < acc) return static_cast<int>(i);
  }
  for (Index i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return static_cast<int>(i);
  }
  throw std::logic_error("sample_from: no positive mass");
}

}  // namespace

ActiveState make_active_state(const std::vector<DomainDataset>& sources,
                              const std::vector<KmmSolution>& matching,
                              const std::vector<LinearModel>& models,
                              int budget, std::uint64_t seed,
                              const TrainConfig& train_config)
{
  if (sources.empty() || matching.size() != sources.size() ||
      models.size() != sources.size()) {
    throw std::invalid_argument("make_active_state: inconsistent inputs");
  }
  ActiveState state{{}, {}, models, {}, budget, 0, Rng(seed), {}, train_config};
  if (budget < 0) throw std::invalid_argument("make_active_state: budget < 0");
  for (const auto& src : sources) {
    src.validate();
    if (src.n_unlabeled() > 0 && !src.has_oracle()) {
      throw std::invalid_argument("source '" + src.name +
                                  "' has no hidden labels to answer queries");
    }
    SourcePool pool;
    pool.name = src.name;
    pool.x = src.aggregate_x();
    pool.labels.resize(pool.x.rows());
    pool.labels.head(src.n_labeled()) = src.labeled_y;
    if (src.n_unlabeled() > 0) {
      pool.labels.tail(src.n_unlabeled()) = src.hidden_labels;
    }
    for (Index i = 0; i < src.n_labeled(); ++i) pool.labeled.push_back(i);
    for (Index i = 0; i < src.n_unlabeled(); ++i) {
      pool.unlabeled.push_back(src.n_labeled() + i);
    }
    state.pools.push_back(std::move(pool));
  }
  for (std::size_t k = 0; k < sources.size(); ++k) {
    if (matching[k].alpha.size() != state.pools[k].x.rows()) {
      throw std::invalid_argument("make_active_state: alpha size mismatch");
    }
    state.alphas.push_back(matching[k].alpha);
  }
  if (budget > state.total_unlabeled()) {
    throw std::invalid_argument("make_active_state: budget exceeds pool size");
  }
  state.labeled_ratios = current_ratios(state.pools);
  return state;
}

double exploration_probability(const Vector& labeled_ratios) {
  const Index k = labeled_ratios.size();
  if (k == 0) throw std::invalid_argument("exploration_probability: empty");
  double sum = 0.0;
  for (Index i = 0; i < k; ++i) {
    if (labeled_ratios[i] < 0.0) {
      throw std::invalid_argument("exploration_probability: negative entry");
    }
    sum += labeled_ratios[i];
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("exploration_probability: not normalized");
  }
  double kl = 0.0;
  for (Index i = 0; i < k; ++i) {
    if (labeled_ratios[i] > 0.0) {
      kl += labeled_ratios[i] *
            std::log(labeled_ratios[i] * static_cast<double>(k));
    }
  }
  return std::min(1.0, std::max(0.0, kl));
}

int pick_source(ActiveState& state, const EnsembleWeights& weights,
                bool explore) {
  const Index k = static_cast<Index>(state.pools.size());
  Vector q(k);
  for (Index i = 0; i < k; ++i) {
    const SourcePool& pool = state.pools[static_cast<std::size_t>(i)];
    if (pool.unlabeled.empty()) {
      q[i] = 0.0;
    } else if (explore) {
      q[i] = 1.0 / (static_cast<double>(pool.labeled.size()) + 1.0);
    } else {
      q[i] = weights.weights[i];
    }
  }
  const double total = q.sum();
  if (!(total > 0.0)) {
    // Exploit weights can concentrate on exhausted sources; fall back to the
    // availability mask before giving up.
    for (Index i = 0; i < k; ++i) {
      q[i] = state.pools[static_cast<std::size_t>(i)].unlabeled.empty() ? 0.0 : 1.0;
    }
    if (!(q.sum() > 0.0)) {
      throw std::runtime_error("pick_source: all unlabeled pools empty");
    }
    q /= q.sum();
  } else {
    q /= total;
  }
  return sample_from(state.rng, q);
}

Index pick_example_amsat(const SourcePool& pool, const Vector& alpha,
                         const LinearModel& model) {
  if (pool.unlabeled.empty()) {
    throw std::invalid_argument("pick_example_amsat: empty pool");
  }
  Index best = pool.unlabeled.front();
  double best_score = -1.0;
  for (Index idx : pool.unlabeled) {
    const double score = uncertainty_score(model, pool.x.row(idx)) * alpha[idx];
    if (score > best_score) {
      best_score = score;
      best = idx;
    }
  }
  return best;
}

namespace {

Index pick_example_uncertainty(const SourcePool& pool, const LinearModel& model) {
  Index best = pool.unlabeled.front();
  double best_score = -1.0;
  for (Index idx : pool.unlabeled) {
    const double score = uncertainty_score(model, pool.x.row(idx));
    if (score > best_score) {
      best_score = score;
      best = idx;
    }
  }
  return best;
}

}  // namespace

QueryRecord step(ActiveState& state, Strategy strategy,
                 const ProximityVector& proximity,
                 const EnsembleWeights& weights) {
  if (state.budget_spent >= state.budget_total) {
    throw std::runtime_error("step: budget exhausted");
  }
  if (state.total_unlabeled() == 0) {
    throw std::runtime_error("step: no unlabeled data left");
  }
  const std::size_t k = state.pools.size();

  int source = -1;
  Index example = -1;
  int explore_flag = 0;

  switch (strategy) {
    case Strategy::kAmsat:
    case Strategy::kAmsatUs: {
      state.labeled_ratios = current_ratios(state.pools);
      const double p = exploration_probability(state.labeled_ratios);
      const bool explore = state.rng.bernoulli(p);
      explore_flag = explore ? 1 : 0;
      source = pick_source(state, weights, explore);
      const SourcePool& pool = state.pools[static_cast<std::size_t>(source)];
      const auto& model = state.models[static_cast<std::size_t>(source)];
      example = strategy == Strategy::kAmsat
                    ? pick_example_amsat(
                          pool, state.alphas[static_cast<std::size_t>(source)],
                          model)
                    : pick_example_uncertainty(pool, model);
      break;
    }
    case Strategy::kRandom: {
      const Index total = state.total_unlabeled();
      Index r = static_cast<Index>(
          state.rng.uniform_index(static_cast<std::uint64_t>(total)));
      for (std::size_t i = 0; i < k; ++i) {
        const Index size = static_cast<Index>(state.pools[i].unlabeled.size());
        if (r < size) {
          source = static_cast<int>(i);
          example = state.pools[i].unlabeled[static_cast<std::size_t>(r)];
          break;
        }
        r -= size;
      }
      break;
    }
    case Strategy::kUncertainty: {
      double best = -1.0;
      for (std::size_t i = 0; i < k; ++i) {
        const SourcePool& pool = state.pools[i];
        for (Index idx : pool.unlabeled) {
          const double score = uncertainty_score(state.models[i], pool.x.row(idx));
          if (score > best) {
            best = score;
            source = static_cast<int>(i);
            example = idx;
          }
        }
      }
      break;
    }
    case Strategy::kRepresentative: {
      // Compare alphas across sources after dividing by each source's mean
      // alpha, so slack-induced scale drift does not favor a source.
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < k; ++i) {
        const SourcePool& pool = state.pools[i];
        const double mean = state.alphas[i].mean();
        const double scale = mean > 0.0 ? mean : 1.0;
        for (Index idx : pool.unlabeled) {
          const double score = state.alphas[i][idx] / scale;
          if (score > best) {
            best = score;
            source = static_cast<int>(i);
            example = idx;
          }
        }
      }
      break;
    }
    case Strategy::kProximity: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < k; ++i) {
        if (state.pools[i].unlabeled.empty()) continue;
        if (proximity.weights[static_cast<Index>(i)] > best) {
          best = proximity.weights[static_cast<Index>(i)];
          source = static_cast<int>(i);
        }
      }
      if (source < 0) throw std::runtime_error("step: no unlabeled data left");
      const auto& unlabeled = state.pools[static_cast<std::size_t>(source)].unlabeled;
      example = unlabeled[state.rng.uniform_index(unlabeled.size())];
      break;
    }
  }

  SourcePool& pool = state.pools[static_cast<std::size_t>(source)];
  const auto it = std::find(pool.unlabeled.begin(), pool.unlabeled.end(), example);
  if (it == pool.unlabeled.end()) {
    throw std::logic_error("step: selected example not in unlabeled pool");
  }
  pool.unlabeled.erase(it);
  pool.labeled.push_back(example);

  ++state.budget_spent;
  QueryRecord record;
  record.step = state.budget_spent;
  record.source = source;
  record.index = example;
  record.explore_flag = explore_flag;
  record.label = pool.labels[example];
  state.log.push_back(record);

  state.models[static_cast<std::size_t>(source)] = retrain(state, source);
  state.labeled_ratios = current_ratios(state.pools);
  return record;
}

namespace {

// K = 1 has no peers: the relation matrix degenerates to [[0]] and the
// combined weights to (1).
void refresh_ensemble(const ActiveState& state, double concentration,
                      double error_spread, const ProximityVector& proximity,
                      RelationMatrix& relations, EnsembleWeights& weights) {
  const std::size_t k = state.pools.size();
  if (k == 1) {
    relations.weights = Matrix::Zero(1, 1);
    relations.error_spread = error_spread;
    weights.weights = Vector::Ones(1);
    weights.concentration = concentration;
    return;
  }
  std::vector<Matrix> xs;
  std::vector<IntVector> ys;
  xs.reserve(k);
  ys.reserve(k);
  for (const auto& pool : state.pools) {
    xs.push_back(pool.labeled_x());
    ys.push_back(pool.labeled_y());
  }
  relations = compute_relation_matrix(state.models, xs, ys, error_spread);
  weights = combine_weights(proximity, relations, concentration);
}

}  // namespace

LearningCurve run_active(ActiveState& state, Strategy strategy, int budget,
                         const ProximityVector& proximity,
                         double concentration, double error_spread,
                         const EvalHook& eval) {
  if (budget > state.total_unlabeled()) {
    throw std::invalid_argument("run_active: budget exceeds unlabeled data");
  }
  RelationMatrix relations;
  EnsembleWeights weights;
  refresh_ensemble(state, concentration, error_spread, proximity, relations,
                   weights);

  LearningCurve curve;
  curve.push_back({0, eval(0, state, relations, weights)});
  for (int t = 1; t <= budget; ++t) {
    step(state, strategy, proximity, weights);
    refresh_ensemble(state, concentration, error_spread, proximity, relations,
                     weights);
    curve.push_back({t, eval(t, state, relations, weights)});
  }
  return curve;
}

void write_query_log_csv(const std::vector<QueryRecord>& log,
                         const std::string& path) {
  CsvWriter w(path);
  w.raw("t,source,index,explore,label");
  for (const auto& rec : log) {
    w.row({std::to_string(rec.step), std::to_string(rec.source),
           std::to_string(rec.index), std::to_string(rec.explore_flag),
           std::to_string(rec.label)});
  }
}

}  // namespace mstl
