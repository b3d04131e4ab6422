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

#include <functional>
#include <string>
#include <vector>

#include "mstl/dataset.hpp"
#include "mstl/ensemble.hpp"
#include "mstl/kmm.hpp"
#include "mstl/rng.hpp"
#include "mstl/svm.hpp"
#include "mstl/types.hpp"

namespace mstl {

enum class Strategy {
  kAmsat,           // explore/exploit source pick + alpha-weighted uncertainty
  kAmsatUs,         // same source pick, pure uncertainty inside the source
  kRandom,          // uniform over every unlabeled example
  kUncertainty,     // global maximum uncertainty
  kRepresentative,  // global maximum mean-normalized alpha
  kProximity,       // closest source, uniform inside it
};

const char* strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

struct QueryRecord {
  int step = 0;          // 1-based
  int source = 0;
  Index index = 0;       // index into the source's frozen aggregate order
  int explore_flag = 0;  // 1 when the exploration branch picked the source
  int label = 0;         // oracle answer
};

// One source's data in the frozen aggregate order (labeled block first,
// then unlabeled). `labels` holds the true label of every row; rows listed
// in `unlabeled` have not revealed theirs yet.
struct SourcePool {
  std::string name;
  Matrix x;
  IntVector labels;
  std::vector<Index> labeled;    // insertion order: initial block, then queries
  std::vector<Index> unlabeled;  // ascending

  Matrix labeled_x() const;
  IntVector labeled_y() const;
  Vector labeled_weights(const Vector& alpha) const;
};

struct ActiveState {
  std::vector<SourcePool> pools;
  std::vector<Vector> alphas;       // frozen matching weights, one per source
  std::vector<LinearModel> models;  // retrained as queries land
  Vector labeled_ratios;            // n_k^L / sum_j n_j^L
  int budget_total = 0;
  int budget_spent = 0;
  Rng rng;
  std::vector<QueryRecord> log;
  TrainConfig train_config;

  Index total_unlabeled() const;
};

// Builds the state from split sources. Every source must carry hidden labels
// for its whole unlabeled pool (the simulated oracle), and alphas must match
// the aggregate sizes.
ActiveState make_active_state(const std::vector<DomainDataset>& sources,
                              const std::vector<KmmSolution>& matching,
                              const std::vector<LinearModel>& models,
                              int budget, std::uint64_t seed,
                              const TrainConfig& train_config);

// min(1, KL(ratios || uniform)) in nats; 0 iff the ratios are uniform.
double exploration_probability(const Vector& labeled_ratios);

// Explore: probability proportional to 1/(n_k^L + 1). Exploit: the ensemble
// weights. Sources without unlabeled data are masked out before
// renormalizing; throws when nothing is left to query.
int pick_source(ActiveState& state, const EnsembleWeights& weights,
                bool explore);

// argmax over the pool's unlabeled rows of uncertainty * frozen alpha,
// ties to the lowest aggregate index.
Index pick_example_amsat(const SourcePool& pool, const Vector& alpha,
                         const LinearModel& model);

// One query: pick a source and an example per the strategy, reveal the
// oracle label, move the example into the labeled pool and retrain that
// source's model on its alpha-weighted labeled data.
QueryRecord step(ActiveState& state, Strategy strategy,
                 const ProximityVector& proximity,
                 const EnsembleWeights& weights);

struct CurvePoint {
  int step = 0;
  double accuracy = 0.0;
};
using LearningCurve = std::vector<CurvePoint>;

// Accuracy callback: called with the state after every query (and once
// before the first), together with the refreshed relation matrix and
// ensemble weights.
using EvalHook = std::function<double(int step, const ActiveState&,
                                      const RelationMatrix&,
                                      const EnsembleWeights&)>;

// Runs `budget` queries. The relation matrix and combined weights are
// recomputed after every retrain; proximity stays frozen. The returned curve
// has budget+1 points starting at step 0.
LearningCurve run_active(ActiveState& state, Strategy strategy, int budget,
                         const ProximityVector& proximity,
                         double concentration, double error_spread,
                         const EvalHook& eval);

// Query log as `t,source,index,explore,label`.
void write_query_log_csv(const std::vector<QueryRecord>& log,
                         const std::string& path);

}  // namespace mstl
