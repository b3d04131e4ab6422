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

#include "mstl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "mstl/csv.hpp"
#include "mstl/stats.hpp"

namespace mstl {

const char* method_name(Method m) {
  switch (m) {
    case Method::kKmmBest: return "KMM_best";
    case Method::kKmmAggregate: return "KMM_A";
    case Method::kPwMstlVote: return "PW_MSTL_b";
    case Method::kPwMstl: return "PW_MSTL";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "KMM_best") return Method::kKmmBest;
  if (name == "KMM_A") return Method::kKmmAggregate;
  if (name == "PW_MSTL_b") return Method::kPwMstlVote;
  if (name == "PW_MSTL") return Method::kPwMstl;
  throw std::invalid_argument("unknown method '" + name + "'");
}

const char* fraction_assignment_name(FractionAssignment a) {
  switch (a) {
    case FractionAssignment::kRandom: return "random";
    case FractionAssignment::kCase1: return "case1";
    case FractionAssignment::kCase2: return "case2";
  }
  return "?";
}

FractionAssignment parse_fraction_assignment(const std::string& name) {
  if (name == "random") return FractionAssignment::kRandom;
  if (name == "case1") return FractionAssignment::kCase1;
  if (name == "case2") return FractionAssignment::kCase2;
  throw std::invalid_argument("unknown fraction_assignment '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!(budget_fraction >= 0.0 && budget_fraction <= 1.0)) {
    throw std::invalid_argument("config: budget_fraction outside [0,1]");
  }
  if (labeled_fractions.empty()) {
    throw std::invalid_argument("config: labeled_fractions empty");
  }
  for (double f : labeled_fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw std::invalid_argument("config: labeled fraction outside [0,1]");
    }
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("config: mu outside [0,1]");
  }
  for (double m : mu_grid) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw std::invalid_argument("config: mu_grid entry outside [0,1]");
    }
  }
  if (!(b1 > 0.0)) throw std::invalid_argument("config: b1 must be > 0");
  if (!(beta1 > 0.0)) throw std::invalid_argument("config: beta1 must be > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("config: rho must be > 0");
  if (!(svm_c > 0.0)) throw std::invalid_argument("config: svm_c must be > 0");
  if (!(target_test_fraction > 0.0 && target_test_fraction < 1.0)) {
    throw std::invalid_argument("config: target_test_fraction outside (0,1)");
  }
  if (methods.empty()) throw std::invalid_argument("config: methods empty");
  if (use_synthetic) {
    synth.validate();
  } else if (assignment != FractionAssignment::kRandom) {
    throw std::invalid_argument(
        "config: case1/case2 assignment needs synthetic proximity values");
  }
}

namespace {

constexpr std::uint64_t kFractionTag = 11;
constexpr std::uint64_t kSplitTag = 12;
constexpr std::uint64_t kSvmTag = 13;
constexpr std::uint64_t kActiveTag = 14;

std::vector<double> draw_fractions(const ExperimentConfig& cfg,
                                   std::uint64_t trial_seed, std::size_t k) {
  std::vector<double> fractions(k);
  if (cfg.labeled_fractions.size() == 1) {
    std::fill(fractions.begin(), fractions.end(), cfg.labeled_fractions[0]);
    return fractions;
  }
  Rng rng(derive_seed(trial_seed, kFractionTag));
  for (auto& f : fractions) {
    f = cfg.labeled_fractions[rng.uniform_index(cfg.labeled_fractions.size())];
  }
  if (cfg.assignment != FractionAssignment::kRandom) {
    // Rank sources by proximity value (low = most similar to the target).
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cfg.synth.proximity[a] < cfg.synth.proximity[b];
    });
    std::sort(fractions.begin(), fractions.end());
    if (cfg.assignment == FractionAssignment::kCase1) {
      // Most similar source gets the largest labeled share.
      std::reverse(fractions.begin(), fractions.end());
    }
    std::vector<double> assigned(k);
    for (std::size_t r = 0; r < k; ++r) assigned[order[r]] = fractions[r];
    return assigned;
  }
  return fractions;
}

}  // namespace

TrialData prepare_trial(const ExperimentConfig& config,
                        std::uint64_t trial_seed) {
  TrialData data;
  std::vector<DomainDataset> full_sources;
  if (config.use_synthetic) {
    SyntheticConfig synth = config.synth;
    synth.seed = trial_seed;
    SyntheticData gen = generate_synthetic(synth);
    full_sources = std::move(gen.sources);
    data.target = std::move(gen.target);
  } else {
    for (std::size_t i = 0; i < config.csv.source_paths.size(); ++i) {
      full_sources.push_back(load_dense_csv(config.csv.source_paths[i],
                                            config.csv.has_header));
    }
    DomainDataset target_full =
        load_dense_csv(config.csv.target_path, config.csv.has_header, "target");
    data.target = split_labeled_fraction(target_full, config.target_test_fraction,
                                         derive_seed(trial_seed, kSplitTag));
  }

  const auto fractions = draw_fractions(config, trial_seed, full_sources.size());
  for (std::size_t k = 0; k < full_sources.size(); ++k) {
    data.sources.push_back(split_labeled_fraction(
        full_sources[k], fractions[k],
        derive_seed(trial_seed, kSplitTag + 100 + k)));
  }
  return data;
}

TrialPipeline build_pipeline(const TrialData& data,
                             const ExperimentConfig& config,
                             std::uint64_t trial_seed) {
  const std::size_t k = data.sources.size();
  if (k == 0) throw std::invalid_argument("build_pipeline: no sources");
  if (data.target.n_unlabeled() == 0) {
    throw std::invalid_argument("build_pipeline: target has no unlabeled pool");
  }

  TrialPipeline pipe;
  pipe.train_config =
      TrainConfig{config.svm_c, 1e-4, 200, derive_seed(trial_seed, kSvmTag)};

  // One shared bandwidth from all training data (sources plus target pool).
  std::vector<Matrix> aggregates;
  aggregates.reserve(k);
  Index total_rows = data.target.n_unlabeled();
  for (const auto& src : data.sources) {
    aggregates.push_back(src.aggregate_x());
    total_rows += aggregates.back().rows();
  }
  Matrix pooled(total_rows, data.target.dim());
  Index at = 0;
  for (const auto& agg : aggregates) {
    pooled.middleRows(at, agg.rows()) = agg;
    at += agg.rows();
  }
  pooled.middleRows(at, data.target.n_unlabeled()) = data.target.unlabeled_x;
  pipe.kernel = median_bandwidth(pooled);

  KmmConfig kmm_config;
  for (std::size_t i = 0; i < k; ++i) {
    pipe.matching.push_back(solve_kmm(aggregates[i], data.target.unlabeled_x,
                                      pipe.kernel, kmm_config));
    pipe.mmds.push_back(
        compute_mmd(aggregates[i], data.target.unlabeled_x, pipe.kernel));
  }

  for (std::size_t i = 0; i < k; ++i) {
    const auto& src = data.sources[i];
    pipe.labeled_x.push_back(src.labeled_x);
    pipe.labeled_y.push_back(src.labeled_y);
    const Vector weights = pipe.matching[i].alpha.head(src.n_labeled());
    pipe.models.push_back(train_source_model(src.labeled_x, src.labeled_y,
                                             weights, pipe.train_config));
  }

  double spread = config.beta2;
  if (!(spread > 0.0)) {
    std::vector<double> values;
    for (const auto& m : pipe.mmds) values.push_back(m.value);
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double med = n % 2 == 1 ? values[n / 2]
                                  : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    spread = med > 0.0 ? 1.0 / med : 1.0;
  }
  pipe.proximity = compute_proximity(pipe.mmds, spread, config.rho);

  if (k >= 2) {
    pipe.relations = compute_relation_matrix(pipe.models, pipe.labeled_x,
                                             pipe.labeled_y, config.beta1);
  } else {
    pipe.relations.weights = Matrix::Zero(1, 1);
    pipe.relations.error_spread = config.beta1;
  }
  return pipe;
}

namespace {

LinearModel train_pooled_model(const TrialPipeline& pipe,
                               const TrialData& data) {
  Index total = 0;
  for (const auto& x : pipe.labeled_x) total += x.rows();
  Matrix x(total, data.target.dim());
  IntVector y(total);
  Vector w(total);
  Index at = 0;
  for (std::size_t i = 0; i < pipe.labeled_x.size(); ++i) {
    const Index n = pipe.labeled_x[i].rows();
    x.middleRows(at, n) = pipe.labeled_x[i];
    y.segment(at, n) = pipe.labeled_y[i];
    w.segment(at, n) = pipe.matching[i].alpha.head(n);
    at += n;
  }
  return train_source_model(x, y, w, pipe.train_config);
}

double ensemble_accuracy(const TrialPipeline& pipe, const TrialData& data,
                         double mu, double b1, bool gated) {
  EnsembleWeights weights =
      pipe.models.size() == 1
          ? EnsembleWeights{Vector::Ones(1), mu}
          : combine_weights(pipe.proximity, pipe.relations, mu);
  const Matrix& test_x = data.target.labeled_x;
  const IntVector& test_y = data.target.labeled_y;
  Index correct = 0;
  for (Index i = 0; i < test_x.rows(); ++i) {
    const Prediction pred =
        gated ? pwmstl_predict(pipe.models, pipe.relations, weights, b1,
                               test_x.row(i))
              : predict_weighted_vote(pipe.models, weights, test_x.row(i));
    if (pred.label == test_y[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_x.rows());
}

}  // namespace

double evaluate_method(const TrialPipeline& pipeline, const TrialData& data,
                       Method method, double mu, double b1) {
  const Matrix& test_x = data.target.labeled_x;
  const IntVector& test_y = data.target.labeled_y;
  if (test_x.rows() == 0) {
    throw std::invalid_argument("evaluate_method: empty target test set");
  }
  switch (method) {
    case Method::kKmmBest: {
      double best = 0.0;
      for (const auto& model : pipeline.models) {
        best = std::max(best, 1.0 - zero_one_error(model, test_x, test_y));
      }
      return best;
    }
    case Method::kKmmAggregate: {
      if (!pipeline.pooled_model.has_value()) {
        throw std::logic_error("evaluate_method: pooled model not built");
      }
      return 1.0 - zero_one_error(*pipeline.pooled_model, test_x, test_y);
    }
    case Method::kPwMstlVote:
      return ensemble_accuracy(pipeline, data, mu, 0.0, false);
    case Method::kPwMstl:
      return ensemble_accuracy(pipeline, data, mu, b1, true);
  }
  throw std::logic_error("evaluate_method: unreachable");
}

namespace {

// Runs fn(trial) over [0, trials) on `jobs` workers; results land by index.
template <typename Fn>
void parallel_trials(int trials, int jobs, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  const int n_workers = std::min(jobs, trials);
  workers.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    workers.emplace_back([&]() {
      while (true) {
        const int t = next.fetch_add(1);
        if (t >= trials) break;
        fn(t);
      }
    });
  }
  for (auto& th : workers) th.join();
}

void check_abort_rate(const std::vector<TrialResult>& trials) {
  int aborted = 0;
  std::string sample;
  for (const auto& t : trials) {
    if (t.aborted) {
      ++aborted;
      if (sample.empty()) sample = t.abort_reason;
    }
  }
  if (aborted * 10 > static_cast<int>(trials.size())) {
    throw std::runtime_error(
        "experiment failed: " + std::to_string(aborted) + "/" +
        std::to_string(trials.size()) + " trials aborted (first reason: " +
        sample + ")");
  }
}

SummaryStats summarize(const std::vector<TrialResult>& trials,
                       const std::vector<Method>& methods) {
  SummaryStats stats;
  stats.methods = methods;
  const std::size_t m = methods.size();
  std::vector<std::vector<double>> per_method(m);
  for (const auto& t : trials) {
    if (t.aborted) continue;
    for (std::size_t i = 0; i < m; ++i) per_method[i].push_back(t.accuracy[i]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    stats.means.push_back(mean(per_method[i]));
    stats.stddevs.push_back(sample_stddev(per_method[i]));
  }
  stats.p_values.assign(m, std::vector<double>(m, 1.0));
  if (!per_method.empty() && per_method[0].size() >= 2) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j) {
          stats.p_values[i][j] = paired_t_pvalue(per_method[i], per_method[j]);
        }
      }
    }
  }
  return stats;
}

void progress(bool quiet, const char* what, int t, int total) {
  if (quiet) return;
  std::printf("%s: trial %d/%d done\n", what, t + 1, total);
  std::fflush(stdout);
}

}  // namespace

double paired_significance(const std::vector<double>& a,
                           const std::vector<double>& b) {
  return paired_t_pvalue(a, b);
}

TransferResult run_transfer_experiment(const ExperimentConfig& config,
                                       int jobs, bool quiet) {
  config.validate();
  TransferResult result;
  result.trials.assign(static_cast<std::size_t>(config.trials), {});
  const bool wants_pooled =
      std::find(config.methods.begin(), config.methods.end(),
                Method::kKmmAggregate) != config.methods.end();

  parallel_trials(config.trials, jobs, [&](int t) {
    TrialResult& out = result.trials[static_cast<std::size_t>(t)];
    out.trial = t;
    const std::uint64_t trial_seed = config.master_seed + static_cast<std::uint64_t>(t);
    try {
      const TrialData data = prepare_trial(config, trial_seed);
      TrialPipeline pipe = build_pipeline(data, config, trial_seed);
      if (wants_pooled) pipe.pooled_model = train_pooled_model(pipe, data);
      for (Method m : config.methods) {
        out.accuracy.push_back(evaluate_method(pipe, data, m, config.mu, config.b1));
      }
    } catch (const std::exception& e) {
      out.aborted = true;
      out.abort_reason = e.what();
    }
    progress(quiet, "transfer", t, config.trials);
  });

  check_abort_rate(result.trials);
  result.summary = summarize(result.trials, config.methods);
  return result;
}

std::vector<MuSweepRow> sweep_mu(const ExperimentConfig& config,
                                 const std::vector<double>& grid, int jobs,
                                 bool quiet) {
  config.validate();
  if (grid.empty()) throw std::invalid_argument("sweep_mu: empty grid");
  for (double g : grid) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::invalid_argument("sweep_mu: grid value outside [0,1]");
    }
  }
  std::vector<std::vector<double>> acc(grid.size());
  std::vector<TrialResult> markers(static_cast<std::size_t>(config.trials));
  std::vector<std::vector<double>> per_trial(
      static_cast<std::size_t>(config.trials));

  parallel_trials(config.trials, jobs, [&](int t) {
    const std::uint64_t trial_seed = config.master_seed + static_cast<std::uint64_t>(t);
    try {
      const TrialData data = prepare_trial(config, trial_seed);
      const TrialPipeline pipe = build_pipeline(data, config, trial_seed);
      auto& row = per_trial[static_cast<std::size_t>(t)];
      for (double g : grid) {
        row.push_back(evaluate_method(pipe, data, Method::kPwMstl, g, config.b1));
      }
    } catch (const std::exception& e) {
      markers[static_cast<std::size_t>(t)].aborted = true;
      markers[static_cast<std::size_t>(t)].abort_reason = e.what();
    }
    progress(quiet, "sweep-mu", t, config.trials);
  });

  check_abort_rate(markers);
  for (int t = 0; t < config.trials; ++t) {
    if (markers[static_cast<std::size_t>(t)].aborted) continue;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      acc[g].push_back(per_trial[static_cast<std::size_t>(t)][g]);
    }
  }
  std::vector<MuSweepRow> rows;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    rows.push_back({grid[g], mean(acc[g]), sample_stddev(acc[g])});
  }
  return rows;
}

ActiveExperimentResult run_active_experiment(const ExperimentConfig& config,
                                             int jobs, bool quiet) {
  config.validate();
  if (config.strategies.empty()) {
    throw std::invalid_argument("run_active_experiment: no strategies");
  }

  struct TrialCurves {
    bool aborted = false;
    std::string reason;
    std::vector<LearningCurve> per_strategy;
    std::vector<std::vector<QueryRecord>> logs;
  };
  std::vector<TrialCurves> all(static_cast<std::size_t>(config.trials));
  std::atomic<int> shared_budget{-1};

  parallel_trials(config.trials, jobs, [&](int t) {
    TrialCurves& out = all[static_cast<std::size_t>(t)];
    const std::uint64_t trial_seed = config.master_seed + static_cast<std::uint64_t>(t);
    try {
      const TrialData data = prepare_trial(config, trial_seed);
      const TrialPipeline pipe = build_pipeline(data, config, trial_seed);

      Index total_examples = 0;
      for (const auto& src : data.sources) {
        total_examples += src.n_labeled() + src.n_unlabeled();
      }
      const int budget = static_cast<int>(
          std::llround(config.budget_fraction * static_cast<double>(total_examples)));
      shared_budget.store(budget);

      const EvalHook eval = [&](int, const ActiveState& state,
                                const RelationMatrix& rel,
                                const EnsembleWeights& w) {
        const Matrix& test_x = data.target.labeled_x;
        const IntVector& test_y = data.target.labeled_y;
        Index correct = 0;
        for (Index i = 0; i < test_x.rows(); ++i) {
          const Prediction p = pwmstl_predict(state.models, rel, w, config.b1,
                                              test_x.row(i));
          if (p.label == test_y[i]) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(test_x.rows());
      };

      for (std::size_t s = 0; s < config.strategies.size(); ++s) {
        ActiveState state = make_active_state(
            data.sources, pipe.matching, pipe.models, budget,
            derive_seed(trial_seed, kActiveTag + s), pipe.train_config);
        out.per_strategy.push_back(run_active(state, config.strategies[s],
                                              budget, pipe.proximity, config.mu,
                                              config.beta1, eval));
        out.logs.push_back(state.log);
      }
    } catch (const std::exception& e) {
      out.aborted = true;
      out.reason = e.what();
      out.per_strategy.clear();
      out.logs.clear();
    }
    progress(quiet, "active", t, config.trials);
  });

  std::vector<TrialResult> markers(static_cast<std::size_t>(config.trials));
  for (int t = 0; t < config.trials; ++t) {
    markers[static_cast<std::size_t>(t)].aborted = all[static_cast<std::size_t>(t)].aborted;
    markers[static_cast<std::size_t>(t)].abort_reason = all[static_cast<std::size_t>(t)].reason;
  }
  check_abort_rate(markers);

  ActiveExperimentResult result;
  result.budget = std::max(0, shared_budget.load());

  const std::size_t n_strategies = config.strategies.size();
  std::optional<std::size_t> random_pos;
  for (std::size_t s = 0; s < n_strategies; ++s) {
    if (config.strategies[s] == Strategy::kRandom) random_pos = s;
  }

  for (std::size_t s = 0; s < n_strategies; ++s) {
    StrategyCurve curve;
    curve.strategy = config.strategies[s];
    const std::size_t points = static_cast<std::size_t>(result.budget) + 1;
    for (std::size_t p = 0; p < points; ++p) {
      std::vector<double> at_p;
      for (const auto& trial : all) {
        if (trial.aborted) continue;
        at_p.push_back(trial.per_strategy[s][p].accuracy);
      }
      curve.mean_accuracy.push_back(mean(at_p));
      curve.stddev.push_back(sample_stddev(at_p));
    }
    for (const auto& trial : all) {
      if (trial.aborted) continue;
      double total = 0.0;
      for (const auto& point : trial.per_strategy[s]) total += point.accuracy;
      curve.trial_aulc.push_back(total /
                                 static_cast<double>(trial.per_strategy[s].size()));
    }
    curve.mean_aulc = mean(curve.trial_aulc);
    result.curves.push_back(std::move(curve));
  }

  if (random_pos.has_value()) {
    for (auto& curve : result.curves) {
      curve.p_vs_random = paired_t_pvalue(
          curve.trial_aulc, result.curves[*random_pos].trial_aulc);
    }
  }

  for (const auto& trial : all) {
    if (trial.aborted) continue;
    if (result.first_trial_logs.empty()) {
      for (std::size_t s = 0; s < n_strategies; ++s) {
        result.first_trial_logs[strategy_name(config.strategies[s])] =
            trial.logs[s];
      }
    }
    ++result.completed_trials;
  }
  return result;
}

void write_transfer_summary_csv(const TransferResult& result,
                                const std::string& path) {
  CsvWriter w(path);
  w.raw("method,mean,std");
  for (std::size_t i = 0; i < result.summary.methods.size(); ++i) {
    w.row({method_name(result.summary.methods[i]),
           format_double(result.summary.means[i]),
           format_double(result.summary.stddevs[i])});
  }
}

void write_transfer_trials_csv(const TransferResult& result,
                               const std::string& path) {
  CsvWriter w(path);
  w.raw("trial,method,accuracy");
  for (const auto& trial : result.trials) {
    if (trial.aborted) continue;
    for (std::size_t i = 0; i < result.summary.methods.size(); ++i) {
      w.row({std::to_string(trial.trial),
             method_name(result.summary.methods[i]),
             format_double(trial.accuracy[i])});
    }
  }
}

void write_transfer_pvalues_csv(const TransferResult& result,
                                const std::string& path) {
  CsvWriter w(path);
  w.raw("method_a,method_b,p_value");
  const auto& s = result.summary;
  for (std::size_t i = 0; i < s.methods.size(); ++i) {
    for (std::size_t j = i + 1; j < s.methods.size(); ++j) {
      w.row({method_name(s.methods[i]), method_name(s.methods[j]),
             format_double(s.p_values[i][j])});
    }
  }
}

void write_mu_sweep_csv(const std::vector<MuSweepRow>& rows,
                        const std::string& path) {
  CsvWriter w(path);
  w.raw("mu,mean,std");
  for (const auto& row : rows) {
    w.row({format_double(row.mu), format_double(row.mean_accuracy),
           format_double(row.stddev)});
  }
}

void write_active_curves_csv(const ActiveExperimentResult& result,
                             const std::string& path) {
  CsvWriter w(path);
  w.raw("strategy,t,mean_accuracy,std");
  for (const auto& curve : result.curves) {
    for (std::size_t p = 0; p < curve.mean_accuracy.size(); ++p) {
      w.row({strategy_name(curve.strategy), std::to_string(p),
             format_double(curve.mean_accuracy[p]),
             format_double(curve.stddev[p])});
    }
  }
}

void write_aulc_csv(const ActiveExperimentResult& result,
                    const std::string& path) {
  CsvWriter w(path);
  w.raw("strategy,aulc,p_vs_random");
  for (const auto& curve : result.curves) {
    w.row({strategy_name(curve.strategy), format_double(curve.mean_aulc),
           curve.p_vs_random.has_value() ? format_double(*curve.p_vs_random)
                                         : std::string()});
  }
}

}  // namespace mstl
