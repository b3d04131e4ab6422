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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mstl/active.hpp"
#include "mstl/dataset.hpp"
#include "mstl/ensemble.hpp"
#include "mstl/kmm.hpp"
#include "mstl/synthetic.hpp"

namespace mstl {

enum class Method {
  kKmmBest,       // best single alpha-weighted source classifier (oracle pick)
  kKmmAggregate,  // one classifier on all sources' alpha-weighted labeled data
  kPwMstlVote,    // combined-weight vote, no peer gating
  kPwMstl,        // confidence-gated peer ensemble
};

const char* method_name(Method m);
Method parse_method(const std::string& name);

enum class FractionAssignment { kRandom, kCase1, kCase2 };

const char* fraction_assignment_name(FractionAssignment a);
FractionAssignment parse_fraction_assignment(const std::string& name);

struct CsvDatasetSpec {
  std::vector<std::string> source_paths;
  std::string target_path;
  bool has_header = false;
};

struct ExperimentConfig {
  bool use_synthetic = true;
  SyntheticConfig synth;
  CsvDatasetSpec csv;

  // One entry: the same fraction for every source. Several entries: one is
  // drawn per source each trial.
  std::vector<double> labeled_fractions = {0.01, 0.05, 0.15, 0.30};
  FractionAssignment assignment = FractionAssignment::kRandom;
  std::vector<Method> methods = {Method::kKmmBest, Method::kKmmAggregate,
                                 Method::kPwMstlVote, Method::kPwMstl};
  std::vector<Strategy> strategies = {Strategy::kAmsat, Strategy::kRandom,
                                      Strategy::kUncertainty};
  int trials = 30;
  double mu = 0.2;
  double b1 = 1.0;
  double beta1 = 20.0;
  // <= 0 selects the automatic spread 1 / median(MMD).
  double beta2 = 0.0;
  double rho = 1.0;
  double svm_c = 10.0;
  double budget_fraction = 0.10;
  std::vector<double> mu_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  double target_test_fraction = 0.4;  // CSV targets: test share of the split
  std::uint64_t master_seed = 7;

  void validate() const;
};

// Strict JSON binding: unknown keys anywhere are an error.
ExperimentConfig parse_experiment_config_json(const std::string& json_text);
std::string resolved_config_json(const ExperimentConfig& config);

// ---- per-trial machinery (exposed for tests and the audit command) ----

struct TrialData {
  std::vector<DomainDataset> sources;  // split: labeled + unlabeled pools
  DomainDataset target;                // labeled block = held-out test set
};

// Regenerates (synthetic) or re-splits (CSV) the data for one trial.
// Deterministic in trial_seed.
TrialData prepare_trial(const ExperimentConfig& config,
                        std::uint64_t trial_seed);

// Everything mu-independent computed once per trial: shared bandwidth,
// per-source matching weights, weighted classifiers, MMDs, proximity and
// relation matrix.
struct TrialPipeline {
  KernelConfig kernel;
  std::vector<KmmSolution> matching;
  std::vector<LinearModel> models;
  std::vector<MmdValue> mmds;
  ProximityVector proximity;
  RelationMatrix relations;
  std::vector<Matrix> labeled_x;
  std::vector<IntVector> labeled_y;
  std::optional<LinearModel> pooled_model;  // for the aggregate method
  TrainConfig train_config;
};

TrialPipeline build_pipeline(const TrialData& data,
                             const ExperimentConfig& config,
                             std::uint64_t trial_seed);

// Accuracy of one method on the target test block at concentration mu with
// confidence tolerance b1.
double evaluate_method(const TrialPipeline& pipeline, const TrialData& data,
                       Method method, double mu, double b1);

// ---- experiment drivers ----

struct TrialResult {
  int trial = 0;
  bool aborted = false;
  std::string abort_reason;
  std::vector<double> accuracy;  // aligned with config.methods
};

struct SummaryStats {
  std::vector<Method> methods;
  std::vector<double> means;
  std::vector<double> stddevs;
  // p_values[i][j]: paired two-tailed t-test between methods i and j.
  std::vector<std::vector<double>> p_values;
};

struct TransferResult {
  std::vector<TrialResult> trials;
  SummaryStats summary;
};

TransferResult run_transfer_experiment(const ExperimentConfig& config,
                                       int jobs = 1, bool quiet = true);

struct MuSweepRow {
  double mu = 0.0;
  double mean_accuracy = 0.0;
  double stddev = 0.0;
};

std::vector<MuSweepRow> sweep_mu(const ExperimentConfig& config,
                                 const std::vector<double>& grid, int jobs = 1,
                                 bool quiet = true);

struct StrategyCurve {
  Strategy strategy;
  std::vector<double> mean_accuracy;  // index = step
  std::vector<double> stddev;
  std::vector<double> trial_aulc;     // per completed trial
  double mean_aulc = 0.0;
  std::optional<double> p_vs_random;
};

struct ActiveExperimentResult {
  std::vector<StrategyCurve> curves;
  int budget = 0;
  int completed_trials = 0;
  // Query logs of the first completed trial, one per strategy.
  std::map<std::string, std::vector<QueryRecord>> first_trial_logs;
};

ActiveExperimentResult run_active_experiment(const ExperimentConfig& config,
                                             int jobs = 1, bool quiet = true);

double paired_significance(const std::vector<double>& a,
                           const std::vector<double>& b);

// ---- output files ----

void write_transfer_summary_csv(const TransferResult& result,
                                const std::string& path);
void write_transfer_trials_csv(const TransferResult& result,
                               const std::string& path);
void write_transfer_pvalues_csv(const TransferResult& result,
                                const std::string& path);
void write_mu_sweep_csv(const std::vector<MuSweepRow>& rows,
                        const std::string& path);
void write_active_curves_csv(const ActiveExperimentResult& result,
                             const std::string& path);
void write_aulc_csv(const ActiveExperimentResult& result,
                    const std::string& path);

}  // namespace mstl
