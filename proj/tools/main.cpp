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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mstl/csv.hpp"
#include "mstl/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config (JSON)")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory")->required();
  cmd->add_option("--seed", args.seed_override, "override master_seed");
  cmd->add_option("--jobs", args.jobs, "worker threads (1 = sequential)");
  cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

mstl::ExperimentConfig load_config(const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + args.config_path +
                                "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  mstl::ExperimentConfig cfg =
      mstl::parse_experiment_config_json(buffer.str());
  if (args.seed_override.has_value()) cfg.master_seed = *args.seed_override;
  if (args.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
  return cfg;
}

void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::invalid_argument("cannot create output directory '" + dir + "'");
  }
  const fs::path probe = fs::path(dir) / ".write_probe";
  std::ofstream test(probe);
  if (!test) {
    throw std::invalid_argument("output directory '" + dir + "' is not writable");
  }
  test.close();
  fs::remove(probe, ec);
}

void write_run_meta(const std::string& command, const CommonArgs& args,
                    const mstl::ExperimentConfig& cfg) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["config"] = nlohmann::json::parse(mstl::resolved_config_json(cfg));
  meta["master_seed"] = cfg.master_seed;
  meta["seed_override"] = args.seed_override.has_value();
  std::vector<std::uint64_t> trial_seeds;
  for (int t = 0; t < cfg.trials; ++t) {
    trial_seeds.push_back(cfg.master_seed + static_cast<std::uint64_t>(t));
  }
  meta["trial_seeds"] = trial_seeds;
  std::ofstream out(fs::path(args.out_dir) / "run_meta.json");
  if (!out) throw std::runtime_error("cannot write run_meta.json");
  out << meta.dump(2) << "\n";
}

std::string out_path(const CommonArgs& args, const std::string& name) {
  return (fs::path(args.out_dir) / name).string();
}

int run_synth(const CommonArgs& args) {
  mstl::ExperimentConfig cfg = load_config(args);
  if (!cfg.use_synthetic) {
    throw std::invalid_argument("synth requires a synthetic dataset config");
  }
  prepare_out_dir(args.out_dir);
  write_run_meta("synth", args, cfg);
  mstl::SyntheticConfig synth = cfg.synth;
  synth.seed = cfg.master_seed;
  const mstl::SyntheticData data = mstl::generate_synthetic(synth);
  for (const auto& src : data.sources) {
    mstl::save_dense_csv(src, out_path(args, src.name + ".csv"));
  }
  mstl::save_dense_csv(data.target, out_path(args, "target.csv"));
  if (!args.quiet) {
    std::printf("wrote %zu source files and target.csv to %s\n",
                data.sources.size(), args.out_dir.c_str());
  }
  return 0;
}

int run_transfer(const CommonArgs& args) {
  mstl::ExperimentConfig cfg = load_config(args);
  prepare_out_dir(args.out_dir);
  write_run_meta("transfer", args, cfg);
  const mstl::TransferResult result =
      mstl::run_transfer_experiment(cfg, args.jobs, args.quiet);
  mstl::write_transfer_summary_csv(result, out_path(args, "transfer_summary.csv"));
  mstl::write_transfer_trials_csv(result, out_path(args, "transfer_trials.csv"));
  mstl::write_transfer_pvalues_csv(result, out_path(args, "transfer_pvalues.csv"));
  if (!args.quiet) {
    for (std::size_t i = 0; i < result.summary.methods.size(); ++i) {
      std::printf("%-10s mean=%.4f std=%.4f\n",
                  mstl::method_name(result.summary.methods[i]),
                  result.summary.means[i], result.summary.stddevs[i]);
    }
  }
  return 0;
}

int run_sweep_mu(const CommonArgs& args) {
  mstl::ExperimentConfig cfg = load_config(args);
  prepare_out_dir(args.out_dir);
  write_run_meta("sweep-mu", args, cfg);
  const auto rows = mstl::sweep_mu(cfg, cfg.mu_grid, args.jobs, args.quiet);
  mstl::write_mu_sweep_csv(rows, out_path(args, "mu_sweep.csv"));
  if (!args.quiet) {
    for (const auto& row : rows) {
      std::printf("mu=%.2f mean=%.4f std=%.4f\n", row.mu, row.mean_accuracy,
                  row.stddev);
    }
  }
  return 0;
}

int run_active(const CommonArgs& args) {
  mstl::ExperimentConfig cfg = load_config(args);
  prepare_out_dir(args.out_dir);
  write_run_meta("active", args, cfg);
  const mstl::ActiveExperimentResult result =
      mstl::run_active_experiment(cfg, args.jobs, args.quiet);
  mstl::write_active_curves_csv(result, out_path(args, "active_curves.csv"));
  mstl::write_aulc_csv(result, out_path(args, "aulc.csv"));
  for (const auto& [name, log] : result.first_trial_logs) {
    mstl::write_query_log_csv(log, out_path(args, "query_log_" + name + ".csv"));
  }
  if (!args.quiet) {
    for (const auto& curve : result.curves) {
      std::printf("%-14s aulc=%.4f\n", mstl::strategy_name(curve.strategy),
                  curve.mean_aulc);
    }
  }
  return 0;
}

int run_kmm_audit(const CommonArgs& args) {
  mstl::ExperimentConfig cfg = load_config(args);
  prepare_out_dir(args.out_dir);
  write_run_meta("kmm-audit", args, cfg);

  // Audits the first trial's data partition (seed = master_seed).
  const mstl::TrialData data = mstl::prepare_trial(cfg, cfg.master_seed);
  const mstl::TrialPipeline pipe =
      mstl::build_pipeline(data, cfg, cfg.master_seed);

  mstl::CsvWriter summary(out_path(args, "kmm_summary.csv"));
  summary.raw(
      "source,name,n,n_labeled,bandwidth,mmd,delta,objective,iterations,"
      "kkt_residual,converged");
  for (std::size_t k = 0; k < data.sources.size(); ++k) {
    const auto& src = data.sources[k];
    const auto& sol = pipe.matching[k];
    mstl::write_kmm_csv(sol, src.n_labeled(),
                        out_path(args, "alpha_source_" + std::to_string(k + 1) +
                                           ".csv"));
    summary.row({std::to_string(k + 1), src.name,
                 std::to_string(sol.alpha.size()),
                 std::to_string(src.n_labeled()),
                 mstl::format_double(pipe.kernel.bandwidth),
                 mstl::format_double(pipe.mmds[k].value),
                 mstl::format_double(pipe.proximity.weights[
                     static_cast<mstl::Index>(k)]),
                 mstl::format_double(sol.objective),
                 std::to_string(sol.iterations),
                 mstl::format_double(sol.kkt_residual),
                 sol.converged ? "1" : "0"});
  }
  if (!args.quiet) {
    std::printf("wrote per-source alpha files and kmm_summary.csv to %s\n",
                args.out_dir.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-source transfer learning experiments"};
  app.require_subcommand(1);

  CommonArgs synth_args, transfer_args, sweep_args, active_args, audit_args;
  CLI::App* synth = app.add_subcommand("synth", "generate synthetic CSV data");
  add_common(synth, synth_args);
  CLI::App* transfer =
      app.add_subcommand("transfer", "run the transfer comparison");
  add_common(transfer, transfer_args);
  CLI::App* sweep =
      app.add_subcommand("sweep-mu", "accuracy across the mu grid");
  add_common(sweep, sweep_args);
  CLI::App* active =
      app.add_subcommand("active", "run the active-learning comparison");
  add_common(active, active_args);
  CLI::App* audit =
      app.add_subcommand("kmm-audit", "dump matching weights and MMDs");
  add_common(audit, audit_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (synth->parsed()) return run_synth(synth_args);
    if (transfer->parsed()) return run_transfer(transfer_args);
    if (sweep->parsed()) return run_sweep_mu(sweep_args);
    if (active->parsed()) return run_active(active_args);
    if (audit->parsed()) return run_kmm_audit(audit_args);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 2;
  }
  return 1;
}
