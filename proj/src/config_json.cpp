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

#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mstl/experiment.hpp"

namespace mstl {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& item : obj.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      throw std::invalid_argument("config: unknown key '" + item.key() +
                                  "' in " + where);
    }
  }
}

Vector parse_vector_or_scalar(const json& v, int dim, const std::string& key) {
  if (v.is_number()) {
    return Vector::Constant(dim, v.get<double>());
  }
  if (v.is_array()) {
    Vector out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw std::invalid_argument("config: '" + key + "' must be numeric");
      }
      out[static_cast<Index>(i)] = v[i].get<double>();
    }
    return out;
  }
  throw std::invalid_argument("config: '" + key + "' must be a number or array");
}

SyntheticConfig parse_synthetic(const json& obj) {
  require_keys(obj,
               {"type", "num_sources", "dim", "target_mean",
                "fluctuation_scale", "proximity", "noise_sigma", "base_weights",
                "label_drift", "label_noise_sigma", "per_source_pos",
                "per_source_neg", "target_test_size", "max_attempts"},
               "dataset");
  SyntheticConfig cfg;
  if (obj.contains("num_sources")) cfg.num_sources = obj["num_sources"].get<int>();
  if (obj.contains("dim")) cfg.dim = obj["dim"].get<int>();
  if (obj.contains("target_mean")) {
    cfg.target_mean = parse_vector_or_scalar(obj["target_mean"], cfg.dim,
                                             "target_mean");
  }
  if (obj.contains("fluctuation_scale")) {
    cfg.fluctuation_scale = obj["fluctuation_scale"].get<double>();
  }
  if (obj.contains("proximity")) {
    cfg.proximity = obj["proximity"].get<std::vector<double>>();
  } else if (cfg.num_sources != 5) {
    throw std::invalid_argument(
        "config: 'proximity' is required when num_sources != 5");
  }
  if (obj.contains("noise_sigma")) cfg.noise_sigma = obj["noise_sigma"].get<double>();
  if (obj.contains("base_weights")) {
    cfg.base_weights = parse_vector_or_scalar(obj["base_weights"], cfg.dim,
                                              "base_weights");
  }
  if (obj.contains("label_drift")) cfg.label_drift = obj["label_drift"].get<double>();
  if (obj.contains("label_noise_sigma")) {
    cfg.label_noise_sigma = obj["label_noise_sigma"].get<double>();
  }
  if (obj.contains("per_source_pos")) {
    cfg.per_source_pos = obj["per_source_pos"].get<int>();
  }
  if (obj.contains("per_source_neg")) {
    cfg.per_source_neg = obj["per_source_neg"].get<int>();
  }
  if (obj.contains("target_test_size")) {
    cfg.target_test_size = obj["target_test_size"].get<int>();
  }
  if (obj.contains("max_attempts")) cfg.max_attempts = obj["max_attempts"].get<long>();
  cfg.validate();
  return cfg;
}

CsvDatasetSpec parse_csv_spec(const json& obj) {
  require_keys(obj, {"type", "sources", "target", "has_header"}, "dataset");
  CsvDatasetSpec spec;
  if (!obj.contains("sources") || !obj.contains("target")) {
    throw std::invalid_argument("config: csv dataset needs 'sources' and 'target'");
  }
  spec.source_paths = obj["sources"].get<std::vector<std::string>>();
  spec.target_path = obj["target"].get<std::string>();
  if (obj.contains("has_header")) spec.has_header = obj["has_header"].get<bool>();
  if (spec.source_paths.empty()) {
    throw std::invalid_argument("config: csv dataset has no sources");
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_experiment_config_json(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw std::invalid_argument("config: top level must be an object");
  }
  require_keys(root,
               {"dataset", "labeled_fractions", "fraction_assignment",
                "methods", "strategies", "trials", "mu", "b1", "beta1", "beta2",
                "rho", "svm_c", "budget_fraction", "mu_grid",
                "target_test_fraction", "master_seed"},
               "top level");

  ExperimentConfig cfg;
  if (!root.contains("dataset") || !root["dataset"].is_object()) {
    throw std::invalid_argument("config: missing 'dataset' object");
  }
  const json& ds = root["dataset"];
  const std::string type = ds.value("type", "synthetic");
  if (type == "synthetic") {
    cfg.use_synthetic = true;
    cfg.synth = parse_synthetic(ds);
  } else if (type == "csv") {
    cfg.use_synthetic = false;
    cfg.csv = parse_csv_spec(ds);
  } else {
    throw std::invalid_argument("config: dataset type must be synthetic or csv");
  }

  if (root.contains("labeled_fractions")) {
    const json& lf = root["labeled_fractions"];
    if (lf.is_number()) {
      cfg.labeled_fractions = {lf.get<double>()};
    } else if (lf.is_array() && !lf.empty()) {
      cfg.labeled_fractions = lf.get<std::vector<double>>();
    } else {
      throw std::invalid_argument(
          "config: labeled_fractions must be a number or non-empty array");
    }
  }
  if (root.contains("fraction_assignment")) {
    cfg.assignment =
        parse_fraction_assignment(root["fraction_assignment"].get<std::string>());
  }
  if (root.contains("methods")) {
    cfg.methods.clear();
    for (const auto& m : root["methods"]) {
      cfg.methods.push_back(parse_method(m.get<std::string>()));
    }
  }
  if (root.contains("strategies")) {
    cfg.strategies.clear();
    for (const auto& s : root["strategies"]) {
      cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
  }
  if (root.contains("trials")) cfg.trials = root["trials"].get<int>();
  if (root.contains("mu")) cfg.mu = root["mu"].get<double>();
  if (root.contains("b1")) cfg.b1 = root["b1"].get<double>();
  if (root.contains("beta1")) cfg.beta1 = root["beta1"].get<double>();
  if (root.contains("beta2") && !root["beta2"].is_null()) {
    cfg.beta2 = root["beta2"].get<double>();
  }
  if (root.contains("rho")) cfg.rho = root["rho"].get<double>();
  if (root.contains("svm_c")) cfg.svm_c = root["svm_c"].get<double>();
  if (root.contains("budget_fraction")) {
    cfg.budget_fraction = root["budget_fraction"].get<double>();
  }
  if (root.contains("mu_grid")) {
    cfg.mu_grid = root["mu_grid"].get<std::vector<double>>();
  }
  if (root.contains("target_test_fraction")) {
    cfg.target_test_fraction = root["target_test_fraction"].get<double>();
  }
  if (root.contains("master_seed")) {
    cfg.master_seed = root["master_seed"].get<std::uint64_t>();
  }
  cfg.validate();
  return cfg;
}

std::string resolved_config_json(const ExperimentConfig& config) {
  json root;
  json ds;
  if (config.use_synthetic) {
    const auto& s = config.synth;
    ds["type"] = "synthetic";
    ds["num_sources"] = s.num_sources;
    ds["dim"] = s.dim;
    const Vector mu_t = s.resolved_target_mean();
    ds["target_mean"] = std::vector<double>(mu_t.data(), mu_t.data() + s.dim);
    ds["fluctuation_scale"] = s.fluctuation_scale;
    ds["proximity"] = s.proximity;
    ds["noise_sigma"] = s.noise_sigma;
    const Vector w = s.resolved_base_weights();
    ds["base_weights"] = std::vector<double>(w.data(), w.data() + s.dim);
    ds["label_drift"] = s.label_drift;
    ds["label_noise_sigma"] = s.label_noise_sigma;
    ds["per_source_pos"] = s.per_source_pos;
    ds["per_source_neg"] = s.per_source_neg;
    ds["target_test_size"] = s.target_test_size;
    ds["max_attempts"] = s.max_attempts;
  } else {
    ds["type"] = "csv";
    ds["sources"] = config.csv.source_paths;
    ds["target"] = config.csv.target_path;
    ds["has_header"] = config.csv.has_header;
  }
  root["dataset"] = ds;
  root["labeled_fractions"] = config.labeled_fractions;
  root["fraction_assignment"] = fraction_assignment_name(config.assignment);
  std::vector<std::string> methods;
  for (Method m : config.methods) methods.emplace_back(method_name(m));
  root["methods"] = methods;
  std::vector<std::string> strategies;
  for (Strategy s : config.strategies) strategies.emplace_back(strategy_name(s));
  root["strategies"] = strategies;
  root["trials"] = config.trials;
  root["mu"] = config.mu;
  root["b1"] = config.b1;
  root["beta1"] = config.beta1;
  if (config.beta2 > 0.0) {
    root["beta2"] = config.beta2;
  } else {
    root["beta2"] = nullptr;  // auto: 1/median(MMD), resolved per trial
  }
  root["rho"] = config.rho;
  root["svm_c"] = config.svm_c;
  root["budget_fraction"] = config.budget_fraction;
  root["mu_grid"] = config.mu_grid;
  root["target_test_fraction"] = config.target_test_fraction;
  root["master_seed"] = config.master_seed;
  return root.dump(2);
}

}  // namespace mstl
