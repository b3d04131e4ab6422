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
#include <string>
#include <vector>

#include "mstl/types.hpp"

namespace mstl {

struct TrainConfig {
  double C = 1.0;         // hinge-loss trade-off
  double tol = 1e-4;      // max dual coordinate violation per epoch
  int max_epochs = 200;
  std::uint64_t seed = 1;  // coordinate shuffling

  void validate() const;
};

struct LinearModel {
  Vector weights;
  double bias = 0.0;
  Index train_size = 0;
  // Set when training saw a single class; the model is then the constant
  // decision value +1 or -1.
  bool degenerate = false;
};

// L1-loss weighted linear SVM: minimizes
//   0.5 |w|^2 + C * sum_i weight_i * hinge(y_i, w'x_i + b)
// by dual coordinate descent with per-instance caps C*weight_i. The bias is
// learned through an appended constant feature. Zero-weight examples are
// inert. Single-class input (after dropping zero weights) yields the
// degenerate constant-sign model.
LinearModel train_weighted_svm(const Matrix& x, const IntVector& y,
                               const Vector& weights, const TrainConfig& config,
                               std::vector<double>* dual_trace = nullptr);

// Training entry point for matching-weighted source classifiers: when the
// matching weights vanish on the whole labeled pool (a far source with a
// tiny labeled set), falls back to uniform weights instead of failing.
LinearModel train_source_model(const Matrix& x, const IntVector& y,
                               const Vector& weights, const TrainConfig& config);

double decision_value(const LinearModel& model, const RowView& x);

// Sign of the decision value; a tie at exactly 0 predicts +1.
int predict_label(const LinearModel& model, const RowView& x);

// Fraction misclassified.
double zero_one_error(const LinearModel& model, const Matrix& x,
                      const IntVector& y);

// 4 s(h) (1 - s(h)) with s the logistic function of the decision value:
// 1 at the boundary, strictly decreasing in |h|.
double uncertainty_score(const LinearModel& model, const RowView& x);

// One value per line: the weight entries, then the bias.
void save_model_csv(const LinearModel& model, const std::string& path);
LinearModel load_model_csv(const std::string& path);

}  // namespace mstl
