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

#include "mstl/svm.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "mstl/csv.hpp"
#include "mstl/rng.hpp"

namespace mstl {

namespace {
constexpr double kDegenerateScore = 1e-3;
}

void TrainConfig::validate() const {
  if (!(C > 0.0)) throw std::invalid_argument("svm C must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("svm tol must be positive");
  if (max_epochs < 1) throw std::invalid_argument("svm max_epochs must be >= 1");
}

LinearModel train_weighted_svm(const Matrix& x, const IntVector& y,
                               const Vector& weights, const TrainConfig& config,
                               std::vector<double>* dual_trace) {
  config.validate();
  const Index n = x.rows();
  const Index d = x.cols();
  if (y.size() != n || weights.size() != n) {
    throw std::invalid_argument("train_weighted_svm: size mismatch");
  }
  if (n == 0) throw std::invalid_argument("train_weighted_svm: empty input");

  std::vector<Index> active;
  bool has_pos = false, has_neg = false;
  for (Index i = 0; i < n; ++i) {
    if (!(weights[i] >= 0.0)) {
      throw std::invalid_argument("train_weighted_svm: negative weight");
    }
    if (weights[i] > 0.0) {
      active.push_back(i);
      (y[i] > 0 ? has_pos : has_neg) = true;
    }
  }
  if (active.empty()) {
    throw std::invalid_argument("train_weighted_svm: all weights zero");
  }

  LinearModel model;
  model.train_size = n;
  if (!has_pos || !has_neg) {
    // Constant-sign stand-in with near-zero confidence: it predicts its only
    // class but never passes a confidence gate and barely moves a vote.
    model.weights = Vector::Zero(d);
    model.bias = has_pos ? kDegenerateScore : -kDegenerateScore;
    model.degenerate = true;
    return model;
  }

  // Dual of the L1-loss SVM with the bias folded in as a constant feature:
  //   min 0.5 a'Qa - e'a,  0 <= a_i <= C weight_i,
  // Q_ij = y_i y_j (x_i.x_j + 1). One coordinate pass per epoch in a
  // seed-shuffled order.
  Vector w_aug = Vector::Zero(d + 1);
  Vector alpha = Vector::Zero(n);
  Vector diag(n), cap(n);
  for (Index i = 0; i < n; ++i) {
    diag[i] = x.row(i).squaredNorm() + 1.0;
    cap[i] = config.C * weights[i];
  }

  Rng rng(config.seed);
  double prev_dual = -std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    rng.shuffle(active);
    double max_violation = 0.0;
    for (Index i : active) {
      const double margin =
          w_aug.head(d).dot(x.row(i)) + w_aug[d];
      const double grad = static_cast<double>(y[i]) * margin - 1.0;
      double violation;
      if (alpha[i] <= 0.0) {
        violation = std::min(grad, 0.0);
      } else if (alpha[i] >= cap[i]) {
        violation = std::max(grad, 0.0);
      } else {
        violation = grad;
      }
      max_violation = std::max(max_violation, std::abs(violation));
      if (violation != 0.0) {
        const double old = alpha[i];
        alpha[i] = std::min(std::max(old - grad / diag[i], 0.0), cap[i]);
        const double delta = (alpha[i] - old) * static_cast<double>(y[i]);
        w_aug.head(d) += delta * x.row(i).transpose();
        w_aug[d] += delta;
      }
    }
    if (dual_trace != nullptr) {
      const double dual = alpha.sum() - 0.5 * w_aug.squaredNorm();
      if (dual < prev_dual - 1e-10 * (1.0 + std::abs(prev_dual))) {
        throw std::logic_error("train_weighted_svm: dual objective decreased");
      }
      prev_dual = dual;
      dual_trace->push_back(dual);
    }
    if (max_violation <= config.tol) break;
  }

  model.weights = w_aug.head(d);
  model.bias = w_aug[d];
  return model;
}

LinearModel train_source_model(const Matrix& x, const IntVector& y,
                               const Vector& weights,
                               const TrainConfig& config) {
  if (weights.size() > 0 && weights.maxCoeff() <= 0.0) {
    return train_weighted_svm(x, y, Vector::Ones(x.rows()), config);
  }
  return train_weighted_svm(x, y, weights, config);
}

double decision_value(const LinearModel& model, const RowView& x) {
  if (x.size() != model.weights.size()) {
    throw std::invalid_argument("decision_value: dimension mismatch");
  }
  return model.weights.dot(x.transpose()) + model.bias;
}

int predict_label(const LinearModel& model, const RowView& x) {
  return decision_value(model, x) >= 0.0 ? 1 : -1;
}

double zero_one_error(const LinearModel& model, const Matrix& x,
                      const IntVector& y) {
  if (x.rows() == 0) {
    throw std::invalid_argument("zero_one_error: empty set");
  }
  if (y.size() != x.rows()) {
    throw std::invalid_argument("zero_one_error: size mismatch");
  }
  Index wrong = 0;
  for (Index i = 0; i < x.rows(); ++i) {
    if (predict_label(model, x.row(i)) != y[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(x.rows());
}

double uncertainty_score(const LinearModel& model, const RowView& x) {
  const double h = decision_value(model, x);
  // 4 s(1-s) = sech^2(h/2), computed overflow-safe through exp(-|h|).
  const double e = std::exp(-std::abs(h));
  const double s = e / (1.0 + e);
  return 4.0 * s * (1.0 - s);
}

void save_model_csv(const LinearModel& model, const std::string& path) {
  CsvWriter w(path);
  for (Index i = 0; i < model.weights.size(); ++i) {
    w.raw(format_double(model.weights[i]));
  }
  w.raw(format_double(model.bias));
}

LinearModel load_model_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    values.push_back(
        parse_double_token(split_csv_line(line)[0],
                           path + ":" + std::to_string(line_no)));
  }
  if (values.size() < 2) {
    throw std::runtime_error(path + ": expected weights plus bias");
  }
  LinearModel model;
  model.weights.resize(static_cast<Index>(values.size()) - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    model.weights[static_cast<Index>(i)] = values[i];
  }
  model.bias = values.back();
  return model;
}

}  // namespace mstl
