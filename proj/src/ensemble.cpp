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

#include "mstl/ensemble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mstl/csv.hpp"

namespace mstl {

RelationMatrix relation_from_errors(const Matrix& errors, double error_spread) {
  if (errors.rows() != errors.cols() || errors.rows() < 1) {
    throw std::invalid_argument("relation_from_errors: square matrix required");
  }
  if (!(error_spread > 0.0)) {
    throw std::invalid_argument("relation_from_errors: error_spread must be > 0");
  }
  const Index k = errors.rows();
  RelationMatrix rel;
  rel.error_spread = error_spread;
  rel.weights = Matrix::Zero(k, k);
  for (Index i = 0; i < k; ++i) {
    // Softmin over peers, shifted by the row minimum for stability.
    double lo = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < k; ++j) {
      if (j != i) lo = std::min(lo, errors(i, j));
    }
    double total = 0.0;
    for (Index j = 0; j < k; ++j) {
      if (j == i) continue;
      const double e = std::exp(-error_spread * (errors(i, j) - lo));
      rel.weights(i, j) = e;
      total += e;
    }
    if (total > 0.0) rel.weights.row(i) /= total;
  }
  return rel;
}

RelationMatrix compute_relation_matrix(const std::vector<LinearModel>& models,
                                       const std::vector<Matrix>& labeled_x,
                                       const std::vector<IntVector>& labeled_y,
                                       double error_spread) {
  const std::size_t k = models.size();
  if (k < 2) {
    throw std::invalid_argument("compute_relation_matrix: needs K >= 2 sources");
  }
  if (labeled_x.size() != k || labeled_y.size() != k) {
    throw std::invalid_argument("compute_relation_matrix: size mismatch");
  }
  Matrix errors = Matrix::Zero(static_cast<Index>(k), static_cast<Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (labeled_x[i].rows() == 0) {
      throw std::invalid_argument("compute_relation_matrix: empty labeled set");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      errors(static_cast<Index>(i), static_cast<Index>(j)) =
          zero_one_error(models[j], labeled_x[i], labeled_y[i]);
    }
  }
  return relation_from_errors(errors, error_spread);
}

ProximityVector compute_proximity(const std::vector<MmdValue>& mmd_values,
                                  double mmd_spread, double mmd_power) {
  if (mmd_values.empty()) {
    throw std::invalid_argument("compute_proximity: no sources");
  }
  if (!(mmd_spread > 0.0) || !(mmd_power > 0.0)) {
    throw std::invalid_argument("compute_proximity: spread/power must be > 0");
  }
  const Index k = static_cast<Index>(mmd_values.size());
  Vector exponent(k);
  for (Index i = 0; i < k; ++i) {
    const double v = mmd_values[static_cast<std::size_t>(i)].value;
    if (!std::isfinite(v)) {
      throw std::invalid_argument("compute_proximity: non-finite MMD");
    }
    exponent[i] = -mmd_spread * std::pow(v, mmd_power);
  }
  const Vector shifted = exponent.array() - exponent.maxCoeff();
  ProximityVector prox;
  prox.mmd_spread = mmd_spread;
  prox.mmd_power = mmd_power;
  prox.weights = shifted.array().exp();
  prox.weights /= prox.weights.sum();
  return prox;
}

EnsembleWeights combine_weights(const ProximityVector& proximity,
                                const RelationMatrix& relations,
                                double concentration) {
  if (!(concentration >= 0.0) || !(concentration <= 1.0)) {
    throw std::invalid_argument("combine_weights: concentration outside [0,1]");
  }
  if (proximity.weights.size() != relations.weights.rows()) {
    throw std::invalid_argument("combine_weights: dimension mismatch");
  }
  EnsembleWeights out;
  out.concentration = concentration;
  out.weights = concentration * proximity.weights +
                (1.0 - concentration) *
                    (relations.weights.transpose() * proximity.weights);
  return out;
}

double pwmstl_score(const std::vector<LinearModel>& models,
                    const RelationMatrix& relations,
                    const EnsembleWeights& weights, double confidence_tolerance,
                    const RowView& x) {
  const Index k = static_cast<Index>(models.size());
  if (k == 0 || weights.weights.size() != k || relations.weights.rows() != k) {
    throw std::invalid_argument("pwmstl_score: inconsistent ensemble");
  }
  Vector decisions(k);
  for (Index i = 0; i < k; ++i) {
    decisions[i] = decision_value(models[static_cast<std::size_t>(i)], x);
  }
  double score = 0.0;
  for (Index i = 0; i < k; ++i) {
    double contribution = decisions[i];
    if (std::abs(decisions[i]) < confidence_tolerance) {
      const double row_sum = relations.weights.row(i).sum();
      if (row_sum > 0.0) {
        contribution = relations.weights.row(i).dot(decisions);
      }
    }
    score += weights.weights[i] * contribution;
  }
  return score;
}

Prediction pwmstl_predict(const std::vector<LinearModel>& models,
                          const RelationMatrix& relations,
                          const EnsembleWeights& weights,
                          double confidence_tolerance, const RowView& x) {
  const double score =
      pwmstl_score(models, relations, weights, confidence_tolerance, x);
  return Prediction{score >= 0.0 ? 1 : -1, score};
}

double weighted_vote_score(const std::vector<LinearModel>& models,
                           const EnsembleWeights& weights, const RowView& x) {
  const Index k = static_cast<Index>(models.size());
  if (k == 0 || weights.weights.size() != k) {
    throw std::invalid_argument("weighted_vote_score: inconsistent ensemble");
  }
  double score = 0.0;
  for (Index i = 0; i < k; ++i) {
    score += weights.weights[i] *
             decision_value(models[static_cast<std::size_t>(i)], x);
  }
  return score;
}

Prediction predict_weighted_vote(const std::vector<LinearModel>& models,
                                 const EnsembleWeights& weights,
                                 const RowView& x) {
  const double score = weighted_vote_score(models, weights, x);
  return Prediction{score >= 0.0 ? 1 : -1, score};
}

void PwMstlModel::validate() const {
  const Index k = static_cast<Index>(models.size());
  if (k == 0) throw std::invalid_argument("PwMstlModel: no sources");
  if (weights.weights.size() != k || relations.weights.rows() != k ||
      relations.weights.cols() != k || proximity.weights.size() != k) {
    throw std::invalid_argument("PwMstlModel: inconsistent component sizes");
  }
  if (!(confidence_tolerance > 0.0)) {
    throw std::invalid_argument("PwMstlModel: confidence_tolerance must be > 0");
  }
}

Prediction PwMstlModel::predict(const RowView& x) const {
  return pwmstl_predict(models, relations, weights, confidence_tolerance, x);
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
  CsvWriter w(path);
  std::vector<std::string> cells(static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      cells[static_cast<std::size_t>(j)] = format_double(m(i, j));
    }
    w.row(cells);
  }
}

void write_vector_csv(const Vector& v, const std::string& path) {
  CsvWriter w(path);
  for (Index i = 0; i < v.size(); ++i) w.raw(format_double(v[i]));
}

}  // namespace mstl
