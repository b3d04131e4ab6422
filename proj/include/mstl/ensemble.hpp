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

#include <string>
#include <vector>

#include "mstl/kernel.hpp"
#include "mstl/svm.hpp"
#include "mstl/types.hpp"

namespace mstl {

// Row-stochastic peer-weight matrix: entry (i,j) is how much source i trusts
// source j's classifier, from a softmin over peer errors. The diagonal is 0
// and rows sum to 1 for K >= 2; the matrix need not be symmetric.
struct RelationMatrix {
  Matrix weights;
  double error_spread = 5.0;  // beta1
};

// Softmax proximity weights over per-source MMD values; strictly positive,
// summing to 1.
struct ProximityVector {
  Vector weights;
  double mmd_spread = 1.0;  // beta2
  double mmd_power = 1.0;   // rho
};

// Combined source importance: concentration * proximity plus the rest routed
// through the relation matrix.
struct EnsembleWeights {
  Vector weights;
  double concentration = 0.2;  // mu
};

struct Prediction {
  int label = 1;
  double score = 0.0;
};

// Pure softmin step: errors(i,j) is the error of classifier j on source i's
// labeled set; entries on the diagonal are ignored. K = 1 yields the 1x1
// zero matrix.
RelationMatrix relation_from_errors(const Matrix& errors, double error_spread);

// errors(i,j) = zero_one_error(models[j], labeled set i). K >= 2 and every
// labeled set non-empty.
RelationMatrix compute_relation_matrix(const std::vector<LinearModel>& models,
                                       const std::vector<Matrix>& labeled_x,
                                       const std::vector<IntVector>& labeled_y,
                                       double error_spread);

ProximityVector compute_proximity(const std::vector<MmdValue>& mmd_values,
                                  double mmd_spread, double mmd_power);

// weights = concentration * proximity + (1 - concentration) * proximity * R.
EnsembleWeights combine_weights(const ProximityVector& proximity,
                                const RelationMatrix& relations,
                                double concentration);

// Score of the confidence-gated peer ensemble: a source whose own decision
// value is inside the confidence band (|h| < confidence_tolerance) is
// replaced by its relation-weighted peers. A source with no peers keeps its
// own decision value.
double pwmstl_score(const std::vector<LinearModel>& models,
                    const RelationMatrix& relations,
                    const EnsembleWeights& weights, double confidence_tolerance,
                    const RowView& x);

Prediction pwmstl_predict(const std::vector<LinearModel>& models,
                          const RelationMatrix& relations,
                          const EnsembleWeights& weights,
                          double confidence_tolerance, const RowView& x);

// Plain weighted vote over the sources' decision values.
double weighted_vote_score(const std::vector<LinearModel>& models,
                           const EnsembleWeights& weights, const RowView& x);

Prediction predict_weighted_vote(const std::vector<LinearModel>& models,
                                 const EnsembleWeights& weights,
                                 const RowView& x);

// Everything needed to predict on the target domain.
struct PwMstlModel {
  std::vector<LinearModel> models;
  EnsembleWeights weights;
  RelationMatrix relations;
  ProximityVector proximity;
  double confidence_tolerance = 1.0;  // b1

  void validate() const;
  Prediction predict(const RowView& x) const;
};

void write_matrix_csv(const Matrix& m, const std::string& path);
void write_vector_csv(const Vector& v, const std::string& path);

}  // namespace mstl
