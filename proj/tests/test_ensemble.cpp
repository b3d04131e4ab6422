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

#include <doctest.h>

#include <cmath>

#include "mstl/ensemble.hpp"
#include "mstl/rng.hpp"

using namespace mstl;

namespace {

LinearModel constant_slope(double w, double b = 0.0) {
  LinearModel m;
  m.weights = Vector::Constant(1, w);
  m.bias = b;
  return m;
}

RelationMatrix random_relation(Index k, Rng& rng, double spread = 4.0) {
  Matrix errors(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) errors(i, j) = rng.uniform();
  }
  return relation_from_errors(errors, spread);
}

ProximityVector random_proximity(Index k, Rng& rng) {
  std::vector<MmdValue> mmds;
  for (Index i = 0; i < k; ++i) mmds.push_back({rng.uniform()});
  return compute_proximity(mmds, 1.0 + rng.uniform(), 1.0);
}

}  // namespace

TEST_CASE("two sources always fully trust each other") {
  Matrix errors(2, 2);
  errors << 0.0, 0.42, 0.13, 0.0;
  const auto rel = relation_from_errors(errors, 5.0);
  CHECK(rel.weights(0, 0) == 0.0);
  CHECK(rel.weights(1, 1) == 0.0);
  CHECK(rel.weights(0, 1) == 1.0);
  CHECK(rel.weights(1, 0) == 1.0);
}

TEST_CASE("three-source row is the softmin of peer errors") {
  Matrix errors = Matrix::Zero(3, 3);
  errors(0, 1) = 0.1;
  errors(0, 2) = 0.3;
  errors(1, 0) = 0.2;
  errors(1, 2) = 0.2;
  errors(2, 0) = 0.5;
  errors(2, 1) = 0.6;
  const auto rel = relation_from_errors(errors, 5.0);
  // exp(-0.5) and exp(-1.5), normalized.
  const double z = std::exp(-0.5) + std::exp(-1.5);
  CHECK(rel.weights(0, 1) == doctest::Approx(std::exp(-0.5) / z).epsilon(1e-9));
  CHECK(rel.weights(0, 2) == doctest::Approx(std::exp(-1.5) / z).epsilon(1e-9));
  CHECK(rel.weights(0, 1) == doctest::Approx(0.7311).epsilon(1e-3));
  CHECK(rel.weights(0, 2) == doctest::Approx(0.2689).epsilon(1e-3));
}

TEST_CASE("vanishing spread flattens every row") {
  Matrix errors(3, 3);
  errors << 0, 0.9, 0.1, 0.4, 0, 0.8, 0.2, 0.6, 0;
  const auto rel = relation_from_errors(errors, 1e-9);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      if (i != j) CHECK(rel.weights(i, j) == doctest::Approx(0.5).epsilon(1e-6));
    }
  }
}

TEST_CASE("relation rows are stochastic and reward lower error") {
  Rng rng(10);
  for (int rep = 0; rep < 50; ++rep) {
    const Index k = 2 + static_cast<Index>(rng.uniform_index(5));
    Matrix errors(k, k);
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < k; ++j) errors(i, j) = rng.uniform();
    }
    const auto rel = relation_from_errors(errors, 3.0);
    for (Index i = 0; i < k; ++i) {
      CHECK(rel.weights(i, i) == 0.0);
      CHECK(rel.weights.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(rel.weights.row(i).minCoeff() >= 0.0);
      for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) {
          if (a == i || b == i || a == b) continue;
          if (errors(i, a) < errors(i, b)) {
            CHECK(rel.weights(i, a) >= rel.weights(i, b));
          }
        }
      }
    }
  }
}

TEST_CASE("relation matrix from models uses peer zero-one errors") {
  // Labeled sets in 1-d; model j is a slope whose sign decides everything.
  std::vector<LinearModel> models = {constant_slope(1.0), constant_slope(1.0),
                                     constant_slope(-1.0)};
  std::vector<Matrix> xs;
  std::vector<IntVector> ys;
  for (int i = 0; i < 3; ++i) {
    Matrix x(2, 1);
    x << 1.0, -1.0;
    IntVector y(2);
    y << 1, -1;
    xs.push_back(x);
    ys.push_back(y);
  }
  const auto rel = compute_relation_matrix(models, xs, ys, 2.0);
  // Model 2 mislabels everything: errors (i,2)=1 vs (i,j)=0 for j<2.
  const double z = std::exp(0.0) + std::exp(-2.0);
  CHECK(rel.weights(0, 1) == doctest::Approx(1.0 / z));
  CHECK(rel.weights(0, 2) == doctest::Approx(std::exp(-2.0) / z));
  CHECK_THROWS_AS(compute_relation_matrix({models[0]}, {xs[0]}, {ys[0]}, 2.0),
                  std::invalid_argument);
}

TEST_CASE("equal mmds give uniform proximity") {
  std::vector<MmdValue> mmds = {{0.3}, {0.3}, {0.3}, {0.3}};
  const auto prox = compute_proximity(mmds, 2.0, 1.0);
  for (Index i = 0; i < 4; ++i) {
    CHECK(prox.weights[i] == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("two-source proximity softmax") {
  std::vector<MmdValue> mmds = {{0.0}, {1.0}};
  const auto prox = compute_proximity(mmds, 1.0, 1.0);
  const double z = 1.0 + std::exp(-1.0);
  CHECK(prox.weights[0] == doctest::Approx(1.0 / z).epsilon(1e-9));
  CHECK(prox.weights[1] == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-9));
  CHECK(prox.weights[0] == doctest::Approx(0.7311).epsilon(1e-3));
}

TEST_CASE("vanishing mmd spread flattens proximity") {
  std::vector<MmdValue> mmds = {{0.1}, {0.7}, {0.4}};
  const auto prox = compute_proximity(mmds, 1e-12, 1.0);
  for (Index i = 0; i < 3; ++i) {
    CHECK(prox.weights[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("proximity rejects non-finite mmd") {
  std::vector<MmdValue> mmds = {{0.1}, {std::nan("")}};
  CHECK_THROWS_AS(compute_proximity(mmds, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("combined weights at the endpoints") {
  ProximityVector prox;
  prox.weights = Vector(2);
  prox.weights << 0.8, 0.2;
  RelationMatrix rel;
  rel.weights = Matrix(2, 2);
  rel.weights << 0, 1, 1, 0;

  const auto at_one = combine_weights(prox, rel, 1.0);
  CHECK(at_one.weights[0] == 0.8);  // exact
  CHECK(at_one.weights[1] == 0.2);

  const auto at_half = combine_weights(prox, rel, 0.5);
  CHECK(at_half.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(at_half.weights[1] == doctest::Approx(0.5).epsilon(1e-12));

  ProximityVector one_hot;
  one_hot.weights = Vector(2);
  one_hot.weights << 1.0, 0.0;
  const auto at_zero = combine_weights(one_hot, rel, 0.0);
  CHECK(at_zero.weights[0] == doctest::Approx(0.0));
  CHECK(at_zero.weights[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(combine_weights(prox, rel, -0.01), std::invalid_argument);
  CHECK_THROWS_AS(combine_weights(prox, rel, 1.01), std::invalid_argument);
}

TEST_CASE("combined weights stay stochastic and affine in mu") {
  Rng rng(20);
  for (int rep = 0; rep < 100; ++rep) {
    const Index k = 2 + static_cast<Index>(rng.uniform_index(6));
    const auto rel = random_relation(k, rng);
    const auto prox = random_proximity(k, rng);
    const double mu = rng.uniform();
    const auto w = combine_weights(prox, rel, mu);
    CHECK(w.weights.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w.weights.minCoeff() >= 0.0);

    // Affine interpolation between the mu=0 and mu=1 endpoints.
    const auto w0 = combine_weights(prox, rel, 0.0);
    const auto w1 = combine_weights(prox, rel, 1.0);
    const Vector blend = mu * w1.weights + (1.0 - mu) * w0.weights;
    CHECK((w.weights - blend).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((w1.weights - prox.weights).cwiseAbs().maxCoeff() == 0.0);
    const Vector via_matrix = rel.weights.transpose() * prox.weights;
    CHECK((w0.weights - via_matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("confident sources vote with their own decision values") {
  std::vector<LinearModel> models = {constant_slope(2.0), constant_slope(-1.0)};
  RelationMatrix rel;
  rel.weights = Matrix(2, 2);
  rel.weights << 0, 1, 1, 0;
  EnsembleWeights w;
  w.weights = Vector(2);
  w.weights << 0.5, 0.5;
  Eigen::RowVectorXd x(1);
  x << 1.0;  // h1 = 2, h2 = -1, both confident at b1 = 1
  const auto pred = pwmstl_predict(models, rel, w, 1.0, x);
  CHECK(pred.score == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pred.label == 1);
}

TEST_CASE("an unconfident source is replaced by its peer") {
  std::vector<LinearModel> models = {constant_slope(0.3), constant_slope(-1.5)};
  RelationMatrix rel;
  rel.weights = Matrix(2, 2);
  rel.weights << 0, 1, 1, 0;
  EnsembleWeights w;
  w.weights = Vector(2);
  w.weights << 1.0, 0.0;
  Eigen::RowVectorXd x(1);
  x << 1.0;  // h1 = 0.3 below b1=1 -> substitute h2 = -1.5 exactly
  const auto pred = pwmstl_predict(models, rel, w, 1.0, x);
  CHECK(pred.score == -1.5);
  CHECK(pred.label == -1);
}

TEST_CASE("zero confidence tolerance reduces to the weighted vote") {
  Rng rng(30);
  std::vector<LinearModel> models;
  for (int i = 0; i < 4; ++i) {
    models.push_back(constant_slope(rng.normal(), rng.normal()));
  }
  const auto rel = random_relation(4, rng);
  const auto prox = random_proximity(4, rng);
  const auto w = combine_weights(prox, rel, 0.3);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::RowVectorXd x(1);
    x << 3.0 * rng.normal();
    const auto gated = pwmstl_predict(models, rel, w, 0.0, x);
    const auto vote = predict_weighted_vote(models, w, x);
    CHECK(gated.score == vote.score);
    CHECK(gated.label == vote.label);
  }
}

TEST_CASE("ties at zero predict positive") {
  std::vector<LinearModel> models = {constant_slope(1.0), constant_slope(-1.0)};
  EnsembleWeights w;
  w.weights = Vector(2);
  w.weights << 0.5, 0.5;
  Eigen::RowVectorXd x(1);
  x << 0.7;
  const auto pred = predict_weighted_vote(models, w, x);
  CHECK(pred.score == 0.0);
  CHECK(pred.label == 1);
}

TEST_CASE("single source ensembles collapse to the model itself") {
  std::vector<LinearModel> models = {constant_slope(1.3, -0.2)};
  RelationMatrix rel;
  rel.weights = Matrix::Zero(1, 1);
  EnsembleWeights w;
  w.weights = Vector::Ones(1);
  Rng rng(44);
  for (int rep = 0; rep < 30; ++rep) {
    Eigen::RowVectorXd x(1);
    x << 2.0 * rng.normal();
    const double h = decision_value(models[0], x);
    const auto vote = predict_weighted_vote(models, w, x);
    const auto gated = pwmstl_predict(models, rel, w, 1.0, x);
    CHECK(vote.score == h);
    CHECK(gated.score == h);  // no peers to ask: keeps its own value
    CHECK(vote.label == gated.label);
  }
}

TEST_CASE("labels are invariant under positive rescaling of all decisions") {
  Rng rng(50);
  for (int rep = 0; rep < 40; ++rep) {
    const Index k = 2 + static_cast<Index>(rng.uniform_index(4));
    std::vector<LinearModel> models, scaled;
    const double c = 0.1 + 5.0 * rng.uniform();
    for (Index i = 0; i < k; ++i) {
      const double slope = rng.normal();
      const double bias = rng.normal();
      models.push_back(constant_slope(slope, bias));
      scaled.push_back(constant_slope(c * slope, c * bias));
    }
    const auto rel = random_relation(k, rng);
    const auto prox = random_proximity(k, rng);
    const auto w = combine_weights(prox, rel, 0.4);
    Eigen::RowVectorXd x(1);
    x << 2.0 * rng.normal();
    CHECK(predict_weighted_vote(models, w, x).label ==
          predict_weighted_vote(scaled, w, x).label);
    // The confidence band scales with the decision values.
    const double b1 = 0.5;
    CHECK(pwmstl_predict(models, rel, w, b1, x).label ==
          pwmstl_predict(scaled, rel, w, c * b1, x).label);
  }
}

TEST_CASE("pwmstl model bundle validates its pieces") {
  PwMstlModel model;
  model.models = {constant_slope(1.0), constant_slope(2.0)};
  model.relations.weights = Matrix::Zero(2, 2);
  model.relations.weights << 0, 1, 1, 0;
  model.proximity.weights = Vector(2);
  model.proximity.weights << 0.5, 0.5;
  model.weights = combine_weights(model.proximity, model.relations, 0.2);
  model.confidence_tolerance = 1.0;
  model.validate();
  Eigen::RowVectorXd x(1);
  x << 0.4;
  CHECK(model.predict(x).label == 1);
  model.confidence_tolerance = 0.0;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
}
