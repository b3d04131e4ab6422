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

#include "mstl/types.hpp"

namespace mstl {

// One domain: a labeled pool, an unlabeled pool, and (optionally) the true
// labels of the unlabeled pool kept aside for the simulated oracle.
// Rows are examples, columns are features. Labels are exactly -1 or +1.
struct DomainDataset {
  std::string name;
  Matrix labeled_x;       // n_L x d
  IntVector labeled_y;    // n_L
  Matrix unlabeled_x;     // n_U x d
  IntVector hidden_labels;  // 0 (absent) or n_U, oracle answers

  Index n_labeled() const { return labeled_x.rows(); }
  Index n_unlabeled() const { return unlabeled_x.rows(); }
  Index dim() const {
    return labeled_x.rows() > 0 ? labeled_x.cols() : unlabeled_x.cols();
  }
  bool has_oracle() const { return hidden_labels.size() == unlabeled_x.rows(); }

  // Labeled rows followed by unlabeled rows, in stable order.
  Matrix aggregate_x() const;

  // Throws std::invalid_argument when an invariant is broken (label outside
  // {-1,+1}, dimension mismatch, non-finite feature, dangling hidden labels).
  void validate() const;
};

// Moves all but ceil(fraction * n) labeled examples into the unlabeled pool,
// stratified by class; the moved labels become hidden_labels. The input must
// be fully labeled. Deterministic per seed.
DomainDataset split_labeled_fraction(const DomainDataset& domain,
                                     double fraction, std::uint64_t seed);

// Reads rows of the form `label,f1,...,fd` with label in {-1,+1} or empty
// for unlabeled rows. Throws std::runtime_error naming the offending line on
// ragged rows, non-numeric fields or unknown label tokens.
DomainDataset load_dense_csv(const std::string& path, bool has_header = false,
                             const std::string& name = "");

// Writes the dataset in the same format (labeled rows first, then unlabeled
// rows with an empty label field). Hidden labels are not written.
void save_dense_csv(const DomainDataset& domain, const std::string& path);

}  // namespace mstl
