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

#include "mstl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "mstl/csv.hpp"
#include "mstl/rng.hpp"

namespace mstl {

Matrix DomainDataset::aggregate_x() const {
  Matrix all(labeled_x.rows() + unlabeled_x.rows(), dim());
  if (labeled_x.rows() > 0) all.topRows(labeled_x.rows()) = labeled_x;
  if (unlabeled_x.rows() > 0) all.bottomRows(unlabeled_x.rows()) = unlabeled_x;
  return all;
}

void DomainDataset::validate() const {
  if (labeled_y.size() != labeled_x.rows()) {
    throw std::invalid_argument("dataset '" + name +
                                "': labeled_y size does not match labeled_x");
  }
  if (hidden_labels.size() != 0 && hidden_labels.size() != unlabeled_x.rows()) {
    throw std::invalid_argument(
        "dataset '" + name + "': hidden_labels size does not match unlabeled_x");
  }
  if (labeled_x.rows() > 0 && unlabeled_x.rows() > 0 &&
      labeled_x.cols() != unlabeled_x.cols()) {
    throw std::invalid_argument("dataset '" + name +
                                "': labeled/unlabeled dimension mismatch");
  }
  for (Index i = 0; i < labeled_y.size(); ++i) {
    if (labeled_y[i] != 1 && labeled_y[i] != -1) {
      throw std::invalid_argument("dataset '" + name + "': label not in {-1,+1}");
    }
  }
  for (Index i = 0; i < hidden_labels.size(); ++i) {
    if (hidden_labels[i] != 1 && hidden_labels[i] != -1) {
      throw std::invalid_argument("dataset '" + name +
                                  "': hidden label not in {-1,+1}");
    }
  }
  if (!labeled_x.allFinite() || !unlabeled_x.allFinite()) {
    throw std::invalid_argument("dataset '" + name + "': non-finite feature");
  }
}

namespace {

// ceil(fraction * n) guarded against FP round-up (0.3 * 100 must give 30).
Index keep_count(double fraction, Index n) {
  const double raw = fraction * static_cast<double>(n);
  Index k = static_cast<Index>(std::ceil(raw - 1e-9));
  return std::clamp<Index>(k, 0, n);
}

}  // namespace

DomainDataset split_labeled_fraction(const DomainDataset& domain,
                                     double fraction, std::uint64_t seed) {
  if (fraction < 0.0 || fraction > 1.0) {
    throw std::invalid_argument("split fraction must lie in [0,1]");
  }
  if (domain.n_unlabeled() != 0) {
    throw std::invalid_argument("split requires a fully labeled dataset");
  }
  domain.validate();

  const Index n = domain.n_labeled();
  const Index total_keep = keep_count(fraction, n);

  std::vector<Index> pos, neg;
  for (Index i = 0; i < n; ++i) {
    (domain.labeled_y[i] > 0 ? pos : neg).push_back(i);
  }

  // Largest-remainder allocation of total_keep across the two classes.
  const double quota_pos =
      n > 0 ? static_cast<double>(total_keep) * pos.size() / n : 0.0;
  Index keep_pos = std::min<Index>(static_cast<Index>(std::floor(quota_pos)),
                                   static_cast<Index>(pos.size()));
  Index keep_neg = std::min<Index>(total_keep - keep_pos,
                                   static_cast<Index>(neg.size()));
  while (keep_pos + keep_neg < total_keep &&
         keep_pos < static_cast<Index>(pos.size())) {
    ++keep_pos;
  }

  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  std::vector<Index> kept(pos.begin(), pos.begin() + keep_pos);
  kept.insert(kept.end(), neg.begin(), neg.begin() + keep_neg);
  std::vector<Index> moved(pos.begin() + keep_pos, pos.end());
  moved.insert(moved.end(), neg.begin() + keep_neg, neg.end());
  std::sort(kept.begin(), kept.end());
  std::sort(moved.begin(), moved.end());

  DomainDataset out;
  out.name = domain.name;
  out.labeled_x.resize(static_cast<Index>(kept.size()), domain.dim());
  out.labeled_y.resize(static_cast<Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.labeled_x.row(static_cast<Index>(i)) = domain.labeled_x.row(kept[i]);
    out.labeled_y[static_cast<Index>(i)] = domain.labeled_y[kept[i]];
  }
  out.unlabeled_x.resize(static_cast<Index>(moved.size()), domain.dim());
  out.hidden_labels.resize(static_cast<Index>(moved.size()));
  for (std::size_t i = 0; i < moved.size(); ++i) {
    out.unlabeled_x.row(static_cast<Index>(i)) = domain.labeled_x.row(moved[i]);
    out.hidden_labels[static_cast<Index>(i)] = domain.labeled_y[moved[i]];
  }
  return out;
}

namespace {

int parse_label_token(const std::string& token, const std::string& context) {
  if (token == "1" || token == "+1") return 1;
  if (token == "-1") return -1;
  throw std::runtime_error(context + ": unknown label token '" + token + "'");
}

}  // namespace

DomainDataset load_dense_csv(const std::string& path, bool has_header,
                             const std::string& name) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }

  std::vector<std::vector<double>> lab_rows, unlab_rows;
  std::vector<int> lab_y;
  Index dim = -1;

  std::string line;
  long line_no = 0;
  bool skipped_header = !has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    if (line.empty() || line == "\r") continue;
    const std::string context = path + ":" + std::to_string(line_no);
    const auto cells = split_csv_line(line);
    if (cells.size() < 2) {
      throw std::runtime_error(context + ": expected `label,f1,...`");
    }
    const Index row_dim = static_cast<Index>(cells.size()) - 1;
    if (dim < 0) {
      dim = row_dim;
    } else if (row_dim != dim) {
      throw std::runtime_error(context + ": ragged row, expected " +
                               std::to_string(dim) + " features, got " +
                               std::to_string(row_dim));
    }
    std::vector<double> feats(static_cast<std::size_t>(row_dim));
    for (Index j = 0; j < row_dim; ++j) {
      feats[static_cast<std::size_t>(j)] =
          parse_double_token(cells[static_cast<std::size_t>(j) + 1], context);
    }
    if (cells[0].empty()) {
      unlab_rows.push_back(std::move(feats));
    } else {
      lab_y.push_back(parse_label_token(cells[0], context));
      lab_rows.push_back(std::move(feats));
    }
  }
  if (lab_rows.empty() && unlab_rows.empty()) {
    throw std::runtime_error(path + ": no rows");
  }

  DomainDataset out;
  out.name = name.empty() ? path : name;
  out.labeled_x.resize(static_cast<Index>(lab_rows.size()), dim);
  out.labeled_y.resize(static_cast<Index>(lab_rows.size()));
  for (std::size_t i = 0; i < lab_rows.size(); ++i) {
    for (Index j = 0; j < dim; ++j) {
      out.labeled_x(static_cast<Index>(i), j) =
          lab_rows[i][static_cast<std::size_t>(j)];
    }
    out.labeled_y[static_cast<Index>(i)] = lab_y[i];
  }
  out.unlabeled_x.resize(static_cast<Index>(unlab_rows.size()), dim);
  for (std::size_t i = 0; i < unlab_rows.size(); ++i) {
    for (Index j = 0; j < dim; ++j) {
      out.unlabeled_x(static_cast<Index>(i), j) =
          unlab_rows[i][static_cast<std::size_t>(j)];
    }
  }
  out.validate();
  return out;
}

void save_dense_csv(const DomainDataset& domain, const std::string& path) {
  domain.validate();
  CsvWriter w(path);
  std::vector<std::string> cells(static_cast<std::size_t>(domain.dim()) + 1);
  for (Index i = 0; i < domain.n_labeled(); ++i) {
    cells[0] = domain.labeled_y[i] > 0 ? "1" : "-1";
    for (Index j = 0; j < domain.dim(); ++j) {
      cells[static_cast<std::size_t>(j) + 1] = format_double(domain.labeled_x(i, j));
    }
    w.row(cells);
  }
  for (Index i = 0; i < domain.n_unlabeled(); ++i) {
    cells[0].clear();
    for (Index j = 0; j < domain.dim(); ++j) {
      cells[static_cast<std::size_t>(j) + 1] =
          format_double(domain.unlabeled_x(i, j));
    }
    w.row(cells);
  }
}

}  // namespace mstl
