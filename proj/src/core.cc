/*
 * Copyright 2026 The gridfair Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gridfair/core.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace gridfair {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInvalidGeometry: return "invalid-geometry";
    case ErrorKind::kInvalidReduction: return "invalid-reduction";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kUndefinedExposure: return "undefined-exposure";
    case ErrorKind::kInvalidDistance: return "invalid-distance";
    case ErrorKind::kInvalidTarget: return "invalid-target";
    case ErrorKind::kEmptyAggregate: return "empty-aggregate";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Ranking::Ranking(RequestId request, std::size_t sample_index,
                 std::vector<DocumentId> items,
                 std::optional<std::vector<double>> scores)
    : request_(std::move(request)),
      sample_index_(sample_index),
      items_(std::move(items)),
      scores_(std::move(scores)) {
  std::unordered_set<DocumentId> seen;
  seen.reserve(items_.size());
  for (const auto& doc : items_) {
    if (!seen.insert(doc).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate document '" + doc.value() + "' in ranking for " +
                      request_.value());
    }
  }
  if (scores_ && scores_->size() != items_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "scores must be parallel to items");
  }
}

GroupSchema::GroupSchema(std::vector<std::string> names)
    : names_(std::move(names)) {
  std::size_t unknown_count = 0;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw Error(ErrorKind::kInvalidArgument, "group name must be non-empty");
    }
    if (!seen.insert(names_[i]).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate group name '" + names_[i] + "'");
    }
    if (names_[i] == kUnknownGroup) {
      unknown_index_ = i;
      ++unknown_count;
    }
  }
  if (unknown_count != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "group schema must contain the 'unknown' group");
  }
}

GroupSchema GroupSchema::FromObserved(std::vector<std::string> names) {
  std::erase(names, std::string(kUnknownGroup));
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  names.emplace_back(kUnknownGroup);
  return GroupSchema(std::move(names));
}

std::optional<std::size_t> GroupSchema::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

AlignmentVector::AlignmentVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "alignment vector is empty");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0 + kRenormalizeTolerance) {
      throw Error(ErrorKind::kInvalidArgument,
                  "alignment weight outside [0, 1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kRenormalizeTolerance) {
    throw Error(ErrorKind::kInvalidArgument,
                "alignment weights must sum to 1 (got " + std::to_string(sum) +
                    ")");
  }
  if (sum != 1.0) {
    for (double& w : weights_) w = std::min(w / sum, 1.0);
  }
}

AlignmentVector AlignmentVector::Unknown(const GroupSchema& schema) {
  std::vector<double> w(schema.size(), 0.0);
  w[schema.unknown_index()] = 1.0;
  return AlignmentVector(std::move(w));
}

std::size_t AlignmentVector::dominant_group(const GroupSchema& schema) const {
  std::size_t best = 0;
  for (std::size_t g = 1; g < weights_.size(); ++g) {
    if (weights_[g] > weights_[best] ||
        (weights_[g] == weights_[best] && schema.name(g) < schema.name(best))) {
      best = g;
    }
  }
  return best;
}

AlignmentTable::AlignmentTable(GroupSchema schema)
    : schema_(std::move(schema)), unknown_(AlignmentVector::Unknown(schema_)) {}

void AlignmentTable::set(const DocumentId& doc, AlignmentVector alignment) {
  if (alignment.size() != schema_.size()) {
    throw Error(ErrorKind::kShape,
                "alignment for '" + doc.value() +
                    "' does not match group schema size");
  }
  entries_.insert_or_assign(doc, std::move(alignment));
}

const AlignmentVector& AlignmentTable::lookup(const DocumentId& doc) const {
  auto it = entries_.find(doc);
  return it == entries_.end() ? unknown_ : it->second;
}

void RelevanceJudgments::set(const RequestId& request, const DocumentId& doc,
                             double grade) {
  if (!std::isfinite(grade) || grade < 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "relevance grade must be a non-negative number");
  }
  grades_.insert_or_assign({request, doc}, grade);
  max_grade_ = std::max(max_grade_, grade);
}

double RelevanceJudgments::grade(const RequestId& request,
                                 const DocumentId& doc) const {
  auto it = grades_.find({request, doc});
  return it == grades_.end() ? 0.0 : it->second;
}

AttentionVector::AttentionVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "attention weight outside [0, 1]");
    }
  }
}

ExposureVector::ExposureVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "exposure values must be finite and non-negative");
    }
  }
}

double ExposureVector::total() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum;
}

void AlignmentMatrix::set_row(std::size_t r, std::span<const double> values) {
  if (values.size() != cols_) {
    throw Error(ErrorKind::kShape, "row width does not match matrix");
  }
  std::copy(values.begin(), values.end(), data_.begin() + r * cols_);
}

AlignmentMatrix alignment_matrix(std::span<const DocumentId> items,
                                 const AlignmentTable& table) {
  AlignmentMatrix m(items.size(), table.schema().size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    m.set_row(i, table.lookup(items[i]).weights());
  }
  return m;
}

}  // namespace gridfair
