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

// Shared domain types: identifiers, rankings, group alignment, relevance
// judgments, attention and exposure vectors.

#ifndef GRIDFAIR_CORE_H_
#define GRIDFAIR_CORE_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridfair/error.h"

namespace gridfair {

inline constexpr std::string_view kUnknownGroup = "unknown";

// Tolerance for "sums to one" checks on distributions.
inline constexpr double kDistributionTolerance = 1e-9;
// Alignment vectors whose L1 norm is off by at most this much are
// renormalized; larger deviations are rejected.
inline constexpr double kRenormalizeTolerance = 1e-6;

// Non-empty opaque string token, distinguished by tag.
template <typename Tag>
class StringId {
 public:
  explicit StringId(std::string value) : value_(std::move(value)) {
    if (value_.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "identifier must be non-empty");
    }
  }

  const std::string& value() const { return value_; }

  friend auto operator<=>(const StringId&, const StringId&) = default;
  friend bool operator==(const StringId&, const StringId&) = default;

 private:
  std::string value_;
};

struct DocumentTag {};
struct RequestTag {};
using DocumentId = StringId<DocumentTag>;
using RequestId = StringId<RequestTag>;

// One ranked list for a request. `sample_index` identifies which draw from
// a stochastic policy this is (0 for deterministic systems). Item order is
// authoritative; scores, when present, are informational and need not be
// sorted.
class Ranking {
 public:
  Ranking(RequestId request, std::size_t sample_index,
          std::vector<DocumentId> items,
          std::optional<std::vector<double>> scores = std::nullopt);

  const RequestId& request() const { return request_; }
  std::size_t sample_index() const { return sample_index_; }
  const std::vector<DocumentId>& items() const { return items_; }
  const std::optional<std::vector<double>>& scores() const { return scores_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  RequestId request_;
  std::size_t sample_index_;
  std::vector<DocumentId> items_;
  std::optional<std::vector<double>> scores_;
};

// Ordered group names; the reserved "unknown" group is always present once.
class GroupSchema {
 public:
  explicit GroupSchema(std::vector<std::string> names);

  // Sorted unique names with "unknown" appended last.
  static GroupSchema FromObserved(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  std::size_t unknown_index() const { return unknown_index_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const GroupSchema&, const GroupSchema&) = default;

 private:
  std::vector<std::string> names_;
  std::size_t unknown_index_ = 0;
};

// A distribution over the groups of a schema.
class AlignmentVector {
 public:
  explicit AlignmentVector(std::vector<double> weights);

  // All mass on the unknown group.
  static AlignmentVector Unknown(const GroupSchema& schema);

  std::span<const double> weights() const { return weights_; }
  double operator[](std::size_t group) const { return weights_[group]; }
  std::size_t size() const { return weights_.size(); }

  // Index of the heaviest group; ties go to the lexicographically smallest
  // group name.
  std::size_t dominant_group(const GroupSchema& schema) const;

  friend bool operator==(const AlignmentVector&,
                         const AlignmentVector&) = default;

 private:
  std::vector<double> weights_;
};

// Document to alignment lookup. Lookup is total: absent documents resolve
// to the unknown-group unit vector.
class AlignmentTable {
 public:
  explicit AlignmentTable(GroupSchema schema);

  void set(const DocumentId& doc, AlignmentVector alignment);
  const AlignmentVector& lookup(const DocumentId& doc) const;
  bool contains(const DocumentId& doc) const {
    return entries_.contains(doc);
  }

  const GroupSchema& schema() const { return schema_; }
  const std::map<DocumentId, AlignmentVector>& entries() const {
    return entries_;
  }

 private:
  GroupSchema schema_;
  AlignmentVector unknown_;
  std::map<DocumentId, AlignmentVector> entries_;
};

// Graded relevance y(d|q). Unjudged pairs read as 0.
class RelevanceJudgments {
 public:
  void set(const RequestId& request, const DocumentId& doc, double grade);
  double grade(const RequestId& request, const DocumentId& doc) const;
  // Largest grade seen, 0 when empty.
  double max_grade() const { return max_grade_; }
  std::size_t size() const { return grades_.size(); }
  bool empty() const { return grades_.empty(); }

 private:
  std::map<std::pair<RequestId, DocumentId>, double> grades_;
  double max_grade_ = 0.0;
};

// Per displayed item visiting probability, in reading order.
class AttentionVector {
 public:
  AttentionVector() = default;
  explicit AttentionVector(std::vector<double> weights);

  std::span<const double> weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

// Aggregated attention per group, in schema order.
class ExposureVector {
 public:
  ExposureVector() = default;
  explicit ExposureVector(std::vector<double> values);
  static ExposureVector Zero(std::size_t groups) {
    return ExposureVector(std::vector<double>(groups, 0.0));
  }

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t g) const { return values_[g]; }
  std::size_t size() const { return values_.size(); }
  double total() const;

  friend bool operator==(const ExposureVector&,
                         const ExposureVector&) = default;

 private:
  std::vector<double> values_;
};

// Dense row-major items x groups matrix.
class AlignmentMatrix {
 public:
  AlignmentMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t row, std::size_t col) const {
    return data_[row * cols_ + col];
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  void set_row(std::size_t r, std::span<const double> values);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Materializes G(L): row i is the alignment of items[i].
AlignmentMatrix alignment_matrix(std::span<const DocumentId> items,
                                 const AlignmentTable& table);

}  // namespace gridfair

template <typename Tag>
struct std::hash<gridfair::StringId<Tag>> {
  std::size_t operator()(const gridfair::StringId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.value());
  }
};

#endif  // GRIDFAIR_CORE_H_
