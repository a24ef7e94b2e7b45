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

// User attention (position weight) models over grid layouts.
//
// Two linear bases:
//   geometric: weight(i) = alpha^i
//   cascade:   weight(i) = prod_{j<i} cont(y_j), cont(y) = alpha * (1 - s*y/cap)
// and two grid adjustments:
//   row-skip:   a user reaches row r with probability reach(r), then scans
//               the row left to right.
//   slow-decay: weight = min(beta^row * base(i), 1).
//
// Every weight is clamped to [0, 1].

#ifndef GRIDFAIR_BROWSE_H_
#define GRIDFAIR_BROWSE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridfair/core.h"
#include "gridfair/layout.h"

namespace gridfair {

enum class BaseModel { kGeometric, kCascade };
enum class Adjustment { kNone, kRowSkip, kSlowDecay };

// Within-row factor for row-skip: `prefix` multiplies the continuation of
// the items left of d in its row; `full` uses the whole-row product for every
// item of the row.
enum class WithinRow { kPrefix, kFull };

// How row-skip combines the rows above d.
//   scan-or-skip: every earlier row is either skipped (probability gamma) or
//                 scanned to its end, independently per row:
//                 reach(r) = prod_{k<r} (gamma + (1 - gamma) * C_k)
//   bracket:      only the all-scanned and all-skipped paths count:
//                 reach(r) = prod_{k<r} (1 - gamma) * C_k + gamma^r
// Both give reach(0) = 1 and agree on rows 0 and 1.
enum class RowReach { kScanOrSkip, kBracket };

std::string_view BaseModelName(BaseModel base);
std::string_view AdjustmentName(Adjustment adjustment);
std::string_view WithinRowName(WithinRow mode);
std::string_view RowReachName(RowReach mode);
BaseModel ParseBaseModel(std::string_view name);
Adjustment ParseAdjustment(std::string_view name);
WithinRow ParseWithinRow(std::string_view name);
RowReach ParseRowReach(std::string_view name);

struct BrowsingModelSpec {
  BaseModel base = BaseModel::kGeometric;
  Adjustment adjustment = Adjustment::kNone;
  double alpha = 0.5;         // continuation probability, (0, 1)
  double gamma = 0.5;         // row-skipping probability, [0, 1]
  double beta = 1.9;          // slow-decay boost per row, >= 1
  double satisfaction = 0.5;  // cascade stop strength, [0, 1]
  WithinRow within_row = WithinRow::kPrefix;
  RowReach row_reach = RowReach::kScanOrSkip;
  // Grade that counts as fully relevant. Unset: the largest observed grade.
  std::optional<double> relevance_cap;

  // Throws kInvalidArgument on out-of-range parameters.
  void validate() const;

  // Effective cap for the given judgments; 1 when there is no positive grade.
  double cap_for(const RelevanceJudgments& rel) const;
};

// Probability of moving past an item of the given grade.
double continuation(double grade, const BrowsingModelSpec& spec, double cap);

AttentionVector attention_base(const GridLayout& grid,
                               const RelevanceJudgments& rel,
                               const BrowsingModelSpec& spec);
AttentionVector attention_row_skip(const GridLayout& grid,
                                   const RelevanceJudgments& rel,
                                   const BrowsingModelSpec& spec);
AttentionVector attention_slow_decay(const GridLayout& grid,
                                     const RelevanceJudgments& rel,
                                     const BrowsingModelSpec& spec);

// Dispatches on spec.adjustment.
AttentionVector attention(const GridLayout& grid,
                          const RelevanceJudgments& rel,
                          const BrowsingModelSpec& spec);

// Attention indexed by rank in the origin ranking; dropped items get 0.
std::vector<double> attention_by_origin_rank(const GridLayout& grid,
                                             const AttentionVector& weights);

}  // namespace gridfair

#endif  // GRIDFAIR_BROWSE_H_
