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

// Ordering consistency of systems across result configurations.

#ifndef GRIDFAIR_COMPARE_H_
#define GRIDFAIR_COMPARE_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridfair/io.h"

namespace gridfair {

// Kendall tau-b with tie correction. Empty when either side is constant or
// there are fewer than two observations.
std::optional<double> kendall_tau_b(std::span<const double> x,
                                    std::span<const double> y);

struct SystemDelta {
  std::string system;
  double first;
  double second;
  double delta;  // second - first
};

struct ConfigComparison {
  // Fields held constant, e.g. "base=geometric;adjustment=none;...".
  std::string group;
  std::string first;
  std::string second;
  std::vector<SystemDelta> systems;
  // Empty when not comparable (fewer than two shared systems or no spread).
  std::optional<double> tau;
};

// Field names accepted in `vary`.
const std::vector<std::string>& ResultFields();

// Pairs up system-aggregate rows that agree on every field outside `vary`
// and differ inside it, then compares their system orderings.
std::vector<ConfigComparison> compare_configurations(
    const std::vector<ResultsRow>& rows, const std::vector<std::string>& vary);

void print_comparisons(const std::vector<ConfigComparison>& comparisons,
                       std::ostream& out);
void write_comparisons_csv(const std::vector<ConfigComparison>& comparisons,
                           std::ostream& out);

}  // namespace gridfair

#endif  // GRIDFAIR_COMPARE_H_
