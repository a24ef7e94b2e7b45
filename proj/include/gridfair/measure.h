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

// Batch evaluation of runs over a cross product of layouts, browsing models
// and metrics.

#ifndef GRIDFAIR_MEASURE_H_
#define GRIDFAIR_MEASURE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gridfair/browse.h"
#include "gridfair/core.h"
#include "gridfair/io.h"
#include "gridfair/layout.h"
#include "gridfair/metrics.h"

namespace gridfair {

enum class Metric { kAwrf, kEel };

std::string_view MetricName(Metric metric);
Metric ParseMetric(std::string_view name);

struct SweepConfig {
  std::vector<std::filesystem::path> runs;
  std::optional<std::filesystem::path> qrels;
  std::filesystem::path alignment;

  // Layouts evaluated without reduction.
  std::vector<LayoutGeometry> geometries;
  // Reduced layouts: a wrapped grid of `base_columns`, truncated or re-wrapped
  // to every entry of `column_sizes`.
  std::vector<Reduction> reductions;
  std::vector<std::size_t> column_sizes = {10, 8, 6, 5, 4, 3};
  std::size_t base_columns = 10;

  std::vector<BaseModel> bases = {BaseModel::kGeometric};
  std::vector<Adjustment> adjustments = {Adjustment::kNone};
  std::vector<double> alphas = {0.5};
  std::vector<double> gammas = {0.5};
  std::vector<double> betas = {1.9};
  double satisfaction = 0.5;
  WithinRow within_row = WithinRow::kPrefix;
  RowReach row_reach = RowReach::kScanOrSkip;
  std::optional<double> relevance_cap;

  std::vector<Metric> metrics = {Metric::kAwrf};
  EstimatorMode estimator = EstimatorMode::kCatalog;
  std::optional<std::filesystem::path> fixed_target;
  DistanceKind distance = DistanceKind::kL1;
  std::optional<std::string> protected_group;
  bool exclude_unknown = false;

  bool per_request = false;
  std::size_t jobs = 1;
  std::filesystem::path output;

  // Throws kConfig.
  void validate() const;

  std::vector<DisplaySpec> displays() const;
  std::vector<BrowsingModelSpec> browsing_specs() const;
};

struct SystemRun {
  std::string system;
  RunFile run;
};

struct MeasureInputs {
  std::vector<SystemRun> systems;
  AlignmentTable table;
  std::optional<RelevanceJudgments> qrels;
};

// Checks every input path exists before parsing any of them.
MeasureInputs load_inputs(const SweepConfig& config);

struct MeasureOutput {
  std::vector<ResultsRow> rows;
  std::vector<std::string> warnings;
};

MeasureOutput measure(const SweepConfig& config, const MeasureInputs& inputs);

}  // namespace gridfair

#endif  // GRIDFAIR_MEASURE_H_
