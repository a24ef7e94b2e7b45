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

#include "gridfair/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gridfair {
namespace {

void CheckDistribution(std::span<const double> values, const char* what) {
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::kInvalidTarget,
                  std::string(what) + " has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    throw Error(ErrorKind::kInvalidTarget,
                std::string(what) + " does not sum to 1");
  }
}

std::vector<double> Normalized(std::vector<double> v, ErrorKind on_zero,
                               const char* what) {
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(sum > 0.0)) {
    throw Error(on_zero, std::string(what) + " has no mass");
  }
  for (double& x : v) x /= sum;
  return v;
}

std::vector<double> MeanAlignment(const AlignmentTable& table,
                                  std::span<const DocumentId> docs,
                                  bool include_table) {
  std::vector<double> sum(table.schema().size(), 0.0);
  std::size_t count = 0;
  auto add = [&](const AlignmentVector& a) {
    for (std::size_t g = 0; g < sum.size(); ++g) sum[g] += a[g];
    ++count;
  };
  if (include_table) {
    for (const auto& [doc, alignment] : table.entries()) add(alignment);
  }
  for (const auto& doc : docs) {
    if (include_table && table.contains(doc)) continue;
    add(table.lookup(doc));
  }
  if (count == 0) {
    throw Error(ErrorKind::kInvalidTarget,
                "population estimator has no documents to average");
  }
  for (double& s : sum) s /= static_cast<double>(count);
  return sum;
}

}  // namespace

ExposureVector group_exposure(const AttentionVector& attention,
                              const AlignmentMatrix& alignment) {
  if (attention.size() != alignment.rows()) {
    throw Error(ErrorKind::kShape,
                "attention length " + std::to_string(attention.size()) +
                    " does not match " + std::to_string(alignment.rows()) +
                    " alignment rows");
  }
  std::vector<double> values(alignment.cols(), 0.0);
  for (std::size_t i = 0; i < alignment.rows(); ++i) {
    const auto row = alignment.row(i);
    for (std::size_t g = 0; g < values.size(); ++g) {
      values[g] += attention[i] * row[g];
    }
  }
  return ExposureVector(std::move(values));
}

ExposureVector ranking_exposure(std::shared_ptr<const Ranking> ranking,
                                const DisplaySpec& display,
                                const BrowsingModelSpec& spec,
                                const RelevanceJudgments& rel,
                                const AlignmentTable& table) {
  const GridLayout grid = render(std::move(ranking), display);
  const AttentionVector weights = attention(grid, rel, spec);
  std::vector<double> values(table.schema().size(), 0.0);
  const auto& cells = grid.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& a = table.lookup(cells[i].doc);
    for (std::size_t g = 0; g < values.size(); ++g) {
      values[g] += weights[i] * a[g];
    }
  }
  return ExposureVector(std::move(values));
}

std::string_view EstimatorModeName(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::kUniform: return "uniform";
    case EstimatorMode::kCatalog: return "catalog";
    case EstimatorMode::kRetrieved: return "retrieved";
    case EstimatorMode::kFixed: return "fixed";
  }
  return "?";
}

std::vector<double> population_estimator(
    const PopulationEstimator& estimator, const AlignmentTable& table,
    std::optional<std::span<const DocumentId>> docs) {
  const std::size_t groups = table.schema().size();
  switch (estimator.mode) {
    case EstimatorMode::kUniform:
      return std::vector<double>(groups, 1.0 / static_cast<double>(groups));
    case EstimatorMode::kCatalog:
      return MeanAlignment(table, docs.value_or(std::span<const DocumentId>{}),
                           true);
    case EstimatorMode::kRetrieved:
      if (!docs) {
        throw Error(ErrorKind::kInvalidArgument,
                    "retrieved estimator needs the retrieved documents");
      }
      return MeanAlignment(table, *docs, false);
    case EstimatorMode::kFixed: {
      if (!estimator.fixed_values) {
        throw Error(ErrorKind::kInvalidTarget, "fixed estimator has no values");
      }
      if (estimator.fixed_values->size() != groups) {
        throw Error(ErrorKind::kInvalidTarget,
                    "fixed estimator does not match the group schema");
      }
      CheckDistribution(*estimator.fixed_values, "fixed estimator");
      return *estimator.fixed_values;
    }
  }
  return {};
}

std::string_view DistanceKindName(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kL1: return "l1";
    case DistanceKind::kL2: return "l2";
    case DistanceKind::kSignedTwoGroup: return "signed";
  }
  return "?";
}

DistanceKind ParseDistanceKind(std::string_view name) {
  if (name == "l1") return DistanceKind::kL1;
  if (name == "l2") return DistanceKind::kL2;
  if (name == "signed" || name == "signed-two-group") {
    return DistanceKind::kSignedTwoGroup;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown distance '" + std::string(name) + "'");
}

double awrf(const ExposureVector& exposure, std::span<const double> target,
            const DistanceSpec& delta) {
  if (target.size() != exposure.size()) {
    throw Error(ErrorKind::kShape, "target and exposure differ in group count");
  }
  const std::size_t groups = exposure.size();
  if (delta.unknown_index && *delta.unknown_index >= groups) {
    throw Error(ErrorKind::kShape, "unknown group index out of range");
  }
  if (delta.kind == DistanceKind::kSignedTwoGroup) {
    const std::size_t known = groups - (delta.unknown_index ? 1 : 0);
    if (known != 2) {
      throw Error(ErrorKind::kInvalidDistance,
                  "signed distance needs exactly two known groups");
    }
    if (delta.protected_group >= groups ||
        delta.unknown_index == delta.protected_group) {
      throw Error(ErrorKind::kInvalidDistance, "invalid protected group");
    }
  }

  std::vector<double> observed(exposure.values().begin(),
                               exposure.values().end());
  std::vector<double> expected(target.begin(), target.end());
  std::size_t protected_group = delta.protected_group;
  if (delta.exclude_unknown && delta.unknown_index) {
    const std::size_t u = *delta.unknown_index;
    observed.erase(observed.begin() + static_cast<std::ptrdiff_t>(u));
    expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(u));
    if (protected_group > u) --protected_group;
    expected = Normalized(std::move(expected), ErrorKind::kInvalidTarget,
                          "target without the unknown group");
  }
  observed = Normalized(std::move(observed), ErrorKind::kUndefinedExposure,
                        "group exposure");

  switch (delta.kind) {
    case DistanceKind::kL1: {
      double sum = 0.0;
      for (std::size_t g = 0; g < observed.size(); ++g) {
        sum += std::abs(observed[g] - expected[g]);
      }
      return sum;
    }
    case DistanceKind::kL2: {
      double sum = 0.0;
      for (std::size_t g = 0; g < observed.size(); ++g) {
        const double d = observed[g] - expected[g];
        sum += d * d;
      }
      return std::sqrt(sum);
    }
    case DistanceKind::kSignedTwoGroup:
      return observed[protected_group] - expected[protected_group];
  }
  return 0.0;
}

double awrf_system(std::span<const double> per_request_scores) {
  if (per_request_scores.empty()) {
    throw Error(ErrorKind::kEmptyAggregate, "no per-request scores");
  }
  double sum = 0.0;
  for (double s : per_request_scores) sum += s;
  return sum / static_cast<double>(per_request_scores.size());
}

double awrf_system(const std::map<RequestId, double>& per_request_scores) {
  return mean_over_requests(per_request_scores);
}

double mean_over_requests(const std::map<RequestId, double>& per_request) {
  if (per_request.empty()) {
    throw Error(ErrorKind::kEmptyAggregate, "no per-request scores");
  }
  double sum = 0.0;
  for (const auto& [request, value] : per_request) sum += value;
  return sum / static_cast<double>(per_request.size());
}

std::vector<double> target_attention(const RequestId& request,
                                     std::span<const DocumentId> docs,
                                     const RelevanceJudgments& rel,
                                     const DisplaySpec& display,
                                     const BrowsingModelSpec& spec) {
  if (docs.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "target exposure needs at least one document");
  }
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grades(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    grades[i] = rel.grade(request, docs[i]);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (grades[a] != grades[b]) return grades[a] > grades[b];
                     return docs[a] < docs[b];
                   });

  std::vector<DocumentId> sorted;
  sorted.reserve(docs.size());
  for (std::size_t i : order) sorted.push_back(docs[i]);
  auto ideal = std::make_shared<const Ranking>(request, 0, std::move(sorted));
  const GridLayout grid = render(ideal, display);
  const auto by_rank =
      attention_by_origin_rank(grid, attention(grid, rel, spec));

  std::vector<double> out(docs.size(), 0.0);
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() && grades[order[end]] == grades[order[begin]]) {
      ++end;
    }
    double tier = 0.0;
    for (std::size_t r = begin; r < end; ++r) tier += by_rank[r];
    tier /= static_cast<double>(end - begin);
    for (std::size_t r = begin; r < end; ++r) out[order[r]] = tier;
    begin = end;
  }
  return out;
}

TargetExposure target_exposure(const RequestId& request,
                               std::span<const DocumentId> docs,
                               const RelevanceJudgments& rel,
                               const DisplaySpec& display,
                               const BrowsingModelSpec& spec,
                               const AlignmentTable& table) {
  const auto weights = target_attention(request, docs, rel, display, spec);
  std::vector<double> values(table.schema().size(), 0.0);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& a = table.lookup(docs[i]);
    for (std::size_t g = 0; g < values.size(); ++g) {
      values[g] += weights[i] * a[g];
    }
  }
  return TargetExposure{ExposureVector(std::move(values)), request};
}

ExposureVector system_exposure(std::span<const ExposureVector> samples) {
  if (samples.empty()) {
    throw Error(ErrorKind::kEmptyAggregate, "policy has no sampled rankings");
  }
  std::vector<double> mean(samples.front().size(), 0.0);
  for (const auto& s : samples) {
    if (s.size() != mean.size()) {
      throw Error(ErrorKind::kShape, "sample exposures differ in group count");
    }
    for (std::size_t g = 0; g < mean.size(); ++g) mean[g] += s[g];
  }
  for (double& m : mean) m /= static_cast<double>(samples.size());
  return ExposureVector(std::move(mean));
}

double eel(const ExposureVector& system, const ExposureVector& target) {
  if (system.size() != target.size()) {
    throw Error(ErrorKind::kShape, "system and target differ in group count");
  }
  double sum = 0.0;
  for (std::size_t g = 0; g < system.size(); ++g) {
    const double d = system[g] - target[g];
    sum += d * d;
  }
  return sum;
}

double eel(const ExposureVector& system, const TargetExposure& target) {
  return eel(system, target.values);
}

}  // namespace gridfair
