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

// Provider-group fairness metrics.
//
// AWRF compares the group share of attention in one ranking with a
// population distribution: AWRF(L) = dist(normalize(G(L)^T a_L), p).
// EEL compares the expected group exposure of a stochastic policy with the
// exposure of an ideal relevance-sorted policy: EEL = ||e_pi - e_tau||^2.

#ifndef GRIDFAIR_METRICS_H_
#define GRIDFAIR_METRICS_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gridfair/browse.h"
#include "gridfair/core.h"
#include "gridfair/layout.h"

namespace gridfair {

ExposureVector group_exposure(const AttentionVector& attention,
                              const AlignmentMatrix& alignment);

// Renders, weights and aggregates one ranking in one pass.
ExposureVector ranking_exposure(std::shared_ptr<const Ranking> ranking,
                                const DisplaySpec& display,
                                const BrowsingModelSpec& spec,
                                const RelevanceJudgments& rel,
                                const AlignmentTable& table);

enum class EstimatorMode { kUniform, kCatalog, kRetrieved, kFixed };

std::string_view EstimatorModeName(EstimatorMode mode);

struct PopulationEstimator {
  EstimatorMode mode = EstimatorMode::kCatalog;
  std::optional<std::vector<double>> fixed_values;
};

// Target group distribution.
//   uniform:   1/g over every group of the schema
//   catalog:   mean alignment over the table entries plus `docs`
//   retrieved: mean alignment over `docs` (required)
//   fixed:     the supplied values, which must be a distribution
std::vector<double> population_estimator(
    const PopulationEstimator& estimator, const AlignmentTable& table,
    std::optional<std::span<const DocumentId>> docs = std::nullopt);

enum class DistanceKind { kL1, kL2, kSignedTwoGroup };

std::string_view DistanceKindName(DistanceKind kind);
DistanceKind ParseDistanceKind(std::string_view name);

struct DistanceSpec {
  DistanceKind kind = DistanceKind::kL1;
  // Group whose share is reported by the signed distance.
  std::size_t protected_group = 0;
  // Drop the unknown coordinate from both sides and renormalize.
  bool exclude_unknown = false;
  // Position of the unknown group in the vectors, if they carry one.
  std::optional<std::size_t> unknown_index;
};

double awrf(const ExposureVector& exposure, std::span<const double> target,
            const DistanceSpec& delta);

double awrf_system(std::span<const double> per_request_scores);
// Sums in request id order.
double awrf_system(const std::map<RequestId, double>& per_request_scores);

struct TargetExposure {
  ExposureVector values;
  RequestId request;
};

// Exposure under the ideal policy: documents sorted best-first, displayed in
// `display`, and attention shared equally inside each tier of equal grade.
TargetExposure target_exposure(const RequestId& request,
                               std::span<const DocumentId> docs,
                               const RelevanceJudgments& rel,
                               const DisplaySpec& display,
                               const BrowsingModelSpec& spec,
                               const AlignmentTable& table);

// Per-document target attention in the order of `docs` (before grouping).
std::vector<double> target_attention(const RequestId& request,
                                     std::span<const DocumentId> docs,
                                     const RelevanceJudgments& rel,
                                     const DisplaySpec& display,
                                     const BrowsingModelSpec& spec);

// Expected exposure under the empirical distribution of the samples.
ExposureVector system_exposure(std::span<const ExposureVector> samples);

double eel(const ExposureVector& system, const ExposureVector& target);
double eel(const ExposureVector& system, const TargetExposure& target);

// Unweighted mean over requests, in request id order.
double mean_over_requests(const std::map<RequestId, double>& per_request);

}  // namespace gridfair

#endif  // GRIDFAIR_METRICS_H_
