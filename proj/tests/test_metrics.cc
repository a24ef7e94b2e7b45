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

#include <random>

#include "doctest.h"
#include "gridfair/metrics.h"
#include "oracles/oracles.h"
#include "test_util.h"

using namespace gridfair;
using gridfair::testing::Docs;
using gridfair::testing::MakeRanking;
using gridfair::testing::Values;

namespace {

GroupSchema AB() { return GroupSchema::FromObserved({"A", "B"}); }

AlignmentTable TwoDocs() {
  AlignmentTable t(AB());
  t.set(DocumentId("d1"), AlignmentVector({1, 0, 0}));
  t.set(DocumentId("d2"), AlignmentVector({0, 1, 0}));
  return t;
}

}  // namespace

TEST_CASE("group exposure") {
  AlignmentTable t(GroupSchema({"g0", "g1", "unknown"}));
  t.set(DocumentId("d0"), AlignmentVector({1, 0, 0}));
  t.set(DocumentId("d1"), AlignmentVector({0, 1, 0}));
  t.set(DocumentId("m"), AlignmentVector({0.5, 0.5, 0}));
  const auto d = Docs(2);
  CHECK(Values(group_exposure(AttentionVector({1, 0.5}), alignment_matrix(d, t))) ==
        std::vector<double>{1, 0.5, 0});
  CHECK(Values(group_exposure(AttentionVector(), AlignmentMatrix(0, 3))) ==
        std::vector<double>{0, 0, 0});
  const std::vector<DocumentId> m = {DocumentId("m")};
  CHECK(Values(group_exposure(AttentionVector({1}), alignment_matrix(m, t))) ==
        std::vector<double>{0.5, 0.5, 0});
  try {
    group_exposure(AttentionVector({1}), alignment_matrix(d, t));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kShape);
  }
}

TEST_CASE("population estimators") {
  const AlignmentTable t = TwoDocs();
  CHECK(population_estimator({EstimatorMode::kCatalog, {}}, t) ==
        std::vector<double>{0.5, 0.5, 0});
  const auto u = population_estimator({EstimatorMode::kUniform, {}}, t);
  for (double v : u) CHECK(v == doctest::Approx(1.0 / 3.0));

  AlignmentTable one(AB());
  one.set(DocumentId("d1"), AlignmentVector({1, 0, 0}));
  const std::vector<DocumentId> extra = {DocumentId("d2")};
  CHECK(population_estimator({EstimatorMode::kCatalog, {}}, one, extra) ==
        std::vector<double>{0.5, 0, 0.5});

  const std::vector<DocumentId> retrieved = {DocumentId("d2"), DocumentId("zz")};
  CHECK(population_estimator({EstimatorMode::kRetrieved, {}}, t, retrieved) ==
        std::vector<double>{0, 0.5, 0.5});
  CHECK_THROWS_AS(population_estimator({EstimatorMode::kRetrieved, {}}, t), Error);

  CHECK(population_estimator({EstimatorMode::kFixed, std::vector<double>{0.2, 0.8, 0}},
                             t) == std::vector<double>{0.2, 0.8, 0});
  try {
    population_estimator({EstimatorMode::kFixed, std::vector<double>{0.2, 0.7, 0}}, t);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidTarget);
  }
}

TEST_CASE("awrf distances") {
  const std::vector<double> half = {0.5, 0.5};
  CHECK(awrf(ExposureVector({0.5, 0.5}), half, {}) == 0.0);
  CHECK(awrf(ExposureVector({1, 0.5}), half, {}) == doctest::Approx(1.0 / 3.0));
  DistanceSpec l2{DistanceKind::kL2};
  CHECK(awrf(ExposureVector({1, 0.5}), half, l2) ==
        doctest::Approx(std::sqrt(2.0) / 6.0));
  DistanceSpec signed_spec{DistanceKind::kSignedTwoGroup};
  CHECK(awrf(ExposureVector({1, 0.5}), half, signed_spec) ==
        doctest::Approx(1.0 / 6.0));
  signed_spec.protected_group = 1;
  CHECK(awrf(ExposureVector({1, 0.5}), half, signed_spec) ==
        doctest::Approx(-1.0 / 6.0));

  // unknown coordinate dropped and both sides renormalized
  DistanceSpec ex{DistanceKind::kL1, 0, true, 2};
  const std::vector<double> third = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(awrf(ExposureVector({1, 1, 5}), third, ex) == doctest::Approx(0.0));
  CHECK(awrf(ExposureVector({1, 1, 5}), third, {}) > 0.5);

  // scale invariance
  CHECK(awrf(ExposureVector({3, 1.5}), half, {}) ==
        doctest::Approx(awrf(ExposureVector({1, 0.5}), half, {})));

  try {
    awrf(ExposureVector({0, 0}), half, {});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUndefinedExposure);
  }
  try {
    awrf(ExposureVector({1, 1, 1}), third, {DistanceKind::kSignedTwoGroup});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidDistance);
  }
  CHECK(awrf(ExposureVector({1, 1, 1}), third,
             {DistanceKind::kSignedTwoGroup, 0, false, 2}) == doctest::Approx(0.0));
}

TEST_CASE("system aggregation") {
  const std::vector<double> two = {0.2, 0.4};
  CHECK(awrf_system(two) == doctest::Approx(0.3));
  const std::vector<double> single = {0.7};
  CHECK(awrf_system(single) == 0.7);
  const std::vector<double> same(100, 0.125);
  CHECK(awrf_system(same) == 0.125);
  CHECK_THROWS_AS(awrf_system(std::span<const double>()), Error);
  std::map<RequestId, double> m = {{RequestId("b"), 0.4}, {RequestId("a"), 0.2}};
  CHECK(awrf_system(m) == doctest::Approx(0.3));
  CHECK_THROWS_AS(mean_over_requests({}), Error);
}

TEST_CASE("target attention uses tier means") {
  RelevanceJudgments rel;
  const RequestId q("q1");
  rel.set(q, DocumentId("d1"), 1.0);
  const std::vector<DocumentId> docs = {DocumentId("d2"), DocumentId("d1")};
  const DisplaySpec vertical(LayoutGeometry::VerticalLinear());
  CHECK(target_attention(q, docs, rel, vertical, {}) == std::vector<double>{0.5, 1});
  AlignmentTable t(GroupSchema({"g0", "g1", "unknown"}));
  t.set(DocumentId("d1"), AlignmentVector({1, 0, 0}));
  t.set(DocumentId("d2"), AlignmentVector({0, 1, 0}));
  CHECK(Values(target_exposure(q, docs, rel, vertical, {}, t).values) ==
        std::vector<double>{1, 0.5, 0});

  RelevanceJudgments tied;
  tied.set(q, DocumentId("d1"), 1.0);
  tied.set(q, DocumentId("d2"), 1.0);
  CHECK(target_attention(q, docs, tied, vertical, {}) ==
        std::vector<double>{0.75, 0.75});
  CHECK_THROWS_AS(target_attention(q, std::span<const DocumentId>(), rel, vertical, {}),
                  Error);
}

TEST_CASE("system exposure and eel") {
  const std::vector<ExposureVector> one = {ExposureVector({1, 0.5})};
  CHECK(Values(system_exposure(one)) == std::vector<double>{1, 0.5});
  const std::vector<ExposureVector> two = {ExposureVector({1, 0}),
                                           ExposureVector({0, 1})};
  CHECK(Values(system_exposure(two)) == std::vector<double>{0.5, 0.5});
  const std::vector<ExposureVector> three(3, ExposureVector({0.3, 0.6}));
  CHECK(Values(system_exposure(three))[1] == doctest::Approx(0.6));

  CHECK(eel(ExposureVector({1, 0.5}), ExposureVector({1, 0.5})) == 0.0);
  CHECK(eel(ExposureVector({1, 0.5}), ExposureVector({0.75, 0.75})) ==
        doctest::Approx(0.125));
  CHECK(eel(ExposureVector({2, 1}), ExposureVector({1.5, 1.5})) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(eel(ExposureVector({1}), ExposureVector({1, 0})), Error);
}

TEST_CASE("ranking exposure under truncation ignores dropped items") {
  AlignmentTable t(AB());
  auto ranking = MakeRanking(6);
  for (std::size_t i = 0; i < 6; ++i) {
    t.set(ranking->items()[i], AlignmentVector(i % 3 == 2 ? std::vector<double>{0, 1, 0}
                                                          : std::vector<double>{1, 0, 0}));
  }
  const DisplaySpec display(LayoutGeometry::WrappedGrid(3), Reduction::kTruncate, 2);
  const auto e = ranking_exposure(ranking, display, {}, {}, t);
  CHECK(Values(e) == std::vector<double>{1 + 0.5 + 0.25 + 0.125, 0, 0});
}
