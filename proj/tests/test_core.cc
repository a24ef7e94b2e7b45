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

#include <cmath>

#include "doctest.h"
#include "gridfair/core.h"
#include "test_util.h"

using namespace gridfair;
using gridfair::testing::Docs;

namespace {

GroupSchema AB() { return GroupSchema::FromObserved({"B", "A"}); }

ErrorKind KindOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kIo;
}

}  // namespace

TEST_CASE("identifiers reject empty strings") {
  CHECK(KindOf([] { DocumentId(""); }) == ErrorKind::kInvalidArgument);
  CHECK(DocumentId("a") < DocumentId("b"));
}

TEST_CASE("ranking validation") {
  CHECK_NOTHROW(Ranking(RequestId("q"), 0, Docs(3)));
  CHECK(KindOf([] {
          Ranking(RequestId("q"), 0, {DocumentId("a"), DocumentId("a")});
        }) == ErrorKind::kInvalidArgument);
  CHECK(KindOf([] {
          Ranking(RequestId("q"), 0, Docs(2), std::vector<double>{1.0});
        }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("schema orders observed groups with unknown last") {
  const GroupSchema s = GroupSchema::FromObserved({"b", "a", "b", "unknown"});
  CHECK(s.names() == std::vector<std::string>{"a", "b", "unknown"});
  CHECK(s.unknown_index() == 2);
  CHECK(*s.index_of("b") == 1);
  CHECK_FALSE(s.index_of("c").has_value());
  CHECK_THROWS_AS(GroupSchema({"a", "b"}), Error);
  CHECK_THROWS_AS(GroupSchema({"a", "unknown", "unknown"}), Error);
}

TEST_CASE("alignment vector normalization tolerance") {
  const AlignmentVector v({0.5, 0.5 + 5e-7, 0.0});
  CHECK(v[0] + v[1] + v[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(KindOf([] { AlignmentVector({0.5, 0.6}); }) == ErrorKind::kInvalidArgument);
  CHECK(KindOf([] { AlignmentVector({1.5, -0.5}); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("dominant group ties go to the smaller name") {
  const GroupSchema s = AB();
  CHECK(AlignmentVector({0.5, 0.5, 0.0}).dominant_group(s) == 0);
  CHECK(AlignmentVector({0.2, 0.3, 0.5}).dominant_group(s) == 2);
  CHECK(AlignmentVector({0.2, 0.8, 0.0}).dominant_group(s) == 1);
}

TEST_CASE("alignment matrix rows and unknown fallback") {
  AlignmentTable table(AB());
  table.set(DocumentId("d1"), AlignmentVector({0.5, 0.5, 0.0}));
  table.set(DocumentId("d2"), AlignmentVector({0.0, 1.0, 0.0}));
  const std::vector<DocumentId> items = {DocumentId("d1"), DocumentId("d2"),
                                         DocumentId("missing")};
  const AlignmentMatrix m = alignment_matrix(items, table);
  REQUIRE(m.rows() == 3);
  CHECK(std::vector<double>(m.row(0).begin(), m.row(0).end()) ==
        std::vector<double>{0.5, 0.5, 0.0});
  CHECK(std::vector<double>(m.row(1).begin(), m.row(1).end()) ==
        std::vector<double>{0.0, 1.0, 0.0});
  CHECK(std::vector<double>(m.row(2).begin(), m.row(2).end()) ==
        std::vector<double>{0.0, 0.0, 1.0});
  CHECK_THROWS_AS(table.set(DocumentId("x"), AlignmentVector({1.0, 0.0})), Error);
}

TEST_CASE("relevance judgments default to zero") {
  RelevanceJudgments rel;
  rel.set(RequestId("q1"), DocumentId("d1"), 2.0);
  CHECK(rel.grade(RequestId("q1"), DocumentId("d1")) == 2.0);
  CHECK(rel.grade(RequestId("q1"), DocumentId("d2")) == 0.0);
  CHECK(rel.grade(RequestId("q2"), DocumentId("d1")) == 0.0);
  CHECK(rel.max_grade() == 2.0);
  CHECK_THROWS_AS(rel.set(RequestId("q1"), DocumentId("d3"), -1.0), Error);
}

TEST_CASE("attention and exposure vectors validate their values") {
  CHECK_THROWS_AS(AttentionVector({1.2}), Error);
  CHECK_THROWS_AS(AttentionVector({-0.1}), Error);
  CHECK_THROWS_AS(ExposureVector({-1.0}), Error);
  CHECK_THROWS_AS(ExposureVector({INFINITY}), Error);
  CHECK(ExposureVector({1.0, 0.5}).total() == 1.5);
  CHECK(ExposureVector::Zero(3).total() == 0.0);
}
