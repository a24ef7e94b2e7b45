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

#include <sstream>

#include <cmath>

#include "doctest.h"
#include "gridfair/compare.h"

using namespace gridfair;

namespace {

ResultsRow Row(const std::string& system, const std::string& geometry,
               std::size_t columns, double value) {
  return ResultsRow{system, "ALL", geometry, columns, "none", "geometric", "none",
                    0.5, std::nullopt, std::nullopt, "awrf", value};
}

}  // namespace

TEST_CASE("kendall tau-b") {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> rev = {4, 3, 2, 1};
  const std::vector<double> swap = {1, 2, 4, 3};
  CHECK(*kendall_tau_b(x, x) == doctest::Approx(1.0));
  CHECK(*kendall_tau_b(x, rev) == doctest::Approx(-1.0));
  CHECK(*kendall_tau_b(x, swap) == doctest::Approx(2.0 / 3.0));
  const std::vector<double> ties = {1, 1, 2, 3};
  // concordant 5, discordant 0, ties in x 1: 5 / sqrt(5 * 6)
  CHECK(*kendall_tau_b(ties, x) == doctest::Approx(5.0 / std::sqrt(30.0)));
  const std::vector<double> flat = {2, 2, 2, 2};
  CHECK_FALSE(kendall_tau_b(x, flat).has_value());
  const std::vector<double> single = {1};
  CHECK_FALSE(kendall_tau_b(single, single).has_value());
}

TEST_CASE("configurations are paired within fixed fields") {
  std::vector<ResultsRow> rows;
  for (int s = 0; s < 4; ++s) {
    const std::string name = "s" + std::to_string(s);
    rows.push_back(Row(name, "vertical-linear", 1, 0.1 * s));
    rows.push_back(Row(name, "wrapped-grid", 5, 0.1 * (3 - s)));
    rows.push_back(Row(name, "wrapped-grid", 4, s == 1 ? 0.25 : 0.1 * s));
  }
  ResultsRow per_request = rows[0];
  per_request.request = "q1";
  rows.push_back(per_request);
  const auto cmp = compare_configurations(rows, {"geometry", "columns", "reduction"});
  REQUIRE(cmp.size() == 3);
  int reversed = 0, swapped = 0;
  for (const auto& c : cmp) {
    REQUIRE(c.tau.has_value());
    CHECK(c.systems.size() == 4);
    if (std::abs(*c.tau + 1.0) < 1e-12) ++reversed;
    if (std::abs(*c.tau - 2.0 / 3.0) < 1e-12) ++swapped;
  }
  CHECK(reversed == 1);
  CHECK(swapped == 1);

  std::ostringstream text, csv;
  print_comparisons(cmp, text);
  write_comparisons_csv(cmp, csv);
  CHECK(text.str().find("tau") != std::string::npos);
  CHECK(csv.str().rfind("group,first,second,tau,system", 0) == 0);
  CHECK_THROWS_AS(compare_configurations(rows, {"colour"}), Error);
}

TEST_CASE("single system configurations are not comparable") {
  std::vector<ResultsRow> rows = {Row("s0", "vertical-linear", 1, 0.1),
                                  Row("s0", "wrapped-grid", 5, 0.2)};
  const auto cmp = compare_configurations(rows, {"geometry", "columns"});
  REQUIRE(cmp.size() == 1);
  CHECK_FALSE(cmp[0].tau.has_value());
  std::ostringstream text;
  print_comparisons(cmp, text);
  CHECK(text.str().find("not comparable") != std::string::npos);
}
