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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridfair/browse.h"
#include "gridfair/cli.h"
#include "gridfair/compare.h"
#include "gridfair/layout.h"
#include "gridfair/metrics.h"
#include "gridfair/rerank.h"

namespace py = pybind11;
using namespace gridfair;

namespace {

BrowsingModelSpec MakeSpec(const std::string& base, const std::string& adjustment,
                           double alpha, double gamma, double beta,
                           double satisfaction, const std::string& within_row,
                           const std::string& row_reach) {
  BrowsingModelSpec s;
  s.base = ParseBaseModel(base);
  s.adjustment = ParseAdjustment(adjustment);
  s.alpha = alpha;
  s.gamma = gamma;
  s.beta = beta;
  s.satisfaction = satisfaction;
  s.within_row = ParseWithinRow(within_row);
  s.row_reach = ParseRowReach(row_reach);
  s.validate();
  return s;
}

std::vector<double> Attention(std::size_t length, const std::string& geometry,
                              const std::string& base, const std::string& adjustment,
                              double alpha, double gamma, double beta,
                              double satisfaction, const std::string& within_row,
                              const std::string& row_reach,
                              const std::vector<double>& grades) {
  const BrowsingModelSpec spec = MakeSpec(base, adjustment, alpha, gamma, beta,
                                          satisfaction, within_row, row_reach);
  std::vector<DocumentId> items;
  RelevanceJudgments rel;
  const RequestId request("q");
  for (std::size_t i = 0; i < length; ++i) {
    items.emplace_back("d" + std::to_string(i));
    if (i < grades.size()) rel.set(request, items.back(), grades[i]);
  }
  const GridLayout grid =
      render(Ranking(request, 0, items), parse_geometry_token(geometry));
  const AttentionVector a = attention(grid, rel, spec);
  return {a.weights().begin(), a.weights().end()};
}

double Awrf(const std::vector<double>& exposure, const std::vector<double>& target,
            const std::string& delta, std::size_t protected_group,
            std::optional<std::size_t> unknown_index, bool exclude_unknown) {
  DistanceSpec d;
  d.kind = ParseDistanceKind(delta);
  d.protected_group = protected_group;
  d.unknown_index = unknown_index;
  d.exclude_unknown = exclude_unknown;
  return awrf(ExposureVector(exposure), target, d);
}

// alignment: per item weights over root, which must end with "unknown".
std::vector<std::string> Rerank(const std::vector<std::string>& items,
                                const std::vector<std::vector<double>>& alignment,
                                const std::vector<std::string>& groups,
                                const std::vector<double>& target, double alpha,
                                const std::string& geometry, bool exclude_unknown) {
  if (alignment.size() != items.size()) {
    throw Error(ErrorKind::kShape, "one alignment row per item is required");
  }
  AlignmentTable table{GroupSchema(groups)};
  std::vector<DocumentId> ids;
  for (std::size_t i = 0; i < items.size(); ++i) {
    ids.emplace_back(items[i]);
    table.set(ids.back(), AlignmentVector(alignment[i]));
  }
  RerankSpec spec;
  spec.target = target;
  spec.attention.alpha = alpha;
  spec.geometry = parse_geometry_token(geometry);
  spec.distance.exclude_unknown = exclude_unknown;
  const Ranking out = greedy_rerank(Ranking(RequestId("q"), 0, ids), table, spec);
  std::vector<std::string> names;
  for (const auto& d : out.items()) names.push_back(d.value());
  return names;
}

py::tuple RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "gridfair");
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_gridfair, m) {
  m.doc() = "Provider-group fairness metrics for linear and grid layouts";

  static py::exception<Error> error(m, "GridfairError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("attention", &Attention, py::arg("length"), py::arg("geometry") = "vertical",
        py::arg("base") = "geometric", py::arg("adjustment") = "none",
        py::arg("alpha") = 0.5, py::arg("gamma") = 0.5, py::arg("beta") = 1.9,
        py::arg("satisfaction") = 0.5, py::arg("within_row") = "prefix",
        py::arg("row_reach") = "scan-or-skip",
        py::arg("grades") = std::vector<double>{},
        "Attention weights in reading order for a list of `length` items.");
  m.def("awrf", &Awrf, py::arg("exposure"), py::arg("target"), py::arg("delta") = "l1",
        py::arg("protected_group") = 0, py::arg("unknown_index") = std::nullopt,
        py::arg("exclude_unknown") = false,
        "Distance between normalized group exposure and a target distribution.");
  m.def("eel",
        [](const std::vector<double>& system, const std::vector<double>& target) {
          return eel(ExposureVector(system), ExposureVector(target));
        },
        py::arg("system"), py::arg("target"));
  m.def("rerank", &Rerank, py::arg("items"), py::arg("alignment"), py::arg("groups"),
        py::arg("target"), py::arg("alpha") = 0.5, py::arg("geometry") = "vertical",
        py::arg("exclude_unknown") = false,
        "Group-fair greedy re-ranking of `items`.");
  m.def("kendall_tau_b",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          return kendall_tau_b(x, y);
        },
        py::arg("x"), py::arg("y"));
  m.def("run_cli", &RunCli, py::arg("args"),
        "Runs the command-line tool in process; returns (exit_code, stdout, stderr).");
}
