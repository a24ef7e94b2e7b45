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

#include "gridfair/browse.h"

#include <algorithm>
#include <cmath>

namespace gridfair {
namespace {

Error Unknown(std::string_view what, std::string_view name) {
  return Error(ErrorKind::kInvalidArgument,
               "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

double Clamp01(double w) { return std::clamp(w, 0.0, 1.0); }

// Continuation probability of every displayed item, in reading order.
std::vector<double> Continuations(const GridLayout& grid,
                                  const RelevanceJudgments& rel,
                                  const BrowsingModelSpec& spec) {
  const auto& cells = grid.cells();
  std::vector<double> cont(cells.size(), spec.alpha);
  if (spec.base == BaseModel::kCascade) {
    const double cap = spec.cap_for(rel);
    const RequestId& request = grid.origin().request();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      cont[i] = continuation(rel.grade(request, cells[i].doc), spec, cap);
    }
  }
  return cont;
}

std::vector<double> BaseWeights(std::span<const double> cont) {
  std::vector<double> w(cont.size());
  double product = 1.0;
  for (std::size_t i = 0; i < cont.size(); ++i) {
    w[i] = Clamp01(product);
    product *= cont[i];
  }
  return w;
}

void RequireAdjustment(const BrowsingModelSpec& spec, Adjustment expected) {
  if (spec.adjustment != expected) {
    throw Error(ErrorKind::kInvalidArgument,
                "browsing spec adjustment is '" +
                    std::string(AdjustmentName(spec.adjustment)) +
                    "', expected '" + std::string(AdjustmentName(expected)) +
                    "'");
  }
}

}  // namespace

std::string_view BaseModelName(BaseModel base) {
  return base == BaseModel::kGeometric ? "geometric" : "cascade";
}

std::string_view AdjustmentName(Adjustment adjustment) {
  switch (adjustment) {
    case Adjustment::kNone: return "none";
    case Adjustment::kRowSkip: return "row-skip";
    case Adjustment::kSlowDecay: return "slow-decay";
  }
  return "?";
}

std::string_view WithinRowName(WithinRow mode) {
  return mode == WithinRow::kPrefix ? "prefix" : "full";
}

std::string_view RowReachName(RowReach mode) {
  return mode == RowReach::kScanOrSkip ? "scan-or-skip" : "bracket";
}

BaseModel ParseBaseModel(std::string_view name) {
  if (name == "geometric") return BaseModel::kGeometric;
  if (name == "cascade") return BaseModel::kCascade;
  throw Unknown("browsing model", name);
}

Adjustment ParseAdjustment(std::string_view name) {
  if (name == "none") return Adjustment::kNone;
  if (name == "row-skip" || name == "rs") return Adjustment::kRowSkip;
  if (name == "slow-decay" || name == "sd") return Adjustment::kSlowDecay;
  throw Unknown("adjustment", name);
}

WithinRow ParseWithinRow(std::string_view name) {
  if (name == "prefix") return WithinRow::kPrefix;
  if (name == "full") return WithinRow::kFull;
  throw Unknown("within-row mode", name);
}

RowReach ParseRowReach(std::string_view name) {
  if (name == "scan-or-skip") return RowReach::kScanOrSkip;
  if (name == "bracket") return RowReach::kBracket;
  throw Unknown("row-reach mode", name);
}

void BrowsingModelSpec::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::kInvalidArgument, msg);
  };
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must lie in [0, 1]");
  if (!(beta >= 1.0) || !std::isfinite(beta)) fail("beta must be >= 1");
  if (!(satisfaction >= 0.0 && satisfaction <= 1.0)) {
    fail("satisfaction must lie in [0, 1]");
  }
  if (relevance_cap && !(*relevance_cap > 0.0 && std::isfinite(*relevance_cap))) {
    fail("relevance cap must be positive");
  }
}

double BrowsingModelSpec::cap_for(const RelevanceJudgments& rel) const {
  if (relevance_cap) return *relevance_cap;
  return rel.max_grade() > 0.0 ? rel.max_grade() : 1.0;
}

double continuation(double grade, const BrowsingModelSpec& spec, double cap) {
  if (spec.base == BaseModel::kGeometric) return spec.alpha;
  const double normalized = std::min(std::max(grade, 0.0) / cap, 1.0);
  return Clamp01(spec.alpha * (1.0 - spec.satisfaction * normalized));
}

AttentionVector attention_base(const GridLayout& grid,
                               const RelevanceJudgments& rel,
                               const BrowsingModelSpec& spec) {
  RequireAdjustment(spec, Adjustment::kNone);
  return AttentionVector(BaseWeights(Continuations(grid, rel, spec)));
}

AttentionVector attention_row_skip(const GridLayout& grid,
                                   const RelevanceJudgments& rel,
                                   const BrowsingModelSpec& spec) {
  RequireAdjustment(spec, Adjustment::kRowSkip);
  const auto cont = Continuations(grid, rel, spec);
  const auto& cells = grid.cells();
  const std::size_t rows = grid.row_count();

  // row_product[k]: probability of scanning row k to its end.
  std::vector<double> row_product(rows, 1.0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    row_product[cells[i].row] *= cont[i];
  }

  std::vector<double> reach(rows, 1.0);
  if (spec.row_reach == RowReach::kScanOrSkip) {
    for (std::size_t r = 1; r < rows; ++r) {
      reach[r] = reach[r - 1] *
                 (spec.gamma + (1.0 - spec.gamma) * row_product[r - 1]);
    }
  } else {
    double scanned = 1.0;
    double skipped = 1.0;
    for (std::size_t r = 1; r < rows; ++r) {
      scanned *= (1.0 - spec.gamma) * row_product[r - 1];
      skipped *= spec.gamma;
      reach[r] = scanned + skipped;
    }
  }

  std::vector<double> w(cells.size());
  double within = 1.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].column == 0) within = 1.0;
    const double factor = spec.within_row == WithinRow::kPrefix
                              ? within
                              : row_product[cells[i].row];
    w[i] = Clamp01(reach[cells[i].row] * factor);
    within *= cont[i];
  }
  return AttentionVector(std::move(w));
}

AttentionVector attention_slow_decay(const GridLayout& grid,
                                     const RelevanceJudgments& rel,
                                     const BrowsingModelSpec& spec) {
  RequireAdjustment(spec, Adjustment::kSlowDecay);
  auto w = BaseWeights(Continuations(grid, rel, spec));
  const auto& cells = grid.cells();
  double boost = 1.0;
  std::size_t boost_row = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    while (boost_row < cells[i].row) {
      boost *= spec.beta;
      ++boost_row;
    }
    if (w[i] > 0.0) w[i] = std::min(boost * w[i], 1.0);
  }
  return AttentionVector(std::move(w));
}

AttentionVector attention(const GridLayout& grid, const RelevanceJudgments& rel,
                          const BrowsingModelSpec& spec) {
  switch (spec.adjustment) {
    case Adjustment::kNone: return attention_base(grid, rel, spec);
    case Adjustment::kRowSkip: return attention_row_skip(grid, rel, spec);
    case Adjustment::kSlowDecay: return attention_slow_decay(grid, rel, spec);
  }
  return {};
}

std::vector<double> attention_by_origin_rank(const GridLayout& grid,
                                             const AttentionVector& weights) {
  if (weights.size() != grid.displayed_count()) {
    throw Error(ErrorKind::kShape, "attention does not match grid");
  }
  std::vector<double> out(grid.origin().size(), 0.0);
  const auto& cells = grid.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out[cells[i].origin_rank] = weights[i];
  }
  return out;
}

}  // namespace gridfair
