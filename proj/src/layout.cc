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

#include "gridfair/layout.h"

#include <algorithm>

namespace gridfair {

std::string_view GeometryKindName(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::kVerticalLinear: return "vertical-linear";
    case GeometryKind::kHorizontalLinear: return "horizontal-linear";
    case GeometryKind::kWrappedGrid: return "wrapped-grid";
  }
  return "?";
}

GeometryKind ParseGeometryKind(std::string_view name) {
  if (name == "vertical-linear" || name == "vertical" || name == "linear") {
    return GeometryKind::kVerticalLinear;
  }
  if (name == "horizontal-linear" || name == "horizontal") {
    return GeometryKind::kHorizontalLinear;
  }
  if (name == "wrapped-grid" || name == "grid") {
    return GeometryKind::kWrappedGrid;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown geometry '" + std::string(name) + "'");
}

LayoutGeometry LayoutGeometry::WrappedGrid(std::size_t columns) {
  if (columns == 0) {
    throw Error(ErrorKind::kInvalidGeometry, "grid needs at least 1 column");
  }
  return {GeometryKind::kWrappedGrid, columns};
}

std::size_t LayoutGeometry::columns_for(std::size_t length) const {
  switch (kind) {
    case GeometryKind::kVerticalLinear: return 1;
    case GeometryKind::kHorizontalLinear: return std::max<std::size_t>(length, 1);
    case GeometryKind::kWrappedGrid: return columns;
  }
  return columns;
}

std::string_view ReductionName(Reduction reduction) {
  switch (reduction) {
    case Reduction::kNone: return "none";
    case Reduction::kTruncate: return "truncate";
    case Reduction::kRewrap: return "rewrap";
  }
  return "?";
}

Reduction ParseReduction(std::string_view name) {
  if (name == "none") return Reduction::kNone;
  if (name == "truncate") return Reduction::kTruncate;
  if (name == "rewrap") return Reduction::kRewrap;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown reduction '" + std::string(name) + "'");
}

GridLayout::GridLayout(std::shared_ptr<const Ranking> origin,
                       std::size_t columns,
                       std::vector<std::vector<std::size_t>> row_ranks,
                       std::vector<DocumentId> dropped)
    : origin_(std::move(origin)),
      columns_(columns),
      row_ranks_(std::move(row_ranks)),
      dropped_(std::move(dropped)) {
  const auto& items = origin_->items();
  rows_.reserve(row_ranks_.size());
  std::size_t reading_rank = 0;
  for (std::size_t r = 0; r < row_ranks_.size(); ++r) {
    auto& row = rows_.emplace_back();
    row.reserve(row_ranks_[r].size());
    for (std::size_t c = 0; c < row_ranks_[r].size(); ++c) {
      const std::size_t rank = row_ranks_[r][c];
      row.push_back(items[rank]);
      cells_.push_back(Cell{items[rank], r, c, reading_rank++, rank});
    }
  }
}

std::vector<DocumentId> GridLayout::reading_order() const {
  std::vector<DocumentId> out;
  out.reserve(cells_.size());
  for (const auto& cell : cells_) out.push_back(cell.doc);
  return out;
}

GridLayout wrap(std::shared_ptr<const Ranking> ranking, std::size_t columns) {
  if (columns == 0) {
    throw Error(ErrorKind::kInvalidGeometry, "grid needs at least 1 column");
  }
  const std::size_t n = ranking->size();
  std::vector<std::vector<std::size_t>> rows((n + columns - 1) / columns);
  for (std::size_t i = 0; i < n; ++i) rows[i / columns].push_back(i);
  return GridLayout(std::move(ranking), columns, std::move(rows), {});
}

GridLayout wrap(const Ranking& ranking, std::size_t columns) {
  return wrap(std::make_shared<const Ranking>(ranking), columns);
}

GridLayout truncate(const GridLayout& grid, std::size_t new_columns) {
  if (new_columns == 0) {
    throw Error(ErrorKind::kInvalidGeometry, "grid needs at least 1 column");
  }
  if (new_columns > grid.columns()) {
    throw Error(ErrorKind::kInvalidReduction,
                "cannot truncate " + std::to_string(grid.columns()) +
                    " columns to " + std::to_string(new_columns));
  }
  std::vector<std::vector<std::size_t>> rows;
  rows.reserve(grid.row_ranks_.size());
  std::vector<std::size_t> dropped_ranks;
  const auto& items = grid.origin().items();
  for (const auto& doc : grid.dropped()) {
    auto it = std::find(items.begin(), items.end(), doc);
    dropped_ranks.push_back(static_cast<std::size_t>(it - items.begin()));
  }
  for (const auto& row : grid.row_ranks_) {
    const std::size_t keep = std::min(row.size(), new_columns);
    rows.emplace_back(row.begin(), row.begin() + keep);
    dropped_ranks.insert(dropped_ranks.end(), row.begin() + keep, row.end());
  }
  std::sort(dropped_ranks.begin(), dropped_ranks.end());
  std::vector<DocumentId> dropped;
  dropped.reserve(dropped_ranks.size());
  for (std::size_t rank : dropped_ranks) dropped.push_back(items[rank]);
  return GridLayout(grid.origin_, new_columns, std::move(rows),
                    std::move(dropped));
}

GridLayout rewrap(const GridLayout& grid, std::size_t new_columns) {
  if (!grid.dropped().empty()) {
    throw Error(ErrorKind::kInvalidReduction,
                "cannot re-wrap a truncated grid");
  }
  return wrap(grid.origin_, new_columns);
}

std::optional<Position> position(const GridLayout& grid,
                                 const DocumentId& doc) {
  for (const auto& cell : grid.cells()) {
    if (cell.doc == doc) return Position{cell.row, cell.column, cell.reading_rank};
  }
  return std::nullopt;
}

GridLayout render(std::shared_ptr<const Ranking> ranking,
                  const LayoutGeometry& geometry) {
  const std::size_t columns = geometry.columns_for(ranking->size());
  return wrap(std::move(ranking), columns);
}

GridLayout render(const Ranking& ranking, const LayoutGeometry& geometry) {
  return render(std::make_shared<const Ranking>(ranking), geometry);
}

GridLayout render(std::shared_ptr<const Ranking> ranking,
                  const DisplaySpec& display) {
  GridLayout grid = render(std::move(ranking), display.geometry);
  switch (display.reduction) {
    case Reduction::kNone: return grid;
    case Reduction::kTruncate: return truncate(grid, display.reduced_columns);
    case Reduction::kRewrap: return rewrap(grid, display.reduced_columns);
  }
  return grid;
}

}  // namespace gridfair
