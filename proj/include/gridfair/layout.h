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

// Grid geometry. A ranking is rendered row-major into a grid of fixed width;
// linear layouts are the degenerate one-column and one-row cases. Grids can
// be narrowed either by truncating each row or by re-wrapping the full list.
//
// Rows, columns and reading ranks are 0-based. Reading ranks are dense over
// displayed items: items removed by truncation leave no gap.

#ifndef GRIDFAIR_LAYOUT_H_
#define GRIDFAIR_LAYOUT_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridfair/core.h"

namespace gridfair {

enum class GeometryKind { kVerticalLinear, kHorizontalLinear, kWrappedGrid };

std::string_view GeometryKindName(GeometryKind kind);
GeometryKind ParseGeometryKind(std::string_view name);

struct LayoutGeometry {
  GeometryKind kind = GeometryKind::kVerticalLinear;
  // Only meaningful for wrapped grids; vertical is always 1 and horizontal
  // takes the length of the list it renders.
  std::size_t columns = 1;

  static LayoutGeometry VerticalLinear() {
    return {GeometryKind::kVerticalLinear, 1};
  }
  static LayoutGeometry HorizontalLinear() {
    return {GeometryKind::kHorizontalLinear, 1};
  }
  static LayoutGeometry WrappedGrid(std::size_t columns);

  // Width used to render a list of `length` items.
  std::size_t columns_for(std::size_t length) const;

  friend bool operator==(const LayoutGeometry&,
                         const LayoutGeometry&) = default;
};

enum class Reduction { kNone, kTruncate, kRewrap };

std::string_view ReductionName(Reduction reduction);
Reduction ParseReduction(std::string_view name);

// A geometry plus an optional column reduction applied after rendering.
struct DisplaySpec {
  LayoutGeometry geometry;
  Reduction reduction = Reduction::kNone;
  std::size_t reduced_columns = 0;

  DisplaySpec() = default;
  DisplaySpec(LayoutGeometry g) : geometry(g) {}  // NOLINT: implicit
  DisplaySpec(LayoutGeometry g, Reduction r, std::size_t c)
      : geometry(g), reduction(r), reduced_columns(c) {}
};

struct Cell {
  DocumentId doc;
  std::size_t row;
  std::size_t column;
  std::size_t reading_rank;
  // Rank of the item in the origin ranking.
  std::size_t origin_rank;
};

struct Position {
  std::size_t row;
  std::size_t column;
  std::size_t reading_rank;

  friend bool operator==(const Position&, const Position&) = default;
};

class GridLayout {
 public:
  std::size_t columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::vector<DocumentId>>& rows() const { return rows_; }
  const Ranking& origin() const { return *origin_; }
  const std::vector<DocumentId>& dropped() const { return dropped_; }

  // Displayed items in reading order (row-major, left to right).
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t displayed_count() const { return cells_.size(); }
  std::vector<DocumentId> reading_order() const;

 private:
  friend GridLayout wrap(std::shared_ptr<const Ranking>, std::size_t);
  friend GridLayout truncate(const GridLayout&, std::size_t);
  friend GridLayout rewrap(const GridLayout&, std::size_t);

  GridLayout(std::shared_ptr<const Ranking> origin, std::size_t columns,
             std::vector<std::vector<std::size_t>> row_ranks,
             std::vector<DocumentId> dropped);

  std::shared_ptr<const Ranking> origin_;
  std::size_t columns_;
  std::vector<std::vector<DocumentId>> rows_;
  std::vector<std::vector<std::size_t>> row_ranks_;
  std::vector<DocumentId> dropped_;
  std::vector<Cell> cells_;
};

// Item at rank i goes to row i / columns, column i % columns.
GridLayout wrap(std::shared_ptr<const Ranking> ranking, std::size_t columns);
GridLayout wrap(const Ranking& ranking, std::size_t columns);

// Keeps the first `new_columns` items of every row; the rest are dropped.
GridLayout truncate(const GridLayout& grid, std::size_t new_columns);

// Reflows the full origin ranking at the new width. Rejects grids that have
// already lost items to truncation.
GridLayout rewrap(const GridLayout& grid, std::size_t new_columns);

// Coordinates of a displayed document; absent for dropped or foreign ids.
std::optional<Position> position(const GridLayout& grid, const DocumentId& doc);

GridLayout render(const Ranking& ranking, const LayoutGeometry& geometry);
GridLayout render(std::shared_ptr<const Ranking> ranking,
                  const LayoutGeometry& geometry);
GridLayout render(std::shared_ptr<const Ranking> ranking,
                  const DisplaySpec& display);

}  // namespace gridfair

#endif  // GRIDFAIR_LAYOUT_H_
