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

#ifndef GRIDFAIR_RERANK_H_
#define GRIDFAIR_RERANK_H_

#include <optional>
#include <vector>

#include "gridfair/browse.h"
#include "gridfair/core.h"
#include "gridfair/layout.h"
#include "gridfair/metrics.h"

namespace gridfair {

struct RerankSpec {
  // Target group distribution, in schema order.
  std::vector<double> target;
  BrowsingModelSpec attention;
  LayoutGeometry geometry = LayoutGeometry::VerticalLinear();
  // Only the first `pool_size` items are reordered; the tail keeps its order.
  std::optional<std::size_t> pool_size;
  // Distance minimized by the lookahead. kind must be l1 or l2.
  DistanceSpec distance;
};

// Group-fair greedy re-ranking. This is a deficit heuristic, not an exact
// exposure optimizer.
//
// Items are bucketed by their dominant group and each bucket is consumed in
// score order (original rank when scores are absent or tied). Positions are
// filled top to bottom; at each one, every bucket's best remaining item is
// tried and the rest of the list is completed two ways:
//   * quota fill: repeatedly take the bucket whose group is furthest below
//     target_share * total_attention;
//   * the remaining items in their original order.
// The bucket whose better completion gives the lowest final AWRF wins; ties
// go to the lexicographically smallest group name. Because the original
// order is always among the completions, the result is never less fair than
// the input when the input respects score order within each group.
Ranking greedy_rerank(const Ranking& ranking, const AlignmentTable& table,
                      const RerankSpec& spec);

// Position weights used by the re-ranker for a list of `length` items.
std::vector<double> rerank_position_weights(const RerankSpec& spec,
                                            std::size_t length);

}  // namespace gridfair

#endif  // GRIDFAIR_RERANK_H_
