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

#include "gridfair/rerank.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace gridfair {
namespace {

struct Bucket {
  std::size_t group;
  std::vector<std::size_t> items;  // indices into the pool, best first
  std::size_t next = 0;

  bool empty() const { return next >= items.size(); }
  std::size_t top() const { return items[next]; }
};

class GreedyState {
 public:
  GreedyState(const std::vector<const AlignmentVector*>& alignment,
              std::vector<Bucket> buckets, std::vector<double> weights,
              const std::vector<double>& target, const DistanceSpec& distance,
              std::size_t groups)
      : alignment_(alignment),
        buckets_(std::move(buckets)),
        weights_(std::move(weights)),
        target_(target),
        distance_(distance),
        exposure_(groups, 0.0),
        placed_(alignment.size(), false) {
    total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    quota_target_ = target_;
    if (distance_.exclude_unknown && distance_.unknown_index) {
      quota_target_[*distance_.unknown_index] = 0.0;
    }
  }

  std::vector<std::size_t> Run() {
    std::vector<std::size_t> order;
    order.reserve(alignment_.size());
    for (std::size_t pos = 0; pos < alignment_.size(); ++pos) {
      std::size_t best_bucket = buckets_.size();
      double best_value = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < buckets_.size(); ++b) {
        if (buckets_[b].empty()) continue;
        const double value = Lookahead(pos, b);
        if (best_bucket == buckets_.size() || value < best_value - 1e-12) {
          best_bucket = b;
          best_value = value;
        }
      }
      const std::size_t item = buckets_[best_bucket].top();
      Place(exposure_, pos, item);
      placed_[item] = true;
      ++buckets_[best_bucket].next;
      order.push_back(item);
    }
    return order;
  }

 private:
  void Place(std::vector<double>& exposure, std::size_t pos,
             std::size_t item) const {
    const auto& a = *alignment_[item];
    for (std::size_t g = 0; g < exposure.size(); ++g) {
      exposure[g] += weights_[pos] * a[g];
    }
  }

  double Score(const std::vector<double>& exposure) const {
    try {
      return awrf(ExposureVector(exposure), target_, distance_);
    } catch (const Error& e) {
      // Only unknown-group items with exclude_unknown: every order ties.
      if (e.kind() != ErrorKind::kUndefinedExposure) throw;
      return std::numeric_limits<double>::infinity();
    }
  }

  // Best final AWRF reachable by placing bucket b's top item at `pos` and
  // completing with either heuristic.
  double Lookahead(std::size_t pos, std::size_t b) const {
    std::vector<double> start = exposure_;
    const std::size_t first = buckets_[b].top();
    Place(start, pos, first);

    std::vector<double> original = start;
    std::size_t q = pos + 1;
    for (std::size_t item = 0; item < alignment_.size(); ++item) {
      if (placed_[item] || item == first) continue;
      Place(original, q++, item);
    }

    std::vector<double> quota = start;
    std::vector<std::size_t> next(buckets_.size());
    for (std::size_t k = 0; k < buckets_.size(); ++k) {
      next[k] = buckets_[k].next + (k == b ? 1 : 0);
    }
    for (q = pos + 1; q < alignment_.size(); ++q) {
      std::size_t pick = buckets_.size();
      double pick_deficit = 0.0;
      for (std::size_t k = 0; k < buckets_.size(); ++k) {
        if (next[k] >= buckets_[k].items.size()) continue;
        const std::size_t g = buckets_[k].group;
        const double deficit = quota_target_[g] * total_weight_ - quota[g];
        if (pick == buckets_.size() || deficit > pick_deficit + 1e-15) {
          pick = k;
          pick_deficit = deficit;
        }
      }
      Place(quota, q, buckets_[pick].items[next[pick]++]);
    }
    return std::min(Score(original), Score(quota));
  }

  const std::vector<const AlignmentVector*>& alignment_;
  std::vector<Bucket> buckets_;
  std::vector<double> weights_;
  const std::vector<double>& target_;
  std::vector<double> quota_target_;
  const DistanceSpec& distance_;
  double total_weight_ = 0.0;
  std::vector<double> exposure_;
  std::vector<bool> placed_;
};

}  // namespace

std::vector<double> rerank_position_weights(const RerankSpec& spec,
                                            std::size_t length) {
  std::vector<DocumentId> items;
  items.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    items.emplace_back("p" + std::to_string(i));
  }
  auto synthetic =
      std::make_shared<const Ranking>(RequestId("rerank"), 0, std::move(items));
  const GridLayout grid = render(synthetic, spec.geometry);
  const AttentionVector w = attention(grid, RelevanceJudgments{}, spec.attention);
  return {w.weights().begin(), w.weights().end()};
}

Ranking greedy_rerank(const Ranking& ranking, const AlignmentTable& table,
                      const RerankSpec& spec) {
  spec.attention.validate();
  const GroupSchema& schema = table.schema();
  if (spec.target.size() != schema.size()) {
    throw Error(ErrorKind::kShape, "re-rank target does not match schema");
  }
  if (spec.distance.kind == DistanceKind::kSignedTwoGroup) {
    throw Error(ErrorKind::kInvalidDistance,
                "re-ranking needs a non-negative distance (l1 or l2)");
  }
  DistanceSpec distance = spec.distance;
  distance.unknown_index = schema.unknown_index();

  const std::size_t n = ranking.size();
  const std::size_t pool = std::min(n, spec.pool_size.value_or(n));
  if (pool < 2) return ranking;

  std::vector<const AlignmentVector*> alignment(pool);
  for (std::size_t i = 0; i < pool; ++i) {
    alignment[i] = &table.lookup(ranking.items()[i]);
  }

  // Buckets in lexicographic group-name order so earlier buckets win ties.
  std::vector<std::size_t> group_order(schema.size());
  std::iota(group_order.begin(), group_order.end(), 0);
  std::sort(group_order.begin(), group_order.end(),
            [&](std::size_t a, std::size_t b) {
              return schema.name(a) < schema.name(b);
            });
  std::vector<Bucket> buckets;
  for (std::size_t g : group_order) {
    Bucket bucket{g, {}};
    for (std::size_t i = 0; i < pool; ++i) {
      if (alignment[i]->dominant_group(schema) == g) bucket.items.push_back(i);
    }
    if (bucket.items.empty()) continue;
    if (const auto& scores = ranking.scores()) {
      std::stable_sort(bucket.items.begin(), bucket.items.end(),
                       [&](std::size_t a, std::size_t b) {
                         return (*scores)[a] > (*scores)[b];
                       });
    }
    buckets.push_back(std::move(bucket));
  }

  GreedyState state(alignment, std::move(buckets),
                    rerank_position_weights(spec, pool), spec.target, distance,
                    schema.size());
  std::vector<std::size_t> order = state.Run();
  for (std::size_t i = pool; i < n; ++i) order.push_back(i);

  std::vector<DocumentId> items;
  items.reserve(n);
  for (std::size_t i : order) items.push_back(ranking.items()[i]);
  std::optional<std::vector<double>> scores;
  if (ranking.scores()) {
    scores.emplace();
    scores->reserve(n);
    for (std::size_t i : order) scores->push_back((*ranking.scores())[i]);
  }
  return Ranking(ranking.request(), ranking.sample_index(), std::move(items),
                 std::move(scores));
}

}  // namespace gridfair
