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

// Reference computations used by the tests. Nothing here calls into the
// library: every quantity is rebuilt from plain vectors so a bug in the
// library cannot hide behind the same bug in its checker.

#ifndef GRIDFAIR_TESTS_ORACLES_H_
#define GRIDFAIR_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

// Attention by reading rank for a list of per-item continuation
// probabilities displayed `columns` wide.
struct Model {
  enum Kind { kBase, kRowSkip, kSlowDecay } kind = kBase;
  double gamma = 0.5;
  double beta = 1.9;
  bool full_row = false;
};

inline double prefix_product(const std::vector<double>& cont, std::size_t begin,
                             std::size_t end) {
  double p = 1.0;
  for (std::size_t i = begin; i < end; ++i) p *= cont[i];
  return p;
}

inline std::vector<double> attention(const std::vector<double>& cont,
                                     std::size_t columns, const Model& m) {
  const std::size_t n = cont.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = i / columns;
    const std::size_t row_begin = row * columns;
    const std::size_t row_end = std::min(n, row_begin + columns);
    switch (m.kind) {
      case Model::kBase:
        w[i] = prefix_product(cont, 0, i);
        break;
      case Model::kSlowDecay:
        w[i] = std::min(1.0, std::pow(m.beta, static_cast<double>(row)) *
                                 prefix_product(cont, 0, i));
        break;
      case Model::kRowSkip: {
        double reach = 1.0;
        for (std::size_t k = 0; k < row; ++k) {
          const double whole =
              prefix_product(cont, k * columns, (k + 1) * columns);
          reach *= m.gamma + (1.0 - m.gamma) * whole;
        }
        const double within = m.full_row
                                  ? prefix_product(cont, row_begin, row_end)
                                  : prefix_product(cont, row_begin, i);
        w[i] = std::clamp(reach * within, 0.0, 1.0);
        break;
      }
    }
  }
  return w;
}

// Trajectory simulator for the row-skip prefix model. On reaching a row the
// user scans it left to right, moving on from each item with its
// continuation probability. Independently the user decides to skip ahead
// with probability gamma; otherwise they go on only if the scan reached the
// end of the row.
struct SimResult {
  std::vector<double> mean;
  std::vector<double> stderr_;
};

inline SimResult simulate_row_skip(const std::vector<double>& cont,
                                   std::size_t columns, double gamma,
                                   std::size_t trajectories,
                                   std::uint64_t seed) {
  const std::size_t n = cont.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> views(n, 0);
  const std::size_t rows = (n + columns - 1) / columns;
  for (std::size_t t = 0; t < trajectories; ++t) {
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t begin = r * columns;
      const std::size_t end = std::min(n, begin + columns);
      bool finished = true;
      for (std::size_t i = begin; i < end; ++i) {
        ++views[i];
        if (unit(rng) >= cont[i]) {
          finished = false;
          break;
        }
      }
      const bool skip = unit(rng) < gamma;
      if (!skip && !finished) break;
    }
  }
  SimResult out;
  out.mean.resize(n);
  out.stderr_.resize(n);
  const double count = static_cast<double>(trajectories);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = static_cast<double>(views[i]) / count;
    out.mean[i] = p;
    out.stderr_[i] = std::sqrt(p * (1.0 - p) / count);
  }
  return out;
}

// Group exposure from attention and a row-per-item alignment matrix.
inline std::vector<double> exposure(
    const std::vector<double>& weights,
    const std::vector<std::vector<double>>& alignment) {
  std::vector<double> e(alignment.empty() ? 0 : alignment[0].size(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t g = 0; g < e.size(); ++g) e[g] += weights[i] * alignment[i][g];
  }
  return e;
}

inline double l1_share_distance(const std::vector<double>& e,
                                const std::vector<double>& target) {
  const double total = std::accumulate(e.begin(), e.end(), 0.0);
  double d = 0.0;
  for (std::size_t g = 0; g < e.size(); ++g) d += std::abs(e[g] / total - target[g]);
  return d;
}

inline double squared_distance(const std::vector<double>& a,
                               const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t g = 0; g < a.size(); ++g) d += (a[g] - b[g]) * (a[g] - b[g]);
  return d;
}

// Expected per-document attention over every best-first ordering of the
// documents, i.e. every permutation that keeps grades non-increasing.
// Continuation is position-only (geometric), so `cont` is indexed by
// position.
inline std::vector<double> permutation_expectation(
    const std::vector<double>& grades, const std::vector<double>& cont,
    std::size_t columns, const Model& m) {
  const std::size_t n = grades.size();
  const std::vector<double> weights = attention(cont, columns, m);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> sum(n, 0.0);
  std::size_t count = 0;
  do {
    bool sorted = true;
    for (std::size_t p = 1; p < n && sorted; ++p) {
      sorted = grades[perm[p - 1]] >= grades[perm[p]];
    }
    if (!sorted) continue;
    ++count;
    for (std::size_t p = 0; p < n; ++p) sum[perm[p]] += weights[p];
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& s : sum) s /= static_cast<double>(count);
  return sum;
}

// Smallest l1 share distance over all orderings of the items.
inline double best_l1_over_permutations(
    const std::vector<double>& position_weights,
    const std::vector<std::vector<double>>& alignment,
    const std::vector<double>& target) {
  std::vector<std::size_t> perm(alignment.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  std::vector<std::vector<double>> ordered(alignment.size());
  do {
    for (std::size_t p = 0; p < perm.size(); ++p) ordered[p] = alignment[perm[p]];
    best = std::min(best, l1_share_distance(exposure(position_weights, ordered),
                                            target));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle

#endif  // GRIDFAIR_TESTS_ORACLES_H_
