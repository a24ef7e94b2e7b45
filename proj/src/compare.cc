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

#include "gridfair/compare.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace gridfair {
namespace {

std::string FieldValue(const ResultsRow& r, const std::string& field) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_real(*v) : std::string("-");
  };
  if (field == "geometry") return r.geometry;
  if (field == "columns") return std::to_string(r.columns);
  if (field == "reduction") return r.reduction;
  if (field == "base") return r.base;
  if (field == "adjustment") return r.adjustment;
  if (field == "alpha") return format_real(r.alpha);
  if (field == "gamma") return opt(r.gamma);
  if (field == "beta") return opt(r.beta);
  if (field == "metric") return r.metric;
  throw Error(ErrorKind::kInvalidArgument, "unknown field '" + field + "'");
}

std::string Label(const ResultsRow& r, const std::vector<std::string>& fields) {
  std::string out;
  for (const auto& f : fields) {
    if (!out.empty()) out += ';';
    out += f + "=" + FieldValue(r, f);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& ResultFields() {
  static const std::vector<std::string> fields = {
      "geometry", "columns", "reduction", "base", "adjustment",
      "alpha",    "gamma",   "beta",      "metric"};
  return fields;
}

std::optional<double> kendall_tau_b(std::span<const double> x,
                                    std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kShape, "kendall tau inputs differ in length");
  }
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) {
        ++ties_x;
        ++ties_y;
      } else if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2;
  const double denom = std::sqrt((pairs - static_cast<double>(ties_x)) *
                                 (pairs - static_cast<double>(ties_y)));
  if (denom == 0.0) return std::nullopt;
  return static_cast<double>(concordant - discordant) / denom;
}

std::vector<ConfigComparison> compare_configurations(
    const std::vector<ResultsRow>& rows, const std::vector<std::string>& vary) {
  const auto& all = ResultFields();
  for (const auto& v : vary) {
    if (std::find(all.begin(), all.end(), v) == all.end()) {
      throw Error(ErrorKind::kInvalidArgument, "unknown field '" + v + "'");
    }
  }
  if (vary.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "nothing to vary");
  }
  std::vector<std::string> fixed;
  for (const auto& f : all) {
    if (std::find(vary.begin(), vary.end(), f) == vary.end()) fixed.push_back(f);
  }

  // group -> config -> system -> value
  std::map<std::string, std::map<std::string, std::map<std::string, double>>>
      table;
  for (const auto& r : rows) {
    if (r.request != kAllRequests) continue;
    table[Label(r, fixed)][Label(r, vary)][r.system] = r.value;
  }

  std::vector<ConfigComparison> out;
  for (const auto& [group, configs] : table) {
    for (auto a = configs.begin(); a != configs.end(); ++a) {
      for (auto b = std::next(a); b != configs.end(); ++b) {
        ConfigComparison cmp{group, a->first, b->first, {}, std::nullopt};
        std::vector<double> xs, ys;
        for (const auto& [system, va] : a->second) {
          auto it = b->second.find(system);
          if (it == b->second.end()) continue;
          cmp.systems.push_back({system, va, it->second, it->second - va});
          xs.push_back(va);
          ys.push_back(it->second);
        }
        cmp.tau = kendall_tau_b(xs, ys);
        out.push_back(std::move(cmp));
      }
    }
  }
  return out;
}

void print_comparisons(const std::vector<ConfigComparison>& comparisons,
                       std::ostream& out) {
  if (comparisons.empty()) {
    out << "no configuration pairs to compare\n";
    return;
  }
  for (const auto& c : comparisons) {
    out << "[" << c.group << "]\n"
        << "  " << c.first << "  vs  " << c.second << "\n"
        << "  systems: " << c.systems.size() << "  kendall tau-b: "
        << (c.tau ? format_real(*c.tau) : std::string("not comparable"))
        << "\n";
    for (const auto& s : c.systems) {
      out << "    " << s.system << "  " << format_real(s.first) << " -> "
          << format_real(s.second) << "  (delta " << format_real(s.delta)
          << ")\n";
    }
  }
}

void write_comparisons_csv(const std::vector<ConfigComparison>& comparisons,
                           std::ostream& out) {
  out << "group,first,second,tau,system,first_value,second_value,delta\n";
  for (const auto& c : comparisons) {
    const std::string tau = c.tau ? format_real(*c.tau) : "";
    for (const auto& s : c.systems) {
      // Labels use ';' and '=' only, so they are safe CSV fields.
      out << c.group << ',' << c.first << ',' << c.second << ',' << tau << ','
          << s.system << ',' << format_real(s.first) << ','
          << format_real(s.second) << ',' << format_real(s.delta) << '\n';
    }
    if (c.systems.empty()) {
      out << c.group << ',' << c.first << ',' << c.second << ',' << tau
          << ",,,,\n";
    }
  }
}

}  // namespace gridfair
