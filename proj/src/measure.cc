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

#include "gridfair/measure.h"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

namespace gridfair {
namespace {

Error ConfigError(const std::string& message) {
  return Error(ErrorKind::kConfig, message);
}

struct Task {
  std::size_t system;
  const RequestId* request;
  const std::vector<Ranking>* samples;
};

// Everything fixed for the whole sweep.
struct Plan {
  std::vector<DisplaySpec> displays;
  std::vector<BrowsingModelSpec> specs;
  std::vector<Metric> metrics;
  const AlignmentTable* table;
  const RelevanceJudgments* rel;
  std::optional<std::vector<double>> global_target;
  DistanceSpec distance;

  std::size_t slot(std::size_t d, std::size_t s, std::size_t m) const {
    return (d * specs.size() + s) * metrics.size() + m;
  }
  std::size_t slots() const {
    return displays.size() * specs.size() * metrics.size();
  }
};

std::vector<std::optional<double>> Evaluate(const Plan& plan,
                                            const Task& task) {
  std::vector<std::shared_ptr<const Ranking>> samples;
  samples.reserve(task.samples->size());
  std::vector<DocumentId> docs;
  std::unordered_set<DocumentId> seen;
  for (const auto& r : *task.samples) {
    samples.push_back(std::make_shared<const Ranking>(r));
    for (const auto& d : r.items()) {
      if (seen.insert(d).second) docs.push_back(d);
    }
  }

  std::vector<double> target;
  if (plan.global_target) {
    target = *plan.global_target;
  } else if (!docs.empty()) {
    target = population_estimator({EstimatorMode::kRetrieved, std::nullopt},
                                  *plan.table, docs);
  }

  std::vector<std::optional<double>> out(plan.slots());
  std::vector<ExposureVector> exposures(samples.size());
  for (std::size_t d = 0; d < plan.displays.size(); ++d) {
    for (std::size_t s = 0; s < plan.specs.size(); ++s) {
      for (std::size_t i = 0; i < samples.size(); ++i) {
        exposures[i] = ranking_exposure(samples[i], plan.displays[d],
                                        plan.specs[s], *plan.rel, *plan.table);
      }
      for (std::size_t m = 0; m < plan.metrics.size(); ++m) {
        std::optional<double> value;
        if (plan.metrics[m] == Metric::kAwrf) {
          try {
            double sum = 0.0;
            for (const auto& e : exposures) {
              sum += awrf(e, target, plan.distance);
            }
            value = sum / static_cast<double>(exposures.size());
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::kUndefinedExposure) throw;
          }
        } else if (!docs.empty()) {
          const auto system = system_exposure(exposures);
          const auto ideal =
              target_exposure(*task.request, docs, *plan.rel,
                              plan.displays[d], plan.specs[s], *plan.table);
          value = eel(system, ideal);
        }
        out[plan.slot(d, s, m)] = value;
      }
    }
  }
  return out;
}

ResultsRow RowTemplate(const std::string& system, const DisplaySpec& display,
                       const BrowsingModelSpec& spec, Metric metric) {
  ResultsRow row;
  row.system = system;
  row.geometry = GeometryKindName(display.geometry.kind);
  switch (display.geometry.kind) {
    case GeometryKind::kVerticalLinear: row.columns = 1; break;
    // One row as wide as the list.
    case GeometryKind::kHorizontalLinear: row.columns = 0; break;
    case GeometryKind::kWrappedGrid:
      row.columns = display.reduction == Reduction::kNone
                        ? display.geometry.columns
                        : display.reduced_columns;
      break;
  }
  row.reduction = ReductionName(display.reduction);
  row.base = BaseModelName(spec.base);
  row.adjustment = AdjustmentName(spec.adjustment);
  row.alpha = spec.alpha;
  if (spec.adjustment == Adjustment::kRowSkip) row.gamma = spec.gamma;
  if (spec.adjustment == Adjustment::kSlowDecay) row.beta = spec.beta;
  row.metric = MetricName(metric);
  return row;
}

}  // namespace

std::string_view MetricName(Metric metric) {
  return metric == Metric::kAwrf ? "awrf" : "eel";
}

Metric ParseMetric(std::string_view name) {
  if (name == "awrf") return Metric::kAwrf;
  if (name == "eel") return Metric::kEel;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown metric '" + std::string(name) + "'");
}

void SweepConfig::validate() const {
  if (runs.empty()) throw ConfigError("at least one run file is required");
  if (alignment.empty()) throw ConfigError("an alignment file is required");
  if (metrics.empty()) throw ConfigError("metric set is empty");
  if (jobs == 0) throw ConfigError("jobs must be at least 1");
  if (!reductions.empty()) {
    if (base_columns == 0) throw ConfigError("base grid needs >= 1 column");
    if (column_sizes.empty()) throw ConfigError("no column sizes to reduce to");
    for (std::size_t c : column_sizes) {
      if (c == 0) throw ConfigError("column sizes must be >= 1");
      if (c > base_columns) {
        throw ConfigError("column size " + std::to_string(c) +
                          " exceeds the base grid of " +
                          std::to_string(base_columns) + " columns");
      }
    }
  }
  for (const auto& g : geometries) {
    if (g.kind == GeometryKind::kWrappedGrid && g.columns == 0) {
      throw ConfigError("wrapped grid needs >= 1 column");
    }
  }
  if (geometries.empty() && reductions.empty()) {
    throw ConfigError("no layouts to evaluate");
  }
  if (bases.empty() || adjustments.empty() || alphas.empty()) {
    throw ConfigError("empty browsing model grid");
  }
  if (std::count(adjustments.begin(), adjustments.end(), Adjustment::kRowSkip) &&
      gammas.empty()) {
    throw ConfigError("row-skip needs at least one gamma");
  }
  if (std::count(adjustments.begin(), adjustments.end(),
                 Adjustment::kSlowDecay) &&
      betas.empty()) {
    throw ConfigError("slow-decay needs at least one beta");
  }
  try {
    for (const auto& spec : browsing_specs()) spec.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (estimator == EstimatorMode::kFixed && !fixed_target) {
    throw ConfigError("fixed target needs a distribution file");
  }
}

std::vector<DisplaySpec> SweepConfig::displays() const {
  std::vector<DisplaySpec> out;
  for (const auto& g : geometries) out.emplace_back(g);
  for (Reduction r : reductions) {
    for (std::size_t c : column_sizes) {
      out.emplace_back(LayoutGeometry{GeometryKind::kWrappedGrid, base_columns},
                       r, c);
    }
  }
  return out;
}

std::vector<BrowsingModelSpec> SweepConfig::browsing_specs() const {
  std::vector<BrowsingModelSpec> out;
  BrowsingModelSpec proto;
  proto.satisfaction = satisfaction;
  proto.within_row = within_row;
  proto.row_reach = row_reach;
  proto.relevance_cap = relevance_cap;
  for (BaseModel base : bases) {
    for (Adjustment adj : adjustments) {
      for (double alpha : alphas) {
        BrowsingModelSpec spec = proto;
        spec.base = base;
        spec.adjustment = adj;
        spec.alpha = alpha;
        if (adj == Adjustment::kRowSkip) {
          for (double gamma : gammas) {
            spec.gamma = gamma;
            out.push_back(spec);
          }
        } else if (adj == Adjustment::kSlowDecay) {
          for (double beta : betas) {
            spec.beta = beta;
            out.push_back(spec);
          }
        } else {
          out.push_back(spec);
        }
      }
    }
  }
  return out;
}

MeasureInputs load_inputs(const SweepConfig& config) {
  std::vector<std::filesystem::path> paths = config.runs;
  paths.push_back(config.alignment);
  if (config.qrels) paths.push_back(*config.qrels);
  if (config.fixed_target) paths.push_back(*config.fixed_target);
  for (const auto& p : paths) {
    if (!std::filesystem::is_regular_file(p)) {
      throw Error(ErrorKind::kIo, "input file not found: '" + p.string() + "'");
    }
  }

  MeasureInputs inputs{{}, parse_alignment(config.alignment), std::nullopt};
  std::set<std::string> names;
  for (const auto& path : config.runs) {
    RunFile run = parse_run(path);
    if (!names.insert(run.system).second) {
      throw ConfigError("two run files use the system tag '" + run.system +
                        "'");
    }
    inputs.systems.push_back({run.system, std::move(run)});
  }
  if (config.qrels) inputs.qrels = parse_qrels(*config.qrels);
  return inputs;
}

MeasureOutput measure(const SweepConfig& config, const MeasureInputs& inputs) {
  config.validate();
  MeasureOutput output;
  const GroupSchema& schema = inputs.table.schema();
  const RelevanceJudgments no_judgments;

  Plan plan;
  plan.displays = config.displays();
  plan.specs = config.browsing_specs();
  plan.table = &inputs.table;
  plan.rel = inputs.qrels ? &*inputs.qrels : &no_judgments;
  for (Metric m : config.metrics) {
    if (m == Metric::kEel && !inputs.qrels) {
      output.warnings.push_back("eel skipped: no relevance judgments given");
      continue;
    }
    if (std::find(plan.metrics.begin(), plan.metrics.end(), m) ==
        plan.metrics.end()) {
      plan.metrics.push_back(m);
    }
  }
  if (plan.metrics.empty()) return output;

  switch (config.estimator) {
    case EstimatorMode::kRetrieved: break;
    case EstimatorMode::kFixed:
      plan.global_target = population_estimator(
          {EstimatorMode::kFixed, parse_distribution(*config.fixed_target, schema)},
          inputs.table);
      break;
    default:
      plan.global_target =
          population_estimator({config.estimator, std::nullopt}, inputs.table);
  }

  plan.distance.kind = config.distance;
  plan.distance.exclude_unknown = config.exclude_unknown;
  plan.distance.unknown_index = schema.unknown_index();
  if (config.protected_group) {
    const auto index = schema.index_of(*config.protected_group);
    if (!index || *index == schema.unknown_index()) {
      throw ConfigError("protected group '" + *config.protected_group +
                        "' is not a known group");
    }
    plan.distance.protected_group = *index;
  } else {
    plan.distance.protected_group = schema.unknown_index() == 0 ? 1 : 0;
  }
  if (config.distance == DistanceKind::kSignedTwoGroup &&
      schema.size() != 3) {
    throw Error(ErrorKind::kInvalidDistance,
                "signed distance needs exactly two known groups");
  }

  std::vector<Task> tasks;
  for (std::size_t s = 0; s < inputs.systems.size(); ++s) {
    for (const auto& [request, samples] : inputs.systems[s].run.rankings) {
      tasks.push_back({s, &request, &samples});
    }
  }

  std::vector<std::vector<std::optional<double>>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      try {
        results[t] = Evaluate(plan, tasks[t]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const std::size_t threads = std::min(config.jobs, std::max<std::size_t>(tasks.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Sequential reduction: tasks are ordered by system then request id.
  std::size_t t = 0;
  for (std::size_t s = 0; s < inputs.systems.size(); ++s) {
    const std::string& system = inputs.systems[s].system;
    const std::size_t begin = t;
    while (t < tasks.size() && tasks[t].system == s) ++t;
    for (std::size_t d = 0; d < plan.displays.size(); ++d) {
      for (std::size_t sp = 0; sp < plan.specs.size(); ++sp) {
        for (std::size_t m = 0; m < plan.metrics.size(); ++m) {
          const std::size_t slot = plan.slot(d, sp, m);
          const ResultsRow proto =
              RowTemplate(system, plan.displays[d], plan.specs[sp],
                          plan.metrics[m]);
          double sum = 0.0;
          std::size_t defined = 0;
          for (std::size_t k = begin; k < t; ++k) {
            const auto& v = results[k][slot];
            if (!v) continue;
            sum += *v;
            ++defined;
            if (config.per_request) {
              ResultsRow row = proto;
              row.request = tasks[k].request->value();
              row.value = *v;
              output.rows.push_back(std::move(row));
            }
          }
          if (defined < t - begin) {
            output.warnings.push_back(
                system + ": " + std::to_string(t - begin - defined) +
                " request(s) without defined " +
                std::string(MetricName(plan.metrics[m])) + " skipped");
          }
          if (defined == 0) continue;
          ResultsRow row = proto;
          row.request = kAllRequests;
          row.value = sum / static_cast<double>(defined);
          output.rows.push_back(std::move(row));
        }
      }
    }
  }
  std::sort(output.warnings.begin(), output.warnings.end());
  output.warnings.erase(
      std::unique(output.warnings.begin(), output.warnings.end()),
      output.warnings.end());
  return output;
}

}  // namespace gridfair
