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

#include "gridfair/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridfair/browse.h"
#include "gridfair/compare.h"
#include "gridfair/io.h"
#include "gridfair/layout.h"
#include "gridfair/metrics.h"
#include "gridfair/rerank.h"

namespace gridfair {
namespace {

using json = nlohmann::json;

Error ConfigError(const std::string& message) {
  return Error(ErrorKind::kConfig, message);
}

// "fixed:<path>" or a mode name.
void ParseTargetToken(const std::string& token, EstimatorMode& mode,
                      std::optional<std::filesystem::path>& fixed) {
  if (token.rfind("fixed:", 0) == 0) {
    mode = EstimatorMode::kFixed;
    fixed = token.substr(6);
    return;
  }
  if (token == "uniform") mode = EstimatorMode::kUniform;
  else if (token == "catalog") mode = EstimatorMode::kCatalog;
  else if (token == "retrieved") mode = EstimatorMode::kRetrieved;
  else throw Error(ErrorKind::kInvalidArgument, "unknown target '" + token + "'");
  fixed.reset();
}

template <typename T, typename Fn>
std::vector<T> MapTokens(const std::vector<std::string>& tokens, Fn&& fn) {
  std::vector<T> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(fn(t));
  return out;
}

// Flags shared by every subcommand that builds a browsing model.
struct ModelFlags {
  std::vector<std::string> models = {"geometric"};
  std::vector<std::string> adjustments = {"none"};
  std::vector<double> alphas = {0.5};
  std::vector<double> gammas = {0.5};
  std::vector<double> betas = {1.9};
  double satisfaction = 0.5;
  std::string within_row = "prefix";
  std::string row_reach = "scan-or-skip";
  std::optional<double> relevance_cap;

  CLI::Option* model_opt = nullptr;
  CLI::Option* adjust_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* satisfaction_opt = nullptr;
  CLI::Option* within_opt = nullptr;
  CLI::Option* reach_opt = nullptr;
  CLI::Option* cap_opt = nullptr;

  void add(CLI::App* app, bool lists) {
    model_opt = app->add_option("--model", models, "geometric|cascade");
    adjust_opt =
        app->add_option("--adjust", adjustments, "none|row-skip|slow-decay");
    alpha_opt = app->add_option("--alpha", alphas, "continuation probability");
    gamma_opt = app->add_option("--gamma", gammas, "row-skipping probability");
    beta_opt = app->add_option("--beta", betas, "slow-decay parameter");
    for (auto* o : {model_opt, adjust_opt, alpha_opt, gamma_opt, beta_opt}) {
      o->delimiter(',');
      if (!lists) o->expected(1);
    }
    satisfaction_opt = app->add_option("--satisfaction", satisfaction,
                                       "cascade stop strength in [0, 1]");
    within_opt = app->add_option("--within-row", within_row, "prefix|full");
    reach_opt =
        app->add_option("--row-reach", row_reach, "scan-or-skip|bracket");
    cap_opt = app->add_option("--relevance-cap", relevance_cap,
                              "grade treated as fully relevant");
  }

  BrowsingModelSpec single() const {
    BrowsingModelSpec spec;
    spec.base = ParseBaseModel(models.at(0));
    spec.adjustment = ParseAdjustment(adjustments.at(0));
    spec.alpha = alphas.at(0);
    spec.gamma = gammas.at(0);
    spec.beta = betas.at(0);
    spec.satisfaction = satisfaction;
    spec.within_row = ParseWithinRow(within_row);
    spec.row_reach = ParseRowReach(row_reach);
    spec.relevance_cap = relevance_cap;
    spec.validate();
    return spec;
  }
};

std::vector<std::string> JsonStrings(const json& v) {
  if (v.is_array()) return v.get<std::vector<std::string>>();
  return {v.get<std::string>()};
}

std::vector<double> JsonReals(const json& v) {
  if (v.is_array()) return v.get<std::vector<double>>();
  return {v.get<double>()};
}

LayoutGeometry JsonGeometry(const json& v) {
  if (v.is_string()) return parse_geometry_token(v.get<std::string>());
  const GeometryKind kind = ParseGeometryKind(v.at("kind").get<std::string>());
  if (kind == GeometryKind::kWrappedGrid) {
    return LayoutGeometry::WrappedGrid(v.at("columns").get<std::size_t>());
  }
  return kind == GeometryKind::kVerticalLinear
             ? LayoutGeometry::VerticalLinear()
             : LayoutGeometry::HorizontalLinear();
}

void PrintWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

// ---- attention --------------------------------------------------------------

int CmdAttention(std::size_t length, std::size_t columns,
                 const std::string& geometry_token,
                 const std::vector<double>& grades, const ModelFlags& flags,
                 std::ostream& out) {
  const BrowsingModelSpec spec = flags.single();
  LayoutGeometry geometry = geometry_token.empty()
                                ? LayoutGeometry::WrappedGrid(columns)
                                : parse_geometry_token(geometry_token);
  std::vector<DocumentId> items;
  RelevanceJudgments rel;
  const RequestId request("inspect");
  for (std::size_t i = 0; i < length; ++i) {
    items.emplace_back("d" + std::to_string(i));
    if (i < grades.size()) rel.set(request, items.back(), grades[i]);
  }
  const GridLayout grid = render(Ranking(request, 0, items), geometry);
  const AttentionVector weights = attention(grid, rel, spec);
  out << "rank\trow\tcolumn\tweight\n";
  for (const auto& cell : grid.cells()) {
    out << cell.reading_rank << '\t' << cell.row << '\t' << cell.column << '\t'
        << format_real(weights[cell.reading_rank]) << '\n';
  }
  return kExitOk;
}

// ---- rerank -----------------------------------------------------------------

struct RerankFlags {
  std::filesystem::path run;
  std::filesystem::path alignment;
  std::filesystem::path output;
  std::string target = "catalog";
  std::string delta = "l1";
  std::string geometry = "vertical";
  bool exclude_unknown = false;
  std::optional<std::size_t> pool;
};

int CmdRerank(const RerankFlags& flags, const ModelFlags& model,
              std::ostream& err) {
  const BrowsingModelSpec spec = model.single();
  EstimatorMode mode = EstimatorMode::kCatalog;
  std::optional<std::filesystem::path> fixed;
  ParseTargetToken(flags.target, mode, fixed);
  const DistanceKind kind = ParseDistanceKind(flags.delta);
  const LayoutGeometry geometry = parse_geometry_token(flags.geometry);
  for (const auto& p : {flags.run, flags.alignment}) {
    if (!std::filesystem::is_regular_file(p)) {
      throw Error(ErrorKind::kIo, "input file not found: '" + p.string() + "'");
    }
  }

  const RunFile run = parse_run(flags.run);
  const AlignmentTable table = parse_alignment(flags.alignment);
  std::optional<std::vector<double>> global;
  if (mode == EstimatorMode::kFixed) {
    global = population_estimator(
        {mode, parse_distribution(*fixed, table.schema())}, table);
  } else if (mode != EstimatorMode::kRetrieved) {
    global = population_estimator({mode, std::nullopt}, table);
  }

  RunFile output;
  output.system = run.system;
  output.rank_base = run.rank_base;
  std::size_t improved = 0, total = 0;
  for (const auto& [request, samples] : run.rankings) {
    auto& out_samples = output.rankings[request];
    for (const auto& ranking : samples) {
      RerankSpec rs;
      rs.target = global ? *global
                         : population_estimator({mode, std::nullopt}, table,
                                                ranking.items());
      rs.attention = spec;
      rs.geometry = geometry;
      rs.pool_size = flags.pool;
      rs.distance.kind = kind;
      rs.distance.exclude_unknown = flags.exclude_unknown;
      out_samples.push_back(greedy_rerank(ranking, table, rs));
      ++total;
      if (out_samples.back().items() != ranking.items()) ++improved;
    }
  }
  write_run(output, flags.output);
  err << "re-ranked " << total << " ranking(s), " << improved
      << " reordered\n";
  return kExitOk;
}

// ---- compare ----------------------------------------------------------------

int CmdCompare(const std::filesystem::path& results,
               const std::vector<std::string>& vary,
               const std::optional<std::filesystem::path>& csv,
               std::ostream& out) {
  if (!std::filesystem::is_regular_file(results)) {
    throw Error(ErrorKind::kIo,
                "input file not found: '" + results.string() + "'");
  }
  const auto rows = parse_results(results);
  const auto comparisons = compare_configurations(rows, vary);
  print_comparisons(comparisons, out);
  if (csv) {
    std::ostringstream buffer;
    write_comparisons_csv(comparisons, buffer);
    std::ofstream f(*csv, std::ios::binary | std::ios::trunc);
    if (!(f << buffer.str())) {
      throw Error(ErrorKind::kIo, "cannot write '" + csv->string() + "'");
    }
  }
  return kExitOk;
}

// ---- synth ------------------------------------------------------------------

struct SynthFlags {
  std::filesystem::path out_dir;
  std::size_t requests = 100;
  std::size_t items = 100;
  std::size_t systems = 4;
  std::size_t samples = 1;
  std::uint64_t seed = 42;
};

// Synthetic runs over a two-group catalog with 20% unlabeled documents.
// System k favors group A with strength k / systems.
int CmdSynth(const SynthFlags& f, std::ostream& err) {
  if (f.items == 0 || f.requests == 0 || f.systems == 0 || f.samples == 0) {
    throw Error(ErrorKind::kInvalidArgument, "synth sizes must be positive");
  }
  std::filesystem::create_directories(f.out_dir);
  std::mt19937_64 rng(f.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t catalog = f.items * 3;

  std::vector<int> group(catalog);
  {
    std::ofstream align(f.out_dir / "alignment.tsv");
    for (std::size_t d = 0; d < catalog; ++d) {
      const double u = unit(rng);
      group[d] = u < 0.4 ? 0 : (u < 0.8 ? 1 : -1);
      if (group[d] >= 0) {
        align << "d" << d << '\t' << (group[d] == 0 ? "A" : "B") << "\t1\n";
      }
    }
    if (!align) throw Error(ErrorKind::kIo, "cannot write alignment file");
  }

  std::vector<std::vector<double>> relevance(f.requests,
                                             std::vector<double>(catalog));
  {
    std::ofstream qrels(f.out_dir / "qrels.txt");
    for (std::size_t q = 0; q < f.requests; ++q) {
      for (std::size_t d = 0; d < catalog; ++d) {
        const double u = unit(rng);
        const double grade = u < 0.03 ? 2.0 : (u < 0.10 ? 1.0 : 0.0);
        relevance[q][d] = grade;
        if (grade > 0) qrels << "q" << q << " 0 d" << d << ' ' << grade << '\n';
      }
    }
    if (!qrels) throw Error(ErrorKind::kIo, "cannot write qrels file");
  }

  for (std::size_t s = 0; s < f.systems; ++s) {
    const double bias = static_cast<double>(s) / static_cast<double>(f.systems);
    const std::string tag = "sys" + std::to_string(s);
    std::ofstream run(f.out_dir / (tag + ".run"));
    for (std::size_t q = 0; q < f.requests; ++q) {
      for (std::size_t k = 0; k < f.samples; ++k) {
        std::vector<std::pair<double, std::size_t>> scored(catalog);
        for (std::size_t d = 0; d < catalog; ++d) {
          const double score = relevance[q][d] + (group[d] == 0 ? bias : 0.0) +
                               unit(rng);
          scored[d] = {score, d};
        }
        std::partial_sort(scored.begin(), scored.begin() + f.items,
                          scored.end(), std::greater<>());
        for (std::size_t r = 0; r < f.items; ++r) {
          run << "q" << q << ' ' << k << " d" << scored[r].second << ' ' << r
              << ' ' << format_real(scored[r].first) << ' ' << tag << '\n';
        }
      }
    }
    if (!run) throw Error(ErrorKind::kIo, "cannot write run file");
  }
  err << "wrote " << f.systems << " run(s), alignment.tsv and qrels.txt to "
      << f.out_dir.string() << "\n";
  return kExitOk;
}

}  // namespace

LayoutGeometry parse_geometry_token(const std::string& token) {
  const auto colon = token.find(':');
  const std::string name = token.substr(0, colon);
  const GeometryKind kind = ParseGeometryKind(name);
  if (kind == GeometryKind::kWrappedGrid) {
    if (colon == std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  "wrapped grid needs a width, e.g. grid:5");
    }
    std::size_t columns = 0;
    try {
      columns = std::stoul(token.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "bad grid width in '" + token + "'");
    }
    return LayoutGeometry::WrappedGrid(columns);
  }
  if (colon != std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument,
                "only wrapped grids take a width: '" + token + "'");
  }
  return kind == GeometryKind::kVerticalLinear ? LayoutGeometry::VerticalLinear()
                                               : LayoutGeometry::HorizontalLinear();
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  const auto dir = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : dir / fp;
  };
  static const std::vector<std::string> known = {
      "runs",     "qrels",          "alignment",     "geometries",
      "columns",  "base_columns",   "reductions",    "models",
      "adjustments", "alpha",       "gamma",         "beta",
      "satisfaction", "within_row", "row_reach",     "relevance_cap",
      "metrics",  "target",         "delta",         "protected_group",
      "exclude_unknown", "per_request", "jobs",      "output"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  SweepConfig c;
  try {
    if (doc.contains("runs")) {
      c.runs.clear();
      for (const auto& p : JsonStrings(doc["runs"])) c.runs.push_back(resolve(p));
    }
    if (doc.contains("qrels")) c.qrels = resolve(doc["qrels"].get<std::string>());
    if (doc.contains("alignment")) {
      c.alignment = resolve(doc["alignment"].get<std::string>());
    }
    if (doc.contains("geometries")) {
      for (const auto& g : doc["geometries"]) c.geometries.push_back(JsonGeometry(g));
    }
    if (doc.contains("columns")) {
      c.column_sizes = doc["columns"].get<std::vector<std::size_t>>();
    }
    if (doc.contains("base_columns")) {
      c.base_columns = doc["base_columns"].get<std::size_t>();
    }
    if (doc.contains("reductions")) {
      c.reductions = MapTokens<Reduction>(
          JsonStrings(doc["reductions"]),
          [](const std::string& s) { return ParseReduction(s); });
    }
    if (doc.contains("models")) {
      c.bases = MapTokens<BaseModel>(
          JsonStrings(doc["models"]),
          [](const std::string& s) { return ParseBaseModel(s); });
    }
    if (doc.contains("adjustments")) {
      c.adjustments = MapTokens<Adjustment>(
          JsonStrings(doc["adjustments"]),
          [](const std::string& s) { return ParseAdjustment(s); });
    }
    if (doc.contains("alpha")) c.alphas = JsonReals(doc["alpha"]);
    if (doc.contains("gamma")) c.gammas = JsonReals(doc["gamma"]);
    if (doc.contains("beta")) c.betas = JsonReals(doc["beta"]);
    if (doc.contains("satisfaction")) c.satisfaction = doc["satisfaction"].get<double>();
    if (doc.contains("within_row")) {
      c.within_row = ParseWithinRow(doc["within_row"].get<std::string>());
    }
    if (doc.contains("row_reach")) {
      c.row_reach = ParseRowReach(doc["row_reach"].get<std::string>());
    }
    if (doc.contains("relevance_cap")) {
      c.relevance_cap = doc["relevance_cap"].get<double>();
    }
    if (doc.contains("metrics")) {
      c.metrics = MapTokens<Metric>(
          JsonStrings(doc["metrics"]),
          [](const std::string& s) { return ParseMetric(s); });
    }
    if (doc.contains("target")) {
      ParseTargetToken(doc["target"].get<std::string>(), c.estimator,
                       c.fixed_target);
      if (c.fixed_target) c.fixed_target = resolve(c.fixed_target->string());
    }
    if (doc.contains("delta")) {
      c.distance = ParseDistanceKind(doc["delta"].get<std::string>());
    }
    if (doc.contains("protected_group")) {
      c.protected_group = doc["protected_group"].get<std::string>();
    }
    if (doc.contains("exclude_unknown")) {
      c.exclude_unknown = doc["exclude_unknown"].get<bool>();
    }
    if (doc.contains("per_request")) c.per_request = doc["per_request"].get<bool>();
    if (doc.contains("jobs")) c.jobs = doc["jobs"].get<std::size_t>();
    if (doc.contains("output")) c.output = resolve(doc["output"].get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Provider-group fairness of rankings in linear and grid layouts",
               "gridfair"};
  app.require_subcommand(1);

  // attention
  auto* att = app.add_subcommand("attention", "print attention weights");
  std::size_t att_length = 10;
  std::size_t att_columns = 1;
  std::string att_geometry;
  std::vector<double> att_grades;
  ModelFlags att_model;
  att->add_option("--length", att_length, "number of items");
  att->add_option("--columns", att_columns, "grid width")
      ->check(CLI::PositiveNumber);
  att->add_option("--geometry", att_geometry,
                  "vertical|horizontal|grid:<c> (overrides --columns)");
  att->add_option("--grades", att_grades, "relevance grades by rank")
      ->delimiter(',');
  att_model.add(att, false);

  // measure
  auto* mea = app.add_subcommand("measure", "evaluate runs");
  std::optional<std::filesystem::path> config_path;
  std::vector<std::string> runs, geometries, columns_tokens, reductions,
      metrics;
  std::filesystem::path qrels, alignment, output;
  std::size_t base_columns = 10, jobs = 1;
  std::string target, delta, protected_group;
  std::uint64_t seed = 0;
  ModelFlags mea_model;
  mea->add_option("--config", config_path, "JSON sweep configuration");
  auto* o_runs = mea->add_option("--run", runs, "run file(s)")->delimiter(',');
  auto* o_qrels = mea->add_option("--qrels", qrels, "relevance judgments");
  auto* o_align = mea->add_option("--alignment", alignment, "group alignment");
  auto* o_geom = mea->add_option("--geometry", geometries,
                                 "vertical|horizontal|grid:<c>")
                     ->delimiter(',');
  auto* o_cols = mea->add_option("--columns", columns_tokens,
                                 "column sizes, e.g. 10,8,6,5,4,3")
                     ->delimiter(',');
  auto* o_base = mea->add_option("--base-columns", base_columns,
                                 "base grid width for reductions");
  auto* o_red = mea->add_option("--reduction", reductions, "truncate|rewrap")
                    ->delimiter(',');
  auto* o_metric = mea->add_option("--metric", metrics, "awrf|eel")->delimiter(',');
  auto* o_target = mea->add_option(
      "--target", target, "uniform|catalog|retrieved|fixed:<path>");
  auto* o_delta = mea->add_option("--delta", delta, "l1|l2|signed");
  auto* o_prot = mea->add_option("--protected-group", protected_group,
                                 "group reported by the signed distance");
  bool exclude_unknown = false, per_request = false;
  auto* o_excl = mea->add_flag("--exclude-unknown", exclude_unknown,
                               "drop the unknown group before comparing");
  auto* o_per = mea->add_flag("--per-request", per_request,
                              "also write per-request rows");
  mea->add_option("--seed", seed, "accepted for interface parity; unused");
  auto* o_jobs = mea->add_option("--jobs", jobs, "worker threads");
  auto* o_out = mea->add_option("--output", output, "results CSV");
  mea_model.add(mea, true);

  // rerank
  auto* rr = app.add_subcommand("rerank", "greedy group-fair re-ranking");
  RerankFlags rr_flags;
  ModelFlags rr_model;
  rr->add_option("--run", rr_flags.run, "input run file")->required();
  rr->add_option("--alignment", rr_flags.alignment, "group alignment")
      ->required();
  rr->add_option("--output", rr_flags.output, "output run file")->required();
  rr->add_option("--target", rr_flags.target,
                 "uniform|catalog|retrieved|fixed:<path>");
  rr->add_option("--delta", rr_flags.delta, "l1|l2");
  rr->add_option("--geometry", rr_flags.geometry,
                 "layout used for optimization weights");
  rr->add_flag("--exclude-unknown", rr_flags.exclude_unknown,
               "ignore the unknown group");
  rr->add_option("--pool", rr_flags.pool, "re-rank only the top N items");
  rr_model.add(rr, false);

  // compare
  auto* cmp = app.add_subcommand("compare", "system ordering consistency");
  std::filesystem::path cmp_results;
  std::vector<std::string> cmp_vary = {"geometry", "columns", "reduction"};
  std::optional<std::filesystem::path> cmp_csv;
  cmp->add_option("--results", cmp_results, "results CSV from measure")
      ->required();
  cmp->add_option("--vary", cmp_vary, "fields that differ between configs")
      ->delimiter(',');
  cmp->add_option("--csv", cmp_csv, "also write the comparison as CSV");

  // synth
  auto* syn = app.add_subcommand("synth", "write a synthetic dataset");
  SynthFlags synth;
  syn->add_option("--out-dir", synth.out_dir, "output directory")->required();
  syn->add_option("--requests", synth.requests, "number of requests");
  syn->add_option("--items", synth.items, "items per ranking");
  syn->add_option("--systems", synth.systems, "number of systems");
  syn->add_option("--samples", synth.samples, "rankings per request");
  syn->add_option("--seed", synth.seed, "random seed");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (e.get_name() == "RequiredError" &&
        app.get_subcommands().empty()) {
      err << app.help();
    }
    return kExitUsage;
  }

  try {
    if (att->parsed()) {
      return CmdAttention(att_length, att_columns, att_geometry, att_grades,
                          att_model, out);
    }
    if (rr->parsed()) return CmdRerank(rr_flags, rr_model, err);
    if (cmp->parsed()) return CmdCompare(cmp_results, cmp_vary, cmp_csv, out);
    if (syn->parsed()) return CmdSynth(synth, err);

    // measure: config first, then flags that were given explicitly.
    SweepConfig c = config_path ? load_sweep_config(*config_path) : SweepConfig{};
    bool columns_given = config_path && [&] {
      std::ifstream in(*config_path);
      return json::parse(in, nullptr, false, true).contains("columns");
    }();
    if (o_runs->count()) {
      c.runs.assign(runs.begin(), runs.end());
    }
    if (o_qrels->count()) c.qrels = qrels;
    if (o_align->count()) c.alignment = alignment;
    if (o_geom->count()) {
      c.geometries = MapTokens<LayoutGeometry>(geometries, parse_geometry_token);
    }
    if (o_cols->count()) {
      c.column_sizes.clear();
      for (const auto& t : columns_tokens) {
        try {
          c.column_sizes.push_back(std::stoul(t));
        } catch (const std::exception&) {
          throw Error(ErrorKind::kInvalidArgument, "bad column size '" + t + "'");
        }
      }
      columns_given = true;
    }
    if (o_base->count()) c.base_columns = base_columns;
    if (o_red->count()) {
      c.reductions = MapTokens<Reduction>(
          reductions, [](const std::string& s) { return ParseReduction(s); });
      std::erase(c.reductions, Reduction::kNone);
    }
    if (o_metric->count()) {
      c.metrics = MapTokens<Metric>(
          metrics, [](const std::string& s) { return ParseMetric(s); });
    }
    if (o_target->count()) ParseTargetToken(target, c.estimator, c.fixed_target);
    if (o_delta->count()) c.distance = ParseDistanceKind(delta);
    if (o_prot->count()) c.protected_group = protected_group;
    if (o_excl->count()) c.exclude_unknown = exclude_unknown;
    if (o_per->count()) c.per_request = per_request;
    if (o_jobs->count()) c.jobs = jobs;
    if (o_out->count()) c.output = output;
    if (mea_model.model_opt->count()) {
      c.bases = MapTokens<BaseModel>(
          mea_model.models, [](const std::string& s) { return ParseBaseModel(s); });
    }
    if (mea_model.adjust_opt->count()) {
      c.adjustments = MapTokens<Adjustment>(
          mea_model.adjustments,
          [](const std::string& s) { return ParseAdjustment(s); });
    }
    if (mea_model.alpha_opt->count()) c.alphas = mea_model.alphas;
    if (mea_model.gamma_opt->count()) c.gammas = mea_model.gammas;
    if (mea_model.beta_opt->count()) c.betas = mea_model.betas;
    if (mea_model.satisfaction_opt->count()) {
      c.satisfaction = mea_model.satisfaction;
    }
    if (mea_model.within_opt->count()) {
      c.within_row = ParseWithinRow(mea_model.within_row);
    }
    if (mea_model.reach_opt->count()) {
      c.row_reach = ParseRowReach(mea_model.row_reach);
    }
    if (mea_model.cap_opt->count()) c.relevance_cap = mea_model.relevance_cap;

    if (c.geometries.empty() && c.reductions.empty()) {
      if (columns_given) {
        for (std::size_t w : c.column_sizes) {
          c.geometries.push_back(LayoutGeometry::WrappedGrid(w));
        }
      } else {
        c.geometries = {LayoutGeometry::VerticalLinear(),
                        LayoutGeometry::WrappedGrid(5)};
      }
    }
    c.validate();
    const MeasureInputs inputs = load_inputs(c);
    const MeasureOutput result = measure(c, inputs);
    PrintWarnings(result.warnings, err);
    if (c.output.empty()) {
      write_results(result.rows, out);
    } else {
      write_results(result.rows, c.output);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return (e.kind() == ErrorKind::kIo || e.kind() == ErrorKind::kParse)
               ? kExitIo
               : kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error (io): " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace gridfair
