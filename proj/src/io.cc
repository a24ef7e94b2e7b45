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

#include "gridfair/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

namespace gridfair {
namespace {

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  }
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  }
  return out;
}

// Calls fn(line_number, text) for every non-blank, non-comment line.
template <typename Fn>
void ForEachRecord(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    fn(number, std::string_view(line));
  }
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> ToReal(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<long long> ToInteger(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string ShortestReal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

RunFile parse_run(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  RunFile run = parse_run(in, path.string());
  if (run.system.empty()) run.system = path.stem().string();
  return run;
}

RunFile parse_run(std::istream& in, const std::string& name) {
  struct Record {
    long long rank;
    std::string doc;
    double score;
  };
  std::map<std::pair<std::string, std::size_t>, std::vector<Record>> groups;
  std::set<std::tuple<std::string, std::size_t, std::string>> seen_docs;
  std::set<std::tuple<std::string, std::size_t, long long>> seen_ranks;
  RunFile run;
  bool any = false;

  ForEachRecord(in, [&](std::size_t line, std::string_view text) {
    const auto f = SplitWhitespace(text);
    if (f.size() != 6) {
      throw ParseError(name, line,
                       "expected 6 columns 'qid iter docid rank score tag', "
                       "got " + std::to_string(f.size()));
    }
    std::size_t sample = 0;
    if (f[1] != "Q0") {
      const auto it = ToInteger(f[1]);
      if (!it || *it < 0) {
        throw ParseError(name, line,
                         "sample index must be a non-negative integer or Q0");
      }
      sample = static_cast<std::size_t>(*it);
    }
    const auto rank = ToInteger(f[3]);
    if (!rank || *rank < 0) {
      throw ParseError(name, line, "rank must be a non-negative integer");
    }
    const auto score = ToReal(f[4]);
    if (!score) throw ParseError(name, line, "score must be a finite number");
    const std::string tag(f[5]);
    if (!any) {
      run.system = tag;
      run.rank_base = *rank;
      any = true;
    } else if (tag != run.system) {
      throw ParseError(name, line,
                       "system tag '" + tag + "' differs from '" + run.system +
                           "'");
    }
    run.rank_base = std::min(run.rank_base, *rank);
    std::string qid(f[0]);
    std::string doc(f[2]);
    if (!seen_docs.emplace(qid, sample, doc).second) {
      throw ParseError(name, line,
                       "duplicate document '" + doc + "' for " + qid +
                           " sample " + std::to_string(sample));
    }
    if (!seen_ranks.emplace(qid, sample, *rank).second) {
      throw ParseError(name, line,
                       "duplicate rank " + std::to_string(*rank) + " for " +
                           qid + " sample " + std::to_string(sample));
    }
    groups[{std::move(qid), sample}].push_back(
        Record{*rank, std::move(doc), *score});
  });

  for (auto& [key, records] : groups) {
    std::sort(records.begin(), records.end(),
              [](const Record& a, const Record& b) { return a.rank < b.rank; });
    std::vector<DocumentId> items;
    std::vector<double> scores;
    items.reserve(records.size());
    scores.reserve(records.size());
    for (auto& r : records) {
      items.emplace_back(std::move(r.doc));
      scores.push_back(r.score);
    }
    RequestId request(key.first);
    run.rankings[request].emplace_back(request, key.second, std::move(items),
                                       std::move(scores));
  }
  return run;
}

void write_run(const RunFile& run, const std::filesystem::path& path) {
  auto out = OpenOutput(path);
  write_run(run, out);
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path.string() + "'");
}

void write_run(const RunFile& run, std::ostream& out) {
  const std::string tag = run.system.empty() ? "run" : run.system;
  for (const auto& [request, samples] : run.rankings) {
    for (const auto& ranking : samples) {
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        const double score =
            ranking.scores() ? (*ranking.scores())[i]
                             : static_cast<double>(ranking.size() - i);
        out << request.value() << ' ' << ranking.sample_index() << ' '
            << ranking.items()[i].value() << ' '
            << (run.rank_base + static_cast<long long>(i)) << ' '
            << ShortestReal(score) << ' ' << tag << '\n';
      }
    }
  }
}

AlignmentTable parse_alignment(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return parse_alignment(in, path.string());
}

AlignmentTable parse_alignment(std::istream& in, const std::string& name) {
  struct Entry {
    std::size_t first_line;
    std::map<std::string, double> weights;
  };
  std::map<std::string, Entry> docs;
  std::set<std::string> groups;

  ForEachRecord(in, [&](std::size_t line, std::string_view text) {
    auto f = Split(text, '\t');
    if (f.size() != 3) f = SplitWhitespace(text);
    if (f.size() != 3) {
      throw ParseError(name, line, "expected 'docid<TAB>group<TAB>weight'");
    }
    const auto weight = ToReal(f[2]);
    if (!weight) throw ParseError(name, line, "weight must be a finite number");
    if (*weight < 0.0) throw ParseError(name, line, "negative weight");
    if (f[0].empty() || f[1].empty()) {
      throw ParseError(name, line, "empty document or group");
    }
    auto [it, inserted] = docs.try_emplace(std::string(f[0]), Entry{line, {}});
    it->second.weights[std::string(f[1])] += *weight;
    groups.emplace(f[1]);
  });

  GroupSchema schema = GroupSchema::FromObserved({groups.begin(), groups.end()});
  AlignmentTable table(schema);
  for (const auto& [doc, entry] : docs) {
    double total = 0.0;
    for (const auto& [group, w] : entry.weights) total += w;
    if (!(total > 0.0)) {
      throw ParseError(name, entry.first_line,
                       "document '" + doc + "' has only zero weights");
    }
    std::vector<double> v(schema.size(), 0.0);
    for (const auto& [group, w] : entry.weights) {
      v[*schema.index_of(group)] = w / total;
    }
    table.set(DocumentId(doc), AlignmentVector(std::move(v)));
  }
  return table;
}

RelevanceJudgments parse_qrels(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return parse_qrels(in, path.string());
}

RelevanceJudgments parse_qrels(std::istream& in, const std::string& name) {
  RelevanceJudgments rel;
  std::set<std::pair<std::string, std::string>> seen;
  ForEachRecord(in, [&](std::size_t line, std::string_view text) {
    const auto f = SplitWhitespace(text);
    if (f.size() != 4) {
      throw ParseError(name, line, "expected 4 columns 'qid 0 docid grade'");
    }
    const auto grade = ToReal(f[3]);
    if (!grade) throw ParseError(name, line, "grade must be a finite number");
    if (*grade < 0.0) throw ParseError(name, line, "negative relevance grade");
    if (!seen.emplace(f[0], f[2]).second) {
      throw ParseError(name, line,
                       "duplicate judgment for " + std::string(f[0]) + " " +
                           std::string(f[2]));
    }
    rel.set(RequestId(std::string(f[0])), DocumentId(std::string(f[2])),
            *grade);
  });
  return rel;
}

std::vector<double> parse_distribution(const std::filesystem::path& path,
                                       const GroupSchema& schema) {
  auto in = OpenInput(path);
  const std::string name = path.string();
  std::vector<double> values(schema.size(), 0.0);
  std::vector<bool> set(schema.size(), false);
  ForEachRecord(in, [&](std::size_t line, std::string_view text) {
    const auto f = SplitWhitespace(text);
    if (f.size() != 2) throw ParseError(name, line, "expected 'group weight'");
    const auto index = schema.index_of(f[0]);
    if (!index) {
      throw ParseError(name, line, "group '" + std::string(f[0]) +
                                       "' is not in the alignment schema");
    }
    const auto w = ToReal(f[1]);
    if (!w || *w < 0.0) {
      throw ParseError(name, line, "weight must be a non-negative number");
    }
    if (set[*index]) throw ParseError(name, line, "duplicate group");
    set[*index] = true;
    values[*index] = *w;
  });
  return values;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void write_results(std::vector<ResultsRow> rows,
                   const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_results(std::move(rows), buffer);
  auto out = OpenOutput(path);
  out << buffer.str();
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path.string() + "'");
}

void write_results(std::vector<ResultsRow> rows, std::ostream& out) {
  std::sort(rows.begin(), rows.end(),
            [](const ResultsRow& a, const ResultsRow& b) {
              return a.key() < b.key();
            });
  out << kResultsHeader << '\n';
  auto text = [](const std::string& s) -> const std::string& {
    if (s.find_first_of(",\n\"") != std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  "results field contains a separator: '" + s + "'");
    }
    return s;
  };
  for (const auto& r : rows) {
    if (!std::isfinite(r.value)) {
      throw Error(ErrorKind::kInvalidArgument, "non-finite metric value");
    }
    out << text(r.system) << ',' << text(r.request) << ',' << text(r.geometry)
        << ',' << r.columns << ',' << text(r.reduction) << ',' << text(r.base)
        << ',' << text(r.adjustment) << ',' << format_real(r.alpha) << ','
        << (r.gamma ? format_real(*r.gamma) : "") << ','
        << (r.beta ? format_real(*r.beta) : "") << ',' << text(r.metric) << ','
        << format_real(r.value) << '\n';
  }
}

std::vector<ResultsRow> parse_results(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return parse_results(in, path.string());
}

std::vector<ResultsRow> parse_results(std::istream& in,
                                      const std::string& name) {
  std::vector<ResultsRow> rows;
  bool header = true;
  ForEachRecord(in, [&](std::size_t line, std::string_view text) {
    if (header) {
      if (text != kResultsHeader) {
        throw ParseError(name, line, "unexpected results header");
      }
      header = false;
      return;
    }
    const auto f = Split(text, ',');
    if (f.size() != 12) throw ParseError(name, line, "expected 12 fields");
    ResultsRow r;
    r.system = f[0];
    r.request = f[1];
    r.geometry = f[2];
    const auto columns = ToInteger(f[3]);
    if (!columns || *columns < 0) throw ParseError(name, line, "bad columns");
    r.columns = static_cast<std::size_t>(*columns);
    r.reduction = f[4];
    r.base = f[5];
    r.adjustment = f[6];
    auto real = [&](std::string_view s, const char* what) {
      const auto v = ToReal(s);
      if (!v) throw ParseError(name, line, std::string("bad ") + what);
      return *v;
    };
    r.alpha = real(f[7], "alpha");
    if (!f[8].empty()) r.gamma = real(f[8], "gamma");
    if (!f[9].empty()) r.beta = real(f[9], "beta");
    r.metric = f[10];
    r.value = real(f[11], "value");
    rows.push_back(std::move(r));
  });
  if (header) throw ParseError(name, 1, "missing results header");
  return rows;
}

}  // namespace gridfair
