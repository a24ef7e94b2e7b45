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

// Text formats. All inputs are UTF-8, newline delimited, and skip blank
// lines and lines starting with '#'. Parsers reject malformed records with
// a ParseError naming the 1-based line.
//
//   run file    qid iter docid rank score tag    (whitespace separated)
//               iter is the policy sample index; "Q0" reads as 0.
//   alignment   docid<TAB>group<TAB>weight       (rows accumulate per doc)
//   qrels       qid 0 docid grade                (second column ignored)
//   results     CSV, header below, 12 significant digits

#ifndef GRIDFAIR_IO_H_
#define GRIDFAIR_IO_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gridfair/core.h"

namespace gridfair {

struct RunFile {
  std::string system;
  // Sampled rankings per request, ordered by sample index.
  std::map<RequestId, std::vector<Ranking>> rankings;
  // Smallest rank value in the file (0 or 1 in practice); reused on write.
  long long rank_base = 0;
};

RunFile parse_run(const std::filesystem::path& path);
RunFile parse_run(std::istream& in, const std::string& name);
void write_run(const RunFile& run, const std::filesystem::path& path);
void write_run(const RunFile& run, std::ostream& out);

AlignmentTable parse_alignment(const std::filesystem::path& path);
AlignmentTable parse_alignment(std::istream& in, const std::string& name);

RelevanceJudgments parse_qrels(const std::filesystem::path& path);
RelevanceJudgments parse_qrels(std::istream& in, const std::string& name);

// Distribution file for a fixed population estimator: `group weight` rows.
std::vector<double> parse_distribution(const std::filesystem::path& path,
                                       const GroupSchema& schema);

inline constexpr const char* kAllRequests = "ALL";

struct ResultsRow {
  std::string system;
  std::string request;  // or "ALL" for the system aggregate
  std::string geometry;
  std::size_t columns = 1;  // 0 for horizontal-linear (one row)
  std::string reduction = "none";
  std::string base;
  std::string adjustment;
  double alpha = 0.5;
  std::optional<double> gamma;  // only for row-skip
  std::optional<double> beta;   // only for slow-decay
  std::string metric;
  double value = 0.0;

  // Every field except the value, in output order; used for sorting.
  auto key() const {
    return std::tie(system, request, geometry, columns, reduction, base,
                    adjustment, alpha, gamma, beta, metric);
  }
};

inline constexpr const char* kResultsHeader =
    "system,request,geometry,columns,reduction,base,adjustment,alpha,gamma,"
    "beta,metric,value";

// 12 significant digits, "%.12g".
std::string format_real(double value);

// Sorts a copy of the rows before writing; output bytes depend only on the
// multiset of rows.
void write_results(std::vector<ResultsRow> rows,
                   const std::filesystem::path& path);
void write_results(std::vector<ResultsRow> rows, std::ostream& out);

std::vector<ResultsRow> parse_results(const std::filesystem::path& path);
std::vector<ResultsRow> parse_results(std::istream& in,
                                      const std::string& name);

}  // namespace gridfair

#endif  // GRIDFAIR_IO_H_
