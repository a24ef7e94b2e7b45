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

#ifndef GRIDFAIR_ERROR_H_
#define GRIDFAIR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridfair {

enum class ErrorKind {
  kInvalidArgument,
  kInvalidGeometry,
  kInvalidReduction,
  kShape,
  kUndefinedExposure,
  kInvalidDistance,
  kInvalidTarget,
  kEmptyAggregate,
  kConfig,
  kParse,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind decides how the CLI maps it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failure carrying the 1-based line number of the offending record.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line,
             const std::string& message)
      : Error(ErrorKind::kParse,
              path + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gridfair

#endif  // GRIDFAIR_ERROR_H_
