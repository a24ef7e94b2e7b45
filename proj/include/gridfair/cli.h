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

#ifndef GRIDFAIR_CLI_H_
#define GRIDFAIR_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridfair/measure.h"

namespace gridfair {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

// Entry point of the `gridfair` tool. args[0] is the program name.
// Subcommands: attention, measure, rerank, compare, synth.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Reads a JSON sweep configuration. Relative paths resolve against the
// directory of the file.
SweepConfig load_sweep_config(const std::filesystem::path& path);

// "vertical", "horizontal", "grid:5" (also the long kind names).
LayoutGeometry parse_geometry_token(const std::string& token);

}  // namespace gridfair

#endif  // GRIDFAIR_CLI_H_
