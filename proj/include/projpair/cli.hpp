/*
 * Copyright 2026 The projpair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROJPAIR_CLI_HPP
#define PROJPAIR_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "projpair/classify.hpp"
#include "projpair/numkit.hpp"

namespace projpair::cli {

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 success, 1 input error, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "A:B" is the half-open range [A, B); items may be comma-separated and
/// single integers are allowed. The empty string is the empty set.
std::vector<Index> parse_index_set(const std::string& text);

/// Family description: {"kind": ..., "sizes": [...], ...}. Relative pair
/// paths in a custom family resolve against `base_dir`.
TruncationFamily family_from_json(const nlohmann::json& j, const std::string& base_dir);

}  // namespace projpair::cli

#endif  // PROJPAIR_CLI_HPP
