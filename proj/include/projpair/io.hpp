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

#ifndef PROJPAIR_IO_HPP
#define PROJPAIR_IO_HPP

// JSON matrix and pair files.
//
//   MatrixFile: {"rows": r, "cols": c, "entries": [[re, im], ...]}  (row-major)
//   PairFile:   {"p": MatrixFile, "q": MatrixFile}
//           or  {"p_basis": MatrixFile, "q_basis": MatrixFile}
//
// Doubles are written in shortest round-trip form, so write -> read is exact.

#include <string>
#include <string_view>

#include <json.hpp>

#include "projpair/numkit.hpp"
#include "projpair/projcore.hpp"

namespace projpair {

inline constexpr const char* kSchema = "projpair/1";

nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Throws InputError naming `what` on any schema violation.
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::string_view what);

nlohmann::json pair_to_json(const ProjectionPair& pair);

struct LoadedPair {
    ComplexMatrix p_raw;
    ComplexMatrix q_raw;
    ProjectionPair pair;
};

/// Accepts both PairFile forms; projections are validated at `tol`.
LoadedPair pair_from_json(const nlohmann::json& j, double tol = kProjectionTol);

/// Parses a file; malformed JSON raises InputError with the byte offset.
nlohmann::json read_json_file(const std::string& path);

/// Writes via a temporary file in the same directory and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace projpair

#endif  // PROJPAIR_IO_HPP
