/*
 * Copyright 2026 The polcorr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef POLCORR_TOOLS_MATRIX_FILE_HPP
#define POLCORR_TOOLS_MATRIX_FILE_HPP

#include "polcorr/core_types.hpp"

#include <istream>
#include <string>
#include <string_view>

namespace polcorr::cli {

/// Parses "a", "bi", "a+bi", "a-bi" (with optional surrounding blanks).
/// Throws std::invalid_argument on malformed text.
Complex parse_complex(std::string_view text);

/// Coherence-matrix text format: first line k, then k lines of k
/// comma-separated complex entries. Blank lines and '#' comments are skipped.
/// The matrix is validated as a coherence matrix on load.
CoherenceMatrix read_matrix(std::istream& in);
CoherenceMatrix read_matrix_file(const std::string& path);

}  // namespace polcorr::cli

#endif  // POLCORR_TOOLS_MATRIX_FILE_HPP
