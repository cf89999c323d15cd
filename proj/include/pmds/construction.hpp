// Copyright 2026 The pmds-raid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "pmds/code_params.hpp"
#include "pmds/linalg.hpp"

namespace pmds {

/// (m+2) x mn parity-check matrix. Rows 0..m-1 are the row-parity indicators;
/// rows m and m+1 hold alpha^g1 and alpha^g2 for the column's (block, offset).
struct ParityCheckMatrix {
  CodeParams params;
  AlgMatrix matrix;
  std::vector<Exponent> g1;  ///< indexed by column i*n + j
  std::vector<Exponent> g2;

  /// One row per line; entries `0`, `1` or `a^K` (alpha^0 prints as `1`).
  std::string to_text() const;
};

/// Throws ParameterViolation when the parameters are invalid.
ParityCheckMatrix build_parity_check(const CodeParams& params);

/// The n columns of block i, each of length m + 2.
std::vector<std::vector<Symbol>> effective_block(const CodeParams& params, unsigned i);

}  // namespace pmds
