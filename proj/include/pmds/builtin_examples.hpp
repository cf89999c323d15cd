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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmds/code_params.hpp"

namespace pmds {

/// Small reference codes with fully printed parity-check matrices.
///   sd3x5    C0(3,5) over GF(16)
///   sd5x3    C0(5,3) over GF(16)
///   sd4x4    C0(4,4) over the M_17 ring
///   pmds2x4  C1(2,4) over the M_17 ring
enum class BuiltinExample { Sd3x5, Sd5x3, Sd4x4, Pmds2x4 };

std::string_view example_name(BuiltinExample e);
std::optional<BuiltinExample> parse_example(std::string_view name);
std::vector<BuiltinExample> all_examples();
CodeParams example_params(BuiltinExample e);

/// Title line, the matrix in `a^K` notation, and any notes.
std::string show_example(BuiltinExample e);

}  // namespace pmds
