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

#include "pmds/builtin_examples.hpp"

#include <utility>

#include "pmds/construction.hpp"

namespace pmds {

std::string_view example_name(BuiltinExample e) {
  switch (e) {
    case BuiltinExample::Sd3x5: return "sd3x5";
    case BuiltinExample::Sd5x3: return "sd5x3";
    case BuiltinExample::Sd4x4: return "sd4x4";
    case BuiltinExample::Pmds2x4: return "pmds2x4";
  }
  return "";
}

std::vector<BuiltinExample> all_examples() {
  return {BuiltinExample::Sd3x5, BuiltinExample::Sd5x3, BuiltinExample::Sd4x4, BuiltinExample::Pmds2x4};
}

std::optional<BuiltinExample> parse_example(std::string_view name) {
  for (BuiltinExample e : all_examples())
    if (name == example_name(e)) return e;
  // Older names, kept for scripts that still use them.
  static constexpr std::pair<std::string_view, BuiltinExample> kAliases[] = {
      {"ex2_1a", BuiltinExample::Sd3x5}, {"ex2_1b", BuiltinExample::Sd5x3},
      {"ex2_2", BuiltinExample::Sd4x4},  {"ex2_3", BuiltinExample::Pmds2x4}};
  for (const auto& [alias, e] : kAliases)
    if (name == alias) return e;
  return std::nullopt;
}

CodeParams example_params(BuiltinExample e) {
  switch (e) {
    case BuiltinExample::Sd3x5: return {3, 5, Variant::SD_C0, Algebra(AlgebraSpec::field(4))};
    case BuiltinExample::Sd5x3: return {5, 3, Variant::SD_C0, Algebra(AlgebraSpec::field(4))};
    case BuiltinExample::Sd4x4: return {4, 4, Variant::SD_C0, Algebra(AlgebraSpec::ring(17))};
    case BuiltinExample::Pmds2x4: break;
  }
  return {2, 4, Variant::PMDS_C1, Algebra(AlgebraSpec::ring(17))};
}

std::string show_example(BuiltinExample e) {
  const CodeParams params = example_params(e);
  std::string out = std::string(example_name(e)) + ": " + params.describe() + "\n";
  out += build_parity_check(params).to_text();
  if (e == BuiltinExample::Pmds2x4) {
    out +=
        "note: block 0 of the last row follows the 4in-j rule, giving 1 a^16 a^15 a^14;\n"
        "      the widely circulated display of this example shows 1 a^15 a^14 a^13 there.\n";
  }
  return out;
}

}  // namespace pmds
