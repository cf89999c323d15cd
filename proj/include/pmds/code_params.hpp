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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "pmds/algebra.hpp"

namespace pmds {

/// SD_C0 uses exponents (in + j, 2in - j); PMDS_C1 doubles them to
/// (2in + j, 4in - j).
enum class Variant : std::uint8_t { SD_C0 = 0, PMDS_C1 = 1 };

std::string_view variant_name(Variant v);  // "sd" | "pmds"
Variant parse_variant(std::string_view text);

/// Exponent of alpha, always normalized into [0, order).
struct Exponent {
  std::uint32_t value = 0;
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

struct GlobalExponents {
  Exponent g1;
  Exponent g2;
  friend bool operator==(const GlobalExponents&, const GlobalExponents&) = default;
};

/// The full identity of a code instance. The profile is fixed at r = 1, s = 2.
struct CodeParams {
  unsigned m = 1;  ///< rows per stripe
  unsigned n = 2;  ///< columns (devices)
  Variant variant = Variant::SD_C0;
  Algebra algebra{AlgebraSpec::field(4)};

  std::size_t length() const { return std::size_t{m} * n; }
  /// m(n - 1) - 2.
  std::size_t dimension() const { return std::size_t{m} * (n - 1) - 2; }
  std::size_t cell(unsigned row, unsigned col) const { return std::size_t{row} * n + col; }
  std::string describe() const;
};

/// Throws ParameterViolation unless m >= 1, n >= 2, the dimension is positive
/// and mn (SD_C0) or 2mn (PMDS_C1) fits in the order of alpha.
void validate(const CodeParams& params);

/// Global parity exponents for block i, offset j.
GlobalExponents global_exponents(Variant variant, unsigned i, unsigned j, unsigned m, unsigned n, std::uint32_t order);

inline GlobalExponents global_exponents(const CodeParams& p, unsigned i, unsigned j) {
  return global_exponents(p.variant, i, j, p.m, p.n, p.algebra.order());
}

}  // namespace pmds
