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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pmds/algebra.hpp"

namespace pmds::kernels {

// Region kernels over symbols stored one per uint16_t. They serve every algebra
// whose width is at most 16 bits: GF(2^b) for all supported b, and the M_p ring
// for p <= 17. Multiplication by a constant is GF(2)-linear in the input bits,
// so it splits into four 16-entry lookups, one per input nibble; the vector
// variants do those lookups with byte shuffles.

enum class Isa { Scalar, Ssse3, Avx2, Neon };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view text);
bool isa_supported(Isa isa);
/// Widest variant this CPU runs.
Isa best_isa();
/// ISA used by the un-suffixed entry points. Defaults to best_isa(), or to the
/// value of the PMDS_ISA environment variable when that names a supported ISA.
Isa active_isa();
/// Throws std::invalid_argument when `isa` is not supported here.
void set_active_isa(Isa isa);
std::vector<Isa> supported_isas();

constexpr unsigned kMaxKernelWidth = 16;

/// Product table for one constant c: entry [q][v] holds c * (v << 4q), split
/// into its low and high bytes.
struct MulTable {
  alignas(32) std::array<std::array<std::uint8_t, 16>, 4> lo{};
  alignas(32) std::array<std::array<std::uint8_t, 16>, 4> hi{};
};

/// Throws std::invalid_argument when the algebra is wider than 16 bits.
MulTable make_mul_table(const Algebra& alg, const Symbol& c);

/// dst[k] ^= c * src[k].
void mul_add_region(const MulTable& t, std::span<const std::uint16_t> src, std::span<std::uint16_t> dst);
void mul_add_region(Isa isa, const MulTable& t, std::span<const std::uint16_t> src, std::span<std::uint16_t> dst);

/// dst[k] ^= src[k].
void xor_region(std::span<const std::uint16_t> src, std::span<std::uint16_t> dst);
void xor_region(Isa isa, std::span<const std::uint16_t> src, std::span<std::uint16_t> dst);

}  // namespace pmds::kernels
