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

#include "pmds/code_params.hpp"

#include <sstream>
#include <stdexcept>

#include "pmds/errors.hpp"

namespace pmds {

std::string_view variant_name(Variant v) { return v == Variant::SD_C0 ? "sd" : "pmds"; }

Variant parse_variant(std::string_view text) {
  if (text == "sd") return Variant::SD_C0;
  if (text == "pmds") return Variant::PMDS_C1;
  throw std::invalid_argument("variant must be sd or pmds, got '" + std::string(text) + "'");
}

std::string CodeParams::describe() const {
  std::ostringstream os;
  os << (variant == Variant::SD_C0 ? "C0" : "C1") << "(" << m << "," << n << ";" << algebra.describe() << ")";
  return os.str();
}

void validate(const CodeParams& p) {
  if (p.m < 1) throw ParameterViolation("m must be at least 1");
  if (p.n < 2) throw ParameterViolation("n must be at least 2");
  const std::uint64_t mn = std::uint64_t{p.m} * p.n;
  const std::uint64_t needed = p.variant == Variant::SD_C0 ? mn : 2 * mn;
  if (needed > p.algebra.order()) {
    std::ostringstream os;
    os << p.describe() << ": " << (p.variant == Variant::SD_C0 ? "mn" : "2mn") << " = " << needed
       << " exceeds the order of alpha (" << p.algebra.order() << ")";
    throw ParameterViolation(os.str());
  }
}

GlobalExponents global_exponents(Variant variant, unsigned i, unsigned j, unsigned m, unsigned n, std::uint32_t order) {
  if (i >= m || j >= n) throw std::out_of_range("global_exponents: block or offset out of range");
  const std::int64_t scale = variant == Variant::SD_C0 ? 1 : 2;
  const std::int64_t base = scale * std::int64_t{i} * n;
  const std::int64_t ord = order;
  auto norm = [ord](std::int64_t e) { return static_cast<std::uint32_t>(((e % ord) + ord) % ord); };
  return {Exponent{norm(base + j)}, Exponent{norm(2 * base - j)}};
}

}  // namespace pmds
