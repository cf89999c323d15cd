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

#include <gtest/gtest.h>

#include "pmds/construction.hpp"
#include "pmds/errors.hpp"
#include "golden.hpp"

using namespace pmds;

namespace {

std::vector<std::uint32_t> values(const std::vector<Exponent>& e) {
  std::vector<std::uint32_t> out;
  for (const Exponent& x : e) out.push_back(x.value);
  return out;
}

// Exponent rule restated independently of the library.
std::uint32_t rule(Variant v, bool second, unsigned i, unsigned j, unsigned n, std::int64_t order) {
  const std::int64_t scale = v == Variant::SD_C0 ? 1 : 2;
  const std::int64_t e = second ? 2 * scale * i * n - j : scale * i * n + j;
  return static_cast<std::uint32_t>(((e % order) + order) % order);
}

void expect_structure(const ParityCheckMatrix& h) {
  const CodeParams& p = h.params;
  const Algebra& alg = p.algebra;
  ASSERT_EQ(h.matrix.rows(), p.m + 2);
  ASSERT_EQ(h.matrix.cols(), p.length());
  for (unsigned i = 0; i < p.m; ++i) {
    for (unsigned j = 0; j < p.n; ++j) {
      const std::size_t col = p.cell(i, j);
      for (unsigned r = 0; r < p.m; ++r) EXPECT_EQ(h.matrix(r, col), r == i ? alg.one() : alg.zero());
      EXPECT_EQ(h.g1[col].value, rule(p.variant, false, i, j, p.n, alg.order()));
      EXPECT_EQ(h.g2[col].value, rule(p.variant, true, i, j, p.n, alg.order()));
      EXPECT_EQ(h.matrix(p.m, col), alg.alpha_pow(h.g1[col].value));
      EXPECT_EQ(h.matrix(p.m + 1, col), alg.alpha_pow(h.g2[col].value));
    }
  }
}

}  // namespace

TEST(ConstructionTest, Sd3x5Reference) {
  const ParityCheckMatrix h = build_parity_check(golden::sd3x5_params());
  expect_structure(h);
  EXPECT_EQ(values(h.g1), golden::kSd3x5Row1);
  EXPECT_EQ(values(h.g2), golden::kSd3x5Row2);
}

TEST(ConstructionTest, Sd5x3Reference) {
  const ParityCheckMatrix h = build_parity_check(golden::sd5x3_params());
  expect_structure(h);
  EXPECT_EQ(values(h.g1), golden::kSd5x3Row1);
  EXPECT_EQ(values(h.g2), golden::kSd5x3Row2);
}

TEST(ConstructionTest, Sd4x4Reference) {
  const ParityCheckMatrix h = build_parity_check(golden::sd4x4_params());
  expect_structure(h);
  EXPECT_EQ(values(h.g1), golden::kSd4x4Row1);
  EXPECT_EQ(values(h.g2), golden::kSd4x4Row2);
}

TEST(ConstructionTest, Pmds2x4FollowsTheExponentRule) {
  const ParityCheckMatrix h = build_parity_check(golden::pmds2x4_params());
  expect_structure(h);
  EXPECT_EQ(values(h.g1), golden::kPmds2x4Row1);
  EXPECT_EQ(values(h.g2), golden::kPmds2x4Row2Rule);
  // The published display differs only at block 0, offsets 1..3, by one.
  for (std::size_t c = 0; c < h.g2.size(); ++c) {
    if (c >= 1 && c <= 3) {
      EXPECT_EQ(h.g2[c].value, golden::kPmds2x4Row2Display[c] + 1) << c;
    } else {
      EXPECT_EQ(h.g2[c].value, golden::kPmds2x4Row2Display[c]) << c;
    }
  }
}

TEST(ConstructionTest, TextRendering) {
  const std::string text = build_parity_check(golden::sd3x5_params()).to_text();
  EXPECT_NE(text.find("1 1 1 1 1 0 0 0 0 0 0 0 0 0 0\n"), std::string::npos);
  EXPECT_NE(text.find("1 a^1 a^2 a^3 a^4 a^5 a^6 a^7 a^8 a^9 a^10 a^11 a^12 a^13 a^14\n"), std::string::npos);
  EXPECT_NE(text.find("1 a^14 a^13 a^12 a^11 a^10 a^9 a^8 a^7 a^6 a^5 a^4 a^3 a^2 a^1\n"), std::string::npos);
}

TEST(ConstructionTest, ExponentRuleAcrossCodes) {
  for (const CodeParams& p : {CodeParams{2, 7, Variant::SD_C0, Algebra(AlgebraSpec::field(4))},
                              CodeParams{6, 5, Variant::SD_C0, Algebra(AlgebraSpec::ring(31))},
                              CodeParams{4, 6, Variant::PMDS_C1, Algebra(AlgebraSpec::field(6))},
                              CodeParams{3, 3, Variant::PMDS_C1, Algebra(AlgebraSpec::ring(19))}})
    expect_structure(build_parity_check(p));
}

TEST(ConstructionTest, OrderConstraint) {
  const Algebra gf16(AlgebraSpec::field(4)), r17(AlgebraSpec::ring(17));
  EXPECT_NO_THROW(validate({3, 5, Variant::SD_C0, gf16}));   // 15 <= 15
  EXPECT_THROW(validate({4, 4, Variant::SD_C0, gf16}), ParameterViolation);
  EXPECT_NO_THROW(validate({4, 4, Variant::SD_C0, r17}));    // 16 <= 17
  EXPECT_THROW(validate({3, 6, Variant::SD_C0, r17}), ParameterViolation);
  EXPECT_NO_THROW(validate({2, 4, Variant::PMDS_C1, r17}));  // 16 <= 17
  EXPECT_THROW(validate({3, 5, Variant::PMDS_C1, gf16}), ParameterViolation);
  EXPECT_THROW(validate({0, 5, Variant::SD_C0, gf16}), ParameterViolation);
  EXPECT_THROW(validate({3, 1, Variant::SD_C0, gf16}), ParameterViolation);
  EXPECT_THROW(build_parity_check({4, 4, Variant::SD_C0, gf16}), ParameterViolation);
  // A non-primitive modulus shrinks the order to 5.
  EXPECT_THROW(validate({2, 3, Variant::SD_C0, Algebra(AlgebraSpec::field(4, 0x1F))}), ParameterViolation);
}

TEST(ConstructionTest, EffectiveBlockMatchesColumns) {
  const CodeParams p = golden::sd4x4_params();
  const ParityCheckMatrix h = build_parity_check(p);
  for (unsigned i = 0; i < p.m; ++i) {
    const auto block = effective_block(p, i);
    ASSERT_EQ(block.size(), p.n);
    for (unsigned j = 0; j < p.n; ++j)
      for (std::size_t r = 0; r < p.m + 2; ++r) EXPECT_EQ(block[j][r], h.matrix(r, p.cell(i, j)));
  }
  EXPECT_THROW(effective_block(p, p.m), std::out_of_range);
}

TEST(ConstructionTest, VariantNames) {
  EXPECT_EQ(variant_name(Variant::SD_C0), "sd");
  EXPECT_EQ(variant_name(Variant::PMDS_C1), "pmds");
  EXPECT_EQ(parse_variant("pmds"), Variant::PMDS_C1);
  EXPECT_THROW(parse_variant("raid6"), std::invalid_argument);
  EXPECT_EQ(golden::sd3x5_params().describe(), "C0(3,5;gf2:4:0x13)");
  EXPECT_EQ(golden::pmds2x4_params().describe(), "C1(2,4;ring:17)");
}
