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

#include <random>

#include "oracles.hpp"
#include "pmds/batch_codec.hpp"
#include "pmds/construction.hpp"
#include "pmds/kernels.hpp"
#include "pmds/verifier.hpp"

using namespace pmds;

namespace {

std::vector<std::uint16_t> random_region(const Algebra& alg, std::size_t len, std::mt19937_64& rng) {
  std::vector<std::uint16_t> v(len);
  const std::uint32_t mask = (1u << alg.width()) - 1;
  for (auto& x : v) x = static_cast<std::uint16_t>(rng() & mask);
  return v;
}

const std::vector<AlgebraSpec> kSpecs = {AlgebraSpec::field(4), AlgebraSpec::field(8), AlgebraSpec::field(13),
                                         AlgebraSpec::field(16), AlgebraSpec::ring(5), AlgebraSpec::ring(11),
                                         AlgebraSpec::ring(17)};

}  // namespace

TEST(KernelTest, ScalarIsAlwaysSupported) {
  EXPECT_TRUE(kernels::isa_supported(kernels::Isa::Scalar));
  const auto all = kernels::supported_isas();
  EXPECT_NE(std::find(all.begin(), all.end(), kernels::best_isa()), all.end());
  EXPECT_EQ(kernels::parse_isa("avx2"), kernels::Isa::Avx2);
  EXPECT_EQ(kernels::parse_isa("bogus"), std::nullopt);
  EXPECT_EQ(kernels::isa_name(kernels::Isa::Neon), "neon");
}

TEST(KernelTest, MulAddMatchesAlgebraOnEveryIsa) {
  std::mt19937_64 rng(21);
  for (const AlgebraSpec& s : kSpecs) {
    const Algebra alg(s);
    for (kernels::Isa isa : kernels::supported_isas()) {
      for (int t = 0; t < 25; ++t) {
        // Lengths straddle the 16- and 32-lane loop bodies and their tails.
        const std::size_t len = t < 10 ? static_cast<std::size_t>(t) * 7 : rng() % 300;
        const Symbol c = t == 0 ? alg.zero() : t == 1 ? alg.one() : oracle::random_symbol(alg, rng);
        const auto src = random_region(alg, len, rng);
        auto dst = random_region(alg, len, rng);
        auto want = dst;
        for (std::size_t k = 0; k < len; ++k)
          want[k] ^= static_cast<std::uint16_t>(alg.mul(c, alg.from_uint(src[k])).low());
        kernels::mul_add_region(isa, kernels::make_mul_table(alg, c), src, dst);
        ASSERT_EQ(dst, want) << s.to_string() << " " << kernels::isa_name(isa) << " len=" << len;
      }
    }
  }
}

TEST(KernelTest, XorMatchesScalarOnEveryIsa) {
  std::mt19937_64 rng(22);
  const Algebra alg(AlgebraSpec::field(16));
  for (kernels::Isa isa : kernels::supported_isas()) {
    for (std::size_t len : {0u, 1u, 15u, 16u, 17u, 31u, 32u, 33u, 257u}) {
      const auto src = random_region(alg, len, rng);
      auto dst = random_region(alg, len, rng);
      auto want = dst;
      for (std::size_t k = 0; k < len; ++k) want[k] ^= src[k];
      kernels::xor_region(isa, src, dst);
      EXPECT_EQ(dst, want);
    }
  }
}

TEST(KernelTest, WideAlgebrasAreRejected) {
  const Algebra wide(AlgebraSpec::ring(19));
  EXPECT_THROW(kernels::make_mul_table(wide, wide.one()), std::invalid_argument);
  EXPECT_THROW(StripeBatch({2, 4, Variant::SD_C0, wide}, 8), std::invalid_argument);
}

TEST(KernelTest, ActiveIsaCanBeSwitched) {
  const kernels::Isa before = kernels::active_isa();
  kernels::set_active_isa(kernels::Isa::Scalar);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::Scalar);
  kernels::set_active_isa(before);
  for (kernels::Isa isa : {kernels::Isa::Ssse3, kernels::Isa::Avx2, kernels::Isa::Neon})
    if (!kernels::isa_supported(isa)) EXPECT_THROW(kernels::set_active_isa(isa), std::invalid_argument);
}

TEST(BatchRecoveryTest, MatchesPerStripeDecode) {
  std::mt19937_64 rng(23);
  for (const CodeParams& p : {CodeParams{3, 5, Variant::SD_C0, Algebra(AlgebraSpec::field(4))},
                              CodeParams{4, 4, Variant::SD_C0, Algebra(AlgebraSpec::ring(17))},
                              CodeParams{2, 4, Variant::PMDS_C1, Algebra(AlgebraSpec::ring(17))},
                              CodeParams{3, 5, Variant::PMDS_C1, Algebra(AlgebraSpec::field(7))}}) {
    const auto patterns = enumerate_pmds_patterns(p.m, p.n);
    const std::size_t stripes = 70;
    StripeBatch batch(p, stripes);
    std::vector<StripeArray> truth;
    for (std::size_t t = 0; t < stripes; ++t) {
      std::vector<Symbol> data(data_positions(p).size());
      for (auto& d : data) d = oracle::random_symbol(p.algebra, rng);
      truth.push_back(encode(data, p));
      batch.set_stripe(t, truth.back());
    }
    for (int trial = 0; trial < 6; ++trial) {
      const ErasurePattern pat = patterns[rng() % patterns.size()];
      std::optional<LinearRecovery> lr;
      try {
        lr = LinearRecovery::derive(p, pat);
      } catch (const DecodeFailure&) {
        EXPECT_EQ(p.variant, Variant::SD_C0);  // C1 covers every PMDS pattern
        continue;
      }
      for (kernels::Isa isa : kernels::supported_isas()) {
        StripeBatch work = batch;
        for (const Cell& c : pat.cells())
          for (auto& v : work.cell(c.row, c.col)) v = 0xBEEF & ((1u << p.algebra.width()) - 1);
        lr->apply(isa, work);
        for (std::size_t t = 0; t < stripes; ++t) {
          StripeArray erased = truth[t];
          erased.erase(pat);
          EXPECT_EQ(work.stripe(t).cells().size(), truth[t].cells().size());
          const StripeArray dec = decode(erased);
          for (unsigned r = 0; r < p.m; ++r)
            for (unsigned c = 0; c < p.n; ++c) ASSERT_EQ(work.stripe(t).at(r, c), dec.at(r, c)) << p.describe();
        }
      }
    }
  }
}

TEST(BatchRecoveryTest, LinearOnArbitraryWords) {
  // Non-codewords too: the map must equal decode() for any known values.
  std::mt19937_64 rng(24);
  const CodeParams p{4, 4, Variant::SD_C0, Algebra(AlgebraSpec::ring(17))};
  const auto patterns = enumerate_sd_patterns(p.m, p.n);
  const std::size_t stripes = 40;
  StripeBatch batch(p, stripes);
  for (std::size_t i = 0; i < p.length(); ++i)
    for (auto& v : batch.cell(i)) v = static_cast<std::uint16_t>(rng());
  const ErasurePattern pat = patterns[rng() % patterns.size()];
  const LinearRecovery lr = LinearRecovery::derive(p, pat);
  EXPECT_EQ(lr.erased_cells().size(), pat.size());
  EXPECT_EQ(lr.known_cells().size(), p.length() - pat.size());
  StripeBatch work = batch;
  lr.apply(work);
  for (std::size_t t = 0; t < stripes; ++t) {
    StripeArray arr = batch.stripe(t);
    arr.erase(pat);
    EXPECT_EQ(work.stripe(t).cells().size(), arr.cells().size());
    const StripeArray dec = decode(arr);
    for (unsigned r = 0; r < p.m; ++r)
      for (unsigned c = 0; c < p.n; ++c) EXPECT_EQ(work.stripe(t).at(r, c), dec.at(r, c));
  }
}
