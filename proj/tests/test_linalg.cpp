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
#include "pmds/errors.hpp"
#include "pmds/linalg.hpp"

using namespace pmds;

namespace {

AlgMatrix random_matrix(const Algebra& alg, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  AlgMatrix m(alg, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = oracle::random_symbol(alg, rng);
  return m;
}

// Rank over a field by brute force: the largest k with a nonzero k x k minor.
std::size_t rank_by_minors(const AlgMatrix& m) {
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t k = limit; k > 0; --k) {
    std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
    std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
      do {
        AlgMatrix sub(m.algebra(), k, k);
        for (std::size_t r = 0, sr = 0; r < m.rows(); ++r) {
          if (!rsel[r]) continue;
          for (std::size_t c = 0, sc = 0; c < m.cols(); ++c)
            if (csel[c]) sub(sr, sc++) = m(r, c);
          ++sr;
        }
        if (!oracle::leibniz_det(sub).is_zero()) return k;
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace

TEST(LinalgTest, DeterminantMatchesLeibniz) {
  std::mt19937_64 rng(10);
  for (const AlgebraSpec& s : {AlgebraSpec::field(4), AlgebraSpec::field(8), AlgebraSpec::ring(5), AlgebraSpec::ring(13)}) {
    const Algebra alg(s);
    for (std::size_t n = 1; n <= 6; ++n) {
      for (int t = 0; t < 20; ++t) {
        const AlgMatrix m = random_matrix(alg, n, n, rng);
        EXPECT_EQ(determinant(m), oracle::leibniz_det(m)) << s.to_string() << " n=" << n;
      }
    }
  }
}

TEST(LinalgTest, DeterminantOfSingularMatrixIsZero) {
  const Algebra alg(AlgebraSpec::field(4));
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 6; ++n) {
    AlgMatrix m = random_matrix(alg, n, n, rng);
    for (std::size_t c = 0; c < n; ++c) m(n - 1, c) = alg.mul(m(0, c), alg.alpha_pow(3));
    EXPECT_TRUE(determinant(m).is_zero());
  }
}

TEST(LinalgTest, FieldRankMatchesMinors) {
  std::mt19937_64 rng(12);
  const Algebra alg(AlgebraSpec::field(4));
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    AlgMatrix m = random_matrix(alg, rows, cols, rng);
    // Sprinkle zeros and repeated rows so deficient cases are common.
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 3 == 0) m(r, c) = alg.zero();
    if (rows > 1 && rng() % 2) for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c);
    const RankResult r = rank_via_unit_pivots(m);
    EXPECT_EQ(r.rank, rank_by_minors(m));
    EXPECT_NE(r.certificate, RankCertificate::Inconclusive);
    EXPECT_EQ(r.certificate == RankCertificate::FullColumnRank, r.rank == cols);
  }
}

TEST(LinalgTest, RingRankReportsInconclusiveOnNonUnits) {
  // M_7 = (x^3+x+1)(x^3+x^2+1), so x^3+x+1 is a nonzero non-unit.
  const Algebra alg(AlgebraSpec::ring(7));
  const Symbol zd = alg.from_uint(0b1011);
  ASSERT_FALSE(alg.is_unit(zd));
  AlgMatrix m(alg, 1, 1);
  m(0, 0) = zd;
  EXPECT_EQ(rank_via_unit_pivots(m).certificate, RankCertificate::Inconclusive);

  AlgMatrix two(alg, 2, 2);
  two(0, 0) = alg.one();
  two(1, 1) = zd;
  const RankResult r = rank_via_unit_pivots(two);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.certificate, RankCertificate::Inconclusive);

  AlgMatrix zero(alg, 2, 2);
  EXPECT_EQ(rank_via_unit_pivots(zero).certificate, RankCertificate::Deficient);
}

TEST(LinalgTest, LargeZeroMatrixDeterminantIsZero) {
  const Algebra alg(AlgebraSpec::ring(7));
  EXPECT_TRUE(determinant(AlgMatrix(alg, 5, 5)).is_zero());
}

TEST(LinalgTest, SolveRecoversRandomSolutions) {
  std::mt19937_64 rng(13);
  for (const AlgebraSpec& s : {AlgebraSpec::field(4), AlgebraSpec::field(11), AlgebraSpec::ring(17), AlgebraSpec::ring(67)}) {
    const Algebra alg(s);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + rng() % 6;
      const AlgMatrix m = random_matrix(alg, n, n, rng);
      std::vector<Symbol> x(n);
      for (auto& v : x) v = oracle::random_symbol(alg, rng);
      const std::vector<Symbol> b = m.multiply(x);
      try {
        EXPECT_EQ(solve_with_unit_pivots(m, b), x) << s.to_string();
      } catch (const SingularSystem&) {
        EXPECT_FALSE(alg.is_unit(oracle::leibniz_det(m))) << "solver gave up on an invertible matrix";
      }
    }
  }
}

TEST(LinalgTest, SolveRejectsSingular) {
  const Algebra alg(AlgebraSpec::field(4));
  AlgMatrix m(alg, 2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = alg.one();
  const std::vector<Symbol> b = {alg.one(), alg.zero()};
  EXPECT_THROW(solve_with_unit_pivots(m, b), SingularSystem);
  EXPECT_THROW(solve_with_unit_pivots(AlgMatrix(alg, 2, 3), b), std::invalid_argument);
}

TEST(LinalgTest, SelectColumnsAndMultiply) {
  const Algebra alg(AlgebraSpec::field(4));
  AlgMatrix m(alg, 2, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    m(0, c) = alg.alpha_pow(static_cast<std::int64_t>(c));
    m(1, c) = alg.alpha_pow(static_cast<std::int64_t>(2 * c));
  }
  const std::vector<std::size_t> cols = {2, 0};
  const AlgMatrix s = m.select_columns(cols);
  EXPECT_EQ(s(0, 0), alg.alpha_pow(2));
  EXPECT_EQ(s(1, 1), alg.one());
  const std::vector<std::size_t> bad = {3};
  EXPECT_THROW(m.select_columns(bad), std::out_of_range);
  const std::vector<Symbol> x = {alg.one(), alg.zero(), alg.one()};
  const std::vector<Symbol> y = m.multiply(x);
  EXPECT_EQ(y[0], alg.add(alg.one(), alg.alpha_pow(2)));
  EXPECT_EQ(y[1], alg.add(alg.one(), alg.alpha_pow(4)));
}

TEST(LinalgTest, ThreeByThreeMinorsAreVandermonde) {
  for (const CodeParams& p : {CodeParams{3, 5, Variant::SD_C0, Algebra(AlgebraSpec::field(4))},
                              CodeParams{5, 3, Variant::SD_C0, Algebra(AlgebraSpec::field(4))},
                              CodeParams{4, 4, Variant::SD_C0, Algebra(AlgebraSpec::ring(17))},
                              CodeParams{2, 4, Variant::PMDS_C1, Algebra(AlgebraSpec::ring(17))},
                              CodeParams{3, 5, Variant::PMDS_C1, Algebra(AlgebraSpec::field(7))}}) {
    for (unsigned i = 0; i < p.m; ++i)
      for (unsigned a = 0; a < p.n; ++a)
        for (unsigned b = a + 1; b < p.n; ++b)
          for (unsigned c = b + 1; c < p.n; ++c) EXPECT_TRUE(det3_vandermonde_check(i, a, b, c, p)) << p.describe();
  }
  const CodeParams p{3, 5, Variant::SD_C0, Algebra(AlgebraSpec::field(4))};
  EXPECT_THROW(det3_vandermonde_check(3, 0, 1, 2, p), std::invalid_argument);
  EXPECT_THROW(det3_vandermonde_check(0, 1, 1, 2, p), std::invalid_argument);
  EXPECT_THROW(det3_vandermonde_check(0, 2, 3, 5, p), std::invalid_argument);
}
