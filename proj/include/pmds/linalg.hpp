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
#include <span>
#include <vector>

#include "pmds/algebra.hpp"
#include "pmds/code_params.hpp"

namespace pmds {

/// Small dense row-major matrix of symbols from one algebra.
class AlgMatrix {
 public:
  AlgMatrix(Algebra algebra, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Algebra& algebra() const { return algebra_; }

  const Symbol& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Symbol& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  AlgMatrix select_columns(std::span<const std::size_t> columns) const;
  std::vector<Symbol> multiply(std::span<const Symbol> x) const;

  friend bool operator==(const AlgMatrix&, const AlgMatrix&) = default;

 private:
  Algebra algebra_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> entries_;
};

enum class RankCertificate { FullColumnRank, Deficient, Inconclusive };

struct RankResult {
  std::size_t rank = 0;
  RankCertificate certificate = RankCertificate::Deficient;
};

/// Gaussian elimination that only ever pivots on units. The pivot is the first
/// unit in row-major order of the remaining submatrix. Over a field this is an
/// exact rank; over the M_p ring a stall on a nonzero non-unit residue yields
/// Inconclusive, with `rank` the number of pivots found.
RankResult rank_via_unit_pivots(const AlgMatrix& m);

/// Solves the square system m * x = rhs. Throws SingularSystem when no unit
/// pivot remains.
std::vector<Symbol> solve_with_unit_pivots(const AlgMatrix& m, std::span<const Symbol> rhs);

/// Cofactor expansion for sizes <= 4, unit-pivot elimination above that.
/// Throws SingularSystem if elimination stalls on a non-unit residue.
Symbol determinant(const AlgMatrix& m);

/// Whether the 3x3 minor formed by the row-parity row and both global rows on
/// columns j0 < j1 < j2 of block i is a unit. The determinant is expanded
/// directly and cross-checked against alpha^(e1 + e2 - j0 - j1 - j2) times the
/// Vandermonde product, where e1, e2 are the block's base exponents; a
/// disagreement throws std::logic_error. Throws std::invalid_argument unless
/// j0 < j1 < j2 < n and i < m.
bool det3_vandermonde_check(unsigned i, unsigned j0, unsigned j1, unsigned j2, const CodeParams& params);

}  // namespace pmds
