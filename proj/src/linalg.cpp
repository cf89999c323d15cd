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

#include "pmds/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

#include "pmds/errors.hpp"

namespace pmds {

AlgMatrix::AlgMatrix(Algebra algebra, std::size_t rows, std::size_t cols)
    : algebra_(std::move(algebra)), rows_(rows), cols_(cols), entries_(rows * cols, algebra_.zero()) {}

AlgMatrix AlgMatrix::select_columns(std::span<const std::size_t> columns) const {
  AlgMatrix out(algebra_, rows_, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] >= cols_) throw std::out_of_range("select_columns: column out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, c) = (*this)(r, columns[c]);
  }
  return out;
}

std::vector<Symbol> AlgMatrix::multiply(std::span<const Symbol> x) const {
  if (x.size() != cols_) throw std::invalid_argument("multiply: vector length mismatch");
  std::vector<Symbol> y(rows_, algebra_.zero());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] = algebra_.add(y[r], algebra_.mul((*this)(r, c), x[c]));
  return y;
}

namespace {

// In-place elimination workspace shared by rank, solve and determinant.
class Eliminator {
 public:
  explicit Eliminator(const AlgMatrix& m) : a_(m), alg_(m.algebra()), col_perm_(m.cols()) {
    for (std::size_t c = 0; c < col_perm_.size(); ++c) col_perm_[c] = c;
  }

  void attach_rhs(std::span<const Symbol> rhs) { rhs_.assign(rhs.begin(), rhs.end()); }

  // First unit in row-major order of the submatrix [k.., k..].
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t k) const {
    for (std::size_t r = k; r < a_.rows(); ++r)
      for (std::size_t c = k; c < a_.cols(); ++c)
        if (alg_.is_unit(a_(r, c))) return std::pair{r, c};
    return std::nullopt;
  }

  bool residual_is_zero(std::size_t k) const {
    for (std::size_t r = k; r < a_.rows(); ++r)
      for (std::size_t c = k; c < a_.cols(); ++c)
        if (!a_(r, c).is_zero()) return false;
    return true;
  }

  // Moves the pivot to (k, k), scales row k to a unit diagonal and clears
  // column k below (and above, when `full`). Returns the original pivot value.
  Symbol pivot(std::size_t k, std::size_t r, std::size_t c, bool full) {
    if (r != k) {
      for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(k, j), a_(r, j));
      if (!rhs_.empty()) std::swap(rhs_[k], rhs_[r]);
    }
    if (c != k) {
      for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_(i, k), a_(i, c));
      std::swap(col_perm_[k], col_perm_[c]);
    }
    const Symbol p = a_(k, k);
    const Symbol p_inv = alg_.inv(p);
    for (std::size_t j = k; j < a_.cols(); ++j) a_(k, j) = alg_.mul(a_(k, j), p_inv);
    if (!rhs_.empty()) rhs_[k] = alg_.mul(rhs_[k], p_inv);
    for (std::size_t i = full ? 0 : k + 1; i < a_.rows(); ++i) {
      if (i == k || a_(i, k).is_zero()) continue;
      const Symbol f = a_(i, k);
      for (std::size_t j = k; j < a_.cols(); ++j) a_(i, j) = alg_.add(a_(i, j), alg_.mul(f, a_(k, j)));
      if (!rhs_.empty()) rhs_[i] = alg_.add(rhs_[i], alg_.mul(f, rhs_[k]));
    }
    return p;
  }

  const std::vector<Symbol>& rhs() const { return rhs_; }
  const std::vector<std::size_t>& col_perm() const { return col_perm_; }

 private:
  AlgMatrix a_;
  Algebra alg_;
  std::vector<Symbol> rhs_;
  std::vector<std::size_t> col_perm_;
};

Symbol cofactor_det(const AlgMatrix& m) {
  const Algebra& alg = m.algebra();
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return alg.add(alg.mul(m(0, 0), m(1, 1)), alg.mul(m(0, 1), m(1, 0)));
  // Characteristic 2: every cofactor sign is +1.
  Symbol det = alg.zero();
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    AlgMatrix minor(alg, n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t j = 0, mj = 0; j < n; ++j)
        if (j != c) minor(r - 1, mj++) = m(r, j);
    det = alg.add(det, alg.mul(m(0, c), cofactor_det(minor)));
  }
  return det;
}

}  // namespace

RankResult rank_via_unit_pivots(const AlgMatrix& m) {
  Eliminator e(m);
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t k = 0;
  for (; k < limit; ++k) {
    const auto piv = e.find_pivot(k);
    if (!piv) break;
    e.pivot(k, piv->first, piv->second, false);
  }
  if (k == m.cols()) return {k, RankCertificate::FullColumnRank};
  return {k, e.residual_is_zero(k) ? RankCertificate::Deficient : RankCertificate::Inconclusive};
}

std::vector<Symbol> solve_with_unit_pivots(const AlgMatrix& m, std::span<const Symbol> rhs) {
  if (m.rows() != m.cols()) throw std::invalid_argument("solve_with_unit_pivots: matrix must be square");
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve_with_unit_pivots: rhs length mismatch");
  Eliminator e(m);
  e.attach_rhs(rhs);
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const auto piv = e.find_pivot(k);
    if (!piv) throw SingularSystem("no unit pivot available at elimination step " + std::to_string(k));
    e.pivot(k, piv->first, piv->second, true);
  }
  std::vector<Symbol> x(m.cols(), m.algebra().zero());
  for (std::size_t k = 0; k < m.cols(); ++k) x[e.col_perm()[k]] = e.rhs()[k];
  return x;
}

Symbol determinant(const AlgMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix must be square");
  const Algebra& alg = m.algebra();
  if (m.rows() == 0) return alg.one();
  if (m.rows() <= 4) return cofactor_det(m);
  Eliminator e(m);
  Symbol det = alg.one();
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const auto piv = e.find_pivot(k);
    if (!piv) {
      if (e.residual_is_zero(k)) return alg.zero();
      throw SingularSystem("determinant: elimination stalled on a non-unit residue");
    }
    det = alg.mul(det, e.pivot(k, piv->first, piv->second, false));
  }
  return det;
}

bool det3_vandermonde_check(unsigned i, unsigned j0, unsigned j1, unsigned j2, const CodeParams& params) {
  if (i >= params.m) throw std::invalid_argument("det3_vandermonde_check: block index out of range");
  if (!(j0 < j1 && j1 < j2 && j2 < params.n))
    throw std::invalid_argument("det3_vandermonde_check: need 0 <= j0 < j1 < j2 <= n-1");
  const Algebra& alg = params.algebra;
  const unsigned js[3] = {j0, j1, j2};

  AlgMatrix minor(alg, 3, 3);
  for (unsigned c = 0; c < 3; ++c) {
    const GlobalExponents g = global_exponents(params, i, js[c]);
    minor(0, c) = alg.one();
    minor(1, c) = alg.alpha_pow(g.g1.value);
    minor(2, c) = alg.alpha_pow(g.g2.value);
  }
  const Symbol det = determinant(minor);

  // Row 1 is alpha^e1 * alpha^j, row 2 is alpha^e2 * alpha^-j.
  const std::int64_t scale = params.variant == Variant::SD_C0 ? 1 : 2;
  const std::int64_t e1 = scale * std::int64_t{i} * params.n;
  Symbol closed = alg.alpha_pow(e1 + 2 * e1 - j0 - j1 - j2);
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = a + 1; b < 3; ++b) closed = alg.mul(closed, alg.add(alg.alpha_pow(js[b]), alg.alpha_pow(js[a])));
  if (det != closed) throw std::logic_error("det3_vandermonde_check: cofactor expansion disagrees with closed form");
  return alg.is_unit(det);
}

}  // namespace pmds
