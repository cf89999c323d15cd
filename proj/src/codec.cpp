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

#include "pmds/codec.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pmds {

// ---------------------------------------------------------------------------
// ErasurePattern

ErasurePattern::ErasurePattern(std::vector<Cell> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
    throw std::invalid_argument("erasure pattern lists a cell twice");
}

bool ErasurePattern::contains(Cell c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

bool ErasurePattern::includes(const ErasurePattern& other) const {
  return std::includes(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end());
}

void ErasurePattern::check_bounds(unsigned m, unsigned n) const {
  for (const Cell& c : cells_) {
    if (c.row >= m || c.col >= n) {
      std::ostringstream os;
      os << "erased cell (" << c.row << "," << c.col << ") outside a " << m << "x" << n << " array";
      throw std::out_of_range(os.str());
    }
  }
}

std::vector<unsigned> ErasurePattern::row_counts(unsigned m) const {
  std::vector<unsigned> counts(m, 0);
  for (const Cell& c : cells_) {
    if (c.row >= m) throw std::out_of_range("erased cell row out of range");
    ++counts[c.row];
  }
  return counts;
}

std::string ErasurePattern::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < cells_.size(); ++k) os << (k ? ";" : "") << cells_[k].row << ',' << cells_[k].col;
  return os.str();
}

// ---------------------------------------------------------------------------
// StripeArray

StripeArray::StripeArray(CodeParams params)
    : params_(std::move(params)),
      cells_(params_.length(), params_.algebra.zero()),
      erased_(params_.length(), 0) {}

void StripeArray::set(unsigned row, unsigned col, const Symbol& value) {
  if (row >= params_.m || col >= params_.n) throw std::out_of_range("StripeArray::set out of range");
  if (!params_.algebra.owns(value)) throw AlgebraMismatch("symbol does not belong to " + params_.algebra.describe());
  cells_[params_.cell(row, col)] = value;
}

void StripeArray::erase(unsigned row, unsigned col) {
  if (row >= params_.m || col >= params_.n) throw std::out_of_range("StripeArray::erase out of range");
  erased_[params_.cell(row, col)] = 1;
}

void StripeArray::erase(const ErasurePattern& pattern) {
  pattern.check_bounds(params_.m, params_.n);
  for (const Cell& c : pattern.cells()) erased_[params_.cell(c.row, c.col)] = 1;
}

void StripeArray::restore(unsigned row, unsigned col, const Symbol& value) {
  set(row, col, value);
  erased_[params_.cell(row, col)] = 0;
}

ErasurePattern StripeArray::erasure_pattern() const {
  std::vector<Cell> cells;
  for (unsigned r = 0; r < params_.m; ++r)
    for (unsigned c = 0; c < params_.n; ++c)
      if (erased(r, c)) cells.push_back({r, c});
  return ErasurePattern(std::move(cells));
}

bool Syndromes::all_zero() const {
  return global1.is_zero() && global2.is_zero() &&
         std::all_of(row.begin(), row.end(), [](const Symbol& s) { return s.is_zero(); });
}

// ---------------------------------------------------------------------------
// Layout and encoding

ErasurePattern parity_positions(const CodeParams& params) {
  if (params.n < 3 || (params.m == 1 && params.n < 4))
    throw ParameterViolation(params.describe() + ": too few columns to host three parities in row 0 and keep data");
  std::vector<Cell> cells{{0, params.n - 3}, {0, params.n - 2}};
  for (unsigned r = 0; r < params.m; ++r) cells.push_back({r, params.n - 1});
  return ErasurePattern(std::move(cells));
}

std::vector<Cell> data_positions(const CodeParams& params) {
  const ErasurePattern parity = parity_positions(params);
  std::vector<Cell> out;
  out.reserve(params.dimension());
  for (unsigned r = 0; r < params.m; ++r)
    for (unsigned c = 0; c < params.n; ++c)
      if (!parity.contains({r, c})) out.push_back({r, c});
  return out;
}

StripeArray encode(std::span<const Symbol> data, const CodeParams& params) {
  validate(params);
  const std::vector<Cell> slots = data_positions(params);
  if (data.size() != slots.size())
    throw std::invalid_argument("encode: expected " + std::to_string(slots.size()) + " data symbols, got " +
                                std::to_string(data.size()));
  StripeArray arr(params);
  for (std::size_t k = 0; k < slots.size(); ++k) arr.set(slots[k].row, slots[k].col, data[k]);
  arr.erase(parity_positions(params));
  try {
    return decode(arr);
  } catch (const DecodeFailure& e) {
    throw std::logic_error(std::string("parity layout failed to decode: ") + e.what());
  }
}

Syndromes syndromes(const StripeArray& arr) {
  const CodeParams& p = arr.params();
  const Algebra& alg = p.algebra;
  Syndromes s{std::vector<Symbol>(p.m, alg.zero()), alg.zero(), alg.zero()};
  for (unsigned i = 0; i < p.m; ++i) {
    for (unsigned j = 0; j < p.n; ++j) {
      if (arr.erased(i, j)) continue;
      const Symbol& v = arr.at(i, j);
      if (v.is_zero()) continue;
      const GlobalExponents g = global_exponents(p, i, j);
      s.row[i] = alg.add(s.row[i], v);
      s.global1 = alg.add(s.global1, alg.mul(alg.alpha_pow(g.g1.value), v));
      s.global2 = alg.add(s.global2, alg.mul(alg.alpha_pow(g.g2.value), v));
    }
  }
  return s;
}

Classification classify(const ErasurePattern& pattern, const CodeParams& params) {
  const std::vector<unsigned> counts = pattern.row_counts(params.m);
  Classification out;
  for (unsigned r = 0; r < params.m; ++r) {
    if (counts[r] < 2) continue;
    HeavyRow h{r, {}};
    for (const Cell& c : pattern.cells())
      if (c.row == r) h.cols.push_back(c.col);
    out.heavy.push_back(std::move(h));
  }
  const bool any_four = std::any_of(counts.begin(), counts.end(), [](unsigned c) { return c >= 4; });
  if (any_four || out.heavy.size() > 2) {
    out.kind = PatternClass::BeyondCapability;
  } else if (out.heavy.empty()) {
    out.kind = PatternClass::RowParityOnly;
  } else if (out.heavy.size() == 1) {
    out.kind = PatternClass::OneHeavyRow;
  } else if (out.heavy[0].cols.size() == 2 && out.heavy[1].cols.size() == 2) {
    out.kind = PatternClass::TwoHeavyRows;
  } else {
    out.kind = PatternClass::BeyondCapability;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decoding

namespace {

class HeavyRowSolver {
 public:
  HeavyRowSolver(StripeArray& arr, const Syndromes& syn) : arr_(arr), p_(arr.params()), alg_(p_.algebra), syn_(syn) {}

  // x_a + x_b = R, alpha^g1(a) x_a + alpha^g1(b) x_b = S1.
  void two_in_row(unsigned row, unsigned a, unsigned b) {
    const Symbol ga = g1(row, a), gb = g1(row, b);
    const Symbol det = alg_.add(ga, gb);
    const Symbol xb = alg_.mul(alg_.add(syn_.global1, alg_.mul(ga, syn_.row[row])), unit_inverse(det));
    arr_.restore(row, b, xb);
    arr_.restore(row, a, alg_.add(syn_.row[row], xb));
  }

  // Substituting x_a = R + x_b + x_c leaves columns with factors
  // alpha^u (1 + alpha^(b-a)) and alpha^u (1 + alpha^(c-a)); scaling them out
  // gives y_b + y_c = alpha^-g1(a) T1 and alpha^g2(b) y_b + alpha^g2(c) y_c = T2.
  void three_in_row(unsigned row, unsigned a, unsigned b, unsigned c) {
    const Symbol& r = syn_.row[row];
    const Symbol t1 = alg_.add(syn_.global1, alg_.mul(g1(row, a), r));
    const Symbol t2 = alg_.add(syn_.global2, alg_.mul(g2(row, a), r));
    const Symbol fb = alg_.add(alg_.one(), alg_.alpha_pow(delta1(row, a, b)));
    const Symbol fc = alg_.add(alg_.one(), alg_.alpha_pow(delta1(row, a, c)));
    const auto [yb, yc] = solve2(g1(row, a), g1(row, a), g2(row, b), g2(row, c), t1, t2);
    const Symbol xb = alg_.mul(yb, unit_inverse(fb));
    const Symbol xc = alg_.mul(yc, unit_inverse(fc));
    arr_.restore(row, b, xb);
    arr_.restore(row, c, xc);
    arr_.restore(row, a, alg_.add(r, alg_.add(xb, xc)));
  }

  // Rows l (cols i < j) and l2 (cols i2 < j2). After x_i = R_l + x_j and
  // x_i2 = R_l2 + x_j2, the 2x2 system has columns
  //   alpha^g1(l,i) f, alpha^g2(l,j) f   and   alpha^g1(l2,i2) f2, alpha^g2(l2,j2) f2
  // with f = 1 + alpha^(j-i), f2 = 1 + alpha^(j2-i2) always units.
  void two_rows(const HeavyRow& h0, const HeavyRow& h1) {
    const unsigned l = h0.row, i = h0.cols[0], j = h0.cols[1];
    const unsigned l2 = h1.row, i2 = h1.cols[0], j2 = h1.cols[1];
    const Symbol& rl = syn_.row[l];
    const Symbol& rl2 = syn_.row[l2];
    const Symbol t1 = alg_.add(syn_.global1, alg_.add(alg_.mul(g1(l, i), rl), alg_.mul(g1(l2, i2), rl2)));
    const Symbol t2 = alg_.add(syn_.global2, alg_.add(alg_.mul(g2(l, i), rl), alg_.mul(g2(l2, i2), rl2)));
    const Symbol f = alg_.add(alg_.one(), alg_.alpha_pow(delta1(l, i, j)));
    const Symbol f2 = alg_.add(alg_.one(), alg_.alpha_pow(delta1(l2, i2, j2)));
    const auto [y, y2] = solve2(g1(l, i), g1(l2, i2), g2(l, j), g2(l2, j2), t1, t2);
    const Symbol xj = alg_.mul(y, unit_inverse(f));
    const Symbol xj2 = alg_.mul(y2, unit_inverse(f2));
    arr_.restore(l, j, xj);
    arr_.restore(l, i, alg_.add(rl, xj));
    arr_.restore(l2, j2, xj2);
    arr_.restore(l2, i2, alg_.add(rl2, xj2));
  }

 private:
  Symbol g1(unsigned row, unsigned col) const { return alg_.alpha_pow(global_exponents(p_, row, col).g1.value); }
  Symbol g2(unsigned row, unsigned col) const { return alg_.alpha_pow(global_exponents(p_, row, col).g2.value); }

  std::int64_t delta1(unsigned row, unsigned from, unsigned to) const {
    return std::int64_t{global_exponents(p_, row, to).g1.value} - global_exponents(p_, row, from).g1.value;
  }

  Symbol unit_inverse(const Symbol& s) const {
    if (!alg_.is_unit(s)) throw DecodeFailure(DecodeFailureReason::UncorrectablePattern, "reduced system is singular");
    return alg_.inv(s);
  }

  // Cramer's rule on [[a11, a12], [a21, a22]] y = (t1, t2).
  std::pair<Symbol, Symbol> solve2(const Symbol& a11, const Symbol& a12, const Symbol& a21, const Symbol& a22,
                                   const Symbol& t1, const Symbol& t2) const {
    const Symbol det = alg_.add(alg_.mul(a11, a22), alg_.mul(a12, a21));
    const Symbol d_inv = unit_inverse(det);
    return {alg_.mul(alg_.add(alg_.mul(t1, a22), alg_.mul(a12, t2)), d_inv),
            alg_.mul(alg_.add(alg_.mul(a11, t2), alg_.mul(a21, t1)), d_inv)};
  }

  StripeArray& arr_;
  const CodeParams& p_;
  const Algebra& alg_;
  const Syndromes& syn_;
};

}  // namespace

StripeArray decode(const StripeArray& arr) {
  const CodeParams& p = arr.params();
  const Algebra& alg = p.algebra;
  const ErasurePattern pattern = arr.erasure_pattern();
  const Classification cls = classify(pattern, p);
  if (cls.kind == PatternClass::BeyondCapability)
    throw DecodeFailure(DecodeFailureReason::BeyondCapability,
                        "pattern " + pattern.to_string() + " exceeds the code's erasure capability");

  StripeArray out = arr;

  // Stage 1: row parity.
  const std::vector<unsigned> counts = pattern.row_counts(p.m);
  for (unsigned r = 0; r < p.m; ++r) {
    if (counts[r] != 1) continue;
    unsigned missing = 0;
    Symbol sum = alg.zero();
    for (unsigned c = 0; c < p.n; ++c) {
      if (out.erased(r, c)) {
        missing = c;
      } else {
        sum = alg.add(sum, out.at(r, c));
      }
    }
    out.restore(r, missing, sum);
  }
  if (cls.kind == PatternClass::RowParityOnly) return out;

  // Stage 2: heavy rows against the updated syndromes.
  const Syndromes syn = syndromes(out);
  HeavyRowSolver solver(out, syn);
  try {
    if (cls.kind == PatternClass::OneHeavyRow) {
      const HeavyRow& h = cls.heavy[0];
      if (h.cols.size() == 2) {
        solver.two_in_row(h.row, h.cols[0], h.cols[1]);
      } else {
        solver.three_in_row(h.row, h.cols[0], h.cols[1], h.cols[2]);
      }
    } else {
      solver.two_rows(cls.heavy[0], cls.heavy[1]);
    }
  } catch (const DecodeFailure&) {
    throw DecodeFailure(DecodeFailureReason::UncorrectablePattern,
                        "pattern " + pattern.to_string() + " is not correctable by " + p.describe());
  }
  return out;
}

}  // namespace pmds
