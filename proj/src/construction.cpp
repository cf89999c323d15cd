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

#include "pmds/construction.hpp"

#include <sstream>
#include <stdexcept>

namespace pmds {

ParityCheckMatrix build_parity_check(const CodeParams& params) {
  validate(params);
  const Algebra& alg = params.algebra;
  const unsigned m = params.m, n = params.n;
  ParityCheckMatrix h{params, AlgMatrix(alg, m + 2, params.length()), {}, {}};
  h.g1.reserve(params.length());
  h.g2.reserve(params.length());
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      const std::size_t col = params.cell(i, j);
      const GlobalExponents g = global_exponents(params, i, j);
      h.matrix(i, col) = alg.one();
      h.matrix(m, col) = alg.alpha_pow(g.g1.value);
      h.matrix(m + 1, col) = alg.alpha_pow(g.g2.value);
      h.g1.push_back(g.g1);
      h.g2.push_back(g.g2);
    }
  }
  return h;
}

std::string ParityCheckMatrix::to_text() const {
  std::ostringstream os;
  auto power = [](Exponent e) { return e.value == 0 ? std::string("1") : "a^" + std::to_string(e.value); };
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c) os << ' ';
      if (r < params.m) {
        os << (matrix(r, c).is_zero() ? '0' : '1');
      } else {
        os << power(r == params.m ? g1[c] : g2[c]);
      }
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::vector<Symbol>> effective_block(const CodeParams& params, unsigned i) {
  validate(params);
  if (i >= params.m) throw std::out_of_range("effective_block: block index out of range");
  const Algebra& alg = params.algebra;
  std::vector<std::vector<Symbol>> columns;
  columns.reserve(params.n);
  for (unsigned j = 0; j < params.n; ++j) {
    std::vector<Symbol> col(params.m + 2, alg.zero());
    col[i] = alg.one();
    const GlobalExponents g = global_exponents(params, i, j);
    col[params.m] = alg.alpha_pow(g.g1.value);
    col[params.m + 1] = alg.alpha_pow(g.g2.value);
    columns.push_back(std::move(col));
  }
  return columns;
}

}  // namespace pmds
