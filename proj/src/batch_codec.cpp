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

#include "pmds/batch_codec.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmds {

StripeBatch::StripeBatch(const CodeParams& params, std::size_t count)
    : params_(params), count_(count), data_(params.length() * count, 0) {
  if (params.algebra.width() > kernels::kMaxKernelWidth)
    throw std::invalid_argument("StripeBatch holds symbols of at most 16 bits; " + params.algebra.describe() + " is wider");
}

StripeArray StripeBatch::stripe(std::size_t t) const {
  StripeArray arr(params_);
  for (unsigned r = 0; r < params_.m; ++r)
    for (unsigned c = 0; c < params_.n; ++c) arr.set(r, c, params_.algebra.from_uint(cell(r, c)[t]));
  return arr;
}

void StripeBatch::set_stripe(std::size_t t, const StripeArray& arr) {
  for (unsigned r = 0; r < params_.m; ++r)
    for (unsigned c = 0; c < params_.n; ++c) cell(r, c)[t] = static_cast<std::uint16_t>(arr.at(r, c).low());
}

LinearRecovery::LinearRecovery(CodeParams params, ErasurePattern pattern)
    : params_(std::move(params)), pattern_(std::move(pattern)) {}

LinearRecovery LinearRecovery::derive(const CodeParams& params, const ErasurePattern& pattern) {
  pattern.check_bounds(params.m, params.n);
  LinearRecovery lr(params, pattern);
  for (unsigned r = 0; r < params.m; ++r) {
    for (unsigned c = 0; c < params.n; ++c) {
      (pattern.contains({r, c}) ? lr.erased_ : lr.known_).push_back(params.cell(r, c));
    }
  }

  const Algebra& alg = params.algebra;
  lr.coeff_.assign(lr.erased_.size() * lr.known_.size(), alg.zero());
  for (std::size_t k = 0; k < lr.known_.size(); ++k) {
    StripeArray unit(params);
    unit.set(static_cast<unsigned>(lr.known_[k] / params.n), static_cast<unsigned>(lr.known_[k] % params.n), alg.one());
    unit.erase(pattern);
    const StripeArray out = decode(unit);
    for (std::size_t e = 0; e < lr.erased_.size(); ++e)
      lr.coeff_[e * lr.known_.size() + k] = out.cells()[lr.erased_[e]];
  }

  const bool kernel_width = alg.width() <= kernels::kMaxKernelWidth;
  lr.terms_.reserve(lr.coeff_.size());
  lr.tables_.resize(kernel_width ? lr.coeff_.size() : 0);
  for (std::size_t t = 0; t < lr.coeff_.size(); ++t) {
    const Symbol& c = lr.coeff_[t];
    lr.terms_.push_back(c.is_zero() ? Term::Zero : c == alg.one() ? Term::One : Term::General);
    if (kernel_width && lr.terms_.back() == Term::General) lr.tables_[t] = kernels::make_mul_table(alg, c);
  }
  return lr;
}

void LinearRecovery::apply(StripeBatch& batch) const { apply(kernels::active_isa(), batch); }

void LinearRecovery::apply(kernels::Isa isa, StripeBatch& batch) const {
  if (!(batch.params().algebra == params_.algebra) || batch.params().m != params_.m || batch.params().n != params_.n ||
      batch.params().variant != params_.variant)
    throw std::invalid_argument("LinearRecovery::apply: batch belongs to a different code");
  const std::size_t nk = known_.size();
  for (std::size_t e = 0; e < erased_.size(); ++e) {
    std::span<std::uint16_t> dst = batch.cell(erased_[e]);
    std::fill(dst.begin(), dst.end(), 0);
    for (std::size_t k = 0; k < nk; ++k) {
      const std::size_t t = e * nk + k;
      switch (terms_[t]) {
        case Term::Zero:
          break;
        case Term::One:
          kernels::xor_region(isa, batch.cell(known_[k]), dst);
          break;
        case Term::General:
          kernels::mul_add_region(isa, tables_[t], batch.cell(known_[k]), dst);
          break;
      }
    }
  }
}

}  // namespace pmds
