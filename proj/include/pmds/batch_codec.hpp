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

#include <cstdint>
#include <span>
#include <vector>

#include "pmds/codec.hpp"
#include "pmds/kernels.hpp"

namespace pmds {

/// Many stripes of one code laid out cell-major: the symbols of cell (r, c)
/// across all stripes are contiguous, so a cell is a region the kernels can
/// sweep. Requires an algebra no wider than 16 bits.
class StripeBatch {
 public:
  StripeBatch(const CodeParams& params, std::size_t count);

  const CodeParams& params() const { return params_; }
  std::size_t count() const { return count_; }

  std::span<std::uint16_t> cell(std::size_t index) { return {data_.data() + index * count_, count_}; }
  std::span<const std::uint16_t> cell(std::size_t index) const { return {data_.data() + index * count_, count_}; }
  std::span<std::uint16_t> cell(unsigned row, unsigned col) { return cell(params_.cell(row, col)); }
  std::span<const std::uint16_t> cell(unsigned row, unsigned col) const { return cell(params_.cell(row, col)); }

  /// Copies stripe t out as a StripeArray with nothing erased.
  StripeArray stripe(std::size_t t) const;
  void set_stripe(std::size_t t, const StripeArray& arr);

 private:
  CodeParams params_;
  std::size_t count_;
  std::vector<std::uint16_t> data_;
};

/// The structured decoder for one fixed erasure pattern, captured as a linear
/// map from known cells to erased cells. The coefficients come from decoding
/// unit vectors, so the map agrees with decode() on every input; apply() then
/// evaluates it over a whole batch with the region kernels.
class LinearRecovery {
 public:
  /// Throws DecodeFailure when decode() rejects the pattern.
  static LinearRecovery derive(const CodeParams& params, const ErasurePattern& pattern);

  const ErasurePattern& pattern() const { return pattern_; }
  const std::vector<std::size_t>& erased_cells() const { return erased_; }
  const std::vector<std::size_t>& known_cells() const { return known_; }
  const Symbol& coefficient(std::size_t e, std::size_t k) const { return coeff_[e * known_.size() + k]; }

  /// Overwrites every erased cell of the batch; erased inputs are never read.
  void apply(StripeBatch& batch) const;
  void apply(kernels::Isa isa, StripeBatch& batch) const;

 private:
  LinearRecovery(CodeParams params, ErasurePattern pattern);

  enum class Term : std::uint8_t { Zero, One, General };

  CodeParams params_;
  ErasurePattern pattern_;
  std::vector<std::size_t> erased_;
  std::vector<std::size_t> known_;
  std::vector<Symbol> coeff_;
  std::vector<Term> terms_;
  std::vector<kernels::MulTable> tables_;
};

}  // namespace pmds
