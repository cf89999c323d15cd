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

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "pmds/code_params.hpp"
#include "pmds/errors.hpp"

namespace pmds {

struct Cell {
  unsigned row = 0;
  unsigned col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Sorted, duplicate-free set of erased (row, col) positions.
class ErasurePattern {
 public:
  ErasurePattern() = default;
  /// Throws std::invalid_argument on duplicate cells.
  explicit ErasurePattern(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool contains(Cell c) const;
  bool includes(const ErasurePattern& other) const;

  /// Throws std::out_of_range when a cell lies outside an m x n array.
  void check_bounds(unsigned m, unsigned n) const;
  std::vector<unsigned> row_counts(unsigned m) const;

  /// `row,col;row,col;...`
  std::string to_string() const;

  friend auto operator<=>(const ErasurePattern&, const ErasurePattern&) = default;

 private:
  std::vector<Cell> cells_;
};

/// One stripe: an m x n grid of symbols plus an erasure mask. The content of
/// an erased cell is never read.
class StripeArray {
 public:
  explicit StripeArray(CodeParams params);

  const CodeParams& params() const { return params_; }
  const Symbol& at(unsigned row, unsigned col) const { return cells_[params_.cell(row, col)]; }
  void set(unsigned row, unsigned col, const Symbol& value);
  bool erased(unsigned row, unsigned col) const { return erased_[params_.cell(row, col)] != 0; }
  void erase(unsigned row, unsigned col);
  void erase(const ErasurePattern& pattern);
  void restore(unsigned row, unsigned col, const Symbol& value);
  ErasurePattern erasure_pattern() const;
  /// Row-wise flattening.
  std::span<const Symbol> cells() const { return cells_; }

 private:
  CodeParams params_;
  std::vector<Symbol> cells_;
  std::vector<unsigned char> erased_;
};

struct Syndromes {
  std::vector<Symbol> row;
  Symbol global1;
  Symbol global2;

  bool all_zero() const;
};

/// Designated parity cells: column n-1 of every row plus (0, n-3), (0, n-2).
/// Throws ParameterViolation when n < 3, or n < 4 with m = 1.
ErasurePattern parity_positions(const CodeParams& params);

/// Cells that carry data, in the row-major order encode fills them.
std::vector<Cell> data_positions(const CodeParams& params);

/// Systematic encoding: data goes row-major into non-parity cells and parities
/// are recovered by decoding with the parity cells erased.
StripeArray encode(std::span<const Symbol> data, const CodeParams& params);

/// Inner products with the rows of H, with erased cells contributing zero.
Syndromes syndromes(const StripeArray& arr);

enum class PatternClass { RowParityOnly, OneHeavyRow, TwoHeavyRows, BeyondCapability };

struct HeavyRow {
  unsigned row = 0;
  std::vector<unsigned> cols;
  friend bool operator==(const HeavyRow&, const HeavyRow&) = default;
};

struct Classification {
  PatternClass kind = PatternClass::RowParityOnly;
  std::vector<HeavyRow> heavy;  ///< rows holding two or more erasures, ascending
};

Classification classify(const ErasurePattern& pattern, const CodeParams& params);

/// Structured erasure decoder. Rows with one erasure are rebuilt from row
/// parity; the remaining one or two heavy rows are solved from the reduced
/// systems with unit factors of the form alpha^u (1 + alpha^v). Throws
/// DecodeFailure.
StripeArray decode(const StripeArray& arr);

}  // namespace pmds
