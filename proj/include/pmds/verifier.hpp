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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmds/codec.hpp"
#include "pmds/construction.hpp"

namespace pmds {

enum class Property { SD, PMDS };
enum class VerifyMode { RankOracle, DecoderPath };

std::string_view property_name(Property p);
Property parse_property(std::string_view text);
std::string_view mode_name(VerifyMode m);
VerifyMode parse_mode(std::string_view text);

/// Closed-form counts, saturating at UINT64_MAX.
///   SD:   n * [ m*C(n-1,2) + C(m,2)*(n-1)^2 ]
///   PMDS: m*C(n,3)*n^(m-1) + C(m,2)*C(n,2)^2*n^(m-2)
std::uint64_t sd_pattern_count(unsigned m, unsigned n);
std::uint64_t pmds_pattern_count(unsigned m, unsigned n);

/// Random-access view over the maximal erasure patterns of one property. Every
/// pattern has exactly m + 2 cells. Index order is deterministic and matches
/// the nesting of the closed-form count. SD patterns are indexed by failed
/// column, so for m <= 2 a cell set that covers two full columns is listed once
/// per column, as the count does.
class PatternEnumerator {
 public:
  PatternEnumerator(Property property, unsigned m, unsigned n);

  Property property() const { return property_; }
  std::uint64_t count() const { return count_; }
  ErasurePattern at(std::uint64_t index) const;

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t i = 0; i < count_; ++i) f(at(i));
  }

 private:
  ErasurePattern sd_at(std::uint64_t index) const;
  ErasurePattern pmds_at(std::uint64_t index) const;

  Property property_;
  unsigned m_, n_;
  std::uint64_t count_;
  std::vector<std::pair<unsigned, unsigned>> row_pairs_;
};

/// Materialized enumerations. Throw BudgetExceeded above `budget` patterns.
std::vector<ErasurePattern> enumerate_sd_patterns(unsigned m, unsigned n, std::uint64_t budget = 10'000'000);
std::vector<ErasurePattern> enumerate_pmds_patterns(unsigned m, unsigned n, std::uint64_t budget = 10'000'000);

/// Rank verdict for the erased columns of H.
RankCertificate erased_columns_rank(const ParityCheckMatrix& h, const ErasurePattern& pattern);

struct VerifyOptions {
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
  std::uint64_t seed = 0x5eed;  ///< codeword seed for DecoderPath
};

enum class Verdict { Pass, Fail, Inconclusive };

struct VerificationReport {
  CodeParams params;
  Property property = Property::SD;
  VerifyMode mode = VerifyMode::RankOracle;
  std::uint64_t patterns_checked = 0;
  std::vector<ErasurePattern> failures;      ///< in enumeration order
  std::vector<ErasurePattern> inconclusive;  ///< ring rank verdicts that stalled
  std::chrono::nanoseconds elapsed{0};

  Verdict verdict() const;
  /// Key/value summary lines followed by one `FAIL row,col;...` line per
  /// failing pattern (and `INCONCLUSIVE ...` lines, if any).
  std::string to_text() const;
};

/// Exhaustively checks every maximal pattern of `property`. Throws
/// BudgetExceeded when the enumeration is larger than options.budget.
VerificationReport verify(const CodeParams& params, Property property, VerifyMode mode, const VerifyOptions& options = {});

/// Searches two rows l apart with disjoint column pairs {i,j}, {i',j'} for
/// l*n = i'+j'-i-j (mod order), the only way a C0 code can miss a PMDS pattern.
/// Returned patterns hold four cells in rows 0 and l and are confirmed
/// rank-deficient. Throws std::invalid_argument for PMDS_C1 parameters.
std::optional<ErasurePattern> find_sd_pmds_separator(const CodeParams& params);

}  // namespace pmds
