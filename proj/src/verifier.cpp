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

#include "pmds/verifier.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pmds {

std::string_view property_name(Property p) { return p == Property::SD ? "sd" : "pmds"; }

Property parse_property(std::string_view text) {
  if (text == "sd") return Property::SD;
  if (text == "pmds") return Property::PMDS;
  throw std::invalid_argument("property must be sd or pmds");
}

std::string_view mode_name(VerifyMode m) { return m == VerifyMode::RankOracle ? "rank" : "decode"; }

VerifyMode parse_mode(std::string_view text) {
  if (text == "rank") return VerifyMode::RankOracle;
  if (text == "decode") return VerifyMode::DecoderPath;
  throw std::invalid_argument("mode must be rank or decode");
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r = sat_mul(r, base);
  return r;
}

std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }
std::uint64_t choose3(std::uint64_t k) { return k < 3 ? 0 : k * (k - 1) * (k - 2) / 6; }

// The index-th k-subset of {0..n-1} in lexicographic order.
std::vector<unsigned> unrank_subset(std::uint64_t index, unsigned n, unsigned k) {
  std::vector<unsigned> out;
  unsigned next = 0;
  for (unsigned slot = 0; slot < k; ++slot) {
    for (unsigned v = next;; ++v) {
      // subsets starting with v at this slot: C(n - v - 1, k - slot - 1)
      const unsigned rest = n - v - 1, need = k - slot - 1;
      std::uint64_t block = need > rest ? 0 : 1;
      for (unsigned t = 0; block && t < need; ++t) block = block * (rest - t) / (t + 1);
      if (index < block) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      index -= block;
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t sd_pattern_count(unsigned m, unsigned n) {
  if (n == 0) return 0;
  const std::uint64_t per_col =
      sat_add(sat_mul(m, choose2(n - 1)), sat_mul(choose2(m), sat_mul(n - 1, n - 1)));
  return sat_mul(n, per_col);
}

std::uint64_t pmds_pattern_count(unsigned m, unsigned n) {
  if (m == 0) return 0;
  const std::uint64_t one_heavy = sat_mul(sat_mul(m, choose3(n)), sat_pow(n, m - 1));
  const std::uint64_t two_heavy =
      m < 2 ? 0 : sat_mul(sat_mul(choose2(m), sat_mul(choose2(n), choose2(n))), sat_pow(n, m - 2));
  return sat_add(one_heavy, two_heavy);
}

// ---------------------------------------------------------------------------
// PatternEnumerator

PatternEnumerator::PatternEnumerator(Property property, unsigned m, unsigned n)
    : property_(property), m_(m), n_(n), count_(property == Property::SD ? sd_pattern_count(m, n) : pmds_pattern_count(m, n)) {
  if (m < 1 || n < 2) throw std::invalid_argument("pattern enumeration needs m >= 1 and n >= 2");
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = a + 1; b < m; ++b) row_pairs_.emplace_back(a, b);
}

ErasurePattern PatternEnumerator::at(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("pattern index out of range");
  return property_ == Property::SD ? sd_at(index) : pmds_at(index);
}

ErasurePattern PatternEnumerator::sd_at(std::uint64_t index) const {
  const std::uint64_t pairs = choose2(n_ - 1);
  const std::uint64_t one_heavy = std::uint64_t{m_} * pairs;
  const std::uint64_t per_col = one_heavy + choose2(m_) * (n_ - 1) * (n_ - 1);
  const unsigned l1 = static_cast<unsigned>(index / per_col);
  std::uint64_t rem = index % per_col;

  // Columns other than the failed device.
  auto other = [l1](unsigned k) { return k < l1 ? k : k + 1; };
  std::vector<Cell> cells;
  for (unsigned r = 0; r < m_; ++r) cells.push_back({r, l1});
  if (rem < one_heavy) {
    const unsigned row = static_cast<unsigned>(rem / pairs);
    const auto pair = unrank_subset(rem % pairs, n_ - 1, 2);
    cells.push_back({row, other(pair[0])});
    cells.push_back({row, other(pair[1])});
  } else {
    rem -= one_heavy;
    const std::uint64_t sq = std::uint64_t{n_ - 1} * (n_ - 1);
    const auto [ra, rb] = row_pairs_[rem / sq];
    rem %= sq;
    cells.push_back({ra, other(static_cast<unsigned>(rem / (n_ - 1)))});
    cells.push_back({rb, other(static_cast<unsigned>(rem % (n_ - 1)))});
  }
  return ErasurePattern(std::move(cells));
}

ErasurePattern PatternEnumerator::pmds_at(std::uint64_t index) const {
  const std::uint64_t triples = choose3(n_);
  const std::uint64_t light_one = sat_pow(n_, m_ - 1);
  const std::uint64_t one_heavy = std::uint64_t{m_} * triples * light_one;
  std::vector<Cell> cells;
  std::vector<bool> heavy(m_, false);
  std::uint64_t light_digits;

  if (index < one_heavy) {
    const unsigned row = static_cast<unsigned>(index / (triples * light_one));
    std::uint64_t rem = index % (triples * light_one);
    for (unsigned c : unrank_subset(rem / light_one, n_, 3)) cells.push_back({row, c});
    heavy[row] = true;
    light_digits = rem % light_one;
  } else {
    std::uint64_t rem = index - one_heavy;
    const std::uint64_t pairs = choose2(n_);
    const std::uint64_t light_two = sat_pow(n_, m_ - 2);
    const std::uint64_t per_rows = pairs * pairs * light_two;
    const auto [ra, rb] = row_pairs_[rem / per_rows];
    rem %= per_rows;
    for (unsigned c : unrank_subset(rem / (pairs * light_two), n_, 2)) cells.push_back({ra, c});
    rem %= pairs * light_two;
    for (unsigned c : unrank_subset(rem / light_two, n_, 2)) cells.push_back({rb, c});
    heavy[ra] = heavy[rb] = true;
    light_digits = rem % light_two;
  }

  // Mixed-radix digits, most significant for the lowest light row.
  std::vector<unsigned> light_rows;
  for (unsigned r = 0; r < m_; ++r)
    if (!heavy[r]) light_rows.push_back(r);
  for (auto it = light_rows.rbegin(); it != light_rows.rend(); ++it) {
    cells.push_back({*it, static_cast<unsigned>(light_digits % n_)});
    light_digits /= n_;
  }
  return ErasurePattern(std::move(cells));
}

namespace {

std::vector<ErasurePattern> materialize(Property property, unsigned m, unsigned n, std::uint64_t budget) {
  const PatternEnumerator e(property, m, n);
  if (e.count() > budget)
    throw BudgetExceeded(std::to_string(e.count()) + " patterns exceed the budget of " + std::to_string(budget));
  std::vector<ErasurePattern> out;
  out.reserve(e.count());
  e.for_each([&](ErasurePattern p) { out.push_back(std::move(p)); });
  return out;
}

}  // namespace

std::vector<ErasurePattern> enumerate_sd_patterns(unsigned m, unsigned n, std::uint64_t budget) {
  return materialize(Property::SD, m, n, budget);
}

std::vector<ErasurePattern> enumerate_pmds_patterns(unsigned m, unsigned n, std::uint64_t budget) {
  return materialize(Property::PMDS, m, n, budget);
}

// ---------------------------------------------------------------------------
// Verification

RankCertificate erased_columns_rank(const ParityCheckMatrix& h, const ErasurePattern& pattern) {
  const CodeParams& p = h.params;
  pattern.check_bounds(p.m, p.n);
  std::vector<std::size_t> cols;
  cols.reserve(pattern.size());
  for (const Cell& c : pattern.cells()) cols.push_back(p.cell(c.row, c.col));
  return rank_via_unit_pivots(h.matrix.select_columns(cols)).certificate;
}

Verdict VerificationReport::verdict() const {
  if (!inconclusive.empty()) return Verdict::Inconclusive;
  return failures.empty() ? Verdict::Pass : Verdict::Fail;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  const Verdict v = verdict();
  os << "code: " << params.describe() << '\n'
     << "property: " << property_name(property) << '\n'
     << "mode: " << mode_name(mode) << '\n'
     << "patterns: " << patterns_checked << '\n'
     << "failures: " << failures.size() << '\n'
     << "inconclusive: " << inconclusive.size() << '\n'
     << "elapsed_ms: " << std::fixed << std::setprecision(3)
     << std::chrono::duration<double, std::milli>(elapsed).count() << '\n'
     << "verdict: " << (v == Verdict::Pass ? "PASS" : v == Verdict::Fail ? "FAIL" : "INCONCLUSIVE") << '\n';
  for (const auto& f : failures) os << "FAIL " << f.to_string() << '\n';
  for (const auto& f : inconclusive) os << "INCONCLUSIVE " << f.to_string() << '\n';
  return os.str();
}

namespace {

enum class Outcome { Ok, Failed, Inconclusive };

Outcome check_by_decoder(const CodeParams& params, const ErasurePattern& pattern, std::uint64_t seed) {
  const Algebra& alg = params.algebra;
  std::mt19937_64 rng(splitmix64(seed));
  auto random_symbol = [&] {
    const std::array<std::uint64_t, Symbol::kWords> w{rng(), rng(), rng(), rng()};
    return alg.masked(w);
  };
  std::vector<Symbol> data(params.dimension());
  for (auto& d : data) d = random_symbol();
  const StripeArray original = encode(data, params);

  StripeArray damaged = original;
  for (const Cell& c : pattern.cells()) damaged.set(c.row, c.col, random_symbol());
  damaged.erase(pattern);
  try {
    const StripeArray recovered = decode(damaged);
    return std::equal(recovered.cells().begin(), recovered.cells().end(), original.cells().begin()) ? Outcome::Ok
                                                                                                     : Outcome::Failed;
  } catch (const DecodeFailure&) {
    return Outcome::Failed;
  }
}

}  // namespace

VerificationReport verify(const CodeParams& params, Property property, VerifyMode mode, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ParityCheckMatrix h = build_parity_check(params);
  const PatternEnumerator patterns(property, params.m, params.n);
  if (patterns.count() > options.budget)
    throw BudgetExceeded(std::to_string(patterns.count()) + " patterns exceed the budget of " +
                         std::to_string(options.budget));
  if (mode == VerifyMode::DecoderPath) (void)parity_positions(params);

  struct Partial {
    std::vector<ErasurePattern> failures, inconclusive;
  };
  const std::uint64_t total = patterns.count();
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 1024))));
  std::vector<Partial> partials(jobs);

  auto work = [&](unsigned w) {
    const std::uint64_t begin = total * w / jobs, end = total * (w + 1) / jobs;
    Partial& out = partials[w];
    for (std::uint64_t i = begin; i < end; ++i) {
      ErasurePattern pat = patterns.at(i);
      Outcome o;
      if (mode == VerifyMode::RankOracle) {
        const RankCertificate c = erased_columns_rank(h, pat);
        o = c == RankCertificate::FullColumnRank ? Outcome::Ok
            : c == RankCertificate::Deficient    ? Outcome::Failed
                                                 : Outcome::Inconclusive;
      } else {
        o = check_by_decoder(params, pat, options.seed ^ splitmix64(i));
      }
      if (o == Outcome::Failed) out.failures.push_back(std::move(pat));
      if (o == Outcome::Inconclusive) out.inconclusive.push_back(std::move(pat));
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
  }

  VerificationReport report{params, property, mode, total, {}, {}, {}};
  // Workers own contiguous index ranges, so concatenation keeps enumeration order.
  for (auto& part : partials) {
    std::move(part.failures.begin(), part.failures.end(), std::back_inserter(report.failures));
    std::move(part.inconclusive.begin(), part.inconclusive.end(), std::back_inserter(report.inconclusive));
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::optional<ErasurePattern> find_sd_pmds_separator(const CodeParams& params) {
  if (params.variant != Variant::SD_C0) throw std::invalid_argument("find_sd_pmds_separator needs an SD_C0 code");
  const ParityCheckMatrix h = build_parity_check(params);
  const std::int64_t order = params.algebra.order();
  const unsigned n = params.n;
  for (unsigned l = 1; l < params.m; ++l) {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        for (unsigned i2 = 0; i2 < n; ++i2)
          for (unsigned j2 = i2 + 1; j2 < n; ++j2) {
            if (i2 == i || i2 == j || j2 == i || j2 == j) continue;
            const std::int64_t gap = std::int64_t{l} * n - (std::int64_t{i2} + j2 - i - j);
            if (((gap % order) + order) % order != 0) continue;
            ErasurePattern pat({{0, i}, {0, j}, {l, i2}, {l, j2}});
            if (erased_columns_rank(h, pat) != RankCertificate::Deficient)
              throw std::logic_error("separator candidate " + pat.to_string() + " is not rank-deficient");
            return pat;
          }
  }
  return std::nullopt;
}

}  // namespace pmds
