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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cli_runner.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "pmds/algebra.hpp"
#include "pmds/construction.hpp"
#include "pmds/verifier.hpp"

using namespace pmds;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Body returns an empty string on success, else the reason.
using Check = std::function<std::string()>;

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const Check& body) {
  const auto t0 = Clock::now();
  std::string why;
  try {
    why = body();
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (why.empty() && secs >= limit_s) {
    std::ostringstream s;
    s << "took " << secs << " s, limit " << limit_s << " s";
    why = s.str();
  }
  std::printf("%s %d %s (%.3f s)%s%s\n", why.empty() ? "PASS" : "FAIL", id, title.c_str(), secs, why.empty() ? "" : ": ",
              why.c_str());
  std::fflush(stdout);
  if (!why.empty()) ++failures;
}

std::vector<std::uint32_t> values(const std::vector<Exponent>& e) {
  std::vector<std::uint32_t> out;
  for (const Exponent& x : e) out.push_back(x.value);
  return out;
}

CodeParams code(unsigned m, unsigned n, Variant v, AlgebraSpec s) { return {m, n, v, Algebra(s)}; }

std::string verify_passes(const CodeParams& p, Property prop, std::uint64_t expected_count, double limit_s) {
  const auto t0 = Clock::now();
  const VerificationReport r = verify(p, prop, VerifyMode::RankOracle);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream s;
  if (r.patterns_checked != expected_count) s << p.describe() << " checked " << r.patterns_checked << " patterns";
  else if (r.verdict() != Verdict::Pass) s << p.describe() << " verdict " << r.to_text();
  else if (secs >= limit_s) s << p.describe() << " took " << secs << " s";
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "golden parity-check matrices", 1.0, [] {
    struct Case {
      CodeParams p;
      const std::vector<std::uint32_t>& row1;
      const std::vector<std::uint32_t>& row2;
    };
    for (const Case& c : {Case{golden::sd3x5_params(), golden::kSd3x5Row1, golden::kSd3x5Row2},
                          Case{golden::sd5x3_params(), golden::kSd5x3Row1, golden::kSd5x3Row2},
                          Case{golden::sd4x4_params(), golden::kSd4x4Row1, golden::kSd4x4Row2}}) {
      const ParityCheckMatrix h = build_parity_check(c.p);
      if (values(h.g1) != c.row1 || values(h.g2) != c.row2) return c.p.describe() + " differs from the fixture";
    }
    const ParityCheckMatrix h = build_parity_check(golden::pmds2x4_params());
    if (values(h.g1) != golden::kPmds2x4Row1) return std::string("pmds2x4 first global row differs");
    if (values(h.g2) != golden::kPmds2x4Row2Rule) return std::string("pmds2x4 second global row does not follow the rule");
    for (std::size_t c = 0; c < h.g2.size(); ++c) {
      const bool expect_diff = c >= 1 && c <= 3;
      if ((h.g2[c].value != golden::kPmds2x4Row2Display[c]) != expect_diff)
        return "pmds2x4 display discrepancy not confined to block 0 offsets 1..3 (column " + std::to_string(c) + ")";
    }
    return std::string();
  });

  criterion(2, "SD verification of C0 codes", 30.0, [] {
    std::string why = verify_passes(code(3, 5, Variant::SD_C0, AlgebraSpec::field(4)), Property::SD, 330, 10.0);
    // 3 * (5*1 + 10*4) evaluates to 135, which the brute-force enumeration
    // in the unit tests confirms; a quoted total of 105 is an arithmetic slip.
    if (why.empty()) why = verify_passes(code(5, 3, Variant::SD_C0, AlgebraSpec::field(4)), Property::SD, 135, 10.0);
    if (why.empty()) why = verify_passes(code(4, 4, Variant::SD_C0, AlgebraSpec::ring(17)), Property::SD, 264, 10.0);
    return why;
  });

  criterion(3, "PMDS verification of C1 codes", 60.0, [] {
    std::string why = verify_passes(code(2, 4, Variant::PMDS_C1, AlgebraSpec::ring(17)), Property::PMDS, 68, 30.0);
    if (why.empty()) why = verify_passes(code(3, 5, Variant::PMDS_C1, AlgebraSpec::field(7)), Property::PMDS, 2250, 30.0);
    return why;
  });

  criterion(4, "SD code that is not PMDS", 30.0, [] {
    const CodeParams p = code(4, 4, Variant::SD_C0, AlgebraSpec::ring(17));
    const auto sep = find_sd_pmds_separator(p);
    if (!sep) return std::string("no separator found");
    if (sep->to_string() != "0,0;0,1;1,2;1,3") return "unexpected separator " + sep->to_string();
    const auto pmds = verify(p, Property::PMDS, VerifyMode::RankOracle);
    if (pmds.verdict() != Verdict::Fail) return std::string("PMDS verification did not fail");
    bool listed = false;
    for (const ErasurePattern& f : pmds.failures) listed = listed || f.includes(*sep);
    if (!listed) return std::string("separator missing from the PMDS failure list");
    if (verify(p, Property::SD, VerifyMode::RankOracle).verdict() != Verdict::Pass) return std::string("SD verification failed");
    return std::string();
  });

  criterion(5, "decoder and rank oracle agree", 30.0, [] {
    for (const CodeParams& p : {code(3, 5, Variant::SD_C0, AlgebraSpec::field(4)), code(2, 4, Variant::PMDS_C1, AlgebraSpec::ring(17))}) {
      for (Property prop : {Property::SD, Property::PMDS}) {
        const auto a = verify(p, prop, VerifyMode::RankOracle);
        const auto b = verify(p, prop, VerifyMode::DecoderPath);
        if (a.failures != b.failures || a.verdict() != b.verdict() || a.patterns_checked != b.patterns_checked)
          return p.describe() + " " + std::string(property_name(prop)) + " modes disagree";
      }
    }
    return std::string();
  });

  criterion(6, "randomized encode, erase, decode round trips", 30.0, [] {
    std::mt19937_64 rng(2024);
    for (const CodeParams& p : {code(3, 5, Variant::SD_C0, AlgebraSpec::field(4)), code(5, 3, Variant::SD_C0, AlgebraSpec::field(4)),
                                code(4, 4, Variant::SD_C0, AlgebraSpec::ring(17)), code(2, 4, Variant::PMDS_C1, AlgebraSpec::ring(17)),
                                code(3, 5, Variant::PMDS_C1, AlgebraSpec::field(7))}) {
      const auto patterns = p.variant == Variant::SD_C0 ? enumerate_sd_patterns(p.m, p.n) : enumerate_pmds_patterns(p.m, p.n);
      const std::size_t k = data_positions(p).size();
      for (int t = 0; t < 1000; ++t) {
        std::vector<Symbol> data(k);
        for (auto& d : data) d = oracle::random_symbol(p.algebra, rng);
        const StripeArray cw = encode(data, p);
        // Mostly maximal patterns, sometimes a random sub-pattern of one.
        const ErasurePattern& full = patterns[rng() % patterns.size()];
        std::vector<Cell> cells;
        const bool thin = rng() % 4 == 0;
        for (const Cell& c : full.cells())
          if (!thin || rng() % 2) cells.push_back(c);
        StripeArray damaged = cw;
        for (const Cell& c : cells) damaged.set(c.row, c.col, oracle::random_symbol(p.algebra, rng));
        damaged.erase(ErasurePattern(cells));
        const StripeArray back = decode(damaged);
        for (unsigned r = 0; r < p.m; ++r)
          for (unsigned c = 0; c < p.n; ++c)
            if (!(back.at(r, c) == cw.at(r, c))) return p.describe() + " symbol mismatch in trial " + std::to_string(t);
      }
    }
    return std::string();
  });

  criterion(7, "ring and field algebra properties", 30.0, [] {
    std::mt19937_64 rng(7);
    for (unsigned p : {5u, 7u, 11u, 13u, 17u}) {
      const Algebra alg(AlgebraSpec::ring(p));
      for (unsigned k = 1; k <= p - 1; ++k)
        if (!alg.is_unit(alg.add(alg.one(), alg.alpha_pow(k)))) return "1 + a^" + std::to_string(k) + " not a unit for p=" + std::to_string(p);
      for (int t = 0; t < 1000; ++t) {
        const Symbol a = oracle::random_symbol(alg, rng), b = oracle::random_symbol(alg, rng);
        const oracle::Poly want = oracle::algebra_mul(alg, oracle::from_symbol(a, alg.width()), oracle::from_symbol(b, alg.width()));
        if (!(alg.mul(a, b) == oracle::to_symbol(alg, want))) return "ring multiplication mismatch for p=" + std::to_string(p);
      }
    }
    for (unsigned p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u})
      if (!mp_irreducibility_matches_primitivity(p)) return "irreducibility and primitivity disagree for p=" + std::to_string(p);
    return std::string();
  });

  criterion(8, "CLI shard, lose a device and sectors, unshard", 10.0, [] {
    const fs::path dir = fs::temp_directory_path() / "pmds_acceptance_e2e";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::mt19937_64 rng(8);
    std::string input(1 << 20, '\0');
    for (char& c : input) c = static_cast<char>(rng());
    std::ofstream(dir / "in.bin", std::ios::binary).write(input.data(), static_cast<std::streamsize>(input.size()));
    const std::string q = "\"" + dir.string() + "/";
    if (cli::run("shard --in " + q + "in.bin\" --out " + q + "dev\" --variant sd --m 4 --n 4 --algebra ring:17").code != 0)
      return std::string("shard failed");
    fs::remove(dir / "dev" / "device_1.pmds");
    // One extra sector in each of two distinct rows, in several stripes.
    std::string cells;
    for (unsigned s : {0u, 5u, 100u, 2047u, 6553u})
      cells += " --cell " + std::to_string(s) + "," + std::to_string(s % 4) + ",0 --cell " + std::to_string(s) + "," +
               std::to_string((s + 2) % 4) + ",3";
    if (cli::run("corrupt --dir " + q + "dev\" --zero-fill" + cells).code != 0) return std::string("corrupt failed");
    if (cli::run("unshard --dir " + q + "dev\" --erasures " + q + "dev/erasures.txt\" --out " + q + "out.bin\"").code != 0)
      return std::string("unshard failed");
    std::ifstream out(dir / "out.bin", std::ios::binary);
    const std::string got{std::istreambuf_iterator<char>(out), {}};
    fs::remove_all(dir);
    return got == input ? std::string() : std::string("recovered file differs");
  });

  return failures == 0 ? 0 : 1;
}
