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

#include "pmds/algebra.hpp"

#include <bit>
#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bitpoly.hpp"
#include "pmds/errors.hpp"

namespace pmds {

namespace {

using detail::BitPoly;

constexpr unsigned kMinFieldBits = 4;
constexpr unsigned kMaxFieldBits = 16;
constexpr unsigned kMinRingPrime = 3;
constexpr unsigned kMaxRingPrime = 257;
constexpr unsigned kMaxTrialDivisionPrime = 43;

int degree_u64(std::uint64_t v) { return v ? 63 - std::countl_zero(v) : -1; }

std::uint64_t u64_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree_u64(m);
  for (int da = degree_u64(a); da >= dm; da = degree_u64(a)) a ^= m << (da - dm);
  return a;
}

BitPoly to_poly(const Symbol& s) {
  BitPoly r;
  for (std::size_t i = 0; i < Symbol::kWords; ++i) r.w[i] = s.word(i);
  return r;
}

// Product of a and b modulo M_p, both given with degree <= p - 1. The product
// is formed modulo x^p + 1 as a sum of cyclic rotations of b, then the x^(p-1)
// coefficient is folded back with the all-ones pattern of M_p.
BitPoly ring_mul_poly(const BitPoly& a, const BitPoly& b, int p) {
  BitPoly acc;
  BitPoly rot = b;
  for (int k = 0; k < p; ++k) {
    if (a.test(k)) acc ^= rot;
    const bool carry = rot.test(p - 1);
    rot = rot.shl(1);
    rot.keep_low(p);
    if (carry) rot.w[0] ^= 1;
  }
  if (acc.test(p - 1)) acc ^= BitPoly::low_ones(p);
  return acc;
}

std::uint64_t ring_mul_u64(std::uint64_t a, std::uint64_t b, unsigned p) {
  const std::uint64_t mask = (std::uint64_t{1} << p) - 1;
  std::uint64_t acc = 0;
  while (a) {
    const unsigned k = std::countr_zero(a);
    a &= a - 1;
    acc ^= k ? ((b << k) | (b >> (p - k))) & mask : b;
  }
  if ((acc >> (p - 1)) & 1u) acc ^= mask;
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraSpec

AlgebraSpec AlgebraSpec::field(unsigned b, std::uint32_t modulus) {
  AlgebraSpec s;
  s.kind = AlgebraKind::Field;
  s.param = b;
  s.modulus = modulus ? modulus : default_field_modulus(b);
  return s;
}

AlgebraSpec AlgebraSpec::ring(unsigned p) {
  AlgebraSpec s;
  s.kind = AlgebraKind::Ring;
  s.param = p;
  s.modulus = 0;
  return s;
}

AlgebraSpec AlgebraSpec::parse(std::string_view text) {
  auto parse_uint = [&](std::string_view digits, int base) {
    if (base == 16 && (digits.starts_with("0x") || digits.starts_with("0X"))) digits.remove_prefix(2);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
      throw std::invalid_argument("malformed number in algebra '" + std::string(text) + "'");
    return v;
  };
  if (text.starts_with("gf2:")) {
    std::string_view rest = text.substr(4);
    const auto colon = rest.find(':');
    const unsigned b = parse_uint(rest.substr(0, colon), 10);
    const std::uint32_t modulus = colon == std::string_view::npos ? 0 : parse_uint(rest.substr(colon + 1), 16);
    if (colon != std::string_view::npos && modulus == 0)
      throw std::invalid_argument("field modulus must be nonzero");
    return field(b, modulus);
  }
  if (text.starts_with("ring:")) return ring(parse_uint(text.substr(5), 10));
  throw std::invalid_argument("algebra must be gf2:B[:modulus-hex] or ring:P, got '" + std::string(text) + "'");
}

std::string AlgebraSpec::to_string() const {
  std::ostringstream os;
  if (kind == AlgebraKind::Field) {
    os << "gf2:" << param << ":0x" << std::hex << modulus;
  } else {
    os << "ring:" << param;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Symbol& s) {
  int top = static_cast<int>(Symbol::kWords) - 1;
  while (top > 0 && s.word(top) == 0) --top;
  std::ostringstream tmp;
  tmp << "0x" << std::hex << s.word(top);
  for (int i = top - 1; i >= 0; --i) tmp << std::setw(16) << std::setfill('0') << s.word(i);
  return os << tmp.str();
}

// ---------------------------------------------------------------------------
// Free helpers

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t default_field_modulus(unsigned b) {
  switch (b) {
    case 4: return 0x13;       // x^4 + x + 1
    case 5: return 0x25;       // x^5 + x^2 + 1
    case 6: return 0x43;       // x^6 + x + 1
    case 7: return 0x83;       // x^7 + x + 1
    case 8: return 0x11D;      // x^8 + x^4 + x^3 + x^2 + 1
    case 9: return 0x211;      // x^9 + x^4 + 1
    case 10: return 0x409;     // x^10 + x^3 + 1
    case 11: return 0x805;     // x^11 + x^2 + 1
    case 12: return 0x1053;    // x^12 + x^6 + x^4 + x + 1
    case 13: return 0x201B;    // x^13 + x^4 + x^3 + x + 1
    case 14: return 0x4443;    // x^14 + x^10 + x^6 + x + 1
    case 15: return 0x8003;    // x^15 + x + 1
    case 16: return 0x1100B;   // x^16 + x^12 + x^3 + x + 1
    default:
      throw InvalidAlgebra("no default modulus for GF(2^" + std::to_string(b) + "); supported b is 4..16");
  }
}

bool binary_poly_irreducible(std::uint64_t f) {
  const int d = degree_u64(f);
  if (d < 1) return false;
  const std::uint64_t limit = std::uint64_t{1} << (d / 2 + 1);
  for (std::uint64_t g = 2; g < limit; ++g) {
    if (u64_mod(f, g) == 0) return false;
  }
  return true;
}

unsigned order_of_two_mod(unsigned p) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("order_of_two_mod needs an odd prime");
  unsigned v = 2 % p, k = 1;
  while (v != 1) {
    v = (v * 2) % p;
    ++k;
  }
  return k;
}

bool mp_irreducible(unsigned p) {
  if (!is_prime(p) || p == 2 || p > kMaxTrialDivisionPrime)
    throw std::invalid_argument("mp_irreducible supports odd primes up to 43");
  return binary_poly_irreducible((std::uint64_t{1} << p) - 1);
}

bool mp_irreducibility_matches_primitivity(unsigned p) {
  return mp_irreducible(p) == (order_of_two_mod(p) == p - 1);
}

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(const AlgebraSpec& spec) : spec_(spec) {
  if (spec.kind == AlgebraKind::Field) {
    if (spec.param < kMinFieldBits || spec.param > kMaxFieldBits)
      throw InvalidAlgebra("field width b must be in 4..16, got " + std::to_string(spec.param));
    if (degree_u64(spec.modulus) != static_cast<int>(spec.param))
      throw InvalidAlgebra("field modulus " + spec.to_string() + " does not have degree b");
    if (!binary_poly_irreducible(spec.modulus))
      throw InvalidAlgebra("field modulus " + spec.to_string() + " is reducible");
    width_ = spec.param;
    tag_ = spec.modulus;
    order_ = compute_field_order();
  } else {
    if (spec.modulus != 0) throw InvalidAlgebra("ring spec carries no modulus");
    if (spec.param < kMinRingPrime || spec.param > kMaxRingPrime || !is_prime(spec.param))
      throw InvalidAlgebra("ring modulus p must be a prime in 3..257, got " + std::to_string(spec.param));
    width_ = spec.param - 1;
    tag_ = 0x40000000u | spec.param;
    order_ = spec.param;
  }
}

std::uint32_t Algebra::compute_field_order() const {
  const std::uint32_t limit = (std::uint32_t{1} << width_) - 1;
  std::uint32_t cur = 2;
  for (std::uint32_t e = 1; e <= limit; ++e) {
    if (cur == 1) return e;
    cur = field_mul(cur, 2);
  }
  throw std::logic_error("alpha has no finite order; modulus is not irreducible");
}

Symbol Algebra::make(const std::array<std::uint64_t, Symbol::kWords>& w) const {
  Symbol s;
  s.words_ = w;
  s.tag_ = tag_;
  return s;
}

void Algebra::check(const Symbol& s) const {
  if (s.tag_ != tag_) throw AlgebraMismatch("symbol does not belong to algebra " + describe());
}

Symbol Algebra::zero() const { return make({}); }

Symbol Algebra::one() const { return make({1, 0, 0, 0}); }

Symbol Algebra::from_uint(std::uint64_t bits) const {
  const std::array<std::uint64_t, 1> w{bits};
  return from_words(w);
}

Symbol Algebra::from_words(std::span<const std::uint64_t> words) const {
  if (words.size() > Symbol::kWords) throw std::invalid_argument("too many words for a symbol");
  std::array<std::uint64_t, Symbol::kWords> w{};
  std::copy(words.begin(), words.end(), w.begin());
  Symbol s = masked(w);
  if (s.words_ != w) throw std::invalid_argument("non-canonical symbol for " + describe());
  return s;
}

Symbol Algebra::masked(std::span<const std::uint64_t> words) const {
  std::array<std::uint64_t, Symbol::kWords> w{};
  std::copy_n(words.begin(), std::min(words.size(), Symbol::kWords), w.begin());
  for (std::size_t i = 0; i < Symbol::kWords; ++i) {
    const unsigned lo = 64 * static_cast<unsigned>(i);
    if (width_ <= lo) {
      w[i] = 0;
    } else if (width_ < lo + 64) {
      w[i] &= (std::uint64_t{1} << (width_ - lo)) - 1;
    }
  }
  return make(w);
}

Symbol Algebra::add(const Symbol& a, const Symbol& b) const {
  check(a);
  check(b);
  Symbol r = a;
  for (std::size_t i = 0; i < Symbol::kWords; ++i) r.words_[i] ^= b.words_[i];
  return r;
}

std::uint32_t Algebra::field_mul(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t prod = 0;
  while (b) {
    if (b & 1u) prod ^= a;
    a <<= 1;
    b >>= 1;
  }
  // prod has degree <= 2b - 2 < 32.
  for (int d = degree_u64(prod); d >= static_cast<int>(width_); d = degree_u64(prod))
    prod ^= spec_.modulus << (d - width_);
  return prod;
}

Symbol Algebra::ring_mul(const Symbol& a, const Symbol& b) const {
  const unsigned p = spec_.param;
  if (p <= 63) return make({ring_mul_u64(a.words_[0], b.words_[0], p), 0, 0, 0});
  const BitPoly r = ring_mul_poly(to_poly(a), to_poly(b), static_cast<int>(p));
  return make({r.w[0], r.w[1], r.w[2], r.w[3]});
}

Symbol Algebra::mul(const Symbol& a, const Symbol& b) const {
  check(a);
  check(b);
  if (spec_.kind == AlgebraKind::Field)
    return make({field_mul(static_cast<std::uint32_t>(a.words_[0]), static_cast<std::uint32_t>(b.words_[0])), 0, 0, 0});
  return ring_mul(a, b);
}

Symbol Algebra::alpha_pow(std::int64_t k) const {
  const std::int64_t ord = order_;
  std::uint64_t e = static_cast<std::uint64_t>(((k % ord) + ord) % ord);
  Symbol result = one();
  Symbol base = make({2, 0, 0, 0});
  while (e) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool Algebra::is_unit(const Symbol& a) const {
  check(a);
  if (a.is_zero()) return false;
  if (spec_.kind == AlgebraKind::Field) return true;
  return detail::poly_gcd(BitPoly::low_ones(static_cast<int>(spec_.param)), to_poly(a)).is_one();
}

Symbol Algebra::inv(const Symbol& a) const {
  check(a);
  if (a.is_zero()) throw NotAUnit("zero has no inverse");
  if (spec_.kind == AlgebraKind::Field) {
    // a^(2^b - 2)
    std::uint32_t e = (std::uint32_t{1} << width_) - 2;
    std::uint32_t base = static_cast<std::uint32_t>(a.words_[0]);
    std::uint32_t result = 1;
    while (e) {
      if (e & 1u) result = field_mul(result, base);
      base = field_mul(base, base);
      e >>= 1;
    }
    return make({result, 0, 0, 0});
  }

  // Extended Euclid against M_p, tracking only the coefficient of a:
  // r_k = s_k * a (mod M_p).
  const int p = static_cast<int>(spec_.param);
  const BitPoly mp = BitPoly::low_ones(p);
  BitPoly r0 = mp, r1 = to_poly(a);
  BitPoly s0, s1;
  s1.w[0] = 1;
  while (!r1.is_zero()) {
    BitPoly q;
    BitPoly r = detail::poly_mod(r0, r1, &q);
    if (q.test(p - 1)) q ^= mp;
    BitPoly s2 = s0 ^ ring_mul_poly(q, s1, p);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (!r0.is_one()) throw NotAUnit("symbol shares a factor with M_" + std::to_string(p) + "(x)");
  return make({s0.w[0], s0.w[1], s0.w[2], s0.w[3]});
}

void Algebra::serialize(const Symbol& s, std::span<std::uint8_t> out) const {
  check(s);
  if (out.size() != symbol_bytes()) throw std::invalid_argument("serialize: wrong output size");
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(s.words_[i / 8] >> (8 * (i % 8)));
}

Symbol Algebra::deserialize(std::span<const std::uint8_t> in) const {
  if (in.size() != symbol_bytes()) throw std::invalid_argument("deserialize: wrong input size");
  std::array<std::uint64_t, Symbol::kWords> w{};
  for (std::size_t i = 0; i < in.size(); ++i) w[i / 8] |= std::uint64_t{in[i]} << (8 * (i % 8));
  Symbol s = masked(w);
  if (s.words_ != w) throw FormatError(FormatErrorKind::BadSymbol, "symbol has nonzero pad bits");
  return s;
}

}  // namespace pmds
