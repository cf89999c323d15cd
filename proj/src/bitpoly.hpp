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

#include <array>
#include <bit>
#include <cstdint>

namespace pmds::detail {

// Binary polynomial with up to 320 coefficients. Large enough to hold the
// unreduced p-bit cyclic products used by the M_p ring for p <= 257.
struct BitPoly {
  static constexpr int kWords = 5;
  static constexpr int kBits = 64 * kWords;

  std::array<std::uint64_t, kWords> w{};

  static BitPoly low_ones(int count) {
    BitPoly r;
    for (int i = 0; i < count / 64; ++i) r.w[i] = ~std::uint64_t{0};
    if (count % 64) r.w[count / 64] = (std::uint64_t{1} << (count % 64)) - 1;
    return r;
  }

  bool test(int k) const { return (w[k / 64] >> (k % 64)) & 1u; }
  void set(int k) { w[k / 64] |= std::uint64_t{1} << (k % 64); }
  void flip(int k) { w[k / 64] ^= std::uint64_t{1} << (k % 64); }

  int degree() const {
    for (int i = kWords - 1; i >= 0; --i) {
      if (w[i]) return 64 * i + 63 - std::countl_zero(w[i]);
    }
    return -1;
  }

  bool is_zero() const { return degree() < 0; }
  bool is_one() const {
    if (w[0] != 1) return false;
    for (int i = 1; i < kWords; ++i)
      if (w[i]) return false;
    return true;
  }

  BitPoly& operator^=(const BitPoly& o) {
    for (int i = 0; i < kWords; ++i) w[i] ^= o.w[i];
    return *this;
  }

  BitPoly shl(int k) const {
    BitPoly r;
    const int ws = k / 64, bs = k % 64;
    for (int i = kWords - 1; i >= ws; --i) {
      std::uint64_t v = w[i - ws] << bs;
      if (bs && i - ws - 1 >= 0) v |= w[i - ws - 1] >> (64 - bs);
      r.w[i] = v;
    }
    return r;
  }

  BitPoly shr(int k) const {
    BitPoly r;
    const int ws = k / 64, bs = k % 64;
    for (int i = 0; i + ws < kWords; ++i) {
      std::uint64_t v = w[i + ws] >> bs;
      if (bs && i + ws + 1 < kWords) v |= w[i + ws + 1] << (64 - bs);
      r.w[i] = v;
    }
    return r;
  }

  void keep_low(int bits) {
    for (int i = 0; i < kWords; ++i) {
      const int lo = 64 * i;
      if (bits <= lo) {
        w[i] = 0;
      } else if (bits < lo + 64) {
        w[i] &= (std::uint64_t{1} << (bits - lo)) - 1;
      }
    }
  }

  friend BitPoly operator^(BitPoly a, const BitPoly& b) { return a ^= b; }
  friend bool operator==(const BitPoly&, const BitPoly&) = default;
};

// Remainder of a modulo m (m nonzero); the quotient is written when requested.
inline BitPoly poly_mod(BitPoly a, const BitPoly& m, BitPoly* quotient = nullptr) {
  const int dm = m.degree();
  BitPoly q;
  for (int da = a.degree(); da >= dm; da = a.degree()) {
    a ^= m.shl(da - dm);
    q.set(da - dm);
  }
  if (quotient) *quotient = q;
  return a;
}

inline BitPoly poly_gcd(BitPoly a, BitPoly b) {
  while (!b.is_zero()) {
    BitPoly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace pmds::detail
