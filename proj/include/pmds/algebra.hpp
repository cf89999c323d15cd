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
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace pmds {

enum class AlgebraKind : std::uint8_t { Field = 0, Ring = 1 };

/// Identifies a symbol algebra: GF(2^b) modulo f(x), or GF(2)[x] modulo
/// M_p(x) = 1 + x + ... + x^(p-1).
struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::Field;
  unsigned param = 4;         ///< b for Field, p for Ring
  std::uint32_t modulus = 0;  ///< f(x) bit pattern for Field; always 0 for Ring

  /// `modulus == 0` selects the built-in default for `b`.
  static AlgebraSpec field(unsigned b, std::uint32_t modulus = 0);
  static AlgebraSpec ring(unsigned p);

  /// Parses `gf2:B[:modulus-hex]` or `ring:P`.
  static AlgebraSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

/// One array entry: a binary polynomial stored as a little-endian bit vector
/// (bit k is the coefficient of x^k). Symbols are tagged with the algebra that
/// produced them so mixed-algebra arithmetic is caught.
class Symbol {
 public:
  static constexpr std::size_t kWords = 4;
  static constexpr unsigned kMaxBits = 64 * kWords;

  constexpr Symbol() = default;

  std::uint64_t word(std::size_t i) const { return words_[i]; }
  const std::array<std::uint64_t, kWords>& words() const { return words_; }
  std::uint64_t low() const { return words_[0]; }
  bool bit(unsigned k) const { return (words_[k / 64] >> (k % 64)) & 1u; }
  bool is_zero() const { return (words_[0] | words_[1] | words_[2] | words_[3]) == 0; }
  std::uint32_t tag() const { return tag_; }

  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  friend class Algebra;

  std::array<std::uint64_t, kWords> words_{};
  std::uint32_t tag_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Symbol& s);

/// Arithmetic in the algebra named by an AlgebraSpec. Immutable and cheap to
/// copy; every operation is pure.
class Algebra {
 public:
  /// Validates `spec`: field modulus irreducible of degree b (4 <= b <= 16),
  /// or p prime with 3 <= p <= 257. Throws InvalidAlgebra.
  explicit Algebra(const AlgebraSpec& spec);

  const AlgebraSpec& spec() const { return spec_; }
  AlgebraKind kind() const { return spec_.kind; }
  /// Coefficient bits per symbol: b, or p - 1.
  unsigned width() const { return width_; }
  /// Multiplicative order of alpha = x.
  std::uint32_t order() const { return order_; }
  /// Serialized size: ceil(width / 8).
  std::size_t symbol_bytes() const { return (width_ + 7) / 8; }
  std::string describe() const { return spec_.to_string(); }

  Symbol zero() const;
  Symbol one() const;
  /// Throws std::invalid_argument if `bits` is not canonical.
  Symbol from_uint(std::uint64_t bits) const;
  Symbol from_words(std::span<const std::uint64_t> words) const;
  /// Drops any bit at or above width(); used to draw random symbols.
  Symbol masked(std::span<const std::uint64_t> words) const;

  bool owns(const Symbol& s) const { return s.tag_ == tag_; }

  Symbol add(const Symbol& a, const Symbol& b) const;
  Symbol mul(const Symbol& a, const Symbol& b) const;
  /// x^k reduced in the algebra; k is taken modulo order().
  Symbol alpha_pow(std::int64_t k) const;
  bool is_unit(const Symbol& a) const;
  /// Throws NotAUnit.
  Symbol inv(const Symbol& a) const;

  void serialize(const Symbol& s, std::span<std::uint8_t> out) const;
  /// Throws FormatError(BadSymbol) when pad bits are set.
  Symbol deserialize(std::span<const std::uint8_t> in) const;

  friend bool operator==(const Algebra& a, const Algebra& b) { return a.spec_ == b.spec_; }

 private:
  void check(const Symbol& s) const;
  Symbol make(const std::array<std::uint64_t, Symbol::kWords>& w) const;
  Symbol ring_mul(const Symbol& a, const Symbol& b) const;
  std::uint32_t field_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t compute_field_order() const;

  AlgebraSpec spec_;
  unsigned width_ = 0;
  std::uint32_t order_ = 0;
  std::uint32_t tag_ = 0;
};

bool is_prime(unsigned p);

/// Built-in primitive modulus for 4 <= b <= 16 (x^4 + x + 1 for b = 4).
std::uint32_t default_field_modulus(unsigned b);

/// Trial division by every binary polynomial of degree 1..deg(f)/2.
bool binary_poly_irreducible(std::uint64_t f);

/// Multiplicative order of 2 in GF(p).
unsigned order_of_two_mod(unsigned p);

/// Whether M_p(x) is irreducible, by trial division. Supports p <= 43.
bool mp_irreducible(unsigned p);

/// Self-test: M_p irreducible exactly when 2 is primitive modulo p.
bool mp_irreducibility_matches_primitivity(unsigned p);

}  // namespace pmds
