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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernel_impl.hpp"

namespace pmds::kernels {

// ---------------------------------------------------------------------------
// Scalar reference

namespace scalar {

void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  // Rebuild 16-bit tables once per call; the hot loop is then four loads.
  std::uint16_t full[4][16];
  for (int q = 0; q < 4; ++q)
    for (int v = 0; v < 16; ++v) full[q][v] = static_cast<std::uint16_t>(t.lo[q][v] | (t.hi[q][v] << 8));
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint16_t s = src[k];
    dst[k] ^= full[0][s & 15] ^ full[1][(s >> 4) & 15] ^ full[2][(s >> 8) & 15] ^ full[3][s >> 12];
  }
}

void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    std::uint64_t a, b;
    std::memcpy(&a, src + k, 8);
    std::memcpy(&b, dst + k, 8);
    b ^= a;
    std::memcpy(dst + k, &b, 8);
  }
  for (; k < count; ++k) dst[k] ^= src[k];
}

}  // namespace scalar

// ---------------------------------------------------------------------------
// Dispatch

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
#if defined(PMDS_HAVE_X86_KERNELS)
    case Isa::Ssse3:
      return __builtin_cpu_supports("ssse3");
    case Isa::Avx2:
      return __builtin_cpu_supports("avx2");
#endif
#if defined(PMDS_HAVE_NEON_KERNELS)
    case Isa::Neon:
      return true;
#endif
    default:
      return false;
  }
}

Isa initial_isa() {
  if (const char* env = std::getenv("PMDS_ISA")) {
    if (const auto isa = parse_isa(env); isa && cpu_has(*isa)) return *isa;
  }
  return best_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_sizes(std::size_t src, std::size_t dst) {
  if (src != dst) throw std::invalid_argument("region kernels need equal-length source and destination");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Ssse3: return "ssse3";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view text) {
  for (Isa isa : {Isa::Scalar, Isa::Ssse3, Isa::Avx2, Isa::Neon})
    if (text == isa_name(isa)) return isa;
  return std::nullopt;
}

bool isa_supported(Isa isa) { return cpu_has(isa); }

Isa best_isa() {
  for (Isa isa : {Isa::Avx2, Isa::Neon, Isa::Ssse3})
    if (cpu_has(isa)) return isa;
  return Isa::Scalar;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Ssse3, Isa::Avx2, Isa::Neon})
    if (cpu_has(isa)) out.push_back(isa);
  return out;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!cpu_has(isa)) throw std::invalid_argument(std::string("ISA not supported on this CPU: ") + std::string(isa_name(isa)));
  active().store(isa, std::memory_order_relaxed);
}

MulTable make_mul_table(const Algebra& alg, const Symbol& c) {
  if (alg.width() > kMaxKernelWidth)
    throw std::invalid_argument("region kernels support symbols of at most 16 bits; " + alg.describe() + " is wider");
  MulTable t;
  const std::uint64_t limit = std::uint64_t{1} << alg.width();
  for (unsigned q = 0; q < 4; ++q) {
    for (unsigned v = 0; v < 16; ++v) {
      const std::uint64_t input = std::uint64_t{v} << (4 * q);
      if (input >= limit) continue;  // never present in canonical symbols
      const std::uint64_t prod = alg.mul(c, alg.from_uint(input)).low();
      t.lo[q][v] = static_cast<std::uint8_t>(prod);
      t.hi[q][v] = static_cast<std::uint8_t>(prod >> 8);
    }
  }
  return t;
}

void mul_add_region(Isa isa, const MulTable& t, std::span<const std::uint16_t> src, std::span<std::uint16_t> dst) {
  check_sizes(src.size(), dst.size());
  switch (isa) {
    case Isa::Scalar:
      return scalar::mul_add(t, src.data(), dst.data(), src.size());
#if defined(PMDS_HAVE_X86_KERNELS)
    case Isa::Ssse3:
      if (cpu_has(isa)) return ssse3::mul_add(t, src.data(), dst.data(), src.size());
      break;
    case Isa::Avx2:
      if (cpu_has(isa)) return avx2::mul_add(t, src.data(), dst.data(), src.size());
      break;
#endif
#if defined(PMDS_HAVE_NEON_KERNELS)
    case Isa::Neon:
      return neon::mul_add(t, src.data(), dst.data(), src.size());
#endif
    default:
      break;
  }
  throw std::invalid_argument(std::string("ISA not supported on this CPU: ") + std::string(isa_name(isa)));
}

void xor_region(Isa isa, std::span<const std::uint16_t> src, std::span<std::uint16_t> dst) {
  check_sizes(src.size(), dst.size());
  switch (isa) {
    case Isa::Scalar:
      return scalar::xor_into(src.data(), dst.data(), src.size());
#if defined(PMDS_HAVE_X86_KERNELS)
    case Isa::Ssse3:
      if (cpu_has(isa)) return ssse3::xor_into(src.data(), dst.data(), src.size());
      break;
    case Isa::Avx2:
      if (cpu_has(isa)) return avx2::xor_into(src.data(), dst.data(), src.size());
      break;
#endif
#if defined(PMDS_HAVE_NEON_KERNELS)
    case Isa::Neon:
      return neon::xor_into(src.data(), dst.data(), src.size());
#endif
    default:
      break;
  }
  throw std::invalid_argument(std::string("ISA not supported on this CPU: ") + std::string(isa_name(isa)));
}

void mul_add_region(const MulTable& t, std::span<const std::uint16_t> src, std::span<std::uint16_t> dst) {
  mul_add_region(active_isa(), t, src, dst);
}

void xor_region(std::span<const std::uint16_t> src, std::span<std::uint16_t> dst) {
  xor_region(active_isa(), src, dst);
}

}  // namespace pmds::kernels
