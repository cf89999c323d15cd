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

#include <immintrin.h>

#include "kernel_impl.hpp"

namespace pmds::kernels::avx2 {

namespace {

inline __m256i broadcast_table(const std::array<std::uint8_t, 16>& t) {
  return _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(t.data())));
}

}  // namespace

void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  const __m256i lo0 = broadcast_table(t.lo[0]), lo1 = broadcast_table(t.lo[1]);
  const __m256i lo2 = broadcast_table(t.lo[2]), lo3 = broadcast_table(t.lo[3]);
  const __m256i hi0 = broadcast_table(t.hi[0]), hi1 = broadcast_table(t.hi[1]);
  const __m256i hi2 = broadcast_table(t.hi[2]), hi3 = broadcast_table(t.hi[3]);
  const __m256i nib = _mm256_set1_epi8(0x0f);
  const __m256i low_byte = _mm256_set1_epi16(0x00ff);

  std::size_t k = 0;
  for (; k + 32 <= count; k += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k + 16));
    // Per 128-bit lane: lo = [a.lo bytes | b.lo bytes], hi likewise.
    const __m256i lo = _mm256_packus_epi16(_mm256_and_si256(a, low_byte), _mm256_and_si256(b, low_byte));
    const __m256i hi = _mm256_packus_epi16(_mm256_srli_epi16(a, 8), _mm256_srli_epi16(b, 8));

    const __m256i n0 = _mm256_and_si256(lo, nib);
    const __m256i n1 = _mm256_and_si256(_mm256_srli_epi16(lo, 4), nib);
    const __m256i n2 = _mm256_and_si256(hi, nib);
    const __m256i n3 = _mm256_and_si256(_mm256_srli_epi16(hi, 4), nib);

    const __m256i out_lo = _mm256_xor_si256(
        _mm256_xor_si256(_mm256_shuffle_epi8(lo0, n0), _mm256_shuffle_epi8(lo1, n1)),
        _mm256_xor_si256(_mm256_shuffle_epi8(lo2, n2), _mm256_shuffle_epi8(lo3, n3)));
    const __m256i out_hi = _mm256_xor_si256(
        _mm256_xor_si256(_mm256_shuffle_epi8(hi0, n0), _mm256_shuffle_epi8(hi1, n1)),
        _mm256_xor_si256(_mm256_shuffle_epi8(hi2, n2), _mm256_shuffle_epi8(hi3, n3)));

    // Unpacking within lanes restores the a and b symbol orders exactly.
    const __m256i pa = _mm256_unpacklo_epi8(out_lo, out_hi);
    const __m256i pb = _mm256_unpackhi_epi8(out_lo, out_hi);
    __m256i* da = reinterpret_cast<__m256i*>(dst + k);
    __m256i* db = reinterpret_cast<__m256i*>(dst + k + 16);
    _mm256_storeu_si256(da, _mm256_xor_si256(_mm256_loadu_si256(da), pa));
    _mm256_storeu_si256(db, _mm256_xor_si256(_mm256_loadu_si256(db), pb));
  }
  scalar::mul_add(t, src + k, dst + k, count - k);
}

void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  std::size_t k = 0;
  for (; k + 16 <= count; k += 16) {
    __m256i* d = reinterpret_cast<__m256i*>(dst + k);
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    _mm256_storeu_si256(d, _mm256_xor_si256(_mm256_loadu_si256(d), s));
  }
  scalar::xor_into(src + k, dst + k, count - k);
}

}  // namespace pmds::kernels::avx2
