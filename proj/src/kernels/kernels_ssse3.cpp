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

#include <tmmintrin.h>

#include "kernel_impl.hpp"

namespace pmds::kernels::ssse3 {

namespace {

inline __m128i load_table(const std::array<std::uint8_t, 16>& t) {
  return _mm_load_si128(reinterpret_cast<const __m128i*>(t.data()));
}

}  // namespace

void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  const __m128i lo0 = load_table(t.lo[0]), lo1 = load_table(t.lo[1]);
  const __m128i lo2 = load_table(t.lo[2]), lo3 = load_table(t.lo[3]);
  const __m128i hi0 = load_table(t.hi[0]), hi1 = load_table(t.hi[1]);
  const __m128i hi2 = load_table(t.hi[2]), hi3 = load_table(t.hi[3]);
  const __m128i nib = _mm_set1_epi8(0x0f);
  const __m128i low_byte = _mm_set1_epi16(0x00ff);

  std::size_t k = 0;
  for (; k + 16 <= count; k += 16) {
    const __m128i a = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + k));
    const __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + k + 8));
    const __m128i lo = _mm_packus_epi16(_mm_and_si128(a, low_byte), _mm_and_si128(b, low_byte));
    const __m128i hi = _mm_packus_epi16(_mm_srli_epi16(a, 8), _mm_srli_epi16(b, 8));

    const __m128i n0 = _mm_and_si128(lo, nib);
    const __m128i n1 = _mm_and_si128(_mm_srli_epi16(lo, 4), nib);
    const __m128i n2 = _mm_and_si128(hi, nib);
    const __m128i n3 = _mm_and_si128(_mm_srli_epi16(hi, 4), nib);

    const __m128i out_lo = _mm_xor_si128(_mm_xor_si128(_mm_shuffle_epi8(lo0, n0), _mm_shuffle_epi8(lo1, n1)),
                                         _mm_xor_si128(_mm_shuffle_epi8(lo2, n2), _mm_shuffle_epi8(lo3, n3)));
    const __m128i out_hi = _mm_xor_si128(_mm_xor_si128(_mm_shuffle_epi8(hi0, n0), _mm_shuffle_epi8(hi1, n1)),
                                         _mm_xor_si128(_mm_shuffle_epi8(hi2, n2), _mm_shuffle_epi8(hi3, n3)));

    __m128i* da = reinterpret_cast<__m128i*>(dst + k);
    __m128i* db = reinterpret_cast<__m128i*>(dst + k + 8);
    _mm_storeu_si128(da, _mm_xor_si128(_mm_loadu_si128(da), _mm_unpacklo_epi8(out_lo, out_hi)));
    _mm_storeu_si128(db, _mm_xor_si128(_mm_loadu_si128(db), _mm_unpackhi_epi8(out_lo, out_hi)));
  }
  scalar::mul_add(t, src + k, dst + k, count - k);
}

void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  std::size_t k = 0;
  for (; k + 8 <= count; k += 8) {
    __m128i* d = reinterpret_cast<__m128i*>(dst + k);
    const __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + k));
    _mm_storeu_si128(d, _mm_xor_si128(_mm_loadu_si128(d), s));
  }
  scalar::xor_into(src + k, dst + k, count - k);
}

}  // namespace pmds::kernels::ssse3
