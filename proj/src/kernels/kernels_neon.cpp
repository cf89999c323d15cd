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

#include <arm_neon.h>

#include "kernel_impl.hpp"

namespace pmds::kernels::neon {

void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  const uint8x16_t lo0 = vld1q_u8(t.lo[0].data()), lo1 = vld1q_u8(t.lo[1].data());
  const uint8x16_t lo2 = vld1q_u8(t.lo[2].data()), lo3 = vld1q_u8(t.lo[3].data());
  const uint8x16_t hi0 = vld1q_u8(t.hi[0].data()), hi1 = vld1q_u8(t.hi[1].data());
  const uint8x16_t hi2 = vld1q_u8(t.hi[2].data()), hi3 = vld1q_u8(t.hi[3].data());
  const uint8x16_t nib = vdupq_n_u8(0x0f);

  std::size_t k = 0;
  for (; k + 16 <= count; k += 16) {
    // val[0] holds the low bytes of 16 symbols, val[1] the high bytes.
    const uint8x16x2_t s = vld2q_u8(reinterpret_cast<const std::uint8_t*>(src + k));
    const uint8x16_t n0 = vandq_u8(s.val[0], nib), n1 = vshrq_n_u8(s.val[0], 4);
    const uint8x16_t n2 = vandq_u8(s.val[1], nib), n3 = vshrq_n_u8(s.val[1], 4);

    uint8x16x2_t d = vld2q_u8(reinterpret_cast<const std::uint8_t*>(dst + k));
    d.val[0] = veorq_u8(d.val[0], veorq_u8(veorq_u8(vqtbl1q_u8(lo0, n0), vqtbl1q_u8(lo1, n1)),
                                           veorq_u8(vqtbl1q_u8(lo2, n2), vqtbl1q_u8(lo3, n3))));
    d.val[1] = veorq_u8(d.val[1], veorq_u8(veorq_u8(vqtbl1q_u8(hi0, n0), vqtbl1q_u8(hi1, n1)),
                                           veorq_u8(vqtbl1q_u8(hi2, n2), vqtbl1q_u8(hi3, n3))));
    vst2q_u8(reinterpret_cast<std::uint8_t*>(dst + k), d);
  }
  scalar::mul_add(t, src + k, dst + k, count - k);
}

void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count) {
  std::size_t k = 0;
  for (; k + 8 <= count; k += 8) vst1q_u16(dst + k, veorq_u16(vld1q_u16(dst + k), vld1q_u16(src + k)));
  scalar::xor_into(src + k, dst + k, count - k);
}

}  // namespace pmds::kernels::neon
