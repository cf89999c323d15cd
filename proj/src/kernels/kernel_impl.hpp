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

#include <cstddef>
#include <cstdint>

#include "pmds/kernels.hpp"

// Per-ISA entry points. Each vector variant handles whole blocks and finishes
// the tail with the scalar routine.
namespace pmds::kernels {

namespace scalar {
void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
}  // namespace scalar

#if defined(PMDS_HAVE_X86_KERNELS)
namespace ssse3 {
void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
}  // namespace ssse3

namespace avx2 {
void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
}  // namespace avx2
#endif

#if defined(PMDS_HAVE_NEON_KERNELS)
namespace neon {
void mul_add(const MulTable& t, const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
void xor_into(const std::uint16_t* src, std::uint16_t* dst, std::size_t count);
}  // namespace neon
#endif

}  // namespace pmds::kernels
