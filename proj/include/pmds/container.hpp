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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmds/codec.hpp"
#include "pmds/verifier.hpp"

namespace pmds {

// On-disk layout. Every device file starts with the same 36-byte header
// (little-endian integers) followed by stripe_count * m serialized symbols:
// column j of stripe 0 top to bottom, then stripe 1, and so on.
//
//   0  magic "PMDSAR1\0"     20  m (u16)
//   8  version (u16)          22  n (u16)
//  10  variant (u8)           24  stripe_count (u32)
//  11  algebra kind (u8)      28  payload_length (u64)
//  12  algebra param (u32)
//  16  modulus (u32)

inline constexpr std::array<char, 8> kMagic = {'P', 'M', 'D', 'S', 'A', 'R', '1', '\0'};
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 36;

struct ContainerHeader {
  Variant variant = Variant::SD_C0;
  AlgebraKind algebra_kind = AlgebraKind::Field;
  std::uint32_t algebra_param = 0;
  std::uint32_t modulus = 0;
  std::uint16_t m = 0;
  std::uint16_t n = 0;
  std::uint32_t stripe_count = 0;
  std::uint64_t payload_length = 0;

  static ContainerHeader for_params(const CodeParams& params, std::uint32_t stripes, std::uint64_t payload_length);

  std::array<std::uint8_t, kHeaderSize> encode() const;
  /// Throws FormatError: Truncated, BadMagic, BadVersion or BadParams.
  static ContainerHeader decode(std::span<const std::uint8_t> bytes);
  /// Throws FormatError(BadParams) when the fields do not name a valid code.
  CodeParams params() const;

  friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

std::filesystem::path device_path(const std::filesystem::path& dir, unsigned j);

/// Bytes of input carried by one stripe: floor(dimension * width / 8). Data
/// symbols are filled from a little-endian bit stream, bit k of symbol t being
/// stream bit t * width + k; bits past the payload are zero.
std::size_t stripe_payload_bytes(const CodeParams& params);

std::vector<Symbol> unpack_payload(std::span<const std::uint8_t> bytes, const Algebra& alg, std::size_t count);
/// Inverse of unpack_payload; bits beyond 8 * nbytes are dropped.
std::vector<std::uint8_t> pack_payload(std::span<const Symbol> symbols, const Algebra& alg, std::size_t nbytes);

/// Writes device_0.pmds .. device_{n-1}.pmds under `dir` (created if needed).
ContainerHeader shard(std::span<const std::uint8_t> input, const CodeParams& params, const std::filesystem::path& dir);

struct SidecarCell {
  std::uint32_t stripe = 0;
  unsigned row = 0;
  unsigned col = 0;
  friend auto operator<=>(const SidecarCell&, const SidecarCell&) = default;
};

/// Externally known erasures: `device,j` and `stripe,row,col` lines.
struct ErasureSidecar {
  std::vector<unsigned> devices;
  std::vector<SidecarCell> cells;

  /// Sorts and removes duplicates.
  void normalize();
  std::string to_text() const;
  /// Blank lines and `#` comments are skipped. Throws FormatError(BadParams).
  static ErasureSidecar parse(std::string_view text);
  static ErasureSidecar load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  friend bool operator==(const ErasureSidecar&, const ErasureSidecar&) = default;
};

/// A stripe whose erasures the decoder could not resolve.
class StripeDecodeFailure : public DecodeFailure {
 public:
  StripeDecodeFailure(DecodeFailureReason reason, std::uint32_t stripe, ErasurePattern pattern, const std::string& detail);

  std::uint32_t stripe() const noexcept { return stripe_; }
  const ErasurePattern& pattern() const noexcept { return pattern_; }

 private:
  std::uint32_t stripe_;
  ErasurePattern pattern_;
};

/// Header shared by the device files present in `dir`. Throws
/// FormatError(Io) when there are none and HeaderMismatch when they disagree.
ContainerHeader read_container_header(const std::filesystem::path& dir);

/// Missing device files count as erased devices. Throws StripeDecodeFailure,
/// FormatError, or std::out_of_range for sidecar entries outside the array.
std::vector<std::uint8_t> unshard(const std::filesystem::path& dir, const ErasureSidecar& erasures = {});

struct CorruptRequest {
  std::vector<unsigned> devices;
  std::vector<SidecarCell> cells;
  /// Number of distinct stripes that receive a random maximal pattern.
  std::uint32_t random_stripes = 0;
  Property profile = Property::SD;
  std::uint64_t seed = 0;
  /// Overwrite the referenced bytes with zeros.
  bool zero_fill = false;
};

/// Builds the sidecar for `request` against the container in `dir`. Throws
/// std::out_of_range for coordinates outside the container.
ErasureSidecar corrupt(const std::filesystem::path& dir, const CorruptRequest& request);

}  // namespace pmds
