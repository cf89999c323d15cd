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

#include "pmds/container.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "pmds/batch_codec.hpp"

namespace pmds {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kBatchStripes = 4096;

template <class T>
void put_le(std::uint8_t* p, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) p[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i));
}

template <class T>
T get_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return static_cast<T>(v);
}

// Up to 57 bits starting at stream bit `pos`; bytes past the end read as zero.
std::uint64_t read_bits(std::span<const std::uint8_t> bytes, std::size_t pos, unsigned nbits) {
  const std::size_t first = pos / 8;
  const unsigned shift = pos % 8;
  std::uint64_t v = 0;
  for (unsigned i = 0; 8 * i < nbits + shift; ++i)
    if (first + i < bytes.size()) v |= std::uint64_t{bytes[first + i]} << (8 * i);
  v >>= shift;
  return nbits == 64 ? v : v & ((std::uint64_t{1} << nbits) - 1);
}

// ORs `nbits` (<= 57) bits into the stream; bits past the end are dropped.
void write_bits(std::span<std::uint8_t> bytes, std::size_t pos, unsigned nbits, std::uint64_t v) {
  const std::size_t first = pos / 8;
  const unsigned shift = pos % 8;
  v <<= shift;
  for (unsigned i = 0; 8 * i < nbits + shift; ++i)
    if (first + i < bytes.size()) bytes[first + i] |= static_cast<std::uint8_t>(v >> (8 * i));
}

Symbol read_symbol_bits(std::span<const std::uint8_t> bytes, std::size_t pos, const Algebra& alg) {
  std::array<std::uint64_t, Symbol::kWords> w{};
  for (unsigned done = 0; done < alg.width();) {
    const unsigned take = std::min(48u, alg.width() - done);
    const std::uint64_t chunk = read_bits(bytes, pos + done, take);
    w[done / 64] |= chunk << (done % 64);
    if (done % 64 + take > 64) w[done / 64 + 1] |= chunk >> (64 - done % 64);
    done += take;
  }
  return alg.from_words(w);
}

void write_symbol_bits(std::span<std::uint8_t> bytes, std::size_t pos, const Algebra& alg, const Symbol& s) {
  for (unsigned done = 0; done < alg.width();) {
    const unsigned take = std::min(48u, alg.width() - done);
    std::uint64_t chunk = s.word(done / 64) >> (done % 64);
    if (done % 64 + take > 64) chunk |= s.word(done / 64 + 1) << (64 - done % 64);
    chunk &= (std::uint64_t{1} << take) - 1;
    write_bits(bytes, pos + done, take, chunk);
    done += take;
  }
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatErrorKind::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::optional<unsigned> device_index(const fs::path& file) {
  const std::string name = file.filename().string();
  constexpr std::string_view prefix = "device_", suffix = ".pmds";
  if (name.size() <= prefix.size() + suffix.size() || !name.starts_with(prefix) || !name.ends_with(suffix))
    return std::nullopt;
  const std::string_view digits(name.data() + prefix.size(), name.size() - prefix.size() - suffix.size());
  unsigned j = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), j);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return j;
}

// Device files present in `dir`, keyed by column index.
std::map<unsigned, fs::path> scan_devices(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw FormatError(FormatErrorKind::Io, "not a directory: " + dir.string());
  std::map<unsigned, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file())
      if (auto j = device_index(entry.path())) out.emplace(*j, entry.path());
  if (out.empty()) throw FormatError(FormatErrorKind::Io, "no device files in " + dir.string());
  return out;
}

std::size_t device_file_size(const ContainerHeader& h, const CodeParams& params) {
  return kHeaderSize + std::size_t{h.stripe_count} * params.m * params.algebra.symbol_bytes();
}

std::uint64_t parse_uint(std::string_view text, std::string_view line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError(FormatErrorKind::BadParams, "bad sidecar line: " + std::string(line));
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void check_request(const ContainerHeader& h, const std::vector<unsigned>& devices, const std::vector<SidecarCell>& cells) {
  for (unsigned j : devices)
    if (j >= h.n) throw std::out_of_range("device " + std::to_string(j) + " outside 0.." + std::to_string(h.n - 1));
  for (const SidecarCell& c : cells)
    if (c.stripe >= h.stripe_count || c.row >= h.m || c.col >= h.n)
      throw std::out_of_range("cell " + std::to_string(c.stripe) + "," + std::to_string(c.row) + "," + std::to_string(c.col) +
                              " outside " + std::to_string(h.stripe_count) + " stripes of " + std::to_string(h.m) + "x" +
                              std::to_string(h.n));
}

}  // namespace

// ---------------------------------------------------------------------------
// Header

ContainerHeader ContainerHeader::for_params(const CodeParams& params, std::uint32_t stripes, std::uint64_t payload_length) {
  ContainerHeader h;
  const AlgebraSpec& spec = params.algebra.spec();
  h.variant = params.variant;
  h.algebra_kind = spec.kind;
  h.algebra_param = spec.param;
  h.modulus = spec.kind == AlgebraKind::Field ? spec.modulus : 0;
  if (params.m > 0xffff || params.n > 0xffff) throw ParameterViolation("m and n must fit in 16 bits");
  h.m = static_cast<std::uint16_t>(params.m);
  h.n = static_cast<std::uint16_t>(params.n);
  h.stripe_count = stripes;
  h.payload_length = payload_length;
  return h;
}

std::array<std::uint8_t, kHeaderSize> ContainerHeader::encode() const {
  std::array<std::uint8_t, kHeaderSize> b{};
  std::memcpy(b.data(), kMagic.data(), kMagic.size());
  put_le<std::uint16_t>(&b[8], kFormatVersion);
  b[10] = static_cast<std::uint8_t>(variant);
  b[11] = static_cast<std::uint8_t>(algebra_kind);
  put_le(&b[12], algebra_param);
  put_le(&b[16], modulus);
  put_le(&b[20], m);
  put_le(&b[22], n);
  put_le(&b[24], stripe_count);
  put_le(&b[28], payload_length);
  return b;
}

ContainerHeader ContainerHeader::decode(std::span<const std::uint8_t> b) {
  if (b.size() < kHeaderSize) throw FormatError(FormatErrorKind::Truncated, "container header truncated");
  if (std::memcmp(b.data(), kMagic.data(), kMagic.size()) != 0) throw FormatError(FormatErrorKind::BadMagic, "bad magic");
  if (const auto v = get_le<std::uint16_t>(&b[8]); v != kFormatVersion)
    throw FormatError(FormatErrorKind::BadVersion, "unsupported container version " + std::to_string(v));
  if (b[10] > 1) throw FormatError(FormatErrorKind::BadParams, "bad variant byte " + std::to_string(b[10]));
  if (b[11] > 1) throw FormatError(FormatErrorKind::BadParams, "bad algebra kind byte " + std::to_string(b[11]));
  ContainerHeader h;
  h.variant = static_cast<Variant>(b[10]);
  h.algebra_kind = static_cast<AlgebraKind>(b[11]);
  h.algebra_param = get_le<std::uint32_t>(&b[12]);
  h.modulus = get_le<std::uint32_t>(&b[16]);
  h.m = get_le<std::uint16_t>(&b[20]);
  h.n = get_le<std::uint16_t>(&b[22]);
  h.stripe_count = get_le<std::uint32_t>(&b[24]);
  h.payload_length = get_le<std::uint64_t>(&b[28]);
  (void)h.params();
  if (h.payload_length > std::uint64_t{h.stripe_count} * stripe_payload_bytes(h.params()))
    throw FormatError(FormatErrorKind::BadParams, "payload length exceeds stripe capacity");
  return h;
}

CodeParams ContainerHeader::params() const {
  try {
    if (algebra_kind == AlgebraKind::Ring && modulus != 0) throw InvalidAlgebra("ring headers carry modulus 0");
    if (algebra_kind == AlgebraKind::Field && modulus == 0) throw InvalidAlgebra("field headers carry the modulus");
    const AlgebraSpec spec = algebra_kind == AlgebraKind::Field ? AlgebraSpec::field(algebra_param, modulus)
                                                                : AlgebraSpec::ring(algebra_param);
    CodeParams p{m, n, variant, Algebra(spec)};
    validate(p);
    (void)parity_positions(p);
    return p;
  } catch (const Error& e) {
    throw FormatError(FormatErrorKind::BadParams, std::string("header parameters: ") + e.what());
  }
}

fs::path device_path(const fs::path& dir, unsigned j) { return dir / ("device_" + std::to_string(j) + ".pmds"); }

std::size_t stripe_payload_bytes(const CodeParams& params) {
  return params.dimension() * params.algebra.width() / 8;
}

std::vector<Symbol> unpack_payload(std::span<const std::uint8_t> bytes, const Algebra& alg, std::size_t count) {
  std::vector<Symbol> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) out.push_back(read_symbol_bits(bytes, t * alg.width(), alg));
  return out;
}

std::vector<std::uint8_t> pack_payload(std::span<const Symbol> symbols, const Algebra& alg, std::size_t nbytes) {
  std::vector<std::uint8_t> out(nbytes, 0);
  for (std::size_t t = 0; t < symbols.size(); ++t) {
    if (!alg.owns(symbols[t])) throw AlgebraMismatch("pack_payload: symbol from another algebra");
    write_symbol_bits(out, t * alg.width(), alg, symbols[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shard

ContainerHeader shard(std::span<const std::uint8_t> input, const CodeParams& params, const fs::path& dir) {
  validate(params);
  const std::vector<Cell> data_cells = data_positions(params);
  const ErasurePattern parity = parity_positions(params);
  const std::size_t payload = stripe_payload_bytes(params);
  if (payload == 0) throw ParameterViolation("a stripe of " + params.describe() + " carries less than one byte");
  const std::uint64_t stripes64 = (input.size() + payload - 1) / payload;
  if (stripes64 > 0xffffffffu) throw ParameterViolation("input needs more than 2^32 - 1 stripes");
  const auto stripes = static_cast<std::uint32_t>(stripes64);

  const ContainerHeader header = ContainerHeader::for_params(params, stripes, input.size());
  const auto header_bytes = header.encode();

  std::error_code ec;
  fs::create_directories(dir, ec);
  std::vector<std::ofstream> out;
  for (unsigned j = 0; j < params.n; ++j) {
    out.emplace_back(device_path(dir, j), std::ios::binary | std::ios::trunc);
    if (!out.back()) throw FormatError(FormatErrorKind::Io, "cannot write " + device_path(dir, j).string());
    out.back().write(reinterpret_cast<const char*>(header_bytes.data()), header_bytes.size());
  }

  const Algebra& alg = params.algebra;
  const std::size_t sym_bytes = alg.symbol_bytes();
  const unsigned w = alg.width();
  auto stripe_bytes = [&](std::uint64_t s) {
    const std::size_t begin = s * payload;
    return input.subspan(begin, std::min<std::size_t>(payload, input.size() - begin));
  };

  std::vector<char> buf;
  if (w <= kernels::kMaxKernelWidth) {
    const LinearRecovery parity_map = LinearRecovery::derive(params, parity);
    for (std::uint64_t base = 0; base < stripes; base += kBatchStripes) {
      const std::size_t count = std::min<std::uint64_t>(kBatchStripes, stripes - base);
      StripeBatch batch(params, count);
      for (std::size_t t = 0; t < count; ++t) {
        const auto bytes = stripe_bytes(base + t);
        for (std::size_t k = 0; k < data_cells.size(); ++k)
          batch.cell(data_cells[k].row, data_cells[k].col)[t] = static_cast<std::uint16_t>(read_bits(bytes, k * w, w));
      }
      parity_map.apply(batch);
      buf.assign(count * params.m * sym_bytes, 0);
      for (unsigned j = 0; j < params.n; ++j) {
        char* p = buf.data();
        for (std::size_t t = 0; t < count; ++t)
          for (unsigned r = 0; r < params.m; ++r) {
            const std::uint16_t v = batch.cell(r, j)[t];
            *p++ = static_cast<char>(v);
            if (sym_bytes == 2) *p++ = static_cast<char>(v >> 8);
          }
        out[j].write(buf.data(), static_cast<std::streamsize>(buf.size()));
      }
    }
  } else {
    buf.resize(sym_bytes);
    std::vector<std::vector<char>> columns(params.n);
    for (std::uint64_t s = 0; s < stripes; ++s) {
      const StripeArray arr = encode(unpack_payload(stripe_bytes(s), alg, data_cells.size()), params);
      for (unsigned j = 0; j < params.n; ++j)
        for (unsigned r = 0; r < params.m; ++r) {
          alg.serialize(arr.at(r, j), std::span(reinterpret_cast<std::uint8_t*>(buf.data()), sym_bytes));
          out[j].write(buf.data(), static_cast<std::streamsize>(sym_bytes));
        }
    }
  }

  for (unsigned j = 0; j < params.n; ++j) {
    out[j].close();
    if (!out[j]) throw FormatError(FormatErrorKind::Io, "write failed: " + device_path(dir, j).string());
  }
  return header;
}

// ---------------------------------------------------------------------------
// Sidecar

void ErasureSidecar::normalize() {
  std::sort(devices.begin(), devices.end());
  devices.erase(std::unique(devices.begin(), devices.end()), devices.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

std::string ErasureSidecar::to_text() const {
  std::ostringstream os;
  for (unsigned j : devices) os << "device," << j << '\n';
  for (const SidecarCell& c : cells) os << c.stripe << ',' << c.row << ',' << c.col << '\n';
  return os.str();
}

ErasureSidecar ErasureSidecar::parse(std::string_view text) {
  ErasureSidecar out;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() == 2 && fields[0] == "device") {
      const auto j = parse_uint(fields[1], line);
      if (j > 0xffff) throw FormatError(FormatErrorKind::BadParams, "bad sidecar line: " + std::string(line));
      out.devices.push_back(static_cast<unsigned>(j));
    } else if (fields.size() == 3) {
      const auto s = parse_uint(fields[0], line), r = parse_uint(fields[1], line), c = parse_uint(fields[2], line);
      if (s > 0xffffffffu || r > 0xffff || c > 0xffff)
        throw FormatError(FormatErrorKind::BadParams, "bad sidecar line: " + std::string(line));
      out.cells.push_back({static_cast<std::uint32_t>(s), static_cast<unsigned>(r), static_cast<unsigned>(c)});
    } else {
      throw FormatError(FormatErrorKind::BadParams, "bad sidecar line: " + std::string(line));
    }
  }
  out.normalize();
  return out;
}

ErasureSidecar ErasureSidecar::load(const fs::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  return parse(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void ErasureSidecar::save(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << to_text();
  out.close();
  if (!out) throw FormatError(FormatErrorKind::Io, "cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// Unshard

StripeDecodeFailure::StripeDecodeFailure(DecodeFailureReason reason, std::uint32_t stripe, ErasurePattern pattern,
                                         const std::string& detail)
    : DecodeFailure(reason, "stripe " + std::to_string(stripe) + ": cannot recover pattern " + pattern.to_string() + " (" +
                                detail + ")"),
      stripe_(stripe),
      pattern_(std::move(pattern)) {}

ContainerHeader read_container_header(const fs::path& dir) {
  std::optional<ContainerHeader> first;
  for (const auto& [j, path] : scan_devices(dir)) {
    std::ifstream in(path, std::ios::binary);
    std::array<std::uint8_t, kHeaderSize> b{};
    in.read(reinterpret_cast<char*>(b.data()), b.size());
    const auto got = static_cast<std::size_t>(in.gcount());
    const ContainerHeader h = ContainerHeader::decode(std::span(b).first(got));
    if (!first) first = h;
    else if (!(h == *first))
      throw FormatError(FormatErrorKind::HeaderMismatch, "header of " + path.filename().string() + " differs");
  }
  return *first;
}

std::vector<std::uint8_t> unshard(const fs::path& dir, const ErasureSidecar& erasures) {
  const std::map<unsigned, fs::path> present = scan_devices(dir);
  const ContainerHeader header = read_container_header(dir);
  const CodeParams params = header.params();
  check_request(header, erasures.devices, erasures.cells);

  const Algebra& alg = params.algebra;
  const std::size_t sym_bytes = alg.symbol_bytes();
  const std::size_t file_size = device_file_size(header, params);

  std::vector<std::vector<std::uint8_t>> files(params.n);
  std::vector<bool> lost(params.n, true);
  for (const auto& [j, path] : present) {
    if (j >= params.n) throw FormatError(FormatErrorKind::HeaderMismatch, path.filename().string() + " is beyond column n-1");
    files[j] = read_file(path);
    if (files[j].size() != file_size)
      throw FormatError(FormatErrorKind::Truncated, path.filename().string() + " has " + std::to_string(files[j].size()) +
                                                        " bytes, expected " + std::to_string(file_size));
    lost[j] = false;
  }
  for (unsigned j : erasures.devices) lost[j] = true;

  std::vector<Cell> device_cells;
  for (unsigned j = 0; j < params.n; ++j)
    if (lost[j])
      for (unsigned r = 0; r < params.m; ++r) device_cells.push_back({r, j});

  // Group stripes by erasure pattern so each pattern's recovery map is built once.
  std::map<ErasurePattern, std::vector<std::uint32_t>> groups;
  {
    std::map<std::uint32_t, std::vector<Cell>> extra;
    for (const SidecarCell& c : erasures.cells) extra[c.stripe].push_back({c.row, c.col});
    const ErasurePattern base(device_cells);
    std::vector<std::uint32_t>& plain = groups[base];
    auto it = extra.begin();
    for (std::uint32_t s = 0; s < header.stripe_count; ++s) {
      if (it != extra.end() && it->first == s) {
        std::vector<Cell> cells = device_cells;
        for (const Cell& c : it->second)
          if (!lost[c.col]) cells.push_back(c);
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        groups[ErasurePattern(std::move(cells))].push_back(s);
        ++it;
      } else {
        plain.push_back(s);
      }
    }
  }

  const std::size_t payload = stripe_payload_bytes(params);
  const std::vector<Cell> data_cells = data_positions(params);
  std::vector<std::uint8_t> output(std::size_t{header.stripe_count} * payload, 0);
  const unsigned w = alg.width();

  auto symbol_at = [&](std::uint32_t s, unsigned r, unsigned j) {
    return std::span<const std::uint8_t>(files[j]).subspan(kHeaderSize + (std::size_t{s} * params.m + r) * sym_bytes, sym_bytes);
  };

  for (const auto& [pattern, stripes] : groups) {
    if (stripes.empty()) continue;
    std::optional<LinearRecovery> map;
    if (!pattern.empty()) {
      try {
        map = LinearRecovery::derive(params, pattern);
      } catch (const DecodeFailure& e) {
        throw StripeDecodeFailure(e.reason(), stripes.front(), pattern, e.what());
      }
    }

    if (w <= kernels::kMaxKernelWidth) {
      for (std::size_t base = 0; base < stripes.size(); base += kBatchStripes) {
        const std::size_t count = std::min(kBatchStripes, stripes.size() - base);
        StripeBatch batch(params, count);
        for (std::size_t t = 0; t < count; ++t)
          for (unsigned r = 0; r < params.m; ++r)
            for (unsigned j = 0; j < params.n; ++j) {
              if (pattern.contains({r, j})) continue;
              batch.cell(r, j)[t] = static_cast<std::uint16_t>(alg.deserialize(symbol_at(stripes[base + t], r, j)).low());
            }
        if (map) map->apply(batch);
        for (std::size_t t = 0; t < count; ++t) {
          const std::span<std::uint8_t> dst = std::span(output).subspan(std::size_t{stripes[base + t]} * payload, payload);
          for (std::size_t k = 0; k < data_cells.size(); ++k)
            write_bits(dst, k * w, w, batch.cell(data_cells[k].row, data_cells[k].col)[t]);
        }
      }
    } else {
      for (std::uint32_t s : stripes) {
        StripeArray arr(params);
        for (unsigned r = 0; r < params.m; ++r)
          for (unsigned j = 0; j < params.n; ++j)
            if (!pattern.contains({r, j})) arr.set(r, j, alg.deserialize(symbol_at(s, r, j)));
        arr.erase(pattern);
        StripeArray full = arr;
        if (!pattern.empty()) {
          try {
            full = decode(arr);
          } catch (const DecodeFailure& e) {
            throw StripeDecodeFailure(e.reason(), s, pattern, e.what());
          }
        }
        const std::span<std::uint8_t> dst = std::span(output).subspan(std::size_t{s} * payload, payload);
        for (std::size_t k = 0; k < data_cells.size(); ++k)
          write_symbol_bits(dst, k * w, alg, full.at(data_cells[k].row, data_cells[k].col));
      }
    }
  }

  output.resize(header.payload_length);
  return output;
}

// ---------------------------------------------------------------------------
// Corrupt

ErasureSidecar corrupt(const fs::path& dir, const CorruptRequest& request) {
  const ContainerHeader header = read_container_header(dir);
  const CodeParams params = header.params();
  check_request(header, request.devices, request.cells);

  ErasureSidecar out;
  out.devices = request.devices;
  out.cells = request.cells;

  if (request.random_stripes > 0 && header.stripe_count > 0) {
    const PatternEnumerator patterns(request.profile, params.m, params.n);
    std::mt19937_64 rng(request.seed);
    const std::uint32_t k = std::min(request.random_stripes, header.stripe_count);
    std::set<std::uint32_t> chosen;
    while (chosen.size() < k) chosen.insert(static_cast<std::uint32_t>(rng() % header.stripe_count));
    for (std::uint32_t s : chosen) {
      const ErasurePattern p = patterns.at(rng() % patterns.count());
      for (const Cell& c : p.cells()) out.cells.push_back({s, c.row, c.col});
    }
  }
  out.normalize();

  if (request.zero_fill) {
    const std::size_t sym_bytes = params.algebra.symbol_bytes();
    const std::size_t file_size = device_file_size(header, params);
    const std::vector<char> zeros(file_size - kHeaderSize, 0);
    for (unsigned j : out.devices) {
      const fs::path path = device_path(dir, j);
      if (!fs::exists(path)) continue;
      std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
      f.seekp(static_cast<std::streamoff>(kHeaderSize));
      f.write(zeros.data(), static_cast<std::streamsize>(zeros.size()));
      if (!f) throw FormatError(FormatErrorKind::Io, "cannot zero-fill " + path.string());
    }
    for (const SidecarCell& c : out.cells) {
      const fs::path path = device_path(dir, c.col);
      if (!fs::exists(path)) continue;
      std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
      f.seekp(static_cast<std::streamoff>(kHeaderSize + (std::size_t{c.stripe} * params.m + c.row) * sym_bytes));
      f.write(zeros.data(), static_cast<std::streamsize>(sym_bytes));
      if (!f) throw FormatError(FormatErrorKind::Io, "cannot zero-fill " + path.string());
    }
  }
  return out;
}

}  // namespace pmds
