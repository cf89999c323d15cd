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

// pmds: build, inspect and exercise SD/PMDS array codes from the command line.
//
// Exit codes: 0 success, 1 usage or invalid parameters, 2 decode or
// verification failure, 3 budget, inconclusive result or I/O problem.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "pmds/builtin_examples.hpp"
#include "pmds/construction.hpp"
#include "pmds/container.hpp"
#include "pmds/kernels.hpp"
#include "pmds/verifier.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kFailure = 2, kResource = 3 };

struct CodeArgs {
  std::string variant = "sd";
  unsigned m = 0;
  unsigned n = 0;
  std::string algebra;

  void attach(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "sd (C0) or pmds (C1)")->check(CLI::IsMember({"sd", "pmds"}));
    cmd->add_option("--m", m, "rows per stripe")->required();
    cmd->add_option("--n", n, "devices")->required();
    cmd->add_option("--algebra", algebra, "gf2:B[:modulus-hex] or ring:P")->required();
  }

  pmds::CodeParams params() const {
    pmds::CodeParams p{m, n, pmds::parse_variant(variant), pmds::Algebra(pmds::AlgebraSpec::parse(algebra))};
    pmds::validate(p);
    return p;
  }
};

pmds::SidecarCell parse_cell(const std::string& text) {
  const pmds::ErasureSidecar one = pmds::ErasureSidecar::parse(text);
  if (one.cells.size() != 1 || !one.devices.empty()) throw CLI::ValidationError("--cell", "expected S,R,C: " + text);
  return one.cells.front();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SD and PMDS array codes: construction, sharding, erasure recovery and exhaustive verification"};
  app.require_subcommand(1);

  std::string isa;
  app.add_option("--isa", isa, "region kernel: scalar, ssse3, avx2 or neon (default: best available)");

  CodeArgs build_args;
  CLI::App* build = app.add_subcommand("build", "print the parity-check matrix of a code");
  build_args.attach(build);

  std::string example;
  CLI::App* show = app.add_subcommand("show-example", "print a built-in example matrix");
  show->add_option("name", example, "sd3x5, sd5x3, sd4x4 or pmds2x4 (ex2_1a, ex2_1b, ex2_2, ex2_3 also accepted)")->required();

  CodeArgs shard_args;
  std::string shard_in, shard_out;
  CLI::App* shard = app.add_subcommand("shard", "encode a file into n device files");
  shard->add_option("--in", shard_in, "input file")->required()->check(CLI::ExistingFile);
  shard->add_option("--out", shard_out, "output directory")->required();
  shard_args.attach(shard);

  std::string unshard_dir, unshard_erasures, unshard_out;
  CLI::App* unshard = app.add_subcommand("unshard", "recover the original file from device files");
  unshard->add_option("--dir", unshard_dir, "device directory")->required();
  unshard->add_option("--erasures", unshard_erasures, "erasure sidecar");
  unshard->add_option("--out", unshard_out, "output file")->required();

  std::string corrupt_dir, corrupt_sidecar, corrupt_profile = "sd";
  std::vector<unsigned> corrupt_devices;
  std::vector<std::string> corrupt_cells;
  std::uint32_t corrupt_random = 0;
  std::uint64_t corrupt_seed = 0;
  bool corrupt_zero = false;
  CLI::App* corrupt = app.add_subcommand("corrupt", "mark cells or devices as erased and write a sidecar");
  corrupt->add_option("--dir", corrupt_dir, "device directory")->required();
  corrupt->add_option("--device", corrupt_devices, "erase whole device J");
  corrupt->add_option("--cell", corrupt_cells, "erase one cell, as stripe,row,col");
  CLI::Option* random_opt = corrupt->add_option("--random", corrupt_random, "erase a random maximal pattern in K stripes");
  corrupt->add_option("--per-stripe-profile", corrupt_profile, "pattern family for --random")
      ->check(CLI::IsMember({"sd", "pmds"}))
      ->needs(random_opt);
  corrupt->add_option("--seed", corrupt_seed, "seed for --random");
  corrupt->add_flag("--zero-fill", corrupt_zero, "overwrite the erased bytes with zeros");
  corrupt->add_option("--sidecar", corrupt_sidecar, "sidecar path (default DIR/erasures.txt)");

  CodeArgs verify_args;
  std::string verify_property = "sd", verify_mode = "rank";
  pmds::VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "exhaustively check the SD or PMDS property");
  verify_args.attach(verify);
  verify->add_option("--property", verify_property, "sd or pmds")->check(CLI::IsMember({"sd", "pmds"}));
  verify->add_option("--mode", verify_mode, "rank or decode")->check(CLI::IsMember({"rank", "decode"}));
  verify->add_option("--budget", verify_opts.budget, "maximum number of patterns");
  verify->add_option("--jobs", verify_opts.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_opts.seed, "codeword seed for --mode decode");

  CodeArgs sep_args;
  CLI::App* separator = app.add_subcommand("separator", "search a C0 code for a PMDS pattern it cannot correct");
  sep_args.attach(separator);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!isa.empty()) {
      const auto parsed = pmds::kernels::parse_isa(isa);
      if (!parsed) {
        std::cerr << "unknown ISA: " << isa << "\n";
        return kUsage;
      }
      pmds::kernels::set_active_isa(*parsed);
    }

    if (*build) {
      const pmds::CodeParams p = build_args.params();
      std::cout << p.describe() << "\n" << pmds::build_parity_check(p).to_text();
      return kOk;
    }

    if (*show) {
      const auto e = pmds::parse_example(example);
      if (!e) {
        std::cerr << "unknown example: " << example << " (try sd3x5, sd5x3, sd4x4, pmds2x4)\n";
        return kUsage;
      }
      std::cout << pmds::show_example(*e);
      return kOk;
    }

    if (*shard) {
      const pmds::CodeParams p = shard_args.params();
      std::ifstream in(shard_in, std::ios::binary);
      const std::vector<std::uint8_t> data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
      if (!in && !in.eof()) throw pmds::FormatError(pmds::FormatErrorKind::Io, "cannot read " + shard_in);
      const pmds::ContainerHeader h = pmds::shard(data, p, shard_out);
      std::cout << "sharded " << h.payload_length << " bytes into " << h.stripe_count << " stripes of " << p.describe()
                << " under " << shard_out << "\n";
      return kOk;
    }

    if (*unshard) {
      const pmds::ErasureSidecar sidecar =
          unshard_erasures.empty() ? pmds::ErasureSidecar{} : pmds::ErasureSidecar::load(unshard_erasures);
      const std::vector<std::uint8_t> data = pmds::unshard(unshard_dir, sidecar);
      std::ofstream out(unshard_out, std::ios::binary | std::ios::trunc);
      out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
      out.close();
      if (!out) throw pmds::FormatError(pmds::FormatErrorKind::Io, "cannot write " + unshard_out);
      std::cout << "recovered " << data.size() << " bytes into " << unshard_out << "\n";
      return kOk;
    }

    if (*corrupt) {
      pmds::CorruptRequest req;
      req.devices = corrupt_devices;
      for (const std::string& c : corrupt_cells) req.cells.push_back(parse_cell(c));
      req.random_stripes = corrupt_random;
      req.profile = pmds::parse_property(corrupt_profile);
      req.seed = corrupt_seed;
      req.zero_fill = corrupt_zero;
      if (req.devices.empty() && req.cells.empty() && req.random_stripes == 0) {
        std::cerr << "corrupt: give --device, --cell or --random\n";
        return kUsage;
      }
      const pmds::ErasureSidecar sidecar = pmds::corrupt(corrupt_dir, req);
      const std::string path = corrupt_sidecar.empty() ? (std::filesystem::path(corrupt_dir) / "erasures.txt").string()
                                                       : corrupt_sidecar;
      sidecar.save(path);
      std::cout << "wrote " << sidecar.devices.size() << " device and " << sidecar.cells.size() << " cell erasures to "
                << path << "\n";
      return kOk;
    }

    if (*verify) {
      const pmds::CodeParams p = verify_args.params();
      const pmds::VerificationReport report =
          pmds::verify(p, pmds::parse_property(verify_property), pmds::parse_mode(verify_mode), verify_opts);
      std::cout << report.to_text();
      switch (report.verdict()) {
        case pmds::Verdict::Pass: return kOk;
        case pmds::Verdict::Fail: return kFailure;
        case pmds::Verdict::Inconclusive: return kResource;
      }
    }

    if (*separator) {
      const pmds::CodeParams p = sep_args.params();
      if (const auto found = pmds::find_sd_pmds_separator(p)) {
        std::cout << "found " << found->to_string() << "\n";
        return kFailure;
      }
      std::cout << "none\n";
      return kOk;
    }
  } catch (const pmds::DecodeFailure& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return kFailure;
  } catch (const pmds::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const pmds::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kResource;
  } catch (const pmds::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kResource;
  }
  return kUsage;
}
