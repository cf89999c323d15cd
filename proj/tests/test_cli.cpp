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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cli_runner.hpp"

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pmds_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }

  std::string write_random(const std::string& name, std::size_t n) const {
    std::mt19937_64 rng(n);
    std::ofstream out(dir_ / name, std::ios::binary);
    for (std::size_t i = 0; i < n; ++i) out.put(static_cast<char>(rng()));
    return path(name);
  }

  bool same_file(const std::string& a, const std::string& b) const {
    std::ifstream fa(dir_ / a, std::ios::binary), fb(dir_ / b, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(fa), {}) == std::string(std::istreambuf_iterator<char>(fb), {});
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ShowExample) {
  const auto r = cli::run("show-example sd3x5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C0(3,5;gf2:4:0x13)"), std::string::npos);
  EXPECT_NE(r.out.find("1 a^14 a^13 a^12 a^11 a^10 a^9 a^8 a^7 a^6 a^5 a^4 a^3 a^2 a^1"), std::string::npos);
  EXPECT_EQ(cli::run("show-example ex2_1a").out, r.out);
  const auto ring = cli::run("show-example pmds2x4");
  EXPECT_EQ(cli::run("show-example ex2_3").out, ring.out);
  EXPECT_NE(ring.out.find("1 a^16 a^15 a^14"), std::string::npos);
  EXPECT_NE(ring.out.find("note:"), std::string::npos);
  EXPECT_EQ(cli::run("show-example ex9").code, 1);
}

TEST_F(CliTest, BuildRejectsOversizedCodes) {
  EXPECT_EQ(cli::run("build --variant sd --m 4 --n 4 --algebra ring:17").code, 0);
  EXPECT_EQ(cli::run("build --variant sd --m 4 --n 4 --algebra gf2:4").code, 1);
  EXPECT_EQ(cli::run("build --variant sd --m 4 --n 4 --algebra ring:18").code, 1);
  EXPECT_EQ(cli::run("build --m 4").code, 1);
}

TEST_F(CliTest, VerifyExitCodes) {
  auto r = cli::run("verify --variant sd --m 3 --n 5 --algebra gf2:4 --property sd");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("patterns: 330"), std::string::npos);
  EXPECT_NE(r.out.find("verdict: PASS"), std::string::npos);
  r = cli::run("verify --variant sd --m 4 --n 4 --algebra ring:17 --property pmds --jobs 2");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("FAIL 0,0;0,1;1,2;1,3;2,0;3,0"), std::string::npos);
  EXPECT_EQ(cli::run("verify --variant pmds --m 3 --n 5 --algebra gf2:7 --property pmds --budget 10").code, 3);
}

TEST_F(CliTest, Separator) {
  const auto r = cli::run("separator --m 4 --n 4 --algebra ring:17");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("0,0;0,1;1,2;1,3"), std::string::npos);
}

TEST_F(CliTest, ShardCorruptUnshard) {
  const std::string in = write_random("in.bin", 100'000);
  const std::string dev = path("dev");
  ASSERT_EQ(cli::run("shard --in " + in + " --out " + dev + " --variant sd --m 4 --n 4 --algebra ring:17").code, 0);
  fs::remove(dir_ / "dev" / "device_3.pmds");
  ASSERT_EQ(cli::run("corrupt --dir " + dev + " --cell 0,0,1 --cell 0,2,0 --cell 7,1,2 --cell 7,3,0").code, 0);
  ASSERT_EQ(cli::run("unshard --dir " + dev + " --erasures " + path("dev/erasures.txt") + " --out " + path("out.bin")).code, 0);
  EXPECT_TRUE(same_file("in.bin", "out.bin"));

  // Two more lost devices: too many erasures per row.
  ASSERT_EQ(cli::run("corrupt --dir " + dev + " --device 0 --device 1 --sidecar " + path("lost.txt")).code, 0);
  EXPECT_EQ(cli::run("unshard --dir " + dev + " --erasures " + path("lost.txt") + " --out " + path("bad.bin")).code, 2);
}

TEST_F(CliTest, RandomCorruptionAcrossIsas) {
  const std::string in = write_random("in.bin", 40'000);
  const std::string dev = path("dev");
  ASSERT_EQ(cli::run("shard --in " + in + " --out " + dev + " --variant pmds --m 2 --n 4 --algebra ring:17").code, 0);
  ASSERT_EQ(cli::run("corrupt --dir " + dev + " --random 200 --per-stripe-profile pmds --seed 4 --zero-fill").code, 0);
  for (const char* isa : {"scalar", "ssse3", "avx2", "neon"}) {
    const auto r = cli::run(std::string("--isa ") + isa + " unshard --dir " + dev + " --erasures " + path("dev/erasures.txt") +
                            " --out " + path("out.bin"));
    if (r.code == 1) continue;  // not available on this CPU
    ASSERT_EQ(r.code, 0) << isa;
    EXPECT_TRUE(same_file("in.bin", "out.bin")) << isa;
  }
}

TEST_F(CliTest, MissingDirectoryIsAnIoError) {
  EXPECT_EQ(cli::run("unshard --dir " + path("nowhere") + " --out " + path("x.bin")).code, 3);
}
