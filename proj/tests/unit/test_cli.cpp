#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "edsm/msr.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + EDSM_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("edsm-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SynthThenIndicate) {
    ASSERT_EQ(run("synth --preset dirichlet-kite --small --quiet --out " + path("d")), 0);
    const fs::path msr = dir_ / "d" / "dirichlet-kite.msr";
    ASSERT_TRUE(fs::exists(msr));
    EXPECT_EQ(edsm::load_msr(msr).m(), 64);

    ASSERT_EQ(run("indicate --msr " + path("d/dirichlet-kite.msr") + " --kind ss --grid 21 --quiet --out " +
                  path("ind")),
              0);
    EXPECT_TRUE(fs::exists(dir_ / "ind" / "ss.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "ind" / "ss.pgm"));
    EXPECT_FALSE(fs::exists(dir_ / "ind" / "pp.csv"));

    ASSERT_EQ(run("noise --msr " + path("d/dirichlet-kite.msr") + " --delta 0.1 --seed 3 --quiet --out " +
                  path("n.msr")),
              0);
    const edsm::MSRMatrix noisy = edsm::load_msr(dir_ / "n.msr");
    EXPECT_EQ(noisy.meta.delta, 0.1);
    EXPECT_EQ(noisy.meta.seed, std::optional<std::uint64_t>(3));
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run("experiment no-such-preset"), 2);
    EXPECT_EQ(run("--version"), 0);
    EXPECT_EQ(run("presets"), 0);
    EXPECT_EQ(run("bogus-subcommand"), 2);
    EXPECT_EQ(run("indicate --msr " + path("missing.msr")), 4);

    std::ofstream(dir_ / "bad.yaml") << "scene: kite\nomgea: 3\n";
    EXPECT_EQ(run("experiment --config " + path("bad.yaml")), 2);

    std::ofstream(dir_ / "bad.msr") << "#version=MSR/9\n";
    EXPECT_EQ(run("indicate --msr " + path("bad.msr")), 4);
}
