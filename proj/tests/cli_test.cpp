#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qwbandit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(const std::string& args) {
    const std::string cmd = std::string(QWBANDIT_CLI_PATH) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, RunWritesMetricsAndIsThreadIndependent) {
  const auto cfg = write("cfg.json", R"({"model": "qw", "K": 12, "J": 150, "seed": 7})");
  ASSERT_EQ(run("run " + cfg.string() + " --threads 1 --output " + (dir_ / "a.csv").string()), 0);
  ASSERT_EQ(run("run " + cfg.string() + " --threads 8 --output " + (dir_ / "b.csv").string()), 0);
  const std::string a = slurp(dir_ / "a.csv");
  EXPECT_EQ(a.substr(0, 12), "j,M,rho,cdr\n");
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
  EXPECT_NE(slurp(dir_ / "stdout.txt").find("max_cdr="), std::string::npos);
}

TEST_F(CliTest, SweepWritesTable) {
  const auto spec = write("sweep.json", R"({"axis": "T", "values": [2, 4],
      "base": {"model": "rw", "K": 4, "J": 50, "output": ")" + (dir_ / "sweep.csv").string() + R"("}})");
  ASSERT_EQ(run("sweep " + spec.string()), 0);
  const std::string csv = slurp(dir_ / "sweep.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "axis,value,M_J,rho_J,max_cdr");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST_F(CliTest, TraceWritesPerRunFiles) {
  const auto cfg = write("cfg.json", R"({"model": "qw", "K": 3, "J": 20, "trace_runs": [2], "trace_decisions": [1, 20]})");
  ASSERT_EQ(run("trace " + cfg.string() + " --output " + (dir_ / "trace").string()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "trace" / "run2_decisions.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "trace" / "run2_dist.csv"));
}

TEST_F(CliTest, InvalidConfigExitsWithOne) {
  EXPECT_EQ(run("run " + write("bad.json", R"({"model": "qw", "bogus": 1})").string()), 1);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("bogus"), std::string::npos);
  EXPECT_EQ(run("run " + write("bad2.json", R"({"model": "rw", "c": 0.9})").string()), 1);
  EXPECT_EQ(run("run " + write("bad3.json", "{ not json").string()), 1);
  EXPECT_EQ(run("trace " + write("bad4.json", R"({"model": "qw", "K": 2, "J": 5})").string() + " --output x"), 1);
}

TEST_F(CliTest, UnwritableOutputExitsWithTwo) {
  const auto cfg = write("cfg.json", R"({"model": "rw", "K": 1, "J": 5})");
  EXPECT_EQ(run("run " + cfg.string() + " --output /nonexistent-dir/out.csv"), 2);
}

TEST_F(CliTest, VerifyPasses) {
  EXPECT_EQ(run("verify --max-n 5 --max-t 6 --fields 3"), 0);
  EXPECT_NE(slurp(dir_ / "stdout.txt").find("ok"), std::string::npos);
}
