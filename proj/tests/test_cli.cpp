#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "urb/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("urb_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result invoke(const std::string& args) const {
    const std::string out_file = path("stdout.txt");
    const std::string cmd = "URB_LOG=quiet " + std::string(URB_BINARY) + " " + args + " > " + out_file + " 2> " +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = urb::io::read_file(out_file);
    return r;
  }

  void write(const std::string& name, const std::string& content) const { urb::io::write_file(path(name), content); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ConstructT1TwoStages) {
  ASSERT_EQ(invoke("construct t1 --stages 2 --out " + path("a.json")).code, 0);
  const auto set = urb::io::parse_set(urb::io::read_file(path("a.json")));
  EXPECT_EQ(set, (urb::IntSet{-25, -5, -1, 1, 6, 24}));
  EXPECT_TRUE(fs::exists(path("a.json.manifest.json")));
  const auto j = urb::io::json::parse(urb::io::read_file(path("a.json")));
  EXPECT_EQ(j["manifest"]["tool_version"], "0.1.0");
  EXPECT_EQ(j["manifest"]["parameters"]["stages"], "2");
  EXPECT_FALSE(j["manifest"].contains("timestamp"));
  const auto side = urb::io::json::parse(urb::io::read_file(path("a.json.manifest.json")));
  EXPECT_TRUE(side.contains("timestamp"));
}

TEST_F(Cli, MissingStagesIsUsageError) {
  EXPECT_EQ(invoke("construct t1").code, 2);
  EXPECT_EQ(invoke("construct t1 --stages zero").code, 2);
  EXPECT_EQ(invoke("frobnicate").code, 2);
}

TEST_F(Cli, ConstructT2OneRound) {
  ASSERT_EQ(invoke("construct t2 --rounds 1 --epsilon 1/10 --out " + path("b.json")).code, 0);
  const auto j = urb::io::json::parse(urb::io::read_file(path("b.json")));
  EXPECT_EQ(j["x_ladder"].size(), 2u);
  EXPECT_EQ(j["epsilon"], "1/10");
  EXPECT_EQ(invoke("construct t2 --rounds 1 --epsilon 3/4").code, 2);
  EXPECT_EQ(invoke("construct t2 --rounds 1 --epsilon 1/10 --max-q 50").code, 3);
}

TEST_F(Cli, VerifyRoundTrip) {
  ASSERT_EQ(invoke("construct t1 --stages 6 --out " + path("a.json")).code, 0);
  EXPECT_EQ(invoke("verify --input " + path("a.json") + " --unique-up-to 5").code, 0);
  EXPECT_EQ(invoke("verify --input " + path("a.json") + " --unique-up-to 500").code, 1);
}

TEST_F(Cli, VerifyCounterexample) {
  write("s.txt", "0\n1\n2\n");
  const Result r = invoke("verify --input " + path("s.txt") + " --unique-up-to 2");
  EXPECT_EQ(r.code, 1);
  const auto j = urb::io::json::parse(r.out);
  EXPECT_EQ(j["unique_up_to"]["result"]["n"], "2");
}

TEST_F(Cli, VerifyBadInput) {
  write("bad.json", "[1, 2");
  EXPECT_EQ(invoke("verify --input " + path("bad.json") + " --sidon").code, 2);
  EXPECT_EQ(invoke("verify --input " + path("missing.json")).code, 2);
}

TEST_F(Cli, SidonMethods) {
  const Result bose = invoke("sidon --method bose --param 101");
  ASSERT_EQ(bose.code, 0);
  EXPECT_EQ(urb::io::json::parse(bose.out)["cardinality"], 101);
  EXPECT_EQ(invoke("sidon --method bose --param 100").code, 2);
  EXPECT_EQ(invoke("sidon --method erdos-turan --param 11").code, 0);
  EXPECT_EQ(invoke("sidon --method nope --param 11").code, 2);
  ASSERT_EQ(invoke("sidon --method greedy --param 30 --out " + path("mc.json")).code, 0);
  EXPECT_EQ(invoke("verify --input " + path("mc.json") + " --sidon").code, 0);
  EXPECT_EQ(invoke("sidon --method interval --param 100 --target 0.85").code, 0);
  EXPECT_EQ(invoke("sidon --method interval --param 100 --target 2").code, 3);
}

TEST_F(Cli, AnalyzeBlocks) {
  ASSERT_EQ(invoke("construct t1 --stages 2 --out " + path("a.json")).code, 0);
  const Result r = invoke("analyze blocks --input " + path("a.json") + " --n 10");
  ASSERT_EQ(r.code, 0);
  const auto j = urb::io::json::parse(r.out);
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_EQ(j["inequalities"][4]["lhs"], "20");
  EXPECT_EQ(invoke("analyze blocks --input " + path("a.json") + " --n 10 --format text").code, 0);
  EXPECT_EQ(invoke("analyze blocks --input " + path("a.json") + " --n 0").code, 2);
}

TEST_F(Cli, AnalyzeGrowthWithCsv) {
  ASSERT_EQ(invoke("construct t1 --stages 8 --out " + path("a.json")).code, 0);
  const Result r =
      invoke("analyze growth --input " + path("a.json") + " --grid log:1:100000:20 --probe-n 30 --csv " + path("g.csv"));
  ASSERT_EQ(r.code, 0);
  const auto j = urb::io::json::parse(r.out);
  EXPECT_EQ(j["samples"].size(), 20u);
  EXPECT_EQ(j["liminf_probe"]["label"], "finite-prefix surrogate");
  std::ifstream csv(path("g.csv"));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "x,count,count_over_cbrt_x,count_over_sqrt_x,sqrt_8x_slack");
  EXPECT_EQ(invoke("analyze growth --input " + path("a.json") + " --grid lin:1:2:3").code, 2);
}

TEST_F(Cli, DeterministicPayload) {
  ASSERT_EQ(invoke("construct t1 --stages 7 --out " + path("x.json")).code, 0);
  ASSERT_EQ(invoke("construct t1 --stages 7 --out " + path("y.json")).code, 0);
  auto a = urb::io::json::parse(urb::io::read_file(path("x.json")));
  auto b = urb::io::json::parse(urb::io::read_file(path("y.json")));
  a.erase("manifest");
  b.erase("manifest");
  EXPECT_EQ(a.dump(), b.dump());
}
