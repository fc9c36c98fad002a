#include "commands.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lowdisc;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv(cli::kOutputDirEnv); }

  Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "lowdisc");
    std::vector<char*> argv;
    for (auto& a : args) {
      argv.push_back(a.data());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "lowdisc_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
  }

  static std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
};

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_F(CliTest, FibRep) {
  Result r = invoke({"fib-rep", "4"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("zeck: 101, positive: (2,1)"), std::string::npos);
  EXPECT_NE(r.out.find("P2@2 -> (2,1,0)"), std::string::npos);
  EXPECT_EQ(invoke({"fib-rep", "0"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"fib-rep", "x"}).code, cli::kUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"construct", "--format", "xml"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"construct", "--c", "1/0"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"construct", "--c", "-2"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"construct", "--sequence", "k +"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"experiment", "--nmax", "20", "--stages", "10"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, GeometricSequenceIsInadmissible) {
  Result r = invoke({"construct", "--sequence", "pow2"});
  EXPECT_EQ(r.code, cli::kInadmissible);
  EXPECT_NE(r.err.find("inadmissible"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, TooSmallConstantFailsConstruction) {
  Result r = invoke({"construct", "--stages", "30", "--c", "1/10"});
  EXPECT_EQ(r.code, cli::kConstructionFailed);
}

TEST_F(CliTest, ConstructJson) {
  Result r = invoke({"construct", "--stages", "20"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("sequence"), "factorial");
  EXPECT_EQ(j.at("stage"), 20);
  EXPECT_EQ(j.at("c"), "2/1");
  ASSERT_EQ(j.at("z").size(), 20u);
  EXPECT_EQ(j.at("z")[4], "77");
  const std::string alpha = j.at("alpha");
  EXPECT_EQ(alpha.rfind("0.", 0), 0u);
  EXPECT_GT(j.at("certified_digits").get<int>(), 15);
}

TEST_F(CliTest, ConstructCsv) {
  Result r = invoke({"construct", "--stages", "12", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.rfind("k,z,lo,hi\n", 0), 0u);
  EXPECT_EQ(count_lines(r.out), 13u);
}

TEST_F(CliTest, ExperimentCsvIsReproducible) {
  const auto path = scratch("series.csv");
  Result first = invoke({"experiment", "--nmax", "80", "--out", path.string()});
  ASSERT_EQ(first.code, cli::kOk) << first.err;
  const std::string a = slurp(path);
  Result second = invoke({"experiment", "--nmax", "80", "--out", path.string()});
  ASSERT_EQ(second.code, cli::kOk);
  EXPECT_EQ(a, slurp(path));
  EXPECT_EQ(count_lines(a), 81u);
  EXPECT_EQ(a.rfind("N,D_N,D_N_decimal,ln_N,ratio\n", 0), 0u);
}

TEST_F(CliTest, ExperimentJson) {
  Result r = invoke({"experiment", "--nmax", "40", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("rows").size(), 40u);
  EXPECT_FALSE(j.at("blocks").empty());
  EXPECT_TRUE(j.contains("max_ratio"));
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  const auto dir = scratch("envdir");
  std::filesystem::remove_all(dir);
  setenv(cli::kOutputDirEnv, dir.c_str(), 1);
  Result r = invoke({"construct", "--stages", "10"});
  unsetenv(cli::kOutputDirEnv);
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("wrote "), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "alpha_factorial_K10.json"));
}

TEST_F(CliTest, VerifyAndInjectedFault) {
  Result ok = invoke({"verify"});
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_NE(ok.out.find("all suites passed"), std::string::npos);
  Result bad = invoke({"verify", "--inject-fault"});
  EXPECT_EQ(bad.code, cli::kVerificationFailed);
  EXPECT_NE(bad.out.find("[FAIL] rewrite_safety"), std::string::npos);
}
