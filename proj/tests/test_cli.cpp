#include <gtest/gtest.h>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "tightpovm/io.hpp"

namespace fs = std::filesystem;
using tightpovm::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tightpovm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tightpovm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tightpovm_cli_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ConstructSic) {
  const auto r = run({"construct", "sic", "2", "--out", path("sic2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("outcomes=4"), std::string::npos);
  EXPECT_NE(r.out.find("ic=true"), std::string::npos);
  const auto j = tightpovm::io::read_json_file(path("sic2.json"));
  EXPECT_EQ(j.at("elements").size(), 4u);
  EXPECT_EQ(j.at("meta").at("version"), TIGHTPOVM_VERSION);
}

TEST_F(CliTest, ConstructMubAndNonPrime) {
  auto r = run({"construct", "mub", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("elements").size(), 12u);
  r = run({"construct", "mub", "4"});
  EXPECT_EQ(r.code, tightpovm::cli::kBadArguments);
  EXPECT_NE(r.err.find("p must be prime"), std::string::npos);
}

TEST_F(CliTest, ConstructRandomNeedsN) {
  EXPECT_EQ(run({"construct", "random", "2"}).code, tightpovm::cli::kBadArguments);
  EXPECT_EQ(run({"construct", "random", "2", "--n", "6", "--seed", "3"}).code, 0);
  EXPECT_EQ(run({"construct", "spiral", "2"}).code, tightpovm::cli::kBadArguments);
}

TEST_F(CliTest, VerifySicFile) {
  ASSERT_EQ(run({"construct", "sic", "2", "--out", path("sic2.json")}).code, 0);
  const auto r = run({"verify", path("sic2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("tightness").at("is_rank_one_tight").get<bool>());
  EXPECT_NEAR(j.at("tightness").at("a").get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(j.at("tightness").at("trace_inverse").get<double>(), 10.0, 1e-9);
  EXPECT_TRUE(j.at("design_equivalence").at("certificates_agree").get<bool>());
}

TEST_F(CliTest, VerifyBasisIsNotIc) {
  ASSERT_EQ(run({"construct", "basis", "2", "--out", path("basis2.json")}).code, 0);
  const auto r = run({"verify", path("basis2.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(json::parse(r.out).at("ic").at("is_ic").get<bool>());
}

TEST_F(CliTest, VerifyMalformedFileExitsTwo) {
  std::ofstream(path("malformed.json")) << "{\"dim\": 2, \"elements\": [";
  const auto r = run({"verify", path("malformed.json")});
  EXPECT_EQ(r.code, tightpovm::cli::kIoError);
  EXPECT_NE(r.err.find("line"), std::string::npos);
  EXPECT_EQ(run({"verify", path("missing.json")}).code, tightpovm::cli::kIoError);
}

TEST_F(CliTest, UnknownFlagsAreRejected) {
  EXPECT_EQ(run({"verify", "sic:2", "--frobnicate"}).code, tightpovm::cli::kBadArguments);
  EXPECT_EQ(run({}).code, tightpovm::cli::kBadArguments);
  EXPECT_EQ(run({"--format", "xml", "verify", "sic:2"}).code, tightpovm::cli::kBadArguments);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, SearchWritesCertifiedDesign) {
  const auto r = run({"search", "2", "4", "--seed", "7", "--out", path("d.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = json::parse(r.out);
  EXPECT_TRUE(summary.at("certified").get<bool>());
  EXPECT_LT(summary.at("report").at("gap").get<double>(), 1e-8);
  const auto design = tightpovm::io::design_from_json(tightpovm::io::read_json_file(path("d.json")));
  EXPECT_EQ(design.size(), 4u);
}

TEST_F(CliTest, TomoSicSummaryAndCsv) {
  const auto r = run({"tomo", "--povm", "sic:2", "--N", "100", "--trials", "10000", "--seed", "1", "--format", "csv",
                      "--out", path("stats.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const double mean = j.at("mean").get<double>();
  const double se = j.at("stderr").get<double>();
  EXPECT_NEAR(j.at("predicted").get<double>(), 0.04, 1e-12);
  EXPECT_NEAR(mean, 0.04, 4 * se);
  std::ifstream csv(path("stats.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("# tool=tightpovm", 0), 0u);
  std::getline(csv, line);
  std::getline(csv, line);
  EXPECT_EQ(line, "# seed=1");
  std::getline(csv, line);
  EXPECT_EQ(line, "trial,sq_error");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 10000);
}

TEST_F(CliTest, TomoNeedsIc) {
  const auto r = run({"tomo", "--povm", "basis:2", "--trials", "5"});
  EXPECT_EQ(r.code, tightpovm::cli::kDomainFailure);
}

TEST_F(CliTest, CloneMub) {
  const auto r = run({"clone", "--povm", "mub:2", "--seed", "2", "--out", path("report.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = tightpovm::io::read_json_file(path("report.json"));
  EXPECT_NEAR(j.at("f_av").get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(j.at("variance").get<double>(), 0.0, 1e-10);
  EXPECT_EQ(j.at("meta").at("seed").get<int>(), 2);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRunsAndThreadCounts) {
  const int saved = omp_get_max_threads();
  std::vector<std::string> outputs;
  for (int threads : {1, 4, 1}) {
    omp_set_num_threads(threads);
    const std::string tag = std::to_string(outputs.size());
    const auto t = run({"tomo", "--povm", "mub:3", "--trials", "700", "--seed", "9", "--format", "csv", "--out",
                        path("t" + tag + ".csv")});
    const auto c = run({"clone", "--povm", "random:2:6:4", "--seed", "9", "--samples", "300"});
    const auto s = run({"search", "2", "6", "--seed", "9", "--restarts", "3"});
    ASSERT_EQ(t.code, 0);
    ASSERT_EQ(c.code, 0);
    ASSERT_EQ(s.code, 0);
    outputs.push_back(t.out + slurp(path("t" + tag + ".csv")) + c.out + s.out);
  }
  omp_set_num_threads(saved);
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(outputs[0], outputs[2]);
}
