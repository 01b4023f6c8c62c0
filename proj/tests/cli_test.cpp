#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardy/cli.hpp"

using namespace hardy;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("hardy_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliGenTree, ThreeHomogeneousDepthFour) {
  auto r = run({"gen-tree", "--homogeneous", "3", "--depth", "4"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto t = io::tree_from_string(r.out);
  EXPECT_EQ(std::vector<std::uint64_t>(t.level_sizes().begin(), t.level_sizes().end()),
            (std::vector<std::uint64_t>{1, 3, 6, 12, 24}));
}

TEST(CliGenTree, TwoHomogeneousAndOutFile) {
  TempDir dir;
  auto r = run({"gen-tree", "--homogeneous", "2", "--depth", "2", "--out", dir.path("t.txt")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(io::tree_from_string(slurp(dir.path("t.txt"))).vertex_count(), 5u);
}

TEST(CliGenTree, BadDegreeIsUsageError) {
  auto r = run({"gen-tree", "--homogeneous", "1", "--depth", "2"});
  EXPECT_EQ(r.status, cli::exit_usage);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliUsage, MissingOrUnknownArguments) {
  EXPECT_EQ(run({}).status, cli::exit_usage);
  EXPECT_EQ(run({"frobnicate"}).status, cli::exit_usage);
  EXPECT_EQ(run({"gen-tree", "--homogeneous", "3"}).status, cli::exit_usage);
  EXPECT_EQ(run({"norm", "--homogeneous", "3", "--depth", "2"}).status, cli::exit_usage);
  EXPECT_EQ(run({"norm", "--homogeneous", "3", "--depth", "2", "--gen", "constant,1", "--p", "0"}).status,
            cli::exit_usage);
  EXPECT_EQ(run({"witness", "--homogeneous", "3", "--depth", "2", "--gen", "constant,1"}).status, cli::exit_usage);
  EXPECT_EQ(run({"--help"}).status, cli::exit_ok);
}

TEST(CliNorm, PointMassIsExact) {
  TempDir dir;
  auto f = dir.write("f.txt", "func v1\n2 3 1 0\n");
  auto r = run({"norm", "--homogeneous", "3", "--depth", "4", "--func", f, "--p", "1", "--machine"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto doc = report::parse(r.out);
  EXPECT_NEAR(doc["norm"].get<double>(), 1.0 / 6.0, 1e-16);
  EXPECT_EQ(doc["exactness"], "exact");
}

TEST(CliNorm, ConstantIsTruncated) {
  auto r = run({"norm", "--homogeneous", "3", "--depth", "4", "--gen", "constant,1", "--p", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("norm = 1 (truncated at depth 4"), std::string::npos) << r.out;
}

TEST(CliNorm, MalformedLineNamesLine) {
  TempDir dir;
  auto f = dir.write("f.txt", "func v1\n0 0 1 0\n1 2 oops 0\n");
  auto r = run({"norm", "--homogeneous", "3", "--depth", "2", "--func", f, "--p", "1"});
  EXPECT_EQ(r.status, cli::exit_file);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(CliNorm, MissingFileIsFileError) {
  auto r = run({"norm", "--tree", "/nonexistent/tree.txt", "--gen", "constant,1"});
  EXPECT_EQ(r.status, cli::exit_file);
}

TEST(CliNorm, TreeFileIsRead) {
  TempDir dir;
  auto t = dir.write("t.txt", "tree v1\ndepth 1\nlevel 1: 0 0\n");
  auto r = run({"norm", "--tree", t, "--gen", "level-decay", "--p", "inf", "--machine"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report::parse(r.out)["level_means"], report::json::parse("[1.0, 0.5]"));
}

TEST(CliAnalyze, ConstantTwoEqual) {
  auto r = run({"analyze", "--homogeneous", "3", "--depth", "5", "--gen", "constant,2", "--p", "2", "--q", "2",
                "--trials", "20", "--machine"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto doc = report::parse(r.out);
  EXPECT_EQ(doc["case"], "EQUAL");
  EXPECT_DOUBLE_EQ(doc["b_sup"].get<double>(), 2.0);
  EXPECT_NEAR(doc["empirical"]["best_ratio"].get<double>(), 2.0, 1e-14);
  EXPECT_EQ(doc["compactness"]["verdict"], "not-compact-evidence");
  EXPECT_DOUBLE_EQ(doc["compactness"]["tail_max"].get<double>(), 2.0);
  EXPECT_EQ(doc["isometry"]["verdict"], "not-isometry");
  EXPECT_EQ(doc["invertibility"]["verdict"], "invertible-evidence");
  EXPECT_DOUBLE_EQ(doc["invertibility"]["m"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(doc["invertibility"]["M"].get<double>(), 2.0);
}

TEST(CliAnalyze, FinitelySupportedDown) {
  TempDir dir;
  auto f = dir.write("psi.txt", "func v1\n1 0 3 0\n2 4 0 1\n");
  auto r = run({"analyze", "--homogeneous", "3", "--depth", "4", "--symbol", f, "--p", "2", "--q", "1",
                "--trials", "20", "--machine"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto doc = report::parse(r.out);
  EXPECT_EQ(doc["case"], "DOWN");
  EXPECT_EQ(doc["compactness"]["verdict"], "compact-exact");
  EXPECT_EQ(doc["exactness"], "exact");
  // max(M_2(1) = sqrt 3, M_2(2) = 6^(-1/2))
  EXPECT_NEAR(doc["b_sup"].get<double>(), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(doc["argmax_level"], 1);
}

TEST(CliAnalyze, MixedExponentsOnGrowingTree) {
  auto r = run({"analyze", "--homogeneous", "3", "--depth", "6", "--gen", "constant,1", "--p", "1", "--q", "2",
                "--trials", "10"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("isometry: impossible-by-theorem (case 4)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("invertibility: impossible-by-theorem"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("never-onto"), std::string::npos) << r.out;
}

TEST(CliAnalyze, ZeroTrialsOrWindowIsUsageError) {
  EXPECT_EQ(run({"analyze", "--homogeneous", "3", "--depth", "3", "--gen", "constant,1", "--trials", "0"}).status,
            cli::exit_usage);
  EXPECT_EQ(run({"analyze", "--homogeneous", "3", "--depth", "3", "--gen", "constant,1", "--window", "0"}).status,
            cli::exit_usage);
  EXPECT_EQ(run({"analyze", "--homogeneous", "3", "--depth", "3", "--gen", "constant,1", "--distribution", "x"})
                .status,
            cli::exit_usage);
}

TEST(CliAnalyze, MachineOutputIsDeterministicAndRoundTrips) {
  const std::vector<std::string> args{"analyze", "--homogeneous", "3", "--depth", "5", "--gen", "random,3",
                                      "--p", "3", "--q", "1.5", "--seed", "42", "--trials", "50", "--machine"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(report::serialize(report::parse(a.out)), a.out);
}

TEST(CliWitness, DownLevelOne) {
  TempDir dir;
  auto psi = dir.write("psi.txt", "func v1\n1 0 3 0\n");
  auto r = run({"witness", "--homogeneous", "3", "--depth", "3", "--symbol", psi, "--p", "2", "--q", "1", "--level",
                "1", "--machine"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto doc = report::parse(r.out);
  EXPECT_NEAR(doc["b_n"].get<double>(), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(doc["ratio"].get<double>(), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(doc["values"].size(), 1u);

  auto deg = run({"witness", "--homogeneous", "3", "--depth", "3", "--symbol", psi, "--p", "2", "--q", "1",
                  "--level", "2", "--machine"});
  ASSERT_EQ(deg.status, 0) << deg.err;
  EXPECT_EQ(report::parse(deg.out)["degenerate"], true);

  EXPECT_EQ(run({"witness", "--homogeneous", "3", "--depth", "3", "--symbol", psi, "--level", "4"}).status,
            cli::exit_usage);
}

TEST(CliWitness, OutFileIsAFunctionFile) {
  TempDir dir;
  auto r = run({"witness", "--homogeneous", "3", "--depth", "3", "--gen", "level-decay", "--p", "1", "--q", "inf",
                "--level", "2", "--out", dir.path("w.txt")});
  ASSERT_EQ(r.status, 0) << r.err;
  auto tree = std::make_shared<const RootedTree>(build_homogeneous(3, 3));
  auto f = io::function_from_string(slurp(dir.path("w.txt")), tree);
  EXPECT_NEAR(std::abs(f({2, 0})), 6.0, 1e-15);
}

TEST(CliCheck, PassesAndFailsWhenCorrupted) {
  auto ok = run({"check", "--homogeneous", "3", "--depth", "4", "--trials", "40", "--machine"});
  EXPECT_EQ(ok.status, cli::exit_ok) << ok.out;
  EXPECT_EQ(report::parse(ok.out)["verdict"], "pass");

  auto bad = run({"check", "--homogeneous", "3", "--depth", "4", "--trials", "40", "--corrupt"});
  EXPECT_EQ(bad.status, cli::exit_suite_failure);
  EXPECT_NE(bad.out.find("FAIL witness-equality"), std::string::npos) << bad.out;

  EXPECT_EQ(run({"check", "--trials", "0"}).status, cli::exit_usage);
}
