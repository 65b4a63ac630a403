#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct Output {
  int code = -1;
  std::string text;
};

Output run_cli(const std::string& args) {
  const std::string command = std::string(JRC_CLI_PATH) + " " + args + " 2>&1";
  Output out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 4096> buffer{};
  while (fgets(buffer.data(), static_cast<int>(buffer.size()), pipe) != nullptr) out.text += buffer.data();
  const int status = pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("jrc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, GenerateValidateOracleVerify) {
  ASSERT_EQ(run_cli("gen random --seed 3 --out " + path("tiny.json")).code, 0);
  const auto validate = run_cli("validate --instance " + path("tiny.json"));
  EXPECT_EQ(validate.code, 0) << validate.text;
  EXPECT_EQ(validate.text.rfind("ok:", 0), 0u);
  const auto oracle = run_cli("oracle --instance " + path("tiny.json") + " --out " + path("best.json"));
  ASSERT_EQ(oracle.code, 0) << oracle.text;
  EXPECT_EQ(oracle.text.rfind("optimal cost=", 0), 0u);
  const auto verify = run_cli("verify --instance " + path("tiny.json") + " --solution " + path("best.json"));
  EXPECT_EQ(verify.code, 0) << verify.text;
  EXPECT_EQ(verify.text.rfind("feasible cost=", 0), 0u);
}

TEST_F(Cli, SolveWritesSolutionAndTraceThatVerify) {
  ASSERT_EQ(run_cli("gen random --seed 1 --out " + path("tiny.json")).code, 0);
  const auto solve = run_cli("solve --instance " + path("tiny.json") + " --out-dir " + path("run") + " --iter-limit 200");
  ASSERT_TRUE(solve.code == 0 || solve.code == 3) << solve.text;
  EXPECT_TRUE(fs::exists(path("run/solution.json")));
  std::ifstream trace(path("run/trace.csv"));
  std::string header;
  std::getline(trace, header);
  EXPECT_EQ(header, "k,v,L_rho,H_l1,H_l2sq,alpha,q_max,q_bar,rho,best_feasible,event");
  if (solve.code == 0) {
    const auto verify = run_cli("verify --instance " + path("tiny.json") + " --solution " + path("run/solution.json"));
    EXPECT_EQ(verify.code, 0) << verify.text;
  }
}

TEST_F(Cli, InvalidInstanceAndUsageErrors) {
  {
    std::ofstream out(path("bad.json"));
    out << R"({"nodes": [{"id": 1, "kind": "depot"}]})";
  }
  EXPECT_EQ(run_cli("validate --instance " + path("bad.json")).code, 2);
  EXPECT_EQ(run_cli("validate --instance " + path("missing.json")).code, 2);
  EXPECT_EQ(run_cli("solve").code, 1);
  EXPECT_EQ(run_cli("solve --instance x.json --strategy admm").code, 1);
}

TEST_F(Cli, GeneratedExamplesValidate) {
  const std::string data = JRC_DATA_DIR;
  ASSERT_EQ(run_cli("gen example1 --travel " + data + "/example1_travel.json --out " + path("ex1.json")).code, 0);
  EXPECT_EQ(run_cli("validate --instance " + path("ex1.json")).code, 0);
  ASSERT_EQ(run_cli("gen example3 --topology " + data + "/example3_topology.json --scenario " + data +
                    "/example3_case3.json --out " + path("ex3.json"))
                .code,
            0);
  const auto v = run_cli("validate --instance " + path("ex3.json"));
  EXPECT_EQ(v.code, 0) << v.text;
  EXPECT_NE(v.text.find("50 trucks"), std::string::npos) << v.text;
  ASSERT_EQ(run_cli("validate --instance " + path("ex1.json") + " --mps " + path("ex1.mps")).code, 0);
  std::ifstream mps(path("ex1.mps"));
  std::stringstream text;
  text << mps.rdbuf();
  EXPECT_NE(text.str().find("ENDATA"), std::string::npos);
}

TEST_F(Cli, OracleSweepIsMonotoneInChargers) {
  ASSERT_EQ(run_cli("gen random --seed 4 --out " + path("tiny.json")).code, 0);
  const auto sweep = run_cli("sweep --instance " + path("tiny.json") +
                             " --parameter chargersPerNode --scales 1,2,3 --backend oracle --out-dir " + path("sw"));
  ASSERT_EQ(sweep.code, 0) << sweep.text;
  std::istringstream lines(sweep.text);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "scale,best_cost,trucks_used,wall_time_s,status");
  double previous = 1e300;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.find(",optimal") == std::string::npos) continue;
    const double cost = std::stod(line.substr(line.find(',') + 1));
    EXPECT_LE(cost, previous + 1e-9) << line;
    previous = cost;
    ++rows;
  }
  EXPECT_GE(rows, 2) << sweep.text;
}

}  // namespace
