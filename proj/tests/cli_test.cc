// Runs the kyp executable end to end. KYP_CLI_PATH is set by CMake.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "kyp/fixtures.hpp"
#include "kyp/io.hpp"
#include "test_util.h"

namespace kyp {
namespace {

using io::Json;

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kyp_cli_test_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  RunResult Run(const std::string& args) const {
    const std::string out_file = Path("stdout.txt");
    const std::string cmd = std::string(KYP_CLI_PATH) + " " + args + " > " +
                            out_file + " 2> " + Path("stderr.txt");
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
  }

  Json RunJson(const std::string& args, int expected_status) const {
    const RunResult r = Run(args);
    EXPECT_EQ(r.status, expected_status) << args << "\n" << r.out;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["exit_status"], expected_status);
    return j;
  }

  std::string Fixture(const std::string& kind, const std::string& extra = "") const {
    const std::string path = Path(kind + ".json");
    EXPECT_EQ(Run("fixture " + kind + " " + extra + " -o " + path).status, 0);
    return path;
  }

  static double Entry(const Json& m) { return m["entries"][0][0].get<double>(); }

  fs::path dir_;
};

TEST_F(CliTest, AnalyzeFixtureA) {
  const Json j = RunJson("analyze " + Fixture("FIX-A"), 0);
  EXPECT_TRUE(j["classification"]["conservative"].get<bool>());
  EXPECT_TRUE(j["classification"]["minimal"].get<bool>());
  EXPECT_NEAR(Entry(j["est1"]["lower"]), 1.0, 1e-12);
  EXPECT_NEAR(Entry(j["est1"]["x_min"]), 1.0, 1e-12);
  EXPECT_TRUE(j["UNIQ1"]["met"].get<bool>());
  EXPECT_TRUE(j.contains("defshort"));
}

TEST_F(CliTest, AnalyzeFixtureC) {
  const Json j = RunJson("analyze " + Fixture("FIX-C"), 0);
  EXPECT_TRUE(j["classification"]["passive"].get<bool>());
  EXPECT_TRUE(j["classification"]["minimal"].get<bool>());
  EXPECT_NEAR(Entry(j["est1"]["lower"]), 0.09, 1e-12);
  EXPECT_TRUE(j["nesopt"]["met"].get<bool>());
  EXPECT_FALSE(j["sufficient_optimality"]["met"].get<bool>());
}

TEST_F(CliTest, NonContractiveSystem) {
  const std::string path = Path("big.json");
  io::save_system(path, SystemRealization(BlockContraction::FromFull(
                            2.0 * identity(2), 1, 1)));
  for (const char* cmd : {"analyze ", "solve ", "moebius "}) {
    const Json j = RunJson(cmd + path, 2);
    EXPECT_NEAR(j["contractivity_margin"].get<double>(), -1.0, 1e-12);
  }
}

TEST_F(CliTest, SolveFixtureC) {
  const std::string rescaled = Path("t1.json");
  const Json j = RunJson("solve " + Fixture("FIX-C") + " --rescaled " + rescaled, 0);
  EXPECT_NEAR(Entry(j["X_min"]), 0.25, 1e-9);
  EXPECT_FALSE(j["optimality"]["optimal"].get<bool>());
  EXPECT_TRUE(j["optimality"]["star_optimal"].get<bool>());
  EXPECT_LT(j["rescaled_defect_H_norm"].get<double>(), 1e-8);
  const SystemRealization t1 = io::load_system(rescaled);
  EXPECT_NEAR(t1.B()(0, 0).real(), 0.3, 1e-9);
  EXPECT_NEAR(t1.C()(0, 0).real(), 0.6, 1e-9);
}

TEST_F(CliTest, SolveFixtureBLooseTolerance) {
  const Json j = RunJson("--fixpoint-tol 1e-3 solve " + Fixture("FIX-B"), 0);
  EXPECT_TRUE(j["trace"]["slow_convergence"].get<bool>());
  for (const auto& [name, r] : j["riccati_at_identity"].items()) {
    EXPECT_LT(r["residual"].get<double>(), 1e-12) << name;
  }
  EXPECT_EQ(j["tolerances"]["fixpoint_tol"], 1e-3);
}

TEST_F(CliTest, IterationCap) {
  const Json j = RunJson("--max-iter 5 solve " + Fixture("FIX-C"), 4);
  EXPECT_EQ(j["trace"]["iterations_used"], 5);
  EXPECT_FALSE(j["trace"]["converged"].get<bool>());
}

TEST_F(CliTest, Candidates) {
  const std::string sys = Fixture("FIX-C");
  const std::string cand = Path("x.json");
  io::write_json_file(cand, io::matrix_to_json(CMatrix::Constant(1, 1, 0.1)));
  const Json bad = RunJson("solve " + sys + " --candidate " + cand, 3);
  EXPECT_EQ(bad["kyp"]["forms"].size(), 8u);
  for (const auto& [name, f] : bad["kyp"]["forms"].items()) {
    EXPECT_LT(f["margin"].get<double>(), 0.0) << name;
  }

  io::write_json_file(cand, io::matrix_to_json(CMatrix::Constant(1, 1, 0.25)));
  EXPECT_TRUE(RunJson("solve " + sys + " --candidate " + cand, 0)["kyp"]["feasible"]
                  .get<bool>());

  io::write_json_file(cand, io::matrix_to_json(CMatrix::Constant(1, 1, 1.5)));
  RunJson("solve " + sys + " --candidate " + cand, 3);

  io::write_json_file(cand, io::matrix_to_json(identity(2)));
  EXPECT_EQ(Run("solve " + sys + " --candidate " + cand).status, 64);
}

TEST_F(CliTest, Moebius) {
  const std::string nu = Path("nu.json");
  const Json j = RunJson("--grid-points 16 moebius " + Fixture("FIX-B") + " --nu " + nu, 0);
  EXPECT_TRUE(j["identity_holds"].get<bool>());
  EXPECT_EQ(j["grid_points"], 16);
  EXPECT_NEAR(io::load_system(nu).A()(0, 0).real(), 0.5, 1e-12);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(Run("analyze " + Path("missing.json")).status, 64);
  const std::string broken = Path("broken.json");
  Json doc = io::system_to_json(fixture_c());
  doc["B"]["rows"] = 3;
  io::write_json_file(broken, doc);
  EXPECT_EQ(Run("analyze " + broken).status, 64);
  std::ifstream err(Path("stderr.txt"));
  std::stringstream ss;
  ss << err.rdbuf();
  EXPECT_NE(ss.str().find("B.entries"), std::string::npos) << ss.str();

  EXPECT_EQ(Run("frobnicate").status, 64);
  EXPECT_EQ(Run("--psd-tol -1 analyze " + Fixture("FIX-A")).status, 64);
  EXPECT_EQ(Run("fixture EX9").status, 64);
  EXPECT_EQ(Run("fixture EX2 --n-h 3 --n-m 2").status, 64);
}

TEST_F(CliTest, FixtureFiles) {
  const SystemRealization ex2 = io::load_system(Fixture("EX2", "--n-h 3 --n-m 4 --seed 5"));
  EXPECT_EQ(ex2.state_dim(), 3);
  EXPECT_EQ(ex2.input_dim(), 4);
  EXPECT_MATRIX_NEAR(ex2.T().full(), build_ex2(3, 0.5, 5, 4, 3).T().full(), 1e-15);
  const SystemRealization ex1 =
      io::load_system(Fixture("EX1", "--n-h 2 --alpha 0.25 --seed 3"));
  EXPECT_MATRIX_NEAR(ex1.T().full(), build_ex1(2, 0.25, 3).T().full(), 1e-15);
}

TEST_F(CliTest, ReportsAreDeterministic) {
  const std::string sys = Fixture("EX1", "--n-h 3 --alpha 0.25 --seed 11");
  for (const char* cmd : {"analyze ", "solve ", "moebius "}) {
    const RunResult a = Run(cmd + sys);
    const RunResult b = Run(cmd + sys);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out) << cmd;
  }
}

}  // namespace
}  // namespace kyp
