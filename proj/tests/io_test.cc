#include "kyp/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "kyp/fixtures.hpp"
#include "test_util.h"

namespace kyp::io {
namespace {

using ::kyp::testing::Real;

const Tolerances kTol;

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("kyp_io_test_" + name)).string();
}

void ExpectInputError(const Json& j, const std::string& fragment) {
  try {
    system_from_json(j);
    ADD_FAILURE() << "expected InputError mentioning " << fragment;
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(MatrixJsonTest, Roundtrip) {
  CMatrix m(2, 3);
  m << Complex(1, 2), Complex(0.5, 0), Complex(0, -1), Complex(1e-17, 3),
      Complex(-2, 0.25), Complex(0.1, 0.2);
  const Json j = matrix_to_json(m);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 3);
  EXPECT_EQ(j["entries"].size(), 6u);
  EXPECT_EQ(j["entries"][0][1], 2.0);
  EXPECT_MATRIX_NEAR(matrix_from_json(Json::parse(j.dump()), "M"), m, 0.0);
}

TEST(MatrixJsonTest, AcceptsBareReals) {
  const Json j = Json::parse(R"({"rows": 1, "cols": 2, "entries": [0.5, [1, 2]]})");
  const CMatrix m = matrix_from_json(j, "M");
  EXPECT_EQ(m(0, 0), Complex(0.5, 0));
  EXPECT_EQ(m(0, 1), Complex(1, 2));
}

TEST(MatrixJsonTest, Errors) {
  EXPECT_THROW(matrix_from_json(Json::parse("[1, 2]"), "M"), InputError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1})"), "M"),
               InputError);
  EXPECT_THROW(
      matrix_from_json(Json::parse(R"({"rows": 1, "cols": 2, "entries": [[1, 0]]})"), "M"),
      InputError);
  EXPECT_THROW(
      matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "entries": [[1, 0, 0]]})"), "M"),
      InputError);
  EXPECT_THROW(
      matrix_from_json(Json::parse(R"({"rows": -1, "cols": 1, "entries": []})"), "M"),
      InputError);
}

TEST(SystemJsonTest, Roundtrip) {
  Rng rng(1);
  const SystemRealization sys = random_passive_system(3, 2, 1, rng);
  const Json j = system_to_json(sys);
  EXPECT_EQ(j["state_dim"], 3);
  EXPECT_EQ(j["input_dim"], 2);
  EXPECT_EQ(j["output_dim"], 1);
  const SystemRealization back = system_from_json(Json::parse(j.dump()));
  EXPECT_MATRIX_NEAR(back.T().full(), sys.T().full(), 0.0);
}

TEST(SystemJsonTest, ErrorsNameTheField) {
  Json j = system_to_json(fixture_c());
  Json missing = j;
  missing.erase("B");
  ExpectInputError(missing, "'B'");

  Json wrong_rows = j;
  wrong_rows["C"] = matrix_to_json(Real({{1}, {2}}));
  ExpectInputError(wrong_rows, "C.rows");

  Json wrong_dim = j;
  wrong_dim["state_dim"] = "one";
  ExpectInputError(wrong_dim, "state_dim");

  Json bad_entry = j;
  bad_entry["D"]["entries"][0] = "x";
  ExpectInputError(bad_entry, "D.entries[0]");

  Json no_rows = j;
  no_rows["A"].erase("rows");
  ExpectInputError(no_rows, "A.rows");
}

TEST(FileTest, SaveLoadAndCandidates) {
  const std::string path = TempPath("sys.json");
  save_system(path, fixture_b());
  EXPECT_MATRIX_NEAR(load_system(path).T().full(), fixture_b().T().full(), 0.0);

  const std::string cand = TempPath("x.json");
  write_json_file(cand, Json{{"X", matrix_to_json(CMatrix::Constant(1, 1, 0.25))}});
  EXPECT_EQ(load_candidate(cand, 1)(0, 0), Complex(0.25, 0));
  write_json_file(cand, matrix_to_json(CMatrix::Constant(1, 1, 0.5)));
  EXPECT_EQ(load_candidate(cand, 1)(0, 0), Complex(0.5, 0));
  EXPECT_THROW(load_candidate(cand, 2), InputError);

  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(load_system(path), InputError);
  EXPECT_THROW(load_system(TempPath("does_not_exist.json")), InputError);
  std::remove(path.c_str());
  std::remove(cand.c_str());
}

TEST(ReportJsonTest, KeysPresent) {
  const KypReport r = evaluate_forms(fixture_c(), CMatrix::Constant(1, 1, 0.1), kTol);
  const Json j = kyp_report_to_json(r);
  EXPECT_EQ(j["forms"].size(), 8u);
  EXPECT_EQ(j["riccati"].size(), 5u);
  EXPECT_FALSE(j["feasible"].get<bool>());
  EXPECT_LT(j["forms"]["SHORTX"]["margin"].get<double>(), 0.0);

  const Json u = uniqueness_to_json(uniqueness_report(fixture_a(), kTol));
  EXPECT_TRUE(u["UNIQ1"]["met"].get<bool>());
  const Json b = bounds_to_json(solution_bounds(fixture_c(), kTol));
  EXPECT_NEAR(b["lower_diagonal"][0].get<double>(), 0.09, 1e-12);
  EXPECT_TRUE(b["x_min"].is_null());
  const Json t = tolerances_to_json(kTol);
  EXPECT_EQ(t["max_iter"], 10000);
}

}  // namespace
}  // namespace kyp::io
