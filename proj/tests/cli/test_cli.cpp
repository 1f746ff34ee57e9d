#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "csv.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"mbsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = mbsim::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json free_body_doc() {
  return json::parse(R"({
    "model": {"type": "free_rigid_body",
              "bodies": [{"mass_kg": 1.0, "inertia_kgm2": [1.0, 2.0, 3.0]}]},
    "initial_state": {"rotation_vectors_rad": [[0.1, 0.2, 0.3]],
                      "angular_velocities_radps": [[0.1, 2.0, 0.1]]},
    "combo": "1a",
    "integrator": {"h_s": 0.01, "t_end_s": 0.5}
  })");
}

json pinned_doc() {
  return json::parse(R"({
    "model": {"type": "pinned_body",
              "bodies": [{"mass_kg": 1.5, "inertia_kgm2": [0.02, 0.03, 0.01],
                          "com_offset_m": [0.01, 0.02, -0.3],
                          "gravity_mps2": [0.0, 0.0, -9.81]}],
              "pin_point_body_m": [0.0, 0.0, 0.1]},
    "initial_state": {"rotation_vectors_rad": [[0.9, 0.3, 0.0]],
                      "angular_velocities_radps": [[1.0, -1.0, 2.0]]},
    "combo": "2d",
    "integrator": {"h_s": 0.001, "t_end_s": 1.0, "projection": "position_velocity"}
  })");
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("mbsim_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string write(const std::string& name, const json& doc) {
    return write(name, doc.dump(2));
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }

  fs::path dir_;
};

}  // namespace

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(mbsim::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(mbsim::format_double(0.0), "0");
  EXPECT_EQ(mbsim::format_double(-2.5), "-2.5");
  EXPECT_EQ(mbsim::format_double(1e-300), "1e-300");
  EXPECT_EQ(mbsim::format_double(1.0 / 3.0), "0.33333333333333331");
  for (double v : {0.1, 1.0 / 3.0, 2.718281828459045, -1e-17, 6.02214076e23}) {
    EXPECT_EQ(std::stod(mbsim::format_double(v)), v);
  }
}

TEST_F(CliTest, RunWritesOneRowPerStep) {
  const auto r = cli({"run", write("s.json", free_body_doc()), "--out", path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = read(path("t.csv"));
  EXPECT_EQ(text.find('\r'), std::string::npos);
  ASSERT_EQ(text.back(), '\n');
  const auto rows = lines(text);
  ASSERT_EQ(rows.size(), 1u + 51u);
  EXPECT_EQ(rows[0],
            "t,b1_p0,b1_p1,b1_p2,b1_p3,b1_r1,b1_r2,b1_r3,b1_w1,b1_w2,b1_w3,b1_v1,b1_v2,b1_v3,"
            "energy,gnorm,gvnorm,qnorm_err");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::count(rows[i].begin(), rows[i].end(), ','), 17);
  }
  EXPECT_EQ(rows[1].substr(0, 2), "0,");
  EXPECT_NE(r.out.find("energy drift"), std::string::npos);
  EXPECT_NE(r.out.find("quaternion drift"), std::string::npos);
}

TEST_F(CliTest, RowCountUsesFloor) {
  json doc = free_body_doc();
  doc["combo"] = "2c";
  doc["integrator"]["t_end_s"] = 0.255;
  const auto r = cli({"run", write("s.json", doc), "--out", path("t.csv"), "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto rows = lines(read(path("t.csv")));
  ASSERT_EQ(rows.size(), 1u + 26u);
  EXPECT_EQ(rows[0].substr(0, 25), "t,b1_rho1,b1_rho2,b1_rho3");
}

TEST_F(CliTest, ZeroDurationGivesSingleRow) {
  json doc = free_body_doc();
  doc["integrator"]["t_end_s"] = 0.0;
  const auto r = cli({"run", write("s.json", doc), "--out", path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(read(path("t.csv"))).size(), 2u);
}

TEST_F(CliTest, CsvToStdoutKeepsSummaryOnStderr) {
  const auto r = cli({"run", write("s.json", free_body_doc())});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 52u);
  EXPECT_NE(r.err.find("final gnorm"), std::string::npos);
}

TEST_F(CliTest, OutputFieldInScenario) {
  json doc = free_body_doc();
  doc["output"] = path("from_scenario.csv");
  ASSERT_EQ(cli({"run", write("s.json", doc), "--quiet"}).code, 0);
  EXPECT_EQ(lines(read(path("from_scenario.csv"))).size(), 52u);
}

TEST_F(CliTest, Deterministic) {
  const std::string s = write("s.json", pinned_doc());
  ASSERT_EQ(cli({"run", s, "--out", path("a.csv"), "--quiet"}).code, 0);
  ASSERT_EQ(cli({"run", s, "--out", path("b.csv"), "--quiet"}).code, 0);
  EXPECT_EQ(read(path("a.csv")), read(path("b.csv")));
}

TEST_F(CliTest, ConstrainedRunHoldsConstraints) {
  const auto r = cli({"run", write("s.json", pinned_doc()), "--out", path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(read(path("t.csv")));
  ASSERT_EQ(rows.size(), 1002u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> f;
    std::istringstream in(rows[i]);
    for (std::string x; std::getline(in, x, ',');) f.push_back(x);
    ASSERT_EQ(f.size(), 17u);
    EXPECT_LT(std::stod(f[14]), 1e-8);
  }
}

TEST_F(CliTest, SchemaErrorsNameTheField) {
  struct Case {
    std::function<void(json&)> edit;
    std::string field;
  };
  const std::vector<Case> cases{
      {[](json& d) { d["model"]["bodies"][0]["mass_kg"] = "heavy"; },
       "model.bodies[0].mass_kg"},
      {[](json& d) { d["model"]["bodies"][0]["mass_kg"] = -1.0; }, "model.bodies[0].mass_kg"},
      {[](json& d) { d["model"]["bodies"][0]["inertia_kgm2"][2] = 0.0; },
       "model.bodies[0].inertia_kgm2[2]"},
      {[](json& d) { d["model"]["type"] = "rope"; }, "model.type"},
      {[](json& d) { d.erase("combo"); }, "combo"},
      {[](json& d) { d["combo"] = "3a"; }, "combo"},
      {[](json& d) { d["integrator"]["h_s"] = 0.0; }, "integrator.h_s"},
      {[](json& d) { d["integrator"]["t_end_s"] = -1.0; }, "integrator.t_end_s"},
      {[](json& d) { d["integrator"]["scheme"] = "euler"; }, "integrator.scheme"},
      {[](json& d) { d["integrator"]["projection"] = "yes"; }, "integrator.projection"},
      {[](json& d) { d["initial_state"]["rotation_vectors_rad"] = json::array(); },
       "initial_state.rotation_vectors_rad"},
      {[](json& d) { d["initial_state"]["angular_velocities_radps"][0] = {1, 2}; },
       "initial_state.angular_velocities_radps[0]"},
      {[](json& d) {
         d["combo"] = "2a";
         d["integrator"]["scheme"] = "baseline_quat_rk4";
       },
       "combo"},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    json doc = free_body_doc();
    cases[i].edit(doc);
    const auto r = cli({"run", write("s" + std::to_string(i) + ".json", doc), "--out",
                        path("t.csv")});
    EXPECT_EQ(r.code, 2) << cases[i].field;
    EXPECT_NE(r.err.find(cases[i].field + ":"), std::string::npos) << r.err;
  }
}

TEST_F(CliTest, UnreadableOrMalformedDocument) {
  EXPECT_EQ(cli({"run", path("missing.json")}).code, 2);
  const auto r = cli({"run", write("bad.json", std::string("{\"model\": "))});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("<document>"), std::string::npos);
}

TEST_F(CliTest, InconsistentInitialState) {
  json doc = pinned_doc();
  doc["initial_state"]["positions_m"] = {{0.0, 0.0, 0.0}};
  const auto r = cli({"run", write("s.json", doc), "--out", path("t.csv")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("inconsistent"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("t.csv")));
}

TEST_F(CliTest, IntegrationFailureReportsStep) {
  json doc = free_body_doc();
  doc["combo"] = "1b";
  doc["initial_state"]["angular_velocities_radps"] = {{0.0, 0.0, 50.0}};
  doc["integrator"]["h_s"] = 0.1;
  const auto r = cli({"run", write("s.json", doc), "--out", path("t.csv")});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("step 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"fly"}).code, 1);
  const std::string s = write("s.json", free_body_doc());
  EXPECT_EQ(cli({"convergence", s}).code, 1);
  EXPECT_EQ(cli({"convergence", s, "--h", "0.03"}).code, 1);
  EXPECT_EQ(cli({"compare", s, "--runs", "1a,5x"}).code, 1);
  EXPECT_EQ(cli({"run", s, "--out", path("no/such/dir/t.csv")}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, ConvergenceSlopeAndDeterminism) {
  json doc = free_body_doc();
  doc["initial_state"]["angular_velocities_radps"] = {{0.5, 4.0, 0.5}};
  doc["integrator"]["t_end_s"] = 5.0;
  const auto r = cli({"convergence", write("s.json", doc), "--h",
                      "1e-2,5e-3,2.5e-3,1.25e-3,1.25e-3", "--out", path("c.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(read(path("c.csv")));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "h,global_error,fitted_slope,r_squared");
  EXPECT_EQ(rows[4].substr(rows[4].find(',')), rows[5].substr(rows[5].find(',')));
  const std::string slope_field = rows[1].substr(rows[1].find(',', rows[1].find(',') + 1) + 1);
  const double slope = std::stod(slope_field.substr(0, slope_field.find(',')));
  const double r2 = std::stod(slope_field.substr(slope_field.find(',') + 1));
  EXPECT_NEAR(slope, 4.0, 0.2);
  EXPECT_GT(r2, 0.999);
  EXPECT_NE(r.out.find("fitted slope"), std::string::npos);
}

TEST_F(CliTest, CompareDefaultRuns) {
  json doc = pinned_doc();
  doc["integrator"]["projection"] = "off";
  const auto r = cli({"compare", write("s.json", doc), "--out", path("c.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(read(path("c.csv")));
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], "run,max_qnorm_err,1a,1b,1c,1d,2a,2b,2c,2d,baseline");
  EXPECT_EQ(rows[9].substr(0, 9), "baseline,");
}

TEST(Compare, CombosAgreeOnSmoothProblem) {
  const mbsim::Scenario sc = mbsim::parse_scenario(pinned_doc().dump());
  const mbsim::CompareResult r = mbsim::compare_runs(sc, mbsim::default_compare_runs());
  ASSERT_EQ(r.runs.size(), 9u);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) EXPECT_LT(r.discrepancy[i][j], 1e-8);
  }
}

TEST(Compare, IdenticalRunsHaveZeroDiscrepancy) {
  const mbsim::Scenario sc = mbsim::parse_scenario(free_body_doc().dump());
  const mbsim::CompareResult r = mbsim::compare_runs(sc, {"2b", "2b"});
  EXPECT_EQ(r.discrepancy[0][1], 0.0);
  EXPECT_EQ(r.discrepancy[1][0], 0.0);
}

TEST(Compare, BaselineDriftsWhereCombosDoNot) {
  json doc = free_body_doc();
  doc["initial_state"]["angular_velocities_radps"] = {{0.5, 10.0, 0.5}};
  doc["integrator"]["t_end_s"] = 10.0;
  const mbsim::Scenario sc = mbsim::parse_scenario(doc.dump());
  const mbsim::CompareResult r =
      mbsim::compare_runs(sc, {"1a", "1b", "1c", "1d", "baseline"});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(r.qnorm_err[i], 1e-12) << r.runs[i];
  EXPECT_GT(r.qnorm_err[4], 1e-12);
}

TEST(Scenario, ExplicitVelocitiesFollowTheTwistFrame) {
  json doc = free_body_doc();
  doc["initial_state"]["positions_m"] = {{1.0, 2.0, 3.0}};
  doc["initial_state"]["velocities_mps"] = {{0.5, -0.5, 0.25}};
  const mbsim::Scenario sc = mbsim::parse_scenario(doc.dump());
  for (mbslie::GroupModel g : {mbslie::GroupModel::SemiDirect, mbslie::GroupModel::DirectProduct}) {
    const auto model = mbsim::build_model(sc.model, g);
    const mbslie::MbsState s = mbsim::build_state(*model, sc.initial, mbslie::AbsKind::QuatPos);
    const mbslie::Mat3 R = mbslie::rotation_of(s.q[0]);
    EXPECT_LT((mbslie::position_of(s.q[0]) - mbslie::Vec3(1, 2, 3)).norm(), 1e-15);
    const mbslie::Vec3 v = s.V.segment<3>(3);
    const mbslie::Vec3 rdot = g == mbslie::GroupModel::SemiDirect ? mbslie::Vec3(R * v) : v;
    EXPECT_LT((rdot - mbslie::Vec3(0.5, -0.5, 0.25)).norm(), 1e-15);
  }
}
