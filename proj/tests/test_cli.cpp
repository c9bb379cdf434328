#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("fixpt_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result fixpt(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" FIXPT_BIN "' " + args + " >'" +
                            out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  static std::string scenario(const std::string& name) {
    return std::string(SCENARIO_DIR) + "/" + name + ".cfg";
  }

  nlohmann::json report(const std::string& sub) {
    auto j = nlohmann::json::parse(slurp(dir_ / sub / "report.json"));
    j.erase("timestamp");
    return j;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExitCodesForBundledScenarios) {
  const std::pair<const char*, int> table[] = {
      {"t35_averaged_rotation", 0}, {"t35_pure_rotation", 2},  {"t35_identity", 0},
      {"t37_proximity", 0},         {"t37_scaled_l1", 2},      {"c38_monotone", 0},
      {"s4_averaged_rotation", 0},  {"s4_tiny_eps", 2},        {"t35_slow_contraction", 3},
      {"verify_paper_example", 2},  {"center_three_point", 0},
  };
  for (const auto& [name, code] : table) {
    const auto r = fixpt("run " + scenario(name) + " -o out_" + name);
    EXPECT_EQ(r.code, code) << name << "\n" << r.out << r.err;
    EXPECT_TRUE(fs::exists(dir_ / (std::string("out_") + name) / "report.json")) << name;
    if (code != 0) EXPECT_FALSE(r.err.empty()) << name;
  }
}

TEST_F(Cli, ReportIsDeterministic) {
  ASSERT_EQ(fixpt("run " + scenario("t35_averaged_rotation") + " -o a").code, 0);
  ASSERT_EQ(fixpt("run " + scenario("t35_averaged_rotation") + " -o b").code, 0);
  const auto a = report("a");
  EXPECT_EQ(a, report("b"));
  EXPECT_EQ(a["schema_version"], 1);
  EXPECT_EQ(a["seed"], 1);
  EXPECT_EQ(slurp(dir_ / "a" / "orbit.csv"), slurp(dir_ / "b" / "orbit.csv"));
}

TEST_F(Cli, MissingMapKindIsAConfigError) {
  std::ofstream(dir_ / "bad.cfg") << "pipeline = T35\nspace.dim = 2\nset.kind = ball\n"
                                     "set.radius = 1\nx0 = 0, 0\n";
  const auto r = fixpt("run bad.cfg");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("map.kind"), std::string::npos) << r.err;
  EXPECT_EQ(fixpt("run does_not_exist.cfg").code, 1);
}

TEST_F(Cli, RerunFromReportReproducesVerdict) {
  ASSERT_EQ(fixpt("run " + scenario("t35_pure_rotation") + " -o first").code, 2);
  ASSERT_EQ(fixpt("run first/report.json -o second").code, 2);
  auto a = report("first");
  auto b = report("second");
  EXPECT_EQ(a["verdict"], b["verdict"]);
  EXPECT_EQ(a, b);
}

TEST_F(Cli, EmitPlotData) {
  ASSERT_EQ(fixpt("run " + scenario("t35_averaged_rotation") + " -o t35").code, 0);
  EXPECT_EQ(fixpt("emit-plot-data t35").code, 0);
  for (const char* f : {"residual_decay.csv", "alpha.csv", "center_values.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "t35" / "plot" / f)) << f;
  }

  fs::create_directories(dir_ / "empty");
  EXPECT_EQ(fixpt("emit-plot-data empty").code, 1);

  ASSERT_EQ(fixpt("run " + scenario("verify_paper_example") + " -o verify").code, 2);
  EXPECT_EQ(fixpt("emit-plot-data verify").code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "verify" / "plot" / "alpha.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "verify" / "plot" / "residual_decay.csv"));
}

TEST_F(Cli, VerifyExample34) {
  auto r = fixpt("verify-example34 --samples 2000 --seed 3 -o e1");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  ASSERT_EQ(fixpt("verify-example34 --samples 2000 --seed 3 -o e2").code, 0);
  const auto a = report("e1");
  EXPECT_EQ(a, report("e2"));
  EXPECT_EQ(a["verdict"], "PASS");
  EXPECT_EQ(a["nonexpansive_violations"], 0);

  r = fixpt("verify-example34 --samples 0 -o e0");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("INCONCLUSIVE"), std::string::npos) << r.err;
}

TEST_F(Cli, SweepWritesOneDirectoryPerConfig) {
  const auto r = fixpt("run --sweep " + scenario("t35_identity") + " " +
                       scenario("c38_monotone") + " " + scenario("t35_pure_rotation") + " -o sw");
  EXPECT_EQ(r.code, 2) << r.out << r.err;
  for (const char* name : {"t35_identity", "c38_monotone", "t35_pure_rotation"}) {
    EXPECT_TRUE(fs::exists(dir_ / "sw" / name / "report.json")) << name;
  }
}

TEST_F(Cli, CenterWithGridOracle) {
  const auto r = fixpt("center " + scenario("center_three_point") + " --grid-oracle -o g");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto j = report("g");
  EXPECT_EQ(j["center"]["solver"], "GridOracle");
  EXPECT_NEAR(j["center"]["radius"].get<double>(), 1.0, 1e-6);
}

TEST_F(Cli, OutputRootFromEnvironment) {
  EXPECT_EQ(fixpt("run " + scenario("t35_identity")).code, 0);
  const auto e = std::system(("cd '" + dir_.string() + "' && FIXPT_OUTPUT_ROOT=root '" FIXPT_BIN
                              "' run " + scenario("t35_identity") + " >/dev/null 2>&1")
                                 .c_str());
  EXPECT_EQ(WEXITSTATUS(e), 0);
  EXPECT_TRUE(fs::exists(dir_ / "root" / "t35_identity" / "report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "fixpt_out" / "t35_identity" / "report.json"));
}
