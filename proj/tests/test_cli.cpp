#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "cfreal/cli/commands.hpp"
#include "cfreal/cli/io_util.hpp"
#include "cfreal/fps/series_io.hpp"
#include "cfreal/symdiff/coefficients.hpp"
#include "cfreal/symdiff/model_io.hpp"

using namespace cfreal;
using cli::RunConfig;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {
const char *kQuadratic = "type = analytic\nn = 1\nm = 1\nx0 = 1/2\ng0 = x1\ng1 = 1\nh = x1^2\n";
const char *kBilinear = "type = bilinear\nn = 2\nm = 1\nx0 = 1, 0\nA0 = 0, 1; 0, 0\nA1 = 0, 0; 1, 0\nC = 1, 2\n";

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    static std::atomic<int> counter{0};
    dir_ = fs::temp_directory_path() /
           ("cfreal_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string &name, const std::string &text) {
    cli::write_file_atomic(dir_ / name, text);
    return (dir_ / name).string();
  }
  RunConfig config(const std::string &command, const std::string &sub = "out") {
    RunConfig c;
    c.command = command;
    c.out = (dir_ / sub).string();
    return c;
  }
  int run(const RunConfig &c) {
    out_.str("");
    err_.str("");
    return cli::run_command(c, out_, err_);
  }
  std::string read(const std::string &sub, const std::string &name) {
    return cli::read_file(dir_ / sub / name);
  }
  json read_json(const std::string &sub, const std::string &name) { return json::parse(read(sub, name)); }

  fs::path dir_;
  std::ostringstream out_, err_;
};
} // namespace

TEST_F(Cli, CoeffsWritesSeriesAndSummary) {
  auto c = config("coeffs");
  c.model = file("q.model", kQuadratic);
  c.degree = 4;
  ASSERT_EQ(run(c), 0) << err_.str();
  const Series s = series_from_string(read("out", "series.cfs"));
  EXPECT_EQ(s, cf_coefficients(analytic_from_string(kQuadratic), 4));
  const json j = read_json("out", "coeffs_summary.json");
  EXPECT_EQ(j["degree"], 4);
  EXPECT_EQ(j["max_letter"], 1);
  const std::string first = read("out", "series.cfs");
  ASSERT_EQ(run(c), 0);
  EXPECT_EQ(read("out", "series.cfs"), first);
}

TEST_F(Cli, CoeffsRequiresDegree) {
  auto c = config("coeffs");
  c.model = file("q.model", kQuadratic);
  EXPECT_EQ(run(c), 2);
  EXPECT_NE(err_.str().find("--deg"), std::string::npos);
}

TEST_F(Cli, MissingAndMalformedModelFiles) {
  auto c = config("coeffs");
  c.degree = 2;
  c.model = (dir_ / "absent.model").string();
  EXPECT_EQ(run(c), 1);
  EXPECT_NE(err_.str().find("absent.model"), std::string::npos) << err_.str();
  c.model = file("bad.model", "type = analytic\nn = 1\nm = 1\nx0 = 0\ng0 = x1 +* 2\ng1 = 1\nh = x1\n");
  EXPECT_EQ(run(c), 1);
  EXPECT_NE(err_.str().find("bad.model"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("5"), std::string::npos) << err_.str();
}

TEST_F(Cli, RankFromModelAndSeries) {
  auto c = config("rank");
  c.model = file("q.model", kQuadratic);
  c.degree = 6;
  ASSERT_EQ(run(c), 0) << err_.str();
  const json j = read_json("out", "rank_report.json");
  EXPECT_EQ(j["hankel"]["rank"], 3);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "hankel.csv"));
  EXPECT_LE(j["lie"]["rank"].get<int>(), 1);

  auto s = config("lierank", "lie");
  auto co = config("coeffs", "co");
  co.model = c.model;
  co.degree = 6;
  ASSERT_EQ(run(co), 0);
  s.series = (dir_ / "co" / "series.cfs").string();
  ASSERT_EQ(run(s), 0) << err_.str();
  EXPECT_TRUE(read_json("lie", "lierank_report.json").contains("lie"));
  EXPECT_FALSE(fs::exists(dir_ / "lie" / "hankel.csv"));
}

TEST_F(Cli, RankInsufficientDegree) {
  auto c = config("rank");
  c.model = file("q.model", kQuadratic);
  c.degree = 4;
  c.rows = 3;
  c.cols = 3;
  EXPECT_EQ(run(c), 1);
  EXPECT_EQ(err_.str().rfind("error: insufficient degree", 0), 0u) << err_.str();
}

TEST_F(Cli, RankFloatMode) {
  auto c = config("rank");
  c.model = file("q.model", kQuadratic);
  c.degree = 6;
  c.mode = ScalarMode::real;
  ASSERT_EQ(run(c), 0) << err_.str();
  const json j = read_json("out", "rank_report.json");
  EXPECT_EQ(j["hankel"]["mode"], "numeric");
  EXPECT_EQ(j["hankel"]["rank"], 3);
}

TEST_F(Cli, RealizeRoundTrip) {
  auto co = config("coeffs", "co");
  co.model = file("b.model", kBilinear);
  co.degree = 6;
  ASSERT_EQ(run(co), 0);
  auto r = config("realize", "re");
  r.series = (dir_ / "co" / "series.cfs").string();
  r.degree = 6;
  ASSERT_EQ(run(r), 0) << err_.str();
  const json j = read_json("re", "realize_report.json");
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["dimension"], 2);
  const Model m = model_from_string(read("re", "realized.model"));
  ASSERT_TRUE(std::holds_alternative<BilinearModel>(m));
  EXPECT_EQ(bilinear_coefficients(std::get<BilinearModel>(m), 6), series_from_string(read("co", "series.cfs")));
}

TEST_F(Cli, RealizeFailuresAndFloatRefusal) {
  auto co = config("coeffs", "co");
  co.model = file("b.model", kBilinear);
  co.degree = 6;
  ASSERT_EQ(run(co), 0);
  auto r = config("realize", "re");
  r.series = (dir_ / "co" / "series.cfs").string();
  r.degree = 1;
  EXPECT_EQ(run(r), 3);
  EXPECT_EQ(read_json("re", "realize_report.json")["status"], "failed");
  r.degree = 6;
  r.mode = ScalarMode::real;
  EXPECT_EQ(run(r), 2);
  r.mode = ScalarMode::rational;
  r.degree = 9;
  EXPECT_EQ(run(r), 1);
}

TEST_F(Cli, StochasticCommandsRequireSeed) {
  for (const char *cmd : {"simulate", "compare", "ito-check", "hijab-check", "demo-zakai"}) {
    auto c = config(cmd);
    c.model = file("q.model", kQuadratic);
    EXPECT_EQ(run(c), 2) << cmd;
    EXPECT_NE(err_.str().find("--seed"), std::string::npos) << cmd;
  }
}

TEST_F(Cli, SimulateIsDeterministic) {
  auto c = config("simulate", "a");
  c.model = file("q.model", kQuadratic);
  c.seed = 17;
  c.grid = 256;
  c.reps = 2;
  ASSERT_EQ(run(c), 0) << err_.str();
  auto d = c;
  d.out = (dir_ / "b").string();
  ASSERT_EQ(run(d), 0);
  for (const char *f : {"trajectory_rep0.csv", "trajectory_rep1.csv", "simulate_summary.json"})
    EXPECT_EQ(read("a", f), read("b", f)) << f;
  const std::string csv = read("a", "trajectory_rep0.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,W1,Y_sim,Y_cf");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 258u);
  d.seed = 18;
  ASSERT_EQ(run(d), 0);
  EXPECT_NE(read("a", "trajectory_rep0.csv"), read("b", "trajectory_rep0.csv"));
}

TEST_F(Cli, CompareSummary) {
  auto c = config("compare");
  c.model = file("b.model", kBilinear);
  c.seed = 3;
  c.grid = 512;
  c.reps = 20;
  c.degree = 5;
  ASSERT_EQ(run(c), 0) << err_.str();
  const json j = read_json("out", "compare_summary.json");
  EXPECT_EQ(j["truncation_errors"].size(), 6u);
  EXPECT_EQ(j["diverged_replicates"], 0);
  EXPECT_LT(j["truncation_errors"][5]["median_abs_error"].get<double>(),
            j["truncation_errors"][1]["median_abs_error"].get<double>());
  c.scheme = "milstein";
  EXPECT_EQ(run(c), 2);
}

TEST_F(Cli, AllReplicatesDiverge) {
  auto c = config("simulate");
  c.model = file("e.model", "type = analytic\nn = 1\nm = 1\nx0 = 1\ng0 = x1^2\ng1 = 0\nh = x1\n");
  c.seed = 1;
  c.horizon = 2.0;
  c.grid = 1000;
  c.degree = 2;
  EXPECT_EQ(run(c), 4);
}

TEST_F(Cli, ItoCheck) {
  auto c = config("ito-check");
  c.seed = 5;
  c.reps = 100;
  c.grid = 256;
  ASSERT_EQ(run(c), 0) << err_.str();
  const json j = read_json("out", "ito_check.json");
  EXPECT_TRUE(j["ito"]["decays"].get<bool>());
  EXPECT_EQ(j["ito"]["grid_sizes"].size(), 3u);
  c.functional = "spline:2";
  EXPECT_EQ(run(c), 1);
}

TEST_F(Cli, HijabCheck) {
  auto c = config("hijab-check");
  c.model = file("q.model", kQuadratic);
  c.seed = 2;
  c.reps = 100;
  c.grid = 256;
  ASSERT_EQ(run(c), 0) << err_.str();
  const json j = read_json("out", "hijab_check.json");
  EXPECT_TRUE(j["ito_pair"]["decays"].get<bool>());
  EXPECT_TRUE(j["stratonovich_pair"]["decays"].get<bool>());
  c.model = file("b.model", kBilinear);
  EXPECT_EQ(run(c), 2);
}

TEST_F(Cli, DemoZakai) {
  auto c = config("demo-zakai");
  c.seed = 1;
  c.reps = 5;
  c.grid = 512;
  ASSERT_EQ(run(c), 0) << err_.str();
  const json j = read_json("out", "zakai_summary.json");
  EXPECT_EQ(j["positivity_violations"], 0);
  EXPECT_LE(j["hankel"]["rank"].get<int>(), 2);
  EXPECT_GE(j["pi_indicator_min"].get<double>(), 0.0);
  EXPECT_LE(j["pi_indicator_max"].get<double>(), 1.0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "zakai.model"));
  EXPECT_FALSE(read("out", "zakai_trajectory_rep0.csv").empty());
  c.generator = "-1,2;1,-1";
  EXPECT_EQ(run(c), 1);
  c.generator = "-1,1;1";
  EXPECT_EQ(run(c), 2);
}

TEST_F(Cli, UnknownCommand) {
  EXPECT_EQ(run(config("frobnicate")), 2);
  EXPECT_NE(err_.str().find("frobnicate"), std::string::npos);
}
