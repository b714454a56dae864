#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "astute/csv.hpp"
#include "chart.hpp"
#include "commands.hpp"
#include "params.hpp"
#include "report.hpp"

using namespace astute;
using namespace astute::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("astute_cli_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Config, ParsesCommentsAndWhitespace) {
  const auto m = parse_config("# header\n  scenario = half_moons  # trailing\n\nn=30\nsizes = 10, 20\n");
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m.at("scenario"), "half_moons");
  EXPECT_EQ(m.at("n"), "30");
  EXPECT_EQ(Params(m).counts("sizes", {}), (std::vector<std::size_t>{10, 20}));
}

TEST(Config, RejectsMalformedLines) {
  EXPECT_THROW(parse_config("just words\n"), ConfigError);
  try {
    parse_config("n = 1\nn = 2\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "n");
  }
}

TEST(Config, TypedAccessorsNameTheKey) {
  const Params p({{"r", "-0.5"}, {"n", "ten"}, {"prune", "maybe"}});
  for (const std::string key : {"r", "n", "prune"}) {
    try {
      if (key == "r") p.positive(key, 1.0);
      if (key == "n") p.count(key, 1);
      if (key == "prune") p.flag(key, false);
      FAIL() << key;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.key(), key);
    }
  }
  EXPECT_EQ(p.real("missing", 3.5), 3.5);
}

TEST(Cli, GenWritesRequestedPoints) {
  TempDir dir;
  const fs::path out = dir.path() / "d.csv";
  const Outcome r = invoke({"gen", "--scenario", "half_moons", "--n", "100", "--sigma", "0", "--seed", "7",
                         "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Dataset ds = read_csv(out);
  EXPECT_EQ(ds.size(), 100u);
  EXPECT_EQ(ds.dim(), 2u);
  const fs::path again = dir.path() / "e.csv";
  ASSERT_EQ(invoke({"gen", "--n", "100", "--seed", "7", "--out", again.string()}).code, 0);
  EXPECT_EQ(slurp(out), slurp(again));
}

TEST(Cli, NegativeSigmaIsAConfigError) {
  const Outcome r = invoke({"gen", "--scenario", "half_moons", "--sigma", "-1", "--n", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("sigma"), std::string::npos) << r.err;
}

TEST(Cli, MeaninglessParametersExitTwo) {
  const std::vector<std::vector<std::string>> cases = {
      {"train-eval", "--r", "0"},
      {"train-eval", "--k", "0"},
      {"probe", "--a", "0.3", "--b", "0.2"},
      {"gen", "--scenario", "spiral"},
      {"gen", "--bogus", "1"},
  };
  const std::vector<std::string> keys = {"r", "k", "a", "scenario", "bogus"};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Outcome r = invoke(cases[i]);
    EXPECT_EQ(r.code, 2) << cases[i][1];
    EXPECT_NE(r.err.find(keys[i]), std::string::npos) << r.err;
  }
}

TEST(Cli, UnknownConfigKeyIsRejected) {
  TempDir dir;
  const fs::path cfg = dir.path() / "bad.cfg";
  write_file(cfg, "n = 10\nwobble = 3\n");
  const Outcome r = invoke({"gen", "--config", cfg.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("wobble"), std::string::npos);
}

TEST(Cli, MissingDataFileIsARuntimeError) {
  const Outcome r = invoke({"prune", "--data", "/nonexistent/astute.csv"});
  EXPECT_EQ(r.code, 1) << r.err;
}

TEST(Cli, ExactAttackOnKernelIsRejected) {
  const Outcome r = invoke({"attack", "--classifier", "kernel", "--n", "20", "--test_size", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("method"), std::string::npos);
  EXPECT_EQ(invoke({"attack", "--classifier", "knn", "--k", "3", "--n", "20"}).code, 2);
}

TEST(Cli, SweepFromConfigWritesCsvAndChart) {
  TempDir dir;
  const fs::path cfg = dir.path() / "fig.cfg";
  write_file(cfg,
             "# small noiseless 1-NN sweep\n"
             "scenario = half_moons\nclassifier = knn\nk = 1\nr = 0.1\n"
             "sizes = 20, 60\nrepeats = 2\ntest_size = 50\nseed = 3\ntitle = small sweep\n"
             "out_dir = " + dir.path().string() + "\nname = fig\n");
  const Outcome r = invoke({"sweep", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream csv(dir.path() / "fig.csv");
  const auto rows = read_sweep_csv(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].n, 20u);
  const std::string svg = slurp(dir.path() / "fig.svg");
  EXPECT_NE(svg.find(kAccuracyColor), std::string::npos);
  EXPECT_NE(svg.find(kAstutenessColor), std::string::npos);

  // Flags override the file, and reruns are byte-identical.
  const std::string first = slurp(dir.path() / "fig.csv");
  ASSERT_EQ(invoke({"sweep", "--config", cfg.string(), "--name", "again"}).code, 0);
  EXPECT_EQ(slurp(dir.path() / "again.csv"), first);
  EXPECT_EQ(slurp(dir.path() / "again.svg"), svg);
}

TEST(Cli, PruneEmitsSeparatedSubset) {
  TempDir dir;
  const Outcome r = invoke({"prune", "--n", "200", "--sigma", "0.2", "--prune_r", "0.1", "--seed", "2",
                         "--out", (dir.path() / "idx.csv").string(), "--pruned_out",
                         (dir.path() / "kept.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Dataset kept = read_csv(dir.path() / "kept.csv");
  EXPECT_GE(kept.size(), 100u);
  EXPECT_GT(min_interclass_distance(kept, Metric::Linf), 0.2);
  EXPECT_EQ(count_of(slurp(dir.path() / "idx.csv"), "\n"), kept.size() + 1);
}

TEST(Cli, TrainEvalAndProbeAndDemoRun) {
  Outcome r = invoke({"train-eval", "--n", "200", "--test_size", "100", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n_train,n_test,accuracy,astuteness", 0), 0u);
  r = invoke({"probe", "--sizes", "20,40", "--draws", "2", "--queries", "3", "--boundary", "4", "--interior", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_of(r.out, "\n"), 3u);
  r = invoke({"demo-example1", "--n", "500", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("r,n,bayes_accuracy", 0), 0u);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = ASTUTE_CLI_PATH;
  EXPECT_EQ(std::system((bin + " gen --n 5 > /dev/null").c_str()), 0);
  const int status = std::system((bin + " gen --sigma -1 > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

TEST(Chart, ThreePointsGiveThreeMarkers) {
  ChartSpec spec;
  spec.title = "one series";
  spec.series = {{"accuracy", kAccuracyColor, {10, 100, 1000}, {0.5, 0.7, 0.9}, {0.1, 0.05, 0.0}}};
  const std::string svg = render_svg(spec);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count_of(svg, "class=\"marker\""), 3u);
  EXPECT_EQ(count_of(svg, "class=\"errorbar\""), 2u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(render_svg(spec), svg);
}

TEST(Chart, RejectsInconsistentSeriesAndBadPaths) {
  ChartSpec spec;
  spec.series = {{"bad", "#000", {1, 2}, {0.5}, {}}};
  EXPECT_THROW(render_svg(spec), std::invalid_argument);
  spec.series = {{"ok", "#000", {1, 2}, {0.5, 0.6}, {}}};
  EXPECT_THROW(emit_chart(spec, "/nonexistent/dir/c.svg"), std::runtime_error);
}

TEST(Chart, IdenticalSpecsGiveIdenticalFiles) {
  TempDir dir;
  ChartSpec spec;
  spec.series = {{"s", "#123456", {1, 2, 3}, {0.1, 0.2, 0.3}, {0.01, 0.02, 0.03}}};
  emit_chart(spec, dir.path() / "a.svg");
  emit_chart(spec, dir.path() / "b.svg");
  EXPECT_EQ(slurp(dir.path() / "a.svg"), slurp(dir.path() / "b.svg"));
}

TEST(Chart, SweepShapedGolden) {
  std::istringstream csv(
      "n,accuracy_mean,accuracy_std,astuteness_mean,astuteness_std\n"
      "20,0.80000000000000004,0.050000000000000003,0.41999999999999998,0.080000000000000002\n"
      "100,0.93999999999999995,0.02,0.47999999999999998,0.040000000000000001\n"
      "1000,0.98999999999999999,0.01,0.5,0.029999999999999999\n"
      "3000,0.999,0.001,0.49399999999999999,0.02\n");
  const std::string svg = render_svg(sweep_chart(read_sweep_csv(csv), "noiseless histogram"));
  EXPECT_NE(svg.find(kAccuracyColor), std::string::npos);
  EXPECT_NE(svg.find(kAstutenessColor), std::string::npos);
  const fs::path golden = fs::path(ASTUTE_GOLDEN_DIR) / "sweep_chart.svg";
  if (!fs::exists(golden)) {
    write_file(golden, svg);
    GTEST_SKIP() << "golden written to " << golden;
  }
  EXPECT_EQ(svg, slurp(golden));
}

TEST(Report, RoundTrip) {
  const std::vector<ReportRow> rows = {
      {0, Label::Positive, Label::Positive, true, std::nullopt, std::nullopt},
      {1, Label::Negative, Label::Negative, false, 0.125, Point{0.5, -0.25}},
      {2, Label::Negative, Label::Positive, false, std::nullopt, std::nullopt},
  };
  std::stringstream buf;
  write_report_csv(rows, 2, buf);
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')), "index,label,predicted,astute,radius,w0,w1");
  EXPECT_EQ(read_report_csv(buf), rows);
  std::istringstream bad("index,label,predicted,astute,radius\n0,+1,+1,2,\n");
  EXPECT_THROW(read_report_csv(bad), ParseError);
}

TEST(Report, Example2HistogramIsAboutEightyPercentAstute) {
  TempDir dir;
  const fs::path out = dir.path() / "report.csv";
  const Outcome r = invoke({"attack", "--scenario", "example2", "--classifier", "histogram", "--n", "5000",
                         "--test_size", "2000", "--r", "0.1", "--seed", "9", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  const auto rows = read_report_csv(in);
  ASSERT_EQ(rows.size(), 2000u);
  std::size_t non_astute = 0;
  for (const ReportRow& row : rows) {
    if (row.astute) continue;
    ++non_astute;
    if (row.radius) EXPECT_LE(*row.radius, 0.1 + 1e-9);
  }
  EXPECT_NEAR(static_cast<double>(non_astute) / 2000.0, 0.2, 0.03);
}

TEST(Report, SingleClassOneNnIsAllAstute) {
  TempDir dir;
  Dataset ds(2);
  for (int i = 0; i < 10; ++i) ds.add(Point{0.1 * i, 0.05 * i}, Label::Positive);
  write_csv(ds, dir.path() / "one.csv");
  const Outcome r = invoke({"attack", "--train", (dir.path() / "one.csv").string(), "--data",
                         (dir.path() / "one.csv").string(), "--r", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto rows = read_report_csv(in);
  ASSERT_EQ(rows.size(), 10u);
  for (const ReportRow& row : rows) EXPECT_TRUE(row.astute);
}
