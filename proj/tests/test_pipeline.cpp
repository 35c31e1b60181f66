// Pipeline and report layer: config parsing, validation errors that name the
// offender, the I(2) gate, JSON round-trips, and byte-level determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ardlkit/errors.hpp"
#include "ardlkit/mc.hpp"
#include "ardlkit/pipeline.hpp"
#include "ardlkit/report.hpp"
#include "doctest.h"

using namespace ardlkit;
using pipeline::run_config;
using tsdata::dataset;
using tsdata::series;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Cointegrated toy system: x is a random walk, y tracks 0.5 x with
// stationary noise, z is a second stationary-noise tracker.
dataset make_data(uint64_t master, int T) {
  mc::rng gen(master, 0);
  dataset ds;
  ds.start_year = 1990;
  series x{"x", 1990, std::vector<double>(T)};
  series y{"y", 1990, std::vector<double>(T)};
  series z{"z", 1990, std::vector<double>(T)};
  double level = 10.0;
  for (int t = 0; t < T; ++t) {
    level += 0.3 * gen.normal();
    x.values[t] = level;
    y.values[t] = 0.5 * level + 0.3 * gen.normal();
    z.values[t] = -0.25 * level + 0.3 * gen.normal();
  }
  ds.columns = {x, y, z};
  return ds;
}

const char* kGoodConfig =
    "# toy replication config\n"
    "seed = 42\n"
    "pmax = 2\n"
    "qmax = 1\n"
    "criterion = aic\n"
    "case = III\n"
    "lm_lags = 2\n"
    "reset_power = 2\n"
    "het = bpg\n"
    "unitroot_lags = sic:2\n"
    "mode = parallel\n"
    "model1.dep = y\n"
    "model1.regs = x\n"
    "model2.dep = z\n"
    "model2.regs = x\n"
    "model2.name = Tracker\n";

}  // namespace

TEST_CASE("config: full parse") {
  run_config cfg = pipeline::parse_config_text(kGoodConfig);
  CHECK(cfg.seed == 42);
  CHECK(cfg.pmax == 2);
  CHECK(cfg.qmax == 1);
  CHECK(cfg.crit == ardl::criterion::aic);
  CHECK(cfg.bcase == ardl::bounds_case::III);
  REQUIRE(cfg.models.size() == 2);
  CHECK(cfg.models[0].name == "Model 1");  // default name
  CHECK(cfg.models[1].name == "Tracker");
  CHECK(cfg.models[1].dep == "z");
  REQUIRE(cfg.models[0].regs.size() == 1);
  CHECK(cfg.models[0].regs[0] == "x");
}

TEST_CASE("config: error taxonomy names the offender") {
  auto expect_schema = [](const std::string& text, const std::string& needle) {
    try {
      pipeline::parse_config_text(text);
      FAIL_CHECK("expected schema error for: " << needle);
    } catch (const ardlkit::error& e) {
      CHECK(e.kind() == errc::schema);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_schema("sneed = 1\n", "sneed");                          // unknown key
  expect_schema("seed = 1\nseed = 2\n", "duplicate key 'seed'");  // duplicate
  expect_schema("model1.dep = y\n", "no regs");
  expect_schema("model1.regs = x\n", "no dep");
  expect_schema("model1.dep = x\nmodel1.regs = x\n", "among regs");
  expect_schema("model1.dep = y\nmodel1.regs = x,x\n", "duplicate regressors");
  expect_schema("model1.frobnicate = 3\n", "model1.frobnicate");
  expect_schema("pmax = 0\n", "pmax");
  expect_schema("criterion = hqc\n", "criterion");
  expect_schema("seed\n", "key = value");
}

TEST_CASE("apply_transforms: absent variable is a schema error naming it") {
  run_config cfg;
  cfg.transforms["GHOST"] = tsdata::transform_op::log();
  dataset ds = make_data(7, 40);
  try {
    pipeline::apply_transforms(cfg, ds);
    FAIL("expected schema error");
  } catch (const ardlkit::error& e) {
    CHECK(e.kind() == errc::schema);
    CHECK(std::string(e.what()).find("GHOST") != std::string::npos);
  }
}

TEST_CASE("run_pipeline: model referencing an absent variable is a schema error") {
  run_config cfg = pipeline::parse_config_text("model1.dep = y\nmodel1.regs = NOPE\n");
  dataset ds = make_data(8, 40);
  try {
    pipeline::run_pipeline(cfg, ds);
    FAIL("expected schema error");
  } catch (const ardlkit::error& e) {
    CHECK(e.kind() == errc::schema);
    CHECK(std::string(e.what()).find("NOPE") != std::string::npos);
  }
}

TEST_CASE("run_pipeline: I(2) dependent variable aborts that model with a named reason") {
  // Double-cumulated noise is I(2) by construction; the other model stays
  // estimable, exercising the partial-report path.
  mc::rng gen(9, 0);
  const int T = 50;
  dataset ds = make_data(10, T);
  series i2{"w", 1990, std::vector<double>(T)};
  double lvl = 0.0, slope = 0.0;
  for (int t = 0; t < T; ++t) {
    slope += gen.normal();
    lvl += slope;
    i2.values[t] = lvl;
  }
  ds.columns.push_back(i2);

  run_config cfg = pipeline::parse_config_text(
      "model1.dep = w\nmodel1.regs = x\nmodel2.dep = y\nmodel2.regs = x\n");
  auto rep = pipeline::run_pipeline(cfg, ds);
  REQUIRE(rep.models.size() == 2);
  CHECK(!rep.models[0].ok);
  CHECK(rep.models[0].error.find("I(2)") != std::string::npos);
  CHECK(rep.models[0].error.find("w") != std::string::npos);
  CHECK(rep.models[1].ok);
}

TEST_CASE("run_pipeline: empty model list is a valid report") {
  run_config cfg = pipeline::parse_config_text("seed = 5\n");
  dataset ds = make_data(11, 40);
  auto rep = pipeline::run_pipeline(cfg, ds);
  CHECK(rep.models.empty());
  CHECK(rep.unit_roots.empty());  // table is built from model variables
  const std::string txt = report::to_text(rep);
  CHECK(!txt.empty());
  auto rt = report::from_json(report::to_json(rep));
  CHECK(rt.models.empty());
  CHECK(rt.seed == 5);
}

TEST_CASE("report: JSON round-trip reproduces every numeric field exactly") {
  run_config cfg = pipeline::parse_config_text(kGoodConfig);
  dataset ds = make_data(12, 60);
  auto rep = pipeline::run_pipeline(cfg, ds);
  REQUIRE(rep.models.size() == 2);
  CHECK(rep.models[0].ok);

  const std::string j1 = report::to_json(rep);
  auto rt = report::from_json(j1);
  const std::string j2 = report::to_json(rt);
  CHECK(j1 == j2);  // byte equality implies exact numeric round-trip

  // Spot-check a few fields survived.
  CHECK(rt.models[0].fstat == rep.models[0].fstat);
  CHECK(rt.models[0].ect == rep.models[0].ect);
  CHECK(rt.models[0].selected_spec == rep.models[0].selected_spec);
  REQUIRE(rt.unit_roots.size() == rep.unit_roots.size());
  for (size_t i = 0; i < rep.unit_roots.size(); ++i)
    CHECK(rt.unit_roots[i].stat == rep.unit_roots[i].stat);
}

TEST_CASE("report: emitting the same report twice is byte-identical on disk") {
  run_config cfg = pipeline::parse_config_text(kGoodConfig);
  dataset ds = make_data(12, 60);
  auto rep = pipeline::run_pipeline(cfg, ds);

  auto dir = std::filesystem::temp_directory_path() / "ardlkit_report_tests";
  std::filesystem::remove_all(dir);
  auto out1 = dir / "a", out2 = dir / "b";
  report::write_files(rep, out1.string(), (out1 / "plots").string());
  report::write_files(rep, out2.string(), (out2 / "plots").string());
  for (const char* name : {"report.json", "report.txt"})
    CHECK(read_file(out1 / name) == read_file(out2 / name));
  CHECK(read_file(out1 / "plots" / "model1_cusum.csv") ==
        read_file(out2 / "plots" / "model1_cusum.csv"));
  CHECK(!read_file(out1 / "plots" / "model2_cusumsq.csv").empty());
}

TEST_CASE("run_pipeline: serial and parallel modes produce identical reports") {
  dataset ds = make_data(13, 60);
  run_config cfg = pipeline::parse_config_text(kGoodConfig);
  cfg.mode = exec_mode::serial;
  auto a = pipeline::run_pipeline(cfg, ds);
  cfg.mode = exec_mode::parallel;
  auto b = pipeline::run_pipeline(cfg, ds);
  CHECK(report::to_json(a) == report::to_json(b));
}

TEST_CASE("report: star annotations recompute from their statistics") {
  run_config cfg = pipeline::parse_config_text(kGoodConfig);
  dataset ds = make_data(12, 60);
  auto rep = pipeline::run_pipeline(cfg, ds);
  for (const auto& m : rep.models) {
    if (!m.ok) continue;
    for (const auto& row : m.shortrun) CHECK(row.stars == ardl::stars_for_pvalue(row.pvalue));
    for (const auto& row : m.longrun) CHECK(row.stars == ardl::stars_for_pvalue(row.pvalue));
    // Bounds stars agree with F vs the upper bounds.
    const auto& cv = m.bounds_cvs;
    std::string want;
    if (m.fstat > cv[3].i1)
      want = "***";
    else if (m.fstat > cv[1].i1)
      want = "**";
    else if (m.fstat > cv[0].i1)
      want = "*";
    CHECK(m.bounds_stars == want);
  }
}

TEST_CASE("unit-root table covers model variables, levels and differences, both tests") {
  run_config cfg = pipeline::parse_config_text("model1.dep = y\nmodel1.regs = x\n");
  dataset ds = make_data(14, 60);
  auto rep = pipeline::run_pipeline(cfg, ds);
  // vars {y, x} x diff {0,1} x det {constant, constant_trend} x {ADF, PP}
  CHECK(rep.unit_roots.size() == 2 * 2 * 2 * 2);
  bool saw_pp_diff = false;
  for (const auto& e : rep.unit_roots) {
    CHECK((e.diff_order == 0 || e.diff_order == 1));
    if (e.test == "PP" && e.diff_order == 1) saw_pp_diff = true;
  }
  CHECK(saw_pp_diff);
}
