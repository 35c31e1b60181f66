// ardlkit command-line driver: unit-root tests, ARDL bounds testing,
// estimation, diagnostics, and the bundled four-model replication harness.
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ardlkit/ardl.hpp"
#include "ardlkit/diagnostics.hpp"
#include "ardlkit/errors.hpp"
#include "ardlkit/pipeline.hpp"
#include "ardlkit/report.hpp"
#include "ardlkit/tsdata.hpp"
#include "ardlkit/unitroot.hpp"

namespace {

using namespace ardlkit;

int exit_code_for(errc kind) {
  switch (kind) {
    case errc::schema:
    case errc::parse:
    case errc::integrity:
    case errc::parameter:
      return 1;
    default:
      return 2;
  }
}

struct global_opts {
  std::string input;
  std::string config;
  std::string out;
  std::string plots;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

pipeline::run_config effective_config(const global_opts& g, bool need_input) {
  pipeline::run_config cfg;
  if (!g.config.empty()) cfg = pipeline::load_config(g.config);
  if (!g.input.empty()) cfg.input_path = g.input;
  if (g.seed_set) cfg.seed = g.seed;
  if (need_input && cfg.input_path.empty())
    fail(errc::schema, "no input file: pass --input or set 'input' in the config");
  return cfg;
}

tsdata::dataset load_transformed(const pipeline::run_config& cfg) {
  return pipeline::apply_transforms(cfg, tsdata::load_dataset(cfg.input_path));
}

std::vector<std::string> split_csv(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string fmt(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

// --- unitroot ---------------------------------------------------------------

int cmd_unitroot(const global_opts& g, const std::string& vars_csv, const std::string& det_opt,
                 const std::string& tests_csv, const std::string& diff_csv) {
  auto cfg = effective_config(g, true);
  const auto ds = load_transformed(cfg);

  std::vector<std::string> vars = split_csv(vars_csv);
  if (vars.empty())
    for (const auto& c : ds.columns) vars.push_back(c.name);

  std::vector<det_spec> dets;
  if (det_opt == "constant") dets = {det_spec::constant};
  else if (det_opt == "trend") dets = {det_spec::constant_trend};
  else if (det_opt == "both") dets = {det_spec::constant, det_spec::constant_trend};
  else fail(errc::parameter, "--det: expected constant, trend, or both");

  const auto tests = split_csv(tests_csv);
  for (const auto& t : tests)
    if (t != "adf" && t != "pp") fail(errc::parameter, "--tests: expected adf and/or pp");
  std::vector<int> diffs;
  for (const auto& d : split_csv(diff_csv)) {
    if (d != "0" && d != "1") fail(errc::parameter, "--diff: expected 0 and/or 1");
    diffs.push_back(d == "1");
  }

  std::printf("%-10s %-16s %-6s %-6s %12s %6s %10s %10s %10s\n", "variable", "det", "diff",
              "test", "stat", "order", "cv1%", "cv5%", "cv10%");
  for (const auto& var : vars) {
    const auto& base = ds.require(var);
    for (int d : diffs) {
      const tsdata::series s =
          d ? tsdata::transform(base, tsdata::transform_op::diff()) : base;
      for (auto det : dets)
        for (const auto& t : tests) {
          const auto r = t == "adf" ? unitroot::adf_test(s, det, cfg.ur_lags)
                                    : unitroot::pp_test(s, det);
          std::printf("%-10s %-16s %-6d %-6s %9s%-3s %6d %10.3f %10.3f %10.3f\n", var.c_str(),
                      det_name(det), d, t.c_str(), fmt(r.stat).c_str(), r.stars().c_str(),
                      r.lags, r.cv1, r.cv5, r.cv10);
        }
    }
  }
  return 0;
}

// --- bounds -----------------------------------------------------------------

int cmd_bounds(const global_opts& g, const std::string& dep, const std::string& regs_csv,
               int pmax, int qmax, const std::string& criterion, const std::string& case_name) {
  auto cfg = effective_config(g, true);
  if (pmax > 0) cfg.pmax = pmax;
  if (qmax >= 0) cfg.qmax = qmax;
  if (!criterion.empty()) {
    if (criterion == "aic") cfg.crit = ardl::criterion::aic;
    else if (criterion == "sic") cfg.crit = ardl::criterion::sic;
    else fail(errc::parameter, "--criterion: expected aic or sic");
  }
  if (!case_name.empty()) cfg.bcase = ardl::parse_bounds_case(case_name);
  const auto ds = load_transformed(cfg);

  ardl::model_data md;
  md.dep = ds.require(dep);
  for (const auto& r : split_csv(regs_csv)) md.regs.push_back(ds.require(r));
  if (md.regs.empty()) fail(errc::parameter, "--regs: at least one regressor required");
  md.det = det_spec::constant;

  const auto sel = ardl::select_lags(md, cfg.pmax, cfg.qmax, cfg.crit, cfg.mode);
  const auto b = ardl::bounds_f_test(md, sel.chosen, cfg.bcase);

  std::printf("selected spec (%s): %s\n", cfg.crit == ardl::criterion::aic ? "aic" : "sic",
              sel.chosen.str().c_str());
  std::printf("bounds F = %s%s   (k = %d, m = %d restrictions, T = %d)\n", fmt(b.fstat).c_str(),
              b.stars().c_str(), b.k, b.m, b.effective_T);
  std::printf("%8s %8s %8s   verdict\n", "level", "I(0)", "I(1)");
  for (const auto& row : b.cvs) {
    const auto v = b.verdict(row.level);
    const char* name = v == ardl::bounds_verdict::cointegrated       ? "cointegrated"
                       : v == ardl::bounds_verdict::not_cointegrated ? "not cointegrated"
                                                                     : "inconclusive";
    std::printf("%7.1f%% %8.2f %8.2f   %s\n", row.level * 100, row.i0, row.i1, name);
  }
  return 0;
}

// --- pipeline-backed commands -------------------------------------------------

std::vector<int> parse_model_filter(const std::string& which, size_t n_models) {
  std::vector<int> ids;
  if (which == "all" || which.empty()) {
    for (size_t i = 0; i < n_models; ++i) ids.push_back(static_cast<int>(i) + 1);
    return ids;
  }
  for (const auto& tok : split_csv(which)) {
    try {
      ids.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      fail(errc::parameter, "--model: expected 1..4 numbers or 'all', got '" + tok + "'");
    }
  }
  return ids;
}

pipeline::run_report run_filtered(const global_opts& g, const std::string& which) {
  auto cfg = effective_config(g, true);
  if (cfg.models.empty())
    fail(errc::schema, "config defines no models; add model1.dep / model1.regs entries");
  const auto ids = parse_model_filter(which, cfg.models.size());
  std::vector<pipeline::model_def> keep;
  for (int id : ids) {
    bool found = false;
    for (const auto& m : cfg.models)
      if (m.id == id) {
        keep.push_back(m);
        found = true;
      }
    if (!found)
      fail(errc::parameter, "--model: no model" + std::to_string(id) + " in the config");
  }
  cfg.models = keep;
  return pipeline::run_pipeline(cfg);
}

int cmd_replicate(const global_opts& g, const std::string& which) {
  const auto rep = run_filtered(g, which);
  const std::string out_dir = g.out.empty() ? "out" : g.out;
  report::write_files(rep, out_dir, g.plots);
  std::cout << report::to_text(rep);
  std::cout << "\nwrote " << out_dir << "/report.json and " << out_dir << "/report.txt\n";
  int rc = 0;
  for (const auto& m : rep.models)
    if (!m.ok) rc = 2;
  return rc;
}

int cmd_estimate(const global_opts& g, const std::string& which) {
  const auto rep = run_filtered(g, which);
  std::cout << report::to_text(rep);
  if (!g.out.empty()) {
    report::write_files(rep, g.out, g.plots);
    std::cout << "\nwrote " << g.out << "/report.json and " << g.out << "/report.txt\n";
  }
  int rc = 0;
  for (const auto& m : rep.models)
    if (!m.ok) rc = 2;
  return rc;
}

int cmd_diagnose(const global_opts& g, const std::string& fit_path, const std::string& which) {
  const auto rep = report::load_json(fit_path);
  const auto ids = parse_model_filter(which, rep.models.size());
  for (int id : ids) {
    const pipeline::model_report* m = nullptr;
    for (const auto& cand : rep.models)
      if (cand.def.id == id) m = &cand;
    if (!m) fail(errc::parameter, "--model: run has no model " + std::to_string(id));
    std::printf("== %s: diagnostics ==\n", m->def.name.c_str());
    if (!m->ok) {
      std::printf("  aborted: %s\n", m->error.c_str());
      continue;
    }
    for (const auto& d : m->diagnostics) {
      const std::string df = d.df2 > 0
                                 ? "F(" + std::to_string(d.df1) + "," + std::to_string(d.df2) + ")"
                                 : "chi2(" + std::to_string(d.df1) + ")";
      std::printf("  %-44s %-10s stat = %8s  p = %s\n", d.name.c_str(), df.c_str(),
                  fmt(d.stat).c_str(), fmt(d.pvalue).c_str());
    }
    std::printf("  %-44s %s\n", "CUSUM", m->cusum.stable ? "Stable" : "Unstable");
    std::printf("  %-44s %s\n", "CUSUMSQ", m->cusumsq.stable ? "Stable" : "Unstable");
  }
  if (!g.plots.empty()) {
    pipeline::run_report filtered = rep;
    filtered.models.clear();
    for (const auto& m : rep.models)
      for (int id : ids)
        if (m.def.id == id) filtered.models.push_back(m);
    // reuse the writer for the plot files only: write into a scratch report dir
    report::write_files(filtered, g.plots, g.plots);
    std::printf("wrote CUSUM/CUSUMSQ plot data under %s\n", g.plots.c_str());
  }
  return 0;
}

int cmd_report(const global_opts& g, const std::string& fit_path) {
  const auto rep = report::load_json(fit_path);
  if (g.out.empty()) {
    std::cout << report::to_text(rep);
  } else {
    report::write_files(rep, g.out, g.plots);
    std::cout << "wrote " << g.out << "/report.json and " << g.out << "/report.txt\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ardlkit: ARDL bounds-testing toolkit and replication harness"};
  app.require_subcommand(1);

  global_opts g;
  app.add_option("--input", g.input, "input CSV snapshot (year column + variables)");
  app.add_option("--config", g.config, "run configuration file");
  auto* seed_opt = app.add_option("--seed", g.seed, "master seed (echoed into reports)");
  app.add_option("--out", g.out, "output directory for report files");
  app.add_option("--plots", g.plots, "directory for CUSUM/CUSUMSQ plot data");

  auto* ur = app.add_subcommand("unitroot", "ADF / Phillips-Perron unit-root table");
  std::string ur_vars, ur_det = "both", ur_tests = "adf,pp", ur_diff = "0,1";
  ur->add_option("--vars", ur_vars, "comma list of variables (default: all)");
  ur->add_option("--det", ur_det, "constant | trend | both");
  ur->add_option("--tests", ur_tests, "adf,pp");
  ur->add_option("--diff", ur_diff, "difference orders to test: 0,1");

  auto* bd = app.add_subcommand("bounds", "lag selection + Pesaran bounds F test");
  std::string bd_dep, bd_regs, bd_crit, bd_case;
  int bd_pmax = -1, bd_qmax = -1;
  bd->add_option("--dep", bd_dep, "dependent variable")->required();
  bd->add_option("--regs", bd_regs, "comma list of regressors")->required();
  bd->add_option("--pmax", bd_pmax, "max dependent lag");
  bd->add_option("--qmax", bd_qmax, "max regressor lag");
  bd->add_option("--criterion", bd_crit, "aic | sic");
  bd->add_option("--case", bd_case, "Pesaran case I..V");

  auto* est = app.add_subcommand("estimate", "short-run / long-run coefficient tables");
  std::string est_model = "all";
  est->add_option("--model", est_model, "model id, comma list, or 'all'");

  auto* dg = app.add_subcommand("diagnose", "print the diagnostic block of a stored run");
  std::string dg_fit, dg_model = "all";
  dg->add_option("--fit", dg_fit, "path to a report.json produced by replicate/estimate")
      ->required();
  dg->add_option("--model", dg_model, "model id, comma list, or 'all'");

  auto* rp = app.add_subcommand("replicate", "run the configured models end to end");
  std::string rp_model = "all";
  rp->add_option("--model", rp_model, "1|2|3|4|all (or comma list)");

  auto* rr = app.add_subcommand("report", "re-emit a stored run report");
  std::string rr_fit;
  rr->add_option("--fit", rr_fit, "path to a report.json")->required();

  // let the global flags (--input, --config, ...) appear after the subcommand
  for (auto* sub : {ur, bd, est, dg, rp, rr}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  g.seed_set = seed_opt->count() > 0;

  try {
    if (ur->parsed()) return cmd_unitroot(g, ur_vars, ur_det, ur_tests, ur_diff);
    if (bd->parsed()) return cmd_bounds(g, bd_dep, bd_regs, bd_pmax, bd_qmax, bd_crit, bd_case);
    if (est->parsed()) return cmd_estimate(g, est_model);
    if (dg->parsed()) return cmd_diagnose(g, dg_fit, dg_model);
    if (rp->parsed()) return cmd_replicate(g, rp_model);
    if (rr->parsed()) return cmd_report(g, rr_fit);
  } catch (const ardlkit::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
