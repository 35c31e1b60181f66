#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ardlkit/ardl.hpp"
#include "ardlkit/common.hpp"
#include "ardlkit/tsdata.hpp"
#include "ardlkit/unitroot.hpp"

namespace ardlkit::pipeline {

struct model_def {
  int id = 0;  // 1-based
  std::string name;
  std::string dep;
  std::vector<std::string> regs;
};

/** Flat key-value run configuration; unknown keys are schema errors. */
struct run_config {
  std::string input_path;
  std::uint64_t seed = 0;
  int pmax = 2;
  int qmax = 2;
  ardl::criterion crit = ardl::criterion::aic;
  ardl::bounds_case bcase = ardl::bounds_case::III;
  int lm_lags = 2;
  int reset_power = 2;
  std::string het = "bpg";  // bpg | arch
  unitroot::lag_selection ur_lags = unitroot::lag_selection::sic();
  exec_mode mode = exec_mode::parallel;
  std::map<std::string, tsdata::transform_op> transforms;
  std::vector<model_def> models;

  std::string echo;  // the raw config text, carried into the report
};

run_config parse_config_text(const std::string& text);
run_config load_config(const std::string& path);

// --- report payload ---------------------------------------------------------

struct coef_row {
  std::string name;
  double coef = 0.0, se = 0.0, tstat = 0.0, pvalue = 1.0;
  std::string stars;
};

struct diag_row {
  std::string name;
  double stat = 0.0;
  int df1 = 0, df2 = 0;  // df2 == 0 means chi-square(df1)
  double pvalue = 1.0;
};

struct path_point {
  int year = 0;
  double value = 0.0, lower = 0.0, upper = 0.0;
};

struct stability_block {
  std::string kind;  // CUSUM / CUSUMSQ
  bool stable = true;
  std::vector<path_point> points;
};

struct ur_entry {
  std::string var;
  int diff_order = 0;        // 0 level, 1 first difference
  std::string det;           // constant / constant_trend
  std::string test;          // ADF / PP
  double stat = 0.0;
  int order = 0;             // chosen lag (ADF) or bandwidth (PP)
  double cv1 = 0.0, cv5 = 0.0, cv10 = 0.0;
  std::string stars;
};

struct model_report {
  model_def def;
  bool ok = false;
  std::string error;  // set when !ok

  std::string selected_spec;  // "(2,2,0,2,1,2)"
  int p = 0;
  std::vector<int> q;
  double criterion_value = 0.0;
  std::string criterion_name;

  double fstat = 0.0;
  int bounds_k = 0, bounds_m = 0;
  std::string bounds_case_name;
  std::array<ardl::bounds_cv_row, 4> bounds_cvs{};
  std::string bounds_verdict;  // at 5%
  std::string bounds_stars;

  std::vector<coef_row> shortrun;  // ECT(-1) last
  std::vector<coef_row> longrun;   // deterministic terms last
  double ect = 0.0, ect_se = 0.0;
  bool ect_stable_adjustment = false;  // ect in (-2, 0)

  std::vector<diag_row> diagnostics;
  stability_block cusum, cusumsq;

  int sample_first = 0, sample_last = 0;
  int effective_T = 0;
};

struct run_report {
  std::string version;
  std::uint64_t seed = 0;
  std::string config_echo;
  std::vector<ur_entry> unit_roots;
  std::vector<model_report> models;
};

/** Full replication sequence: unit-root table, then per model the I(2) gate,
 *  lag selection, bounds test, estimation, diagnostics, stability. Models run
 *  concurrently in parallel mode; per-model failures become error entries. */
run_report run_pipeline(const run_config& cfg);
run_report run_pipeline(const run_config& cfg, const tsdata::dataset& raw);

/** Apply the configured transforms; series keep their input names. Errors on
 *  transforms referencing absent variables. */
tsdata::dataset apply_transforms(const run_config& cfg, const tsdata::dataset& raw);

}  // namespace ardlkit::pipeline
