#pragma once

#include <array>
#include <string>
#include <vector>

#include "ardlkit/common.hpp"
#include "ardlkit/regress.hpp"
#include "ardlkit/tsdata.hpp"

namespace ardlkit::ardl {

enum class criterion { aic, sic };
enum class bounds_case { I = 1, II = 2, III = 3, IV = 4, V = 5 };

bounds_case parse_bounds_case(const std::string& roman);

struct model_data {
  tsdata::series dep;
  std::vector<tsdata::series> regs;
  det_spec det = det_spec::constant;
};

struct spec {
  int p = 1;
  std::vector<int> q;

  int max_lag() const;
  int nparams(det_spec det) const;
  std::string str() const;  // "(2,2,0,2,1,2)"
};

/** Levels ARDL(p, q1..qk) OLS fit plus column bookkeeping. Keeps a copy of
 *  the model data so downstream reparameterizations can rebuild designs. */
struct fit {
  spec s;
  model_data md;
  det_spec det = det_spec::constant;
  int det_k = 0;
  std::vector<std::string> reg_names;
  int first_year = 0;
  regress::ols_fit reg;

  int dep_col(int j) const { return det_k + (j - 1); }           // y(-j), j = 1..p
  int reg_col(int i, int j) const;                               // x_i(-j), j = 0..q[i]
  double sum_dep_lags() const;                                   // sum of a_hat
  double sum_reg(int i) const;                                   // sum of b_hat_i.
};

fit fit_ardl(const model_data& md, const spec& s);

struct selection_result {
  spec chosen;
  double criterion_value = 0.0;  // on the common trimmed sample
  int n_candidates = 0;
  int n_skipped = 0;  // rank-deficient candidates
};

/** Exhaustive grid p in 1..pmax, q_i in 0..qmax, every candidate estimated on
 *  the identical (pmax, qmax)-trimmed sample. Ties prefer fewer parameters,
 *  then the lexicographically smaller (p, q). Serial and parallel modes select
 *  identically. */
selection_result select_lags(const model_data& md, int pmax, int qmax, criterion crit,
                             exec_mode mode = exec_mode::parallel);

struct bounds_cv_row {
  double level;  // 0.10, 0.05, 0.025, 0.01
  double i0, i1;
};

/** Asymptotic bound rows for k regressors under the given case, levels
 *  {10, 5, 2.5, 1}%, in that order. */
std::array<bounds_cv_row, 4> pesaran_critical_values(int k, bounds_case c);

enum class bounds_verdict { not_cointegrated, inconclusive, cointegrated };

struct bounds_result {
  double fstat = 0.0;
  int k = 0;
  int m = 0;  // restriction count
  bounds_case c = bounds_case::III;
  int effective_T = 0;
  std::array<bounds_cv_row, 4> cvs;
  regress::ols_fit cec;         // unrestricted conditional EC regression
  std::vector<int> level_cols;  // y(-1), x_i(-1) columns within cec

  bounds_verdict verdict(double level) const;
  std::string stars() const;  // vs the upper bounds
};

/** Pesaran-Shin-Smith bounds F test on the conditional error-correction
 *  regression of the given spec. */
bounds_result bounds_f_test(const model_data& md, const spec& s, bounds_case c);

struct long_run_result {
  std::vector<std::string> names;  // regressors, then deterministic terms
  Eigen::VectorXd theta;
  Eigen::VectorXd se;  // delta method
  Eigen::VectorXd tstat;
  Eigen::VectorXd pvalue;
  double denom = 0.0;  // 1 - sum(a_hat)
  int n_regs = 0;
};

/** Long-run levels coefficients theta_i = sum_j(b_ij) / (1 - sum(a)) with
 *  delta-method standard errors from the levels-fit covariance. */
long_run_result long_run(const fit& f);

struct ecm_result {
  regress::ols_fit reg;
  long_run_result lr;
  int ect_col = 0;
  std::vector<std::string> reg_names;
  int first_year = 0;

  double ect() const { return reg.beta(ect_col); }
  double ect_se() const { return reg.se(ect_col); }
  // contemporaneous short-run coefficient of regressor i (column of d(x_i))
  int shortrun_col(int i) const;

  spec s;
  det_spec det = det_spec::constant;
  int det_k = 0;
};

/** Error-correction reparameterization: Delta y on det, Delta y lags,
 *  Delta x lags (contemporaneous term always included), ECT(-1) built from the
 *  long-run theta. The ECT coefficient equals sum(a_hat) - 1 identically. */
ecm_result to_ecm(const fit& f);

// Shared star convention for coefficient tables.
std::string stars_for_pvalue(double p);

}  // namespace ardlkit::ardl
