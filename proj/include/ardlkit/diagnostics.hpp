#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ardlkit/regress.hpp"

namespace ardlkit::diag {

/** Chi-square form LM test. */
struct lm_result {
  std::string name;
  double stat = 0.0;
  double pvalue = 1.0;
  int df = 0;
};

struct f_result {
  std::string name;
  double stat = 0.0;
  double pvalue = 1.0;
  int df1 = 0, df2 = 0;
};

/** Breusch-Godfrey serial-correlation LM: residuals regressed on the original
 *  design plus m own lags (presample lags zero), T*R^2 ~ chi2(m). */
lm_result breusch_godfrey(const regress::ols_fit& f, int m = 2);

/** Breusch-Pagan-Godfrey heteroskedasticity LM: squared residuals on the
 *  original design, T*R^2 ~ chi2(#non-constant columns). */
lm_result breusch_pagan(const regress::ols_fit& f);

/** ARCH LM on the residuals: u_t^2 on const and m lags of u^2,
 *  (T-m)*R^2 ~ chi2(m). */
lm_result arch_lm(const regress::ols_fit& f, int m = 1);

struct jb_result {
  double stat = 0.0;
  double pvalue = 1.0;
  double skewness = 0.0;
  double kurtosis = 3.0;
  int n = 0;
};

/** Jarque-Bera normality test on a residual vector (ML moments, chi2(2)). */
jb_result jarque_bera(const Eigen::VectorXd& u);

/** Ramsey RESET: F test of fitted-value powers 2..max_power added to the
 *  design. */
f_result ramsey_reset(const regress::ols_fit& f, int max_power = 2);

/** Standardized one-step-ahead recursive residuals w_t, t = k+1..T
 *  (length T-k). Requires the first k rows of X to have full rank. */
Eigen::VectorXd recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

/** Two-sided 5% significance line offset for the CUSUMSQ test; n is the
 *  Durbin table index (T-k)/2 - 1, interpolated linearly between integers. */
double durbin_c0(double n);

struct stability_result {
  std::string name;     // "CUSUM" / "CUSUMSQ"
  Eigen::VectorXd stat;  // W_t or S_t, t = k+1..T
  Eigen::VectorXd lower, upper;
  std::vector<int> index;  // t values (1-based observation numbers)
  bool stable = true;

  int size() const { return static_cast<int>(stat.size()); }
};

/** Brown-Durbin-Evans CUSUM of recursive residuals with 5% straight-line
 *  bounds. */
stability_result cusum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

/** CUSUM of squares with Durbin 5% parallel bounds. */
stability_result cusumsq(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

}  // namespace ardlkit::diag
