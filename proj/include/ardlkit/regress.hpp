#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ardlkit::regress {

/** OLS fit. Solved through an SVD of the design (never the raw normal
 *  equations); a singular-value ratio below `rank_tol` is a hard
 *  collinearity error naming the offending columns. */
struct ols_fit {
  Eigen::VectorXd beta;
  Eigen::VectorXd se;
  Eigen::VectorXd tstat;
  Eigen::VectorXd pvalue;  // two-sided, t(T-k)
  Eigen::MatrixXd cov;     // sigma2 * (X'X)^{-1}, via the SVD factors
  Eigen::VectorXd fitted;
  Eigen::VectorXd resid;
  double ssr = 0.0;
  double sigma2 = 0.0;  // SSR / (T - k)
  double loglik = 0.0;  // Gaussian, ML variance SSR / T
  double r2 = 0.0;      // centered when the design has an intercept column
  double adj_r2 = 0.0;
  int nobs = 0;
  int nparams = 0;
  bool has_const = false;
  std::vector<std::string> colnames;

  // Inputs are kept: the diagnostics battery re-uses the design, and the
  // f-test checks the two fits really share a sample.
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
};

inline constexpr double kRankTol = 1e-10;

ols_fit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
            std::vector<std::string> colnames = {});

struct ic_values {
  double aic;
  double sic;
};

// AIC = -2 loglik + 2k, SIC = -2 loglik + k ln(T).
ic_values info_criteria(const ols_fit& fit);

struct hac_variance {
  double value;    // lambda^2
  double gamma0;   // sample variance of u
  bool clamped;    // hit the positivity floor
};

/** Newey-West long-run variance with Bartlett weights, truncation L.
 *  L = 0 degenerates to the sample variance. */
hac_variance hac_long_run_variance(const Eigen::VectorXd& u, int L);

struct f_test_result {
  double stat;
  double pvalue;
  int df1;
  int df2;
};

/** F = ((SSR_r - SSR_u)/m) / (SSR_u/(T - k_u)). The restricted fit must nest
 *  in the unrestricted one on the identical sample. */
f_test_result f_test_linear_restrictions(const ols_fit& unrestricted, const ols_fit& restricted,
                                         int m);

}  // namespace ardlkit::regress
