#include "ardlkit/regress.hpp"

#include <cmath>
#include <numbers>

#include "ardlkit/dist.hpp"
#include "ardlkit/errors.hpp"

namespace ardlkit::regress {

ols_fit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
            std::vector<std::string> colnames) {
  const int T = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  if (y.size() != T) fail(errc::parameter, "ols: y and X row counts differ");
  if (k < 1) fail(errc::parameter, "ols: empty design");
  if (T <= k)
    fail(errc::dof, "ols: " + std::to_string(T) + " observations for " + std::to_string(k) +
                        " parameters");
  if (!y.allFinite() || !X.allFinite()) fail(errc::parameter, "ols: non-finite input");
  if (!colnames.empty() && static_cast<int>(colnames.size()) != k)
    fail(errc::parameter, "ols: column name count mismatch");
  if (colnames.empty()) {
    colnames.reserve(k);
    for (int j = 0; j < k; ++j) colnames.push_back("x" + std::to_string(j));
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(k - 1);
  if (!(smax > 0.0) || smin < kRankTol * smax) {
    // Name the columns loading on the near-null direction.
    Eigen::VectorXd v = svd.matrixV().col(k - 1).cwiseAbs();
    const double vmax = v.maxCoeff();
    std::string cols;
    for (int j = 0; j < k; ++j)
      if (v(j) > 0.25 * vmax) cols += (cols.empty() ? "" : ", ") + colnames[j];
    fail(errc::collinear, "ols: design numerically rank deficient (sv ratio " +
                              std::to_string(smax > 0 ? smin / smax : 0.0) +
                              "); offending columns: " + cols);
  }

  ols_fit f;
  f.colnames = std::move(colnames);
  f.nobs = T;
  f.nparams = k;
  f.y = y;
  f.X = X;
  f.beta = svd.solve(y);
  f.fitted = X * f.beta;
  f.resid = y - f.fitted;
  f.ssr = f.resid.squaredNorm();
  f.sigma2 = f.ssr / (T - k);

  // sigma2 * V diag(1/s^2) V'
  Eigen::VectorXd inv_s2 = sv.array().square().inverse();
  f.cov = f.sigma2 * svd.matrixV() * inv_s2.asDiagonal() * svd.matrixV().transpose();
  f.se = f.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  f.tstat.resize(k);
  f.pvalue.resize(k);
  for (int j = 0; j < k; ++j) {
    f.tstat(j) = f.se(j) > 0.0 ? f.beta(j) / f.se(j) : 0.0;
    f.pvalue(j) = dist::t_sf_twosided(f.tstat(j), T - k);
  }

  for (int j = 0; j < k; ++j)
    if ((X.col(j).array() == 1.0).all()) {
      f.has_const = true;
      break;
    }
  const double tss = f.has_const ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
  f.r2 = tss > 0.0 ? 1.0 - f.ssr / tss : 0.0;
  f.adj_r2 = tss > 0.0 ? 1.0 - (1.0 - f.r2) * double(T - (f.has_const ? 1 : 0)) / double(T - k)
                       : 0.0;

  // Concentrated Gaussian log-likelihood with the ML variance SSR/T.
  f.loglik = -0.5 * T * (std::log(2.0 * std::numbers::pi) + std::log(f.ssr / T) + 1.0);
  return f;
}

ic_values info_criteria(const ols_fit& fit) {
  const double k = fit.nparams;
  return {-2.0 * fit.loglik + 2.0 * k, -2.0 * fit.loglik + k * std::log(double(fit.nobs))};
}

hac_variance hac_long_run_variance(const Eigen::VectorXd& u, int L) {
  const int T = static_cast<int>(u.size());
  if (T < 2) fail(errc::dof, "hac: need at least 2 observations");
  if (L < 0) fail(errc::parameter, "hac: negative truncation lag");
  if (L > T - 1) fail(errc::parameter, "hac: truncation lag exceeds T-1");
  const double mean = u.mean();
  Eigen::VectorXd v = u.array() - mean;

  auto gamma = [&](int j) {
    double s = 0.0;
    for (int t = j; t < T; ++t) s += v(t) * v(t - j);
    return s / T;
  };

  const double g0 = gamma(0);
  double lam2 = g0;
  for (int j = 1; j <= L; ++j) lam2 += 2.0 * (1.0 - double(j) / (L + 1)) * gamma(j);

  hac_variance out{lam2, g0, false};
  const double floor_ = g0 * 1e-8;
  if (lam2 < floor_) {
    out.value = floor_;
    out.clamped = true;
  }
  return out;
}

f_test_result f_test_linear_restrictions(const ols_fit& u, const ols_fit& r, int m) {
  if (m < 1) fail(errc::parameter, "f_test: need at least one restriction");
  if (u.nobs != r.nobs)
    fail(errc::incompatible, "f_test: fits cover different samples (" + std::to_string(u.nobs) +
                                 " vs " + std::to_string(r.nobs) + " rows)");
  if ((u.y - r.y).lpNorm<Eigen::Infinity>() > 0.0)
    fail(errc::incompatible, "f_test: fits have different dependent variables");
  if (r.nparams + m != u.nparams)
    fail(errc::incompatible, "f_test: restriction count does not match parameter difference");
  const int df2 = u.nobs - u.nparams;
  const double num = std::max(r.ssr - u.ssr, 0.0) / m;
  if (!(u.ssr > 0.0)) fail(errc::degenerate, "f_test: unrestricted fit has zero residual variance");
  const double stat = num / (u.ssr / df2);
  return {stat, dist::f_sf(stat, m, df2), m, df2};
}

}  // namespace ardlkit::regress
