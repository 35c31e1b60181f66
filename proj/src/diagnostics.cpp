#include "ardlkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ardlkit/dist.hpp"
#include "ardlkit/errors.hpp"

namespace ardlkit::diag {

namespace {

// Aux-regression R^2 for LM statistics: centered when the design carries an
// intercept (all our aux designs do).
double aux_r2(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
              const std::vector<std::string>& names) {
  return regress::ols(y, X, names).r2;
}

}  // namespace

lm_result breusch_godfrey(const regress::ols_fit& f, int m) {
  if (m < 1) fail(errc::parameter, "breusch_godfrey: lag order must be >= 1");
  const int T = f.nobs;
  const int k = f.nparams;
  if (T < k + m + 2) fail(errc::dof, "breusch_godfrey: sample too short for " +
                                         std::to_string(m) + " residual lags");

  Eigen::MatrixXd X(T, k + m);
  X.leftCols(k) = f.X;
  std::vector<std::string> names = f.colnames;
  for (int j = 1; j <= m; ++j) {
    for (int t = 0; t < T; ++t) X(t, k + j - 1) = t - j >= 0 ? f.resid(t - j) : 0.0;
    names.push_back("resid(-" + std::to_string(j) + ")");
  }
  const double r2 = aux_r2(f.resid, X, names);
  lm_result out;
  out.name = "Breusch-Godfrey LM(" + std::to_string(m) + ")";
  out.stat = T * r2;
  out.df = m;
  out.pvalue = dist::chi2_sf(out.stat, m);
  return out;
}

lm_result breusch_pagan(const regress::ols_fit& f) {
  const int T = f.nobs;
  const int k = f.nparams;
  if (!f.has_const)
    fail(errc::parameter, "breusch_pagan: design must include an intercept");
  if (k < 2) fail(errc::parameter, "breusch_pagan: no non-constant regressors to test");
  if (T < k + 2) fail(errc::dof, "breusch_pagan: sample too short");

  const Eigen::VectorXd u2 = f.resid.array().square();
  const double r2 = aux_r2(u2, f.X, f.colnames);
  lm_result out;
  out.name = "Breusch-Pagan-Godfrey";
  out.stat = T * r2;
  out.df = k - 1;
  out.pvalue = dist::chi2_sf(out.stat, out.df);
  return out;
}

lm_result arch_lm(const regress::ols_fit& f, int m) {
  if (m < 1) fail(errc::parameter, "arch_lm: lag order must be >= 1");
  const int T = f.nobs;
  if (T - m < m + 3) fail(errc::dof, "arch_lm: sample too short");

  const Eigen::VectorXd u2 = f.resid.array().square();
  const int n = T - m;
  Eigen::VectorXd y(n);
  Eigen::MatrixXd X(n, 1 + m);
  std::vector<std::string> names{"const"};
  X.col(0).setOnes();
  for (int j = 1; j <= m; ++j) names.push_back("resid^2(-" + std::to_string(j) + ")");
  for (int t = 0; t < n; ++t) {
    y(t) = u2(t + m);
    for (int j = 1; j <= m; ++j) X(t, j) = u2(t + m - j);
  }
  const double r2 = aux_r2(y, X, names);
  lm_result out;
  out.name = "ARCH LM(" + std::to_string(m) + ")";
  out.stat = n * r2;
  out.df = m;
  out.pvalue = dist::chi2_sf(out.stat, m);
  return out;
}

jb_result jarque_bera(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  if (n < 8) fail(errc::dof, "jarque_bera: needs at least 8 observations");
  const double mean = u.mean();
  const Eigen::ArrayXd d = u.array() - mean;
  const double m2 = d.square().mean();
  const double scale = std::max(d.abs().maxCoeff(), 1.0);
  if (m2 <= 1e-24 * scale * scale)
    fail(errc::degenerate, "jarque_bera: residuals are numerically constant");
  const double m3 = d.cube().mean();
  const double m4 = d.square().square().mean();

  jb_result out;
  out.n = n;
  out.skewness = m3 / std::pow(m2, 1.5);
  out.kurtosis = m4 / (m2 * m2);
  out.stat = n / 6.0 *
             (out.skewness * out.skewness +
              0.25 * (out.kurtosis - 3.0) * (out.kurtosis - 3.0));
  out.pvalue = dist::chi2_sf(out.stat, 2);
  return out;
}

f_result ramsey_reset(const regress::ols_fit& f, int max_power) {
  if (max_power < 2) fail(errc::parameter, "ramsey_reset: max_power must be >= 2");
  const int T = f.nobs;
  const int k = f.nparams;
  const int m = max_power - 1;
  if (T < k + m + 2) fail(errc::dof, "ramsey_reset: sample too short");

  // Standardize the fitted values before powering; the added span (and hence
  // the F statistic) is unchanged because yhat and the constant already lie
  // in the design's column space.
  const double mu = f.fitted.mean();
  const Eigen::ArrayXd c = f.fitted.array() - mu;
  const double sd = std::sqrt(c.square().mean());
  if (sd <= 1e-12 * std::max(std::fabs(mu), 1.0))
    fail(errc::degenerate, "ramsey_reset: fitted values are constant");
  const Eigen::ArrayXd z = c / sd;

  Eigen::MatrixXd X(T, k + m);
  X.leftCols(k) = f.X;
  std::vector<std::string> names = f.colnames;
  for (int pw = 2; pw <= max_power; ++pw) {
    X.col(k + pw - 2) = z.pow(pw).matrix();
    names.push_back("fitted^" + std::to_string(pw));
  }
  auto unrestricted = regress::ols(f.y, X, names);
  auto ft = regress::f_test_linear_restrictions(unrestricted, f, m);

  f_result out;
  out.name = "Ramsey RESET(" + std::to_string(max_power) + ")";
  out.stat = ft.stat;
  out.pvalue = ft.pvalue;
  out.df1 = ft.df1;
  out.df2 = ft.df2;
  return out;
}

Eigen::VectorXd recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const int T = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  if (T < k + 2) fail(errc::dof, "recursive_residuals: needs at least k + 2 observations");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.topRows(k));
  qr.setThreshold(1e-10);
  if (qr.rank() < k)
    fail(errc::stability,
         "recursive_residuals: initial window of " + std::to_string(k) +
             " observations is rank deficient; recursive estimation undefined");

  Eigen::VectorXd w(T - k);
  // Expanding window: (X'X)^{-1} and beta maintained by rank-one updates.
  Eigen::MatrixXd XtX = X.topRows(k).transpose() * X.topRows(k);
  Eigen::MatrixXd P = XtX.inverse();
  Eigen::VectorXd beta = P * (X.topRows(k).transpose() * y.head(k));
  for (int t = k; t < T; ++t) {
    const Eigen::VectorXd x = X.row(t).transpose();
    const Eigen::VectorXd Px = P * x;
    const double ft = 1.0 + x.dot(Px);
    w(t - k) = (y(t) - x.dot(beta)) / std::sqrt(ft);
    // Sherman-Morrison update to include row t.
    P -= (Px * Px.transpose()) / ft;
    beta += Px * ((y(t) - x.dot(beta)) / ft);
  }
  return w;
}

namespace {

// Two-sided 5% CUSUMSQ line offsets c0(n), n = 1..100, from the exact
// boundary-crossing distribution of uniform order statistics.
constexpr double kDurbinC0[100] = {
    0.47500, 0.50855, 0.46702, 0.44641, 0.42174, 0.40045, 0.38294, 0.36697,
    0.35277, 0.34022, 0.32894, 0.31869, 0.30935, 0.30081, 0.29296, 0.28570,
    0.27897, 0.27270, 0.26685, 0.26137, 0.25622, 0.25136, 0.24679, 0.24245,
    0.23835, 0.23445, 0.23074, 0.22721, 0.22383, 0.22061, 0.21752, 0.21457,
    0.21173, 0.20901, 0.20639, 0.20387, 0.20144, 0.19910, 0.19683, 0.19465,
    0.19254, 0.19050, 0.18852, 0.18661, 0.18475, 0.18295, 0.18120, 0.17950,
    0.17785, 0.17624, 0.17468, 0.17316, 0.17168, 0.17024, 0.16884, 0.16746,
    0.16613, 0.16482, 0.16355, 0.16230, 0.16109, 0.15990, 0.15874, 0.15760,
    0.15649, 0.15540, 0.15433, 0.15329, 0.15227, 0.15127, 0.15028, 0.14932,
    0.14838, 0.14745, 0.14654, 0.14565, 0.14478, 0.14392, 0.14307, 0.14224,
    0.14143, 0.14063, 0.13984, 0.13907, 0.13830, 0.13756, 0.13682, 0.13610,
    0.13538, 0.13468, 0.13399, 0.13331, 0.13264, 0.13198, 0.13133, 0.13069,
    0.13006, 0.12944, 0.12883, 0.12823};

}  // namespace

double durbin_c0(double n) {
  if (n < 1.0) fail(errc::dof, "durbin_c0: CUSUMSQ needs (T-k)/2 - 1 >= 1");
  if (n >= 100.0) {
    // Large-sample tail: c0 ~ 1.358 / (sqrt(n) + 0.5 + 0.23/sqrt(n)),
    // anchored to match the table at n = 100.
    const double kd = 1.358;
    auto approx = [&](double nn) {
      const double s = std::sqrt(nn);
      return kd / (s + 0.5 + 0.23 / s);
    };
    return kDurbinC0[99] * approx(n) / approx(100.0);
  }
  const int lo = static_cast<int>(std::floor(n));
  const double frac = n - lo;
  if (frac == 0.0) return kDurbinC0[lo - 1];
  return kDurbinC0[lo - 1] * (1.0 - frac) + kDurbinC0[lo] * frac;
}

stability_result cusum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const int T = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  const Eigen::VectorXd w = recursive_residuals(y, X);
  const int n = T - k;
  if (n < 2) fail(errc::dof, "cusum: too few recursive residuals");

  const double wbar = w.mean();
  const double sw = std::sqrt((w.array() - wbar).square().sum() / (n - 1));
  if (sw <= 0.0) fail(errc::degenerate, "cusum: recursive residuals are constant");

  stability_result out;
  out.name = "CUSUM";
  out.stat.resize(n);
  out.lower.resize(n);
  out.upper.resize(n);
  out.index.resize(n);
  const double a = 0.948;  // 5% Brown-Durbin-Evans parameter
  const double root = std::sqrt(static_cast<double>(n));
  double cum = 0.0;
  out.stable = true;
  for (int i = 0; i < n; ++i) {
    cum += w(i) / sw;
    out.stat(i) = cum;
    const double band = a * root + 2.0 * a * (i + 1) / root;
    out.lower(i) = -band;
    out.upper(i) = band;
    out.index[i] = k + i + 1;
    if (cum < out.lower(i) || cum > out.upper(i)) out.stable = false;
  }
  return out;
}

stability_result cusumsq(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const int T = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  const Eigen::VectorXd w = recursive_residuals(y, X);
  const int n = T - k;
  const double total = w.squaredNorm();
  if (total <= 0.0) fail(errc::degenerate, "cusumsq: recursive residuals are all zero");

  const double c0 = durbin_c0((n - 2) / 2.0);

  stability_result out;
  out.name = "CUSUMSQ";
  out.stat.resize(n);
  out.lower.resize(n);
  out.upper.resize(n);
  out.index.resize(n);
  out.stable = true;
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    cum += w(i) * w(i);
    out.stat(i) = cum / total;
    const double mid = static_cast<double>(i + 1) / n;
    out.lower(i) = mid - c0;
    out.upper(i) = mid + c0;
    out.index[i] = k + i + 1;
    if (out.stat(i) < out.lower(i) || out.stat(i) > out.upper(i)) out.stable = false;
  }
  return out;
}

}  // namespace ardlkit::diag
