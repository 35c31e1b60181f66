#include "ardlkit/unitroot.hpp"

#include <cmath>
#include <limits>

#include "ardlkit/errors.hpp"
#include "ardlkit/regress.hpp"

namespace ardlkit::unitroot {

namespace {

// MacKinnon (1991) response-surface coefficients {b_inf, b1, b2},
// rows: 1%, 5%, 10%.
constexpr double kMacKinnonConst[3][3] = {
    {-3.4336, -5.999, -29.25},
    {-2.8621, -2.738, -8.36},
    {-2.5671, -1.438, -4.48},
};
constexpr double kMacKinnonTrend[3][3] = {
    {-3.9638, -8.353, -47.44},
    {-3.4126, -4.039, -17.83},
    {-3.1279, -2.418, -7.58},
};

double surface(const double (&row)[3], int T) {
  return row[0] + row[1] / T + row[2] / (double(T) * T);
}

}  // namespace

bool ur_result::reject(double level) const {
  if (level == 0.01) return stat < cv1;
  if (level == 0.05) return stat < cv5;
  if (level == 0.10) return stat < cv10;
  fail(errc::parameter, "unsupported significance level");
}

std::string ur_result::stars() const {
  if (stat < cv1) return "***";
  if (stat < cv5) return "**";
  if (stat < cv10) return "*";
  return "";
}

df_cvs df_critical_values(int effective_T, det_spec det) {
  if (effective_T < 10) fail(errc::parameter, "df_critical_values: effective T below 10");
  if (det == det_spec::none)
    fail(errc::parameter, "df_critical_values: only constant / constant_trend supported");
  const auto& tab = (det == det_spec::constant) ? kMacKinnonConst : kMacKinnonTrend;
  return {surface(tab[0], effective_T), surface(tab[1], effective_T),
          surface(tab[2], effective_T)};
}

int schwert_pmax(int T) {
  if (T < 1) fail(errc::parameter, "schwert_pmax: empty series");
  return static_cast<int>(std::floor(12.0 * std::pow(T / 100.0, 0.25)));
}

namespace {

struct df_regression {
  regress::ols_fit fit;
  int gamma_col;  // index of the lagged level
};

// Delta y_t on [det, Delta y_{t-1..t-p}, y_{t-1}], optionally truncated at the
// front so several augmentation orders share one sample.
df_regression df_regress(const tsdata::series& y, det_spec det, int p, int common_first_year) {
  const auto dy = tsdata::transform(y, tsdata::transform_op::diff());
  const auto ylag = tsdata::transform(y, tsdata::transform_op::lag(1));
  auto d = tsdata::build_design(dy, p, {ylag}, {0}, det);
  if (common_first_year > d.first_year) {
    const int drop = common_first_year - d.first_year;
    const int keep = d.nobs() - drop;
    if (keep < 1) fail(errc::dof, "adf: empty common sample");
    d.y = d.y.tail(keep).eval();
    d.X = d.X.bottomRows(keep).eval();
    d.first_year = common_first_year;
  }
  df_regression out{regress::ols(d.y, d.X, d.colnames), 0};
  out.gamma_col = static_cast<int>(d.colnames.size()) - 1;  // y(-1) is built last
  return out;
}

ur_result finish(const std::string& test, det_spec det, const df_regression& r, int lags) {
  ur_result res;
  res.test = test;
  res.det = det;
  res.lags = lags;
  res.effective_T = r.fit.nobs;
  res.stat = r.fit.tstat(r.gamma_col);
  const auto cv = df_critical_values(r.fit.nobs, det);
  res.cv1 = cv.cv1;
  res.cv5 = cv.cv5;
  res.cv10 = cv.cv10;
  return res;
}

}  // namespace

ur_result adf_test(const tsdata::series& y, det_spec det, lag_selection sel) {
  const int N = y.size();
  if (N < 4) fail(errc::dof, "adf: series too short");

  if (sel.r == lag_selection::rule::fixed) {
    if (sel.p < 0) fail(errc::parameter, "adf: fixed lag order must be nonnegative");
    auto r = df_regress(y, det, sel.p, std::numeric_limits<int>::min());
    auto res = finish("adf", det, r, sel.p);
    return res;
  }

  const int pmax = sel.p >= 0 ? sel.p : schwert_pmax(N);
  const int det_k = det == det_spec::constant_trend ? 2 : det == det_spec::constant ? 1 : 0;
  const int common_T = N - 1 - pmax;
  if (common_T < det_k + 1 + pmax + 2)
    fail(errc::dof, "adf: sample too short for pmax=" + std::to_string(pmax) +
                        " with 2 residual degrees of freedom");

  const int common_first = y.start_year + 1 + pmax;
  int best_p = -1;
  double best_crit = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= pmax; ++p) {
    auto r = df_regress(y, det, p, common_first);
    const auto ic = regress::info_criteria(r.fit);
    const double crit = sel.r == lag_selection::rule::aic ? ic.aic : ic.sic;
    if (crit < best_crit) {  // ties keep the smaller p (ascending scan)
      best_crit = crit;
      best_p = p;
    }
  }
  auto r = df_regress(y, det, best_p, std::numeric_limits<int>::min());
  return finish("adf", det, r, best_p);
}

ur_result pp_test(const tsdata::series& y, det_spec det, bandwidth bw) {
  const int N = y.size();
  if (N < 4) fail(errc::dof, "pp: series too short");
  auto r = df_regress(y, det, 0, std::numeric_limits<int>::min());
  const int T = r.fit.nobs;

  int L;
  if (bw.r == bandwidth::rule::fixed) {
    if (bw.L < 0) fail(errc::parameter, "pp: negative truncation lag");
    L = bw.L;
  } else {
    L = static_cast<int>(std::floor(4.0 * std::pow(T / 100.0, 2.0 / 9.0)));
  }

  const auto hac = regress::hac_long_run_variance(r.fit.resid, L);
  const double lam2 = hac.value;
  const double g0 = hac.gamma0;
  const double t_gamma = r.fit.tstat(r.gamma_col);
  const double se_gamma = r.fit.se(r.gamma_col);
  const double s = std::sqrt(r.fit.sigma2);

  // Z_t = t*(g0/lam2)^{1/2} - T*(lam2-g0)*se / (2*lam*s); the correction
  // vanishes when lam2 == g0 and the whole statistic is invariant to
  // affine rescaling of y.
  auto res = finish("pp", det, r, L);
  res.stat = t_gamma * std::sqrt(g0 / lam2) -
             double(T) * (lam2 - g0) * se_gamma / (2.0 * std::sqrt(lam2) * s);
  return res;
}

}  // namespace ardlkit::unitroot
