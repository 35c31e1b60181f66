#pragma once

#include <string>

#include "ardlkit/common.hpp"
#include "ardlkit/tsdata.hpp"

namespace ardlkit::unitroot {

struct lag_selection {
  enum class rule { fixed, aic, sic } r = rule::sic;
  int p = -1;  // fixed order, or pmax for aic/sic; -1 = Schwert default

  static lag_selection fixed(int p) { return {rule::fixed, p}; }
  static lag_selection aic(int pmax = -1) { return {rule::aic, pmax}; }
  static lag_selection sic(int pmax = -1) { return {rule::sic, pmax}; }
};

struct bandwidth {
  enum class rule { automatic, fixed } r = rule::automatic;
  int L = 0;

  static bandwidth automatic() { return {rule::automatic, 0}; }
  static bandwidth fixed(int L) { return {rule::fixed, L}; }
};

struct ur_result {
  std::string test;  // "adf" | "pp"
  det_spec det = det_spec::constant;
  double stat = 0.0;
  int lags = 0;         // ADF augmentation order / PP truncation lag
  int effective_T = 0;  // rows of the final regression
  double cv1 = 0.0, cv5 = 0.0, cv10 = 0.0;

  bool reject(double level) const;     // level in {0.01, 0.05, 0.10}
  std::string stars() const;           // "***" / "**" / "*" / ""
};

struct df_cvs {
  double cv1, cv5, cv10;
};

/** Finite-sample Dickey-Fuller critical values from the MacKinnon (1991)
 *  response surface cv = b_inf + b1/T + b2/T^2. */
df_cvs df_critical_values(int effective_T, det_spec det);

// Schwert's rule-of-thumb maximum augmentation order, floor(12*(T/100)^{1/4}).
int schwert_pmax(int T);

/** Augmented Dickey-Fuller t-test: Delta y_t on det terms, y_{t-1},
 *  Delta y_{t-1..t-p}. Statistic = t-ratio on y_{t-1}. AIC/SIC selection
 *  compares candidates p = 0..pmax on the common pmax-trimmed sample, then
 *  refits the winner on its own maximal sample. */
ur_result adf_test(const tsdata::series& y, det_spec det,
                   lag_selection sel = lag_selection::sic());

/** Phillips-Perron Z_t: the p = 0 Dickey-Fuller regression with the
 *  serial-correlation correction driven by the Bartlett long-run variance.
 *  Automatic truncation L = floor(4*(T/100)^{2/9}). */
ur_result pp_test(const tsdata::series& y, det_spec det, bandwidth bw = bandwidth::automatic());

}  // namespace ardlkit::unitroot
