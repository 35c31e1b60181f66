#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ardlkit/common.hpp"

namespace ardlkit::tsdata {

/** An annual series on a contiguous year axis. All stored values are
 *  observations; lagging/differencing shifts `start_year` instead of padding. */
struct series {
  std::string name;
  int start_year = 0;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  int end_year() const { return start_year + size() - 1; }
  bool covers(int year) const { return year >= start_year && year <= end_year(); }
  double at_year(int year) const;
};

// Supported per-variable transforms.
struct transform_op {
  enum class kind { identity, log, log_shift, diff, lag } k = kind::identity;
  double shift = 0.0;  // log_shift constant c
  int lags = 1;        // lag(k)

  static transform_op identity() { return {}; }
  static transform_op log() { return {kind::log, 0.0, 0}; }
  static transform_op log_shift(double c) { return {kind::log_shift, c, 0}; }
  static transform_op diff() { return {kind::diff, 0.0, 0}; }
  static transform_op lag(int k) { return {kind::lag, 0.0, k}; }
};

series transform(const series& s, const transform_op& op);

struct dataset {
  int start_year = 0;
  std::vector<series> columns;

  const series* find(const std::string& name) const;
  const series& require(const std::string& name) const;
};

/** Parse a CSV snapshot: header `year,NAME1,...`, contiguous ascending years,
 *  strictly numeric cells. When `required` is nonempty, every listed column
 *  must be present. Throws errc::schema / parse / integrity. */
dataset load_dataset(const std::string& path, const std::vector<std::string>& required = {});

struct design {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> colnames;
  int first_year = 0;  // year of row 0
  int nobs() const { return static_cast<int>(y.size()); }
};

/** Stack the ARDL(p, q) design. Row t exists iff every required lag exists
 *  (trim max-lag rows from the start). Column order: deterministic terms,
 *  dep lags 1..p, then regressor i lags 0..q[i] in the given order. The trend
 *  column counts 1..T over the effective rows. */
design build_design(const series& dep, int p, const std::vector<series>& regs,
                    const std::vector<int>& q, det_spec det);

}  // namespace ardlkit::tsdata
