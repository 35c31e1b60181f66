#include "ardlkit/tsdata.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ardlkit/errors.hpp"

namespace ardlkit::tsdata {

double series::at_year(int year) const {
  if (!covers(year))
    fail(errc::parameter, name + ": year " + std::to_string(year) + " outside [" +
                              std::to_string(start_year) + ", " + std::to_string(end_year()) + "]");
  return values[static_cast<size_t>(year - start_year)];
}

series transform(const series& s, const transform_op& op) {
  using K = transform_op::kind;
  series out;
  switch (op.k) {
    case K::identity:
      return s;
    case K::log: {
      out = s;
      out.name = "log(" + s.name + ")";
      for (int i = 0; i < s.size(); ++i) {
        if (!(s.values[i] > 0.0))
          fail(errc::domain, s.name + ": log of nonpositive value " +
                                 std::to_string(s.values[i]) + " at year " +
                                 std::to_string(s.start_year + i));
        out.values[i] = std::log(s.values[i]);
      }
      return out;
    }
    case K::log_shift: {
      out = s;
      out.name = "log(" + s.name + "+" + std::to_string(op.shift) + ")";
      for (int i = 0; i < s.size(); ++i) {
        const double v = s.values[i] + op.shift;
        if (!(v > 0.0))
          fail(errc::domain, s.name + ": log_shift(" + std::to_string(op.shift) +
                                 ") still nonpositive at year " + std::to_string(s.start_year + i));
        out.values[i] = std::log(v);
      }
      return out;
    }
    case K::diff: {
      if (s.size() < 2) fail(errc::dof, s.name + ": cannot difference a series of length < 2");
      out.name = "d(" + s.name + ")";
      out.start_year = s.start_year + 1;
      out.values.resize(s.values.size() - 1);
      for (size_t i = 1; i < s.values.size(); ++i) out.values[i - 1] = s.values[i] - s.values[i - 1];
      return out;
    }
    case K::lag: {
      if (op.lags < 0) fail(errc::parameter, "lag order must be nonnegative");
      out = s;
      out.name = op.lags ? s.name + "(-" + std::to_string(op.lags) + ")" : s.name;
      out.start_year = s.start_year + op.lags;
      return out;
    }
  }
  fail(errc::parameter, "unknown transform");
}

const series* dataset::find(const std::string& name) const {
  for (const auto& c : columns)
    if (c.name == name) return &c;
  return nullptr;
}

const series& dataset::require(const std::string& name) const {
  const series* s = find(name);
  if (!s) fail(errc::parameter, "no such variable: " + name);
  return *s;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim ascii whitespace
    size_t a = cell.find_first_not_of(" \t\r");
    size_t b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_cell(const std::string& cell, int row, const std::string& col) {
  if (cell.empty())
    fail(errc::parse, "empty cell at data row " + std::to_string(row) + ", column " + col);
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    fail(errc::parse, "cell '" + cell + "' at data row " + std::to_string(row) + ", column " +
                          col + " is not a number");
  if (!std::isfinite(v))
    fail(errc::parse, "non-finite value at data row " + std::to_string(row) + ", column " + col);
  return v;
}

}  // namespace

dataset load_dataset(const std::string& path, const std::vector<std::string>& required) {
  std::ifstream in(path);
  if (!in) fail(errc::schema, "cannot open input file: " + path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::schema, path + ": empty file");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "year")
    fail(errc::schema, path + ": header must be 'year,<name>,...'");

  dataset ds;
  for (size_t j = 1; j < header.size(); ++j) {
    if (header[j].empty()) fail(errc::schema, path + ": empty column name in header");
    for (size_t i = 1; i < j; ++i)
      if (header[i] == header[j]) fail(errc::integrity, path + ": duplicate column " + header[j]);
    ds.columns.push_back(series{header[j], 0, {}});
  }

  int row = 0;
  int prev_year = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      fail(errc::schema, path + ": data row " + std::to_string(row + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
    const double ycell = parse_cell(cells[0], row + 1, "year");
    const int year = static_cast<int>(ycell);
    if (ycell != year) fail(errc::parse, path + ": non-integer year at data row " + std::to_string(row + 1));
    if (row == 0) {
      ds.start_year = year;
      for (auto& c : ds.columns) c.start_year = year;
    } else if (year == prev_year) {
      fail(errc::integrity, path + ": duplicate year " + std::to_string(year));
    } else if (year != prev_year + 1) {
      fail(errc::integrity, path + ": year axis not contiguous ascending at " + std::to_string(year));
    }
    prev_year = year;
    for (size_t j = 1; j < cells.size(); ++j)
      ds.columns[j - 1].values.push_back(parse_cell(cells[j], row + 1, header[j]));
    ++row;
  }
  if (row < 1) fail(errc::schema, path + ": no data rows");
  for (const auto& name : required)
    if (!ds.find(name)) fail(errc::schema, path + ": missing required column " + name);
  return ds;
}

design build_design(const series& dep, int p, const std::vector<series>& regs,
                    const std::vector<int>& q, det_spec det) {
  if (p < 0) fail(errc::parameter, "dep lag order p must be nonnegative");
  if (q.size() != regs.size())
    fail(errc::parameter, "lag-order list length does not match regressor count");
  for (int qi : q)
    if (qi < 0) fail(errc::parameter, "regressor lag order must be nonnegative");

  // Effective sample: every required lag must exist.
  int first = dep.start_year + p;
  int last = dep.end_year();
  for (size_t i = 0; i < regs.size(); ++i) {
    first = std::max(first, regs[i].start_year + q[i]);
    last = std::min(last, regs[i].end_year());
  }
  first = std::max(first, dep.start_year);
  const int T = last - first + 1;
  if (T < 1) fail(errc::dof, "empty effective sample after lag trimming");

  int ncols = (det == det_spec::none ? 0 : det == det_spec::constant ? 1 : 2);
  ncols += p;
  for (int qi : q) ncols += qi + 1;

  design d;
  d.first_year = first;
  d.y.resize(T);
  d.X.resize(T, ncols);
  for (int t = 0; t < T; ++t) d.y(t) = dep.at_year(first + t);

  int c = 0;
  if (det != det_spec::none) {
    d.X.col(c).setOnes();
    d.colnames.push_back("const");
    ++c;
    if (det == det_spec::constant_trend) {
      for (int t = 0; t < T; ++t) d.X(t, c) = t + 1;
      d.colnames.push_back("trend");
      ++c;
    }
  }
  for (int j = 1; j <= p; ++j, ++c) {
    for (int t = 0; t < T; ++t) d.X(t, c) = dep.at_year(first + t - j);
    d.colnames.push_back(dep.name + "(-" + std::to_string(j) + ")");
  }
  for (size_t i = 0; i < regs.size(); ++i) {
    for (int j = 0; j <= q[i]; ++j, ++c) {
      for (int t = 0; t < T; ++t) d.X(t, c) = regs[i].at_year(first + t - j);
      d.colnames.push_back(j ? regs[i].name + "(-" + std::to_string(j) + ")" : regs[i].name);
    }
  }
  return d;
}

}  // namespace ardlkit::tsdata
