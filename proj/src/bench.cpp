// Benchmark: serial reference vs OpenMP execution of the three parallel
// kernels (lag-grid search, Monte-Carlo replication, multi-model pipeline).
// Each section also asserts the two modes produce identical results, since
// the parallel paths are only useful if they are drop-in replacements.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ardlkit/ardl.hpp"
#include "ardlkit/mc.hpp"
#include "ardlkit/pipeline.hpp"
#include "ardlkit/report.hpp"
#include "ardlkit/tsdata.hpp"
#include "ardlkit/unitroot.hpp"

using namespace ardlkit;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_row(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-28s %10.3fs %12.3fs %9.2fx   %s\n", name, serial_s, parallel_s,
              serial_s / parallel_s, identical ? "identical" : "MISMATCH");
}

ardl::model_data grid_data(int T, int k) {
  mc::rng gen(1001, 0);
  ardl::model_data md;
  md.det = det_spec::constant;
  std::vector<std::vector<double>> x(k, std::vector<double>(T));
  for (int i = 0; i < k; ++i) {
    double prev = 0.0;
    for (int t = 0; t < T; ++t) {
      prev = 0.5 * prev + gen.normal();
      x[i][t] = prev;
    }
  }
  std::vector<double> y(T, 0.0);
  for (int t = 0; t < T; ++t) {
    double v = 0.2 + (t ? 0.5 * y[t - 1] : 0.0);
    for (int i = 0; i < k; ++i) v += (i % 2 ? -0.3 : 0.3) * x[i][t];
    y[t] = v + 0.5 * gen.normal();
  }
  md.dep = tsdata::series{"y", 1900, y};
  for (int i = 0; i < k; ++i)
    md.regs.push_back(tsdata::series{"x" + std::to_string(i + 1), 1900, x[i]});
  return md;
}

tsdata::dataset pipeline_data(int T) {
  mc::rng gen(1002, 0);
  tsdata::dataset ds;
  ds.start_year = 1900;
  tsdata::series x{"x", 1900, std::vector<double>(T)};
  double level = 10.0;
  for (int t = 0; t < T; ++t) {
    level += 0.3 * gen.normal();
    x.values[t] = level;
  }
  ds.columns.push_back(x);
  for (int m = 1; m <= 4; ++m) {
    tsdata::series y{"y" + std::to_string(m), 1900, std::vector<double>(T)};
    for (int t = 0; t < T; ++t) y.values[t] = 0.4 * x.values[t] + 0.3 * gen.normal();
    ds.columns.push_back(y);
  }
  return ds;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP NOT enabled; parallel mode falls back to serial.\n\n");
#endif
  std::printf("%-28s %11s %13s %10s\n", "kernel", "serial", "parallel", "speedup");

  {
    // Lag-grid search: p in 1..3, q_i in 0..3 over 5 regressors = 3072 fits.
    auto md = grid_data(200, 5);
    auto t0 = std::chrono::steady_clock::now();
    auto a = ardl::select_lags(md, 3, 3, ardl::criterion::aic, exec_mode::serial);
    const double ts = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    auto b = ardl::select_lags(md, 3, 3, ardl::criterion::aic, exec_mode::parallel);
    const double tp = seconds(t0);
    const bool same = a.chosen.p == b.chosen.p && a.chosen.q == b.chosen.q &&
                      a.criterion_value == b.criterion_value;
    print_row("lag grid (3072 candidates)", ts, tp, same);
  }

  {
    // Monte-Carlo: 4000 ADF statistics on T=200 random walks.
    auto body = [](mc::rng& r, int) {
      const int T = 200;
      tsdata::series s{"rw", 1900, std::vector<double>(T)};
      double level = 0.0;
      for (int t = 0; t < T; ++t) {
        level += r.normal();
        s.values[t] = level;
      }
      return unitroot::adf_test(s, det_spec::constant, unitroot::lag_selection::sic(4)).stat;
    };
    auto t0 = std::chrono::steady_clock::now();
    auto a = mc::replicate(4000, 77, body, exec_mode::serial);
    const double ts = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    auto b = mc::replicate(4000, 77, body, exec_mode::parallel);
    const double tp = seconds(t0);
    print_row("mc replicate (4000 ADF)", ts, tp, a == b);
  }

  {
    // Four-model pipeline on a T=120 synthetic panel.
    auto ds = pipeline_data(120);
    pipeline::run_config cfg = pipeline::parse_config_text(
        "pmax = 2\nqmax = 2\ncriterion = aic\ncase = III\n"
        "model1.dep = y1\nmodel1.regs = x\n"
        "model2.dep = y2\nmodel2.regs = x\n"
        "model3.dep = y3\nmodel3.regs = x\n"
        "model4.dep = y4\nmodel4.regs = x\n");
    cfg.mode = exec_mode::serial;
    auto t0 = std::chrono::steady_clock::now();
    auto a = pipeline::run_pipeline(cfg, ds);
    const double ts = seconds(t0);
    cfg.mode = exec_mode::parallel;
    t0 = std::chrono::steady_clock::now();
    auto b = pipeline::run_pipeline(cfg, ds);
    const double tp = seconds(t0);
    print_row("pipeline (4 models)", ts, tp, report::to_json(a) == report::to_json(b));
  }

  return 0;
}
