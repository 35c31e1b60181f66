#pragma once

namespace ardlkit {

inline constexpr const char* kVersion = "1.0.0";

// Deterministic terms of a regression design.
enum class det_spec { none, constant, constant_trend };

// Execution mode for the data-parallel kernels (lag-grid search, Monte Carlo
// replication). `parallel` uses OpenMP; `serial` is the reference path the
// tests compare against. Results are bitwise identical by construction.
enum class exec_mode { serial, parallel };

inline const char* det_name(det_spec d) {
  switch (d) {
    case det_spec::none: return "none";
    case det_spec::constant: return "constant";
    case det_spec::constant_trend: return "constant_trend";
  }
  return "?";
}

}  // namespace ardlkit
