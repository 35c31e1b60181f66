#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ardlkit/common.hpp"
#include "ardlkit/errors.hpp"

namespace ardlkit::mc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/** Deterministic per-replication stream: the engine seed depends only on
 *  (master_seed, stream), never on draw order elsewhere. */
class rng {
 public:
  rng(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (0xBF58476D1CE4E5B9ull * (stream + 0x9E3779B97F4A7C15ull));
    std::array<std::uint32_t, 8> words;
    for (auto& w : words) w = static_cast<std::uint32_t>(splitmix64(s) >> 32);
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
  }

  std::mt19937_64& engine() { return engine_; }

  /** U(0,1), open at zero. */
  double uniform() {
    for (;;) {
      const double u = (engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  /** N(0,1) via Box-Muller, one spare cached. */
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    constexpr double kTwoPi = 6.283185307179586476925287;
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTwoPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/** Run body(rng, i) for i = 0..n-1 and collect the scalar results. The
 *  parallel path partitions streams identically to the serial path, so the
 *  output vector is bit-identical across modes and thread counts. */
template <class F>
std::vector<double> replicate(int n, std::uint64_t master_seed, F&& body,
                              exec_mode mode = exec_mode::parallel) {
  std::vector<double> out(static_cast<size_t>(n));
  bool failed = false;
  std::string what;

  auto one = [&](int i) {
    try {
      rng r(master_seed, static_cast<std::uint64_t>(i));
      out[static_cast<size_t>(i)] = body(r, i);
    } catch (const std::exception& e) {
#pragma omp critical
      {
        if (!failed) {
          failed = true;
          what = e.what();
        }
      }
    }
  };

  if (mode == exec_mode::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) one(i);
  } else {
    for (int i = 0; i < n; ++i) one(i);
  }
  if (failed) fail(errc::domain, "mc::replicate: replication failed: " + what);
  return out;
}

/** Share of results exceeding a threshold (rejection-rate helper). */
inline double rejection_rate(const std::vector<double>& stats, double threshold) {
  if (stats.empty()) fail(errc::parameter, "rejection_rate: empty sample");
  size_t c = 0;
  for (double s : stats)
    if (s > threshold) ++c;
  return static_cast<double>(c) / static_cast<double>(stats.size());
}

/** Empirical quantile (linear interpolation on sorted copy). */
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) fail(errc::parameter, "quantile: empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * (static_cast<double>(v.size()) - 1.0);
  const size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

}  // namespace ardlkit::mc
