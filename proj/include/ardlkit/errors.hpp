#pragma once

#include <stdexcept>
#include <string>

namespace ardlkit {

// Error taxonomy. Library code throws `error` with one of these kinds;
// the CLI maps schema/parse/config problems to exit code 1 and
// estimation-stage failures to exit code 2.
enum class errc {
  schema,          // malformed file layout, unknown config key
  parse,           // cell/field does not parse
  integrity,       // year axis broken, duplicate names, ...
  domain,          // log of a nonpositive value, bad transform constant
  dof,             // not enough observations for the requested regression
  collinear,       // design matrix numerically rank deficient
  parameter,       // invalid argument (pmax < 1, unknown case, ...)
  incompatible,    // f-test across fits with different samples
  selection,       // every lag-grid candidate failed
  near_unit_root,  // |1 - sum(a_i)| below tolerance, long run undefined
  stability,       // recursive-residual window singular
  degenerate,      // degenerate input (constant residuals, ...)
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

}  // namespace ardlkit
