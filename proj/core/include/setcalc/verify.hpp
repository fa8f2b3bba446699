#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setcalc/class_pair.hpp"

namespace setcalc {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // worst observed value across the check's cases
  double tol = 0.0;
  std::string note;  // counts, skips, grid context
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool all_pass = false;
  double seconds = 0.0;
};

struct SuiteConfig {
  Grid1D grid{-1.0, 1.0, 2001};
  std::uint64_t seed = 2026;
  int dirs = 64;
  bool demo2d = true;  // include the 256x256 two-variable demo
};

// Runs one property suite: core, envelope, metric, gradient or
// completion. Each check mirrors one documented library invariant;
// tolerances scale with the grid step and the measured Lipschitz
// constants and are recorded in the report.
SuiteReport run_suite(const std::string& which, const SuiteConfig& cfg);

// Expands "all" into every suite, otherwise runs the named one.
std::vector<SuiteReport> run_suites(const std::string& which,
                                    const SuiteConfig& cfg);

// Deterministic piecewise test function: `pieces` quadratic arcs whose
// breakpoints sit on even indices at least four nodes apart, slopes
// drawn within +-slope. with_jumps adds a value offset at each
// breakpoint; otherwise the arcs join continuously (kinks only).
SampledFn random_piecewise_fn(const Grid1D& grid, std::uint64_t seed,
                              int pieces, double slope, bool with_jumps);
ClassPair random_piecewise_class(const Grid1D& grid, std::uint64_t seed,
                                 int pieces, double slope, bool with_jumps);

}  // namespace setcalc
