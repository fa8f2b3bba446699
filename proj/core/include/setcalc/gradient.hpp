#pragma once

#include <optional>
#include <vector>

#include "setcalc/class_pair.hpp"
#include "setcalc/envelope.hpp"
#include "setcalc/interval.hpp"
#include "setcalc/sampled_fn.hpp"
#include "setcalc/vector_class.hpp"

namespace setcalc {

// A continuously differentiable sample: no jumps allowed. An explicit
// derivative array may accompany the samples (same grid); when absent,
// callers fall back to divided differences.
struct SmoothFn {
  SampledFn fn;
  std::vector<double> derivative;  // empty, or one slope per node

  explicit SmoothFn(SampledFn f, std::vector<double> d = {});
};

// A set-valued derivative: one interval per node, stored as a vector
// class so multi-component fields reuse the same machinery. Scalar
// fields have m() == 1.
struct GradientField {
  VectorClass field;

  explicit GradientField(VectorClass f) : field(std::move(f)) {}
  explicit GradientField(ClassPair scalar)
      : field(VectorClass::scalar(std::move(scalar))) {}

  int m() const { return field.m(); }
  const Grid1D& grid() const { return field.grid(); }
  const ClassPair& component(int j = 0) const { return field.components.at(static_cast<std::size_t>(j)); }

  // Interval of attainable slopes at x (scalar fields only).
  IntervalValue at(double x) const;
};

// Slope tolerance used throughout the derivative layer: divided
// differences on a grid of step h cannot resolve slopes better than
// O(lip * h), and one order of magnitude of headroom absorbs the
// constants from three-point stencils.
double slope_tol(const SampledFn& f);
double slope_tol(const ClassPair& f);

// How the smoothing stages of the closure are produced.
struct SmoothingSchedule {
  enum class Kind { mollifier, envelope_average };

  Kind kind = Kind::mollifier;
  std::vector<double> widths;  // strictly decreasing, in x units

  // Geometric width schedule w0 * 2^-j, clipped at the grid floor.
  static SmoothingSchedule standard(const Grid1D& grid, Kind kind = Kind::mollifier,
                                    double w0_in_steps = 64.0, int stages = 6);
};

struct ClosureDiagnostic {
  std::vector<double> stage_gaps;   // r between consecutive stage gradients
  std::vector<double> stage_dists;  // r between smoothed stages and the input class
  bool converged = false;
  bool in_domain_hint = false;
};

struct ClosureResult {
  std::optional<GradientField> field;  // set only when converged
  ClosureDiagnostic diag;
};

// Divided differences of a smooth sample: central in the interior,
// one-sided at the ends. Uses the declared derivative when present.
GradientField classical_gradient(const SmoothFn& f);

// Slope intervals of a possibly kinked or jumping sample. Interior
// kinks are located by comparing one-sided difference quotients, then
// each kink or jump node carries the interval hull of its one-sided
// slopes; elsewhere the field is single-valued.
GradientField clarke_gradient(const SampledFn& f);

// Derivative via smoothing: differentiate each smoothing stage, check
// the stage gradients form a Cauchy sequence in the r metric, and
// collapse the residual transition ramps into honest jump intervals.
// Never throws on mere non-convergence; that is reported in the
// diagnostic with field left empty. Throws ScheduleTooCoarse when the
// gap sequence grows from the first comparison on.
ClosureResult closure_gradient(const SampledFn& f, const SmoothingSchedule& sched,
                               const std::vector<double>& ks = default_k_schedule());

// Linearity and the product, selector, and composition rules.
GradientField grad_add(const GradientField& F, const GradientField& G);
GradientField grad_scale(double lambda, const GradientField& F);
GradientField grad_product(const ClassPair& f, const GradientField& df,
                           const ClassPair& g, const GradientField& dg);
GradientField grad_minmax(const ClassPair& f, const GradientField& df,
                          const ClassPair& g, const GradientField& dg,
                          bool take_min);
// d/dx phi(f(x)) = phi'(f(x)) * df(x); phi must be sampled on a grid
// covering the value range of f (else RangeMismatch).
GradientField grad_chain(const SmoothFn& phi, const ClassPair& f, const GradientField& df);

// True iff 0 lies in the slope interval at x0 (within slope_tol).
// x0 must be a local extremum of f on the grid, else NotAnExtremum.
bool stationarity_check(const ClassPair& f, const GradientField& df, double x0);

// True iff symmetric difference quotients of f at x converge to the
// single-valued slope of df there, at the first-order rate a
// differentiable function must show. df must be single-valued and
// jump-free at x, else NotAContinuityPoint.
bool differentiability_at_continuity(const ClassPair& f, const GradientField& df, double x);

// Exchange of limits: given f_n -> f uniformly with graph-Cauchy
// derivative fields, produce the limit pair and the limit field. The
// value trace at the probe point x0 must converge as well. All
// premises are checked; violations throw HypothesisViolated.
struct LimitExchange {
  ClassPair limit_fn;
  GradientField limit_grad;
  std::vector<double> fn_gaps;    // sup-norm Cauchy gaps of the functions
  std::vector<double> grad_gaps;  // graph-distance Cauchy gaps of the fields
  double clarke_gap = 0.0;        // r distance of limit_grad to clarke_gradient(limit_fn)
};
LimitExchange limit_exchange(const std::vector<ClassPair>& fs,
                             const std::vector<GradientField>& dfs, double x0,
                             const std::vector<double>& ks = default_k_schedule(),
                             double tol = 0.0);

// Replaces steep unresolved ramps of a smoothing stage by genuine
// jumps: nodes where the stage climbs a whole interval's worth per
// step are grouped into runs, and each run tall enough to be a kink is
// collapsed to plateau values with a single jump node at the run's
// midheight crossing. closure_gradient and limit_exchange share it.
SampledFn collapse_transitions(const SampledFn& g, double tol);

}  // namespace setcalc
