#include "setcalc/class_pair.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace setcalc {

namespace {

// Checks the hull relation that defines a canonical pair: re-hulling one
// member must reproduce the other at every jump node.
void check_pair_relation(const SampledFn& lo, const SampledFn& hi) {
  const double tol = std::max(lo.tol_rep(), hi.tol_rep());
  require_same_grid(lo.grid, hi.grid);
  if (lo.jumps != hi.jumps)
    throw RepresentativeInconsistent("pair members disagree on the jump set");
  for (int i = 0; i < lo.n(); ++i) {
    if (lo.values[i] > hi.values[i] + tol)
      throw RepresentativeInconsistent("lower member exceeds upper member");
    if (!lo.is_jump(i) && std::fabs(lo.values[i] - hi.values[i]) > tol)
      throw RepresentativeInconsistent("members differ away from the jump set");
  }
  const SampledFn up_of_lo = usc_hull(lo);
  const SampledFn lo_of_hi = lsc_hull(hi);
  for (int i : lo.jumps) {
    if (std::fabs(up_of_lo.values[i] - hi.values[i]) > tol ||
        std::fabs(lo_of_hi.values[i] - lo.values[i]) > tol)
      throw RepresentativeInconsistent(
          "hulling does not reproduce the pair; lip or jump metadata is wrong");
  }
}

}  // namespace

ClassPair::ClassPair(SampledFn lo, SampledFn hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  check_pair_relation(lower, upper);
}

double ClassPair::max_jump() const {
  double m = 0.0;
  for (int i : jumps()) m = std::max(m, upper.values[i] - lower.values[i]);
  return m;
}

namespace {

// Builds the canonical pair from per-node lower/upper values, pruning jump
// nodes whose gap is below tol (those collapse to the midpoint and leave
// the jump set).
ClassPair assemble_pair(const Grid1D& grid, std::vector<double> lo,
                        std::vector<double> hi, const std::vector<int>& jumps,
                        double lip, double bound) {
  const double tol = 4.0 * lip * grid.h() + 1e-12;
  std::vector<int> kept;
  for (int i : jumps) {
    if (hi[i] - lo[i] <= tol) {
      const double mid = 0.5 * (lo[i] + hi[i]);
      lo[i] = mid;
      hi[i] = mid;
    } else {
      kept.push_back(i);
    }
  }
  SampledFn lower(grid, std::move(lo), kept, lip, bound);
  SampledFn upper(grid, std::move(hi), kept, lip, bound);
  return ClassPair(std::move(lower), std::move(upper));
}

}  // namespace

ClassPair canonical_pair(const SampledFn& f) {
  std::vector<double> lo = f.values;
  std::vector<double> hi = f.values;
  for (int i : f.jumps) {
    // The class forgets f(x_i) on the null set {x_i}; only the one-sided
    // limits survive.
    lo[i] = std::min(f.values[i - 1], f.values[i + 1]);
    hi[i] = std::max(f.values[i - 1], f.values[i + 1]);
  }
  return assemble_pair(f.grid, std::move(lo), std::move(hi), f.jumps, f.lip,
                       f.bound);
}

ClassPair continuous_class(const SampledFn& f) {
  if (!f.jumps.empty())
    throw HasJumps("continuous_class requires an empty jump set");
  return ClassPair(f, f);
}

namespace {

struct OpMeta {
  double lip;
  double bound;
};

template <class Op>
ClassPair binary_op(const ClassPair& f, const ClassPair& g, Op op, OpMeta meta) {
  require_same_grid(f.grid(), g.grid());
  const int n = f.n();

  std::vector<int> jumps;
  std::set_union(f.jumps().begin(), f.jumps().end(), g.jumps().begin(),
                 g.jumps().end(), std::back_inserter(jumps));

  std::vector<double> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const double w = op(f.rep()[i], g.rep()[i]);
    lo[i] = w;
    hi[i] = w;
  }
  for (int i : jumps) {
    // Compose one-sided limits per operand; the cluster values of the
    // result at x_i are exactly the two one-sided compositions.
    const double L = op(f.lower.left_limit(i), g.lower.left_limit(i));
    const double R = op(f.lower.right_limit(i), g.lower.right_limit(i));
    lo[i] = std::min(L, R);
    hi[i] = std::max(L, R);
  }
  return assemble_pair(f.grid(), std::move(lo), std::move(hi), jumps, meta.lip,
                       meta.bound);
}

}  // namespace

ClassPair class_add(const ClassPair& f, const ClassPair& g) {
  return binary_op(
      f, g, [](double a, double b) { return a + b; },
      {f.lower.lip + g.lower.lip, f.lower.bound + g.lower.bound});
}

ClassPair class_mul(const ClassPair& f, const ClassPair& g) {
  return binary_op(
      f, g, [](double a, double b) { return a * b; },
      {f.lower.bound * g.lower.lip + g.lower.bound * f.lower.lip,
       f.lower.bound * g.lower.bound});
}

ClassPair class_min(const ClassPair& f, const ClassPair& g) {
  return binary_op(
      f, g, [](double a, double b) { return std::min(a, b); },
      {std::max(f.lower.lip, g.lower.lip),
       std::max(f.lower.bound, g.lower.bound)});
}

ClassPair class_max(const ClassPair& f, const ClassPair& g) {
  return binary_op(
      f, g, [](double a, double b) { return std::max(a, b); },
      {std::max(f.lower.lip, g.lower.lip),
       std::max(f.lower.bound, g.lower.bound)});
}

ClassPair class_scale(double lambda, const ClassPair& f) {
  const int n = f.n();
  std::vector<double> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const double a = lambda * f.lower.values[i];
    const double b = lambda * f.upper.values[i];
    lo[i] = std::min(a, b);
    hi[i] = std::max(a, b);
  }
  return assemble_pair(f.grid(), std::move(lo), std::move(hi), f.jumps(),
                       std::fabs(lambda) * f.lower.lip,
                       std::fabs(lambda) * f.lower.bound);
}

IntervalValue value_at(const ClassPair& f, double x) {
  const Grid1D& grid = f.grid();
  if (!grid.contains(x)) throw OutOfDomain("value_at: point outside domain");

  const int near = grid.nearest(x);
  if (grid.at_node(x, near))
    return IntervalValue(f.lower.values[near], f.upper.values[near]);

  int i = static_cast<int>(std::floor((x - grid.a) / grid.h()));
  i = std::clamp(i, 0, grid.n - 2);
  const bool jl = f.lower.is_jump(i);
  const bool jr = f.lower.is_jump(i + 1);
  if (jl && jr) {
    // Unresolvable segment between two retained jumps; report the hull.
    return IntervalValue(std::min(f.lower.values[i], f.lower.values[i + 1]),
                         std::max(f.upper.values[i], f.upper.values[i + 1]));
  }
  // The open segment belongs to one piece; a jump endpoint contributes its
  // limit from inside that piece, i.e. the opposite node's sample.
  const double vl = jl ? f.lower.values[i + 1] : f.lower.values[i];
  const double vr = jr ? f.lower.values[i] : f.lower.values[i + 1];
  const double t = (x - grid.x(i)) / grid.h();
  const double v = vl + t * (vr - vl);
  return IntervalValue(v, v);
}

}  // namespace setcalc
