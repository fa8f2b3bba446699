#pragma once

#include "setcalc/interval.hpp"
#include "setcalc/sampled_fn.hpp"

namespace setcalc {

// Equivalence class of a piecewise-Lipschitz function, stored as its
// canonical representative pair: `lower` is the lower semicontinuous
// member, `upper` the upper semicontinuous one. They share the grid and
// jump set and differ only at jump nodes, where they carry the two
// one-sided limits. The class forgets the sampled value at a jump node,
// so any two a.e.-equal representatives canonicalize to the same pair.
struct ClassPair {
  SampledFn lower;
  SampledFn upper;

  ClassPair() = default;
  ClassPair(SampledFn lo, SampledFn hi);  // validates the pair relation

  const Grid1D& grid() const { return lower.grid; }
  int n() const { return lower.n(); }
  double h() const { return lower.h(); }
  const std::vector<int>& jumps() const { return lower.jumps; }
  double tol_rep() const { return std::max(lower.tol_rep(), upper.tol_rep()); }

  // Representative used for node-wise arithmetic: the lower member.
  const std::vector<double>& rep() const { return lower.values; }

  // Height of the largest jump, 0 for a continuous class.
  double max_jump() const;

  bool is_continuous() const { return lower.jumps.empty(); }
};

// Canonicalizes a representative into its class pair. Throws
// RepresentativeInconsistent when hulling the pair does not reproduce it,
// which signals wrong lip or jump metadata (e.g. two adjacent jump nodes).
ClassPair canonical_pair(const SampledFn& f);

// Wraps a continuous function (no jump handling needed).
ClassPair continuous_class(const SampledFn& f);

// Pointwise algebra on classes. Operands must share the grid; the result
// carries the union jump set with trivial jumps pruned.
ClassPair class_add(const ClassPair& f, const ClassPair& g);
ClassPair class_scale(double lambda, const ClassPair& f);
ClassPair class_mul(const ClassPair& f, const ClassPair& g);
ClassPair class_min(const ClassPair& f, const ClassPair& g);
ClassPair class_max(const ClassPair& f, const ClassPair& g);

// Set value at x: the interval [lower(x), upper(x)], degenerate away from
// jumps. Piece-aware between nodes (the segment next to a jump node reads
// its values from the continuous side). Throws OutOfDomain.
IntervalValue value_at(const ClassPair& f, double x);

}  // namespace setcalc
