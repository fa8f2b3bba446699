#pragma once

#include <vector>

#include "setcalc/grid.hpp"

namespace setcalc {

// A piecewise-Lipschitz function sampled at the grid nodes.
//
// `jumps` lists the node indices where the function is allowed to be
// discontinuous; between jump nodes the samples must obey the declared
// Lipschitz constant `lip`. `bound` is a sup-norm bound on the samples.
// Jump nodes are interior. One-sided limits at a jump node i are read
// from the neighbor samples v[i-1] and v[i+1]; everything downstream
// treats those as the left/right limits, which is accurate to lip*h.
struct SampledFn {
  Grid1D grid;
  std::vector<double> values;
  std::vector<int> jumps;  // sorted, unique, interior indices
  double lip = 0.0;
  double bound = 0.0;

  SampledFn() = default;
  SampledFn(Grid1D g, std::vector<double> v, std::vector<int> j,
            double lip_, double bound_);

  // Builds a SampledFn with lip and bound measured from the samples.
  static SampledFn inferred(Grid1D g, std::vector<double> v,
                            std::vector<int> j = {});

  int n() const { return grid.n; }
  double h() const { return grid.h(); }
  bool is_jump(int i) const;

  // Representation slack: how far sampled identities are allowed to drift
  // before we call the metadata wrong.
  double tol_rep() const { return 4.0 * lip * h() + 1e-12; }

  // One-sided limits at node i. At a jump node these are the neighbor
  // samples; at a continuity node both equal values[i]. Boundary nodes
  // only have an inner side.
  double left_limit(int i) const;
  double right_limit(int i) const;

  void validate() const;  // throws InvalidSampledFn
};

// Lower semicontinuous hull: at each jump node take the min over the node
// and its two neighbors, elsewhere keep the sample. Idempotent, and it
// removes upward spikes parked at jump nodes.
SampledFn lsc_hull(const SampledFn& f);

// Upper semicontinuous hull, the max-dual of lsc_hull.
SampledFn usc_hull(const SampledFn& f);

// True when every node value is approached within tol by an adjacent
// jump-free segment (from at least one side).
bool is_quasicontinuous(const SampledFn& f, double tol);

// max |f_i| over the nodes.
double sup_norm(const SampledFn& f);

// Trapezoid rule over the whole grid.
double trapezoid(const Grid1D& grid, const std::vector<double>& v);

}  // namespace setcalc
