#pragma once

#include <vector>

#include "setcalc/errors.hpp"
#include "setcalc/interval.hpp"

namespace setcalc {

// Tensor grid on [ax, bx] x [ay, by] with nx * ny nodes.
struct Grid2D {
  double ax = -1.0, bx = 1.0;
  double ay = -1.0, by = 1.0;
  int nx = 2, ny = 2;

  Grid2D() = default;
  Grid2D(double ax_, double bx_, double ay_, double by_, int nx_, int ny_);

  double hx() const { return (bx - ax) / (nx - 1); }
  double hy() const { return (by - ay) / (ny - 1); }
  double x(int i) const { return ax + i * hx(); }
  double y(int j) const { return ay + j * hy(); }

  friend bool operator==(const Grid2D& p, const Grid2D& q) {
    return p.ax == q.ax && p.bx == q.bx && p.ay == q.ay && p.by == q.by &&
           p.nx == q.nx && p.ny == q.ny;
  }
};

// Function sampled on a tensor grid, stored row-major with y outermost:
// values[j*nx + i] is the sample at (x_i, y_j). Discontinuities are
// restricted to whole axis-aligned grid lines: jump_cols lists x-indices
// of vertical jump lines, jump_rows y-indices of horizontal ones. Between
// jump lines the samples obey the l1 Lipschitz constant `lip`.
struct Sampled2D {
  Grid2D grid;
  std::vector<double> values;
  std::vector<int> jump_cols;  // sorted, unique, interior
  std::vector<int> jump_rows;
  double lip = 0.0;
  double bound = 0.0;

  Sampled2D() = default;
  Sampled2D(Grid2D g, std::vector<double> v, std::vector<int> cols,
            std::vector<int> rows, double lip_, double bound_);

  static Sampled2D inferred(Grid2D g, std::vector<double> v,
                            std::vector<int> cols = {},
                            std::vector<int> rows = {});

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
  void validate() const;
};

// Greatest k-Lipschitz minorant in the l1 modulus:
// g(p) = min_q f(q) + k*(|px-qx| + |py-qy|). Computed by alternating
// axis sweeps (the 1-D slope clamp along every row, then every column)
// repeated until a full round changes nothing; the l1 cone splits over
// the axes, so the second round only certifies the fixed point. More
// than 8 rounds means the sweep reasoning is broken and throws.
Sampled2D lip_lower_envelope2d(const Sampled2D& f, double k);

// Least k-Lipschitz majorant, the max-dual sweep.
Sampled2D lip_upper_envelope2d(const Sampled2D& f, double k);

// Direct evaluation of the defining inf/sup at one node, O(nx*ny).
// Test oracle only; full-grid use would be quartic.
double envelope2d_oracle_at(const Sampled2D& f, double k, bool upper, int i,
                            int j);

// Set value of the gradient at node (i, j): convex hull of the four
// quadrant pairs of one-sided difference quotients. Smooth points give a
// near-singleton; |x| + |y| at the origin gives the square [-1,1]^2.
// Nodes on the boundary or on a jump line throw OutOfDomain /
// NotAContinuityPoint.
ConvexValue gradient_value2d(const Sampled2D& f, int i, int j);

}  // namespace setcalc
