#pragma once

#include <cmath>
#include <cstddef>

#include "setcalc/errors.hpp"

namespace setcalc {

// Uniform grid on [a, b] with n nodes, x_i = a + i*h, h = (b-a)/(n-1).
struct Grid1D {
  double a = -1.0;
  double b = 1.0;
  int n = 2;

  Grid1D() = default;
  Grid1D(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
    if (!(a < b) || n < 2 || !std::isfinite(a) || !std::isfinite(b))
      throw InvalidSampledFn("Grid1D requires a < b and n >= 2");
  }

  double h() const { return (b - a) / (n - 1); }

  // Convex-weight node formula rather than a + i*h: the endpoints come
  // out exact, and on symmetric grids x(n-1-i) is the exact negation of
  // x(i), so difference quotients of even samples are exactly
  // antisymmetric across the center.
  double x(int i) const { return (a * (n - 1 - i) + b * i) / (n - 1); }

  bool contains(double x) const { return x >= a && x <= b; }

  // Index of the node nearest to x. Throws if x is outside [a, b].
  int nearest(double x) const {
    if (!contains(x)) throw OutOfDomain("point outside grid domain");
    int i = static_cast<int>(std::lround((x - a) / h()));
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return i;
  }

  // True when x coincides with node i up to a relative snap width.
  bool at_node(double x, int i) const {
    return std::fabs(x - this->x(i)) <= 1e-9 * h();
  }

  friend bool operator==(const Grid1D& p, const Grid1D& q) {
    return p.a == q.a && p.b == q.b && p.n == q.n;
  }
};

inline void require_same_grid(const Grid1D& p, const Grid1D& q) {
  if (!(p == q)) throw GridMismatch("operands live on different grids");
}

}  // namespace setcalc
