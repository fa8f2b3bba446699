#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "setcalc/errors.hpp"

namespace setcalc {

// Closed interval value [lo, hi] of a set-valued scalar function.
struct IntervalValue {
  double lo = 0.0;
  double hi = 0.0;

  IntervalValue() = default;
  IntervalValue(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw Error("interval endpoints out of order");
  }

  double width() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
};

inline double interval_hausdorff(const IntervalValue& p, const IntervalValue& q) {
  return std::max(std::fabs(p.lo - q.lo), std::fabs(p.hi - q.hi));
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Convex value in the plane, stored as the minimal vertex list of its hull
// (counter-clockwise; a point or a segment keeps 1 or 2 vertices).
struct ConvexValue {
  std::vector<Vec2> vertices;

  static ConvexValue hull_of(std::vector<Vec2> points);

  bool contains(const Vec2& p, double tol) const;
  double distance_to(const Vec2& p) const;  // 0 inside
};

}  // namespace setcalc
