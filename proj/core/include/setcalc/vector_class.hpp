#pragma once

#include "setcalc/class_pair.hpp"

namespace setcalc {

// Vector-valued class: m scalar classes over one shared grid.
struct VectorClass {
  std::vector<ClassPair> components;

  VectorClass() = default;
  explicit VectorClass(std::vector<ClassPair> comps);

  int m() const { return static_cast<int>(components.size()); }
  const Grid1D& grid() const { return components.front().grid(); }

  static VectorClass scalar(ClassPair f) { return VectorClass({std::move(f)}); }
};

// Scalar reduction <F, xi> computed with the class algebra.
ClassPair dot(const VectorClass& F, const std::vector<double>& xi);

// Set value at x per the cluster-value definition: the convex hull of the
// one-sided limit vectors. Supports m <= 2; for m = 1 the hull lies on the
// first axis and reduces exactly to value_at.
ConvexValue value_at_vec(const VectorClass& F, double x);

}  // namespace setcalc
