#pragma once

#include "setcalc/class_pair.hpp"
#include "setcalc/interval.hpp"

namespace setcalc {

// Planar polyline with x-monotone vertices (vertical runs allowed), used
// for function graphs and closed class graphs.
struct Polyline {
  std::vector<Vec2> pts;
};

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Graph of a continuous sampled function.
Polyline graph_polyline(const SampledFn& f);

// Closed graph of a class: node polyline plus the vertical segment
// [lower, upper] at every jump node, entered from the left limit.
Polyline closed_graph_polyline(const ClassPair& f);

// sup over vertices of A of the distance to B (point-to-segment, with an
// x-window prune around each source vertex).
double directed_graph_dist(const Polyline& A, const Polyline& B);

double polyline_hausdorff(const Polyline& A, const Polyline& B);

// Hausdorff distance between the graphs of two continuous functions over
// the same interval. Throws HasJumps if either function has jump nodes.
double graph_hausdorff(const SampledFn& phi, const SampledFn& psi);

}  // namespace setcalc
