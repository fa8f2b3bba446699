#pragma once

// Brute-force reference computations for tests. These share no code
// with the library's fast paths: distances come from dense point
// clouds and exact nearest-point scans, so an algorithmic bug in the
// polyline pruning cannot cancel out here.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "setcalc/polyline.hpp"

namespace oracle {

// Samples every segment of a polyline at most `spacing` apart. Points
// come out in traversal order, so for function graphs they are
// x-sorted (vertical runs share an x).
inline std::vector<setcalc::Vec2> cloud_of_polyline(const setcalc::Polyline& P,
                                                    double spacing) {
  std::vector<setcalc::Vec2> pts;
  for (std::size_t i = 0; i + 1 < P.pts.size(); ++i) {
    const setcalc::Vec2 a = P.pts[i], b = P.pts[i + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int m = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int t = 0; t < m; ++t) {
      const double u = static_cast<double>(t) / m;
      pts.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
    }
  }
  if (!P.pts.empty()) pts.push_back(P.pts.back());
  return pts;
}

// Exact directed point-cloud distance for x-sorted clouds: for each
// source point, scan outward from an x-cursor and stop once the x gap
// alone exceeds the best distance so far. That bound makes the early
// exit exact, not heuristic.
inline double directed_cloud(const std::vector<setcalc::Vec2>& A,
                             const std::vector<setcalc::Vec2>& B) {
  double worst = 0.0;
  std::size_t cursor = 0;
  for (const setcalc::Vec2& p : A) {
    while (cursor + 1 < B.size() && B[cursor].x < p.x) ++cursor;
    double best2 = std::numeric_limits<double>::infinity();
    auto probe = [&](std::size_t j) {
      const double dx = p.x - B[j].x, dy = p.y - B[j].y;
      best2 = std::min(best2, dx * dx + dy * dy);
    };
    probe(cursor);
    for (std::size_t j = cursor; j-- > 0;) {
      const double dx = p.x - B[j].x;
      if (dx * dx > best2) break;
      probe(j);
    }
    for (std::size_t j = cursor + 1; j < B.size(); ++j) {
      const double dx = p.x - B[j].x;
      if (dx * dx > best2) break;
      probe(j);
    }
    worst = std::max(worst, best2);
  }
  return std::sqrt(worst);
}

inline double cloud_hausdorff(const std::vector<setcalc::Vec2>& A,
                              const std::vector<setcalc::Vec2>& B) {
  return std::max(directed_cloud(A, B), directed_cloud(B, A));
}

// Point-set Hausdorff distance between two continuous function graphs,
// each densified to `spacing`.
inline double graph_hausdorff_oracle(const setcalc::SampledFn& f,
                                     const setcalc::SampledFn& g,
                                     double spacing) {
  const auto A = cloud_of_polyline(setcalc::graph_polyline(f), spacing);
  const auto B = cloud_of_polyline(setcalc::graph_polyline(g), spacing);
  return cloud_hausdorff(A, B);
}

}  // namespace oracle
