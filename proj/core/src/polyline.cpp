#include "setcalc/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace setcalc {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0)
    t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  const double qx = a.x + t * dx - p.x;
  const double qy = a.y + t * dy - p.y;
  return std::sqrt(qx * qx + qy * qy);
}

Polyline graph_polyline(const SampledFn& f) {
  if (!f.jumps.empty())
    throw HasJumps("graph_polyline requires a continuous function");
  Polyline p;
  p.pts.reserve(f.n());
  for (int i = 0; i < f.n(); ++i) p.pts.push_back({f.grid.x(i), f.values[i]});
  return p;
}

Polyline closed_graph_polyline(const ClassPair& f) {
  Polyline p;
  p.pts.reserve(f.n() + 2 * f.jumps().size());
  for (int i = 0; i < f.n(); ++i) {
    const double x = f.grid().x(i);
    if (f.lower.is_jump(i)) {
      p.pts.push_back({x, f.lower.left_limit(i)});
      p.pts.push_back({x, f.lower.right_limit(i)});
    } else {
      p.pts.push_back({x, f.lower.values[i]});
    }
  }
  return p;
}

double directed_graph_dist(const Polyline& A, const Polyline& B) {
  if (A.pts.empty() || B.pts.empty())
    throw Error("empty polyline in Hausdorff computation");
  if (B.pts.size() == 1) {
    double worst = 0.0;
    for (const Vec2& p : A.pts)
      worst = std::max(worst, std::hypot(p.x - B.pts[0].x, p.y - B.pts[0].y));
    return worst;
  }

  const int m = static_cast<int>(B.pts.size()) - 1;  // segment count
  double worst = 0.0;
  int cursor = 0;
  for (const Vec2& p : A.pts) {
    // Segments of B are x-sorted, so walk outward from the segment under
    // p.x and stop once the horizontal gap alone exceeds the best found.
    while (cursor < m - 1 && B.pts[cursor + 1].x < p.x) ++cursor;
    double best = std::numeric_limits<double>::infinity();
    for (int j = cursor; j >= 0; --j) {
      if (p.x - B.pts[j + 1].x > best) break;
      best = std::min(best, point_segment_distance(p, B.pts[j], B.pts[j + 1]));
    }
    for (int j = cursor + 1; j < m; ++j) {
      if (B.pts[j].x - p.x > best) break;
      best = std::min(best, point_segment_distance(p, B.pts[j], B.pts[j + 1]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double polyline_hausdorff(const Polyline& A, const Polyline& B) {
  return std::max(directed_graph_dist(A, B), directed_graph_dist(B, A));
}

double graph_hausdorff(const SampledFn& phi, const SampledFn& psi) {
  if (phi.grid.a != psi.grid.a || phi.grid.b != psi.grid.b)
    throw GridMismatch("graph_hausdorff: functions live on different intervals");
  return polyline_hausdorff(graph_polyline(phi), graph_polyline(psi));
}

}  // namespace setcalc
