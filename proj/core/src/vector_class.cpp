#include "setcalc/vector_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace setcalc {

// --- ConvexValue -----------------------------------------------------------

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  const double qx = a.x + t * dx - p.x, qy = a.y + t * dy - p.y;
  return std::sqrt(qx * qx + qy * qy);
}

}  // namespace

ConvexValue ConvexValue::hull_of(std::vector<Vec2> pts) {
  if (pts.empty()) throw Error("convex hull of an empty point set");
  std::sort(pts.begin(), pts.end(), [](const Vec2& p, const Vec2& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& p, const Vec2& q) {
                          return p.x == q.x && p.y == q.y;
                        }),
            pts.end());
  ConvexValue cv;
  if (pts.size() <= 2) {
    cv.vertices = std::move(pts);
    return cv;
  }
  // Andrew's monotone chain; strict turns only, so collinear interior
  // points never make it into the vertex list.
  std::vector<Vec2> h(2 * pts.size());
  size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  const size_t lower_end = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower_end && cross(h[k - 2], h[k - 1], *it) <= 0.0) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  if (h.size() == 2 && h[0].x == h[1].x && h[0].y == h[1].y) h.resize(1);
  cv.vertices = std::move(h);
  return cv;
}

double ConvexValue::distance_to(const Vec2& p) const {
  if (vertices.size() == 1) {
    return std::hypot(p.x - vertices[0].x, p.y - vertices[0].y);
  }
  if (vertices.size() == 2) {
    return point_segment_dist(p, vertices[0], vertices[1]);
  }
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % vertices.size()];
    if (cross(a, b, p) < 0.0) inside = false;
    best = std::min(best, point_segment_dist(p, a, b));
  }
  return inside ? 0.0 : best;
}

bool ConvexValue::contains(const Vec2& p, double tol) const {
  return distance_to(p) <= tol;
}

// --- VectorClass -----------------------------------------------------------

VectorClass::VectorClass(std::vector<ClassPair> comps)
    : components(std::move(comps)) {
  if (components.empty())
    throw DimensionMismatch("VectorClass needs at least one component");
  for (const ClassPair& c : components)
    require_same_grid(c.grid(), components.front().grid());
}

ClassPair dot(const VectorClass& F, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != F.m())
    throw DimensionMismatch("direction dimension does not match class");
  ClassPair acc = class_scale(xi[0], F.components[0]);
  for (int j = 1; j < F.m(); ++j)
    acc = class_add(acc, class_scale(xi[j], F.components[j]));
  return acc;
}

ConvexValue value_at_vec(const VectorClass& F, double x) {
  if (F.m() > 2)
    throw DimensionMismatch("value_at_vec supports m <= 2");
  const Grid1D& grid = F.grid();
  if (!grid.contains(x)) throw OutOfDomain("value_at_vec: point outside domain");

  const auto as_vec = [&](double c0, double c1) { return Vec2{c0, c1}; };

  const int near = grid.nearest(x);
  if (grid.at_node(x, near)) {
    bool any_jump = false;
    for (const ClassPair& c : F.components)
      any_jump = any_jump || c.lower.is_jump(near);
    if (!any_jump) {
      return ConvexValue::hull_of({as_vec(
          F.components[0].lower.values[near],
          F.m() == 2 ? F.components[1].lower.values[near] : 0.0)});
    }
    // Cluster values are the two one-sided limit vectors, read per
    // component with the same neighbor convention as value_at.
    Vec2 L = as_vec(F.components[0].lower.left_limit(near),
                    F.m() == 2 ? F.components[1].lower.left_limit(near) : 0.0);
    Vec2 R = as_vec(F.components[0].lower.right_limit(near),
                    F.m() == 2 ? F.components[1].lower.right_limit(near) : 0.0);
    return ConvexValue::hull_of({L, R});
  }

  // Between nodes every component is piece-continuous; value_at handles
  // the (rare) unresolvable double-jump segment conservatively.
  std::vector<Vec2> pts;
  const IntervalValue v0 = value_at(F.components[0], x);
  if (F.m() == 1) {
    pts.push_back(as_vec(v0.lo, 0.0));
    pts.push_back(as_vec(v0.hi, 0.0));
  } else {
    const IntervalValue v1 = value_at(F.components[1], x);
    pts.push_back(as_vec(v0.lo, v1.lo));
    pts.push_back(as_vec(v0.lo, v1.hi));
    pts.push_back(as_vec(v0.hi, v1.lo));
    pts.push_back(as_vec(v0.hi, v1.hi));
  }
  return ConvexValue::hull_of(pts);
}

}  // namespace setcalc
