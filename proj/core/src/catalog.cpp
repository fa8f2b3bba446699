#include "setcalc/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <utility>

#include "setcalc/errors.hpp"
#include "setcalc/mollify.hpp"

namespace setcalc {

namespace {

std::vector<double> sample(const Grid1D& g,
                           const std::function<double(double)>& fn) {
  std::vector<double> v(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = fn(g.x(i));
  return v;
}

ClassPair smooth(const Grid1D& g, const std::function<double(double)>& fn) {
  return continuous_class(SampledFn::inferred(g, sample(g, fn)));
}

// Interior node nearest to t, for parking a jump.
int jump_node(const Grid1D& g, double t) {
  if (!g.contains(t)) throw BadConfig("jump location outside the grid");
  int i = g.nearest(t);
  if (i < 1) i = 1;
  if (i > g.n - 2) i = g.n - 2;
  return i;
}

// Step class: left_value left of the node, right_value to its right. The
// sample at the node itself is forgotten by canonicalization.
ClassPair step_class(const Grid1D& g, const std::vector<int>& nodes,
                     const std::function<double(double)>& leftwise) {
  std::vector<double> v = sample(g, leftwise);
  return canonical_pair(SampledFn::inferred(g, std::move(v), nodes));
}

ClassPair sign_class(const Grid1D& g) {
  const int j0 = jump_node(g, 0.0);
  const double t = g.x(j0);
  return step_class(g, {j0}, [t](double x) { return x <= t ? -1.0 : 1.0; });
}

ClassPair zero_class(const Grid1D& g) {
  return smooth(g, [](double) { return 0.0; });
}

double parse_real(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    throw UnknownFunction(std::string("bad numeric parameter in ") + what);
  return v;
}

}  // namespace

Grid1D default_grid() { return Grid1D(-1.0, 1.0, 2001); }

std::vector<std::string> catalog_names() {
  return {"abs",       "neg-abs", "sign",    "zero",
          "const:1",   "linear",  "quadratic", "sinlog",
          "ramp",      "step-sum", "mollified:abs:0.064",
          "mollified:sign:0.064"};
}

CatalogEntry make_catalog_entry(const std::string& name, const Grid1D& grid) {
  CatalogEntry e;
  e.name = name;

  if (name == "abs") {
    e.fn = smooth(grid, [](double x) { return std::fabs(x); });
    e.has_closed_gradient = true;
    e.gradient = sign_class(grid);
    return e;
  }
  if (name == "neg-abs") {
    e.fn = smooth(grid, [](double x) { return -std::fabs(x); });
    e.has_closed_gradient = true;
    const int j0 = jump_node(grid, 0.0);
    const double t = grid.x(j0);
    e.gradient =
        step_class(grid, {j0}, [t](double x) { return x <= t ? 1.0 : -1.0; });
    return e;
  }
  if (name == "sign") {
    e.fn = sign_class(grid);
    return e;
  }
  if (name == "zero") {
    e.fn = zero_class(grid);
    e.has_closed_gradient = true;
    e.gradient = zero_class(grid);
    return e;
  }
  if (name.rfind("const:", 0) == 0) {
    const double c = parse_real(name.substr(6), "const");
    e.fn = smooth(grid, [c](double) { return c; });
    e.has_closed_gradient = true;
    e.gradient = zero_class(grid);
    return e;
  }
  if (name == "linear") {
    e.fn = smooth(grid, [](double x) { return x; });
    e.has_closed_gradient = true;
    e.gradient = smooth(grid, [](double) { return 1.0; });
    return e;
  }
  if (name == "quadratic") {
    e.fn = smooth(grid, [](double x) { return x * x; });
    e.has_closed_gradient = true;
    e.gradient = smooth(grid, [](double x) { return 2.0 * x; });
    return e;
  }
  if (name == "sinlog") {
    // Oscillating-slope stress case: x * sin(3 log|x|). The slope keeps
    // swinging through +-sqrt(10) all the way into 0, so smoothing stages
    // never settle at desk resolutions.
    e.fn = smooth(grid, [](double x) {
      return x == 0.0 ? 0.0 : x * std::sin(3.0 * std::log(std::fabs(x)));
    });
    return e;
  }
  if (name == "ramp") {
    e.fn = smooth(grid, [](double x) { return x > 0.0 ? x : 0.0; });
    e.has_closed_gradient = true;
    const int j0 = jump_node(grid, 0.0);
    const double t = grid.x(j0);
    e.gradient =
        step_class(grid, {j0}, [t](double x) { return x <= t ? 0.0 : 1.0; });
    return e;
  }
  if (name == "step-sum") {
    const double a = grid.a, w = grid.b - grid.a;
    const double t1 = a + 0.25 * w, t2 = a + 0.55 * w, t3 = a + 0.8 * w;
    e.fn = step_class(grid, {jump_node(grid, t1), jump_node(grid, t2),
                             jump_node(grid, t3)},
                      [&](double x) {
                        double v = 0.0;
                        if (x > grid.x(jump_node(grid, t1))) v += 1.0;
                        if (x > grid.x(jump_node(grid, t2))) v -= 0.5;
                        if (x > grid.x(jump_node(grid, t3))) v += 0.75;
                        return v;
                      });
    return e;
  }
  if (name.rfind("mollified:", 0) == 0) {
    const std::string rest = name.substr(10);
    const std::size_t colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == rest.size())
      throw UnknownFunction("mollified entry needs mollified:<base>:<width>");
    const std::string base = rest.substr(0, colon);
    const double width = parse_real(rest.substr(colon + 1), "mollified");
    CatalogEntry inner = make_catalog_entry(base, grid);
    e.fn = continuous_class(mollify(inner.fn.lower, width));
    return e;
  }
  throw UnknownFunction("no catalog entry named '" + name + "'");
}

}  // namespace setcalc
