#include "algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "setcalc/class_pair.hpp"
#include "setcalc/errors.hpp"

namespace setcalc::cli {

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  void expect(char c) {
    if (peek() != c)
      throw BadConfig(std::string("algebra: expected '") + c + "' at offset " +
                      std::to_string(pos) + " in '" + s + "'");
    ++pos;
  }

  // A name or number: everything up to a delimiter. Catalog names may
  // contain ':' and '.', numbers a sign, so only the structural
  // characters end a token.
  std::string token() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] != '(' && s[pos] != ')' && s[pos] != ',' &&
           !std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start)
      throw BadConfig("algebra: expected a name at offset " +
                      std::to_string(start) + " in '" + s + "'");
    return s.substr(start, pos - start);
  }

  double number() {
    const std::string t = token();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v))
      throw BadConfig("algebra: '" + t + "' is not a number");
    return v;
  }

  AlgebraResult expr(const Grid1D& grid);
};

AlgebraResult leaf(const std::string& name, const Grid1D& grid) {
  CatalogEntry e = make_catalog_entry(name, grid);
  GradientField d = clarke_gradient(e.fn.lower);
  return {std::move(e.fn), std::move(d)};
}

// phi sampled over the value range of f, padded so chain-rule lookups
// stay interior. For log the padding is capped to keep the grid
// positive.
SmoothFn build_phi(const std::string& which, const ClassPair& f) {
  double lo = f.lower.values.front(), hi = lo;
  for (const SampledFn* rep : {&f.lower, &f.upper})
    for (double v : rep->values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  double pad = std::max(0.05 * (hi - lo), 1e-6);
  if (which == "log") {
    if (!(lo > 0.0))
      throw BadConfig("algebra: compose(log, f) needs f > 0 everywhere");
    pad = std::min(pad, 0.5 * lo);
  }
  const Grid1D rg(lo - pad, hi + pad, std::max(f.lower.grid.n, 64));
  std::vector<double> pv(static_cast<std::size_t>(rg.n));
  std::vector<double> pd(static_cast<std::size_t>(rg.n));
  for (int i = 0; i < rg.n; ++i) {
    const double v = rg.x(i);
    if (which == "square") {
      pv[static_cast<std::size_t>(i)] = v * v;
      pd[static_cast<std::size_t>(i)] = 2.0 * v;
    } else {
      pv[static_cast<std::size_t>(i)] = std::log(v);
      pd[static_cast<std::size_t>(i)] = 1.0 / v;
    }
  }
  return SmoothFn(SampledFn::inferred(rg, std::move(pv)), std::move(pd));
}

ClassPair compose_class(const SmoothFn& phi, const ClassPair& f) {
  const Grid1D& g = f.lower.grid;
  std::vector<double> v(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    const double y = f.lower.values[static_cast<std::size_t>(i)];
    const int j = phi.fn.grid.nearest(y);
    // One linear-interpolation step keeps the sample honest between
    // phi's grid nodes.
    const double xj = phi.fn.grid.x(j);
    const double slope =
        phi.derivative.empty() ? 0.0 : phi.derivative[static_cast<std::size_t>(j)];
    v[static_cast<std::size_t>(i)] =
        phi.fn.values[static_cast<std::size_t>(j)] + slope * (y - xj);
  }
  return canonical_pair(SampledFn::inferred(g, std::move(v), f.jumps()));
}

AlgebraResult Parser::expr(const Grid1D& grid) {
  const std::string head = token();
  if (peek() != '(') return leaf(head, grid);

  expect('(');
  if (head == "add" || head == "mul" || head == "min" || head == "max") {
    AlgebraResult a = expr(grid);
    expect(',');
    AlgebraResult b = expr(grid);
    expect(')');
    if (head == "add")
      return {class_add(a.fn, b.fn), grad_add(a.grad, b.grad)};
    if (head == "mul")
      return {class_mul(a.fn, b.fn), grad_product(a.fn, a.grad, b.fn, b.grad)};
    const bool take_min = head == "min";
    return {take_min ? class_min(a.fn, b.fn) : class_max(a.fn, b.fn),
            grad_minmax(a.fn, a.grad, b.fn, b.grad, take_min)};
  }
  if (head == "scale") {
    const double c = number();
    expect(',');
    AlgebraResult a = expr(grid);
    expect(')');
    return {class_scale(c, a.fn), grad_scale(c, a.grad)};
  }
  if (head == "compose") {
    const std::string which = token();
    if (which != "square" && which != "log")
      throw BadConfig("algebra: compose supports square and log, not '" +
                      which + "'");
    expect(',');
    AlgebraResult a = expr(grid);
    expect(')');
    const SmoothFn phi = build_phi(which, a.fn);
    GradientField d = grad_chain(phi, a.fn, a.grad);
    return {compose_class(phi, a.fn), std::move(d)};
  }
  throw BadConfig("algebra: unknown operator '" + head + "'");
}

}  // namespace

AlgebraResult eval_algebra(const std::string& text, const Grid1D& grid) {
  Parser p{text};
  AlgebraResult r = p.expr(grid);
  p.skip_ws();
  if (p.pos != text.size())
    throw BadConfig("algebra: trailing characters after expression in '" +
                    text + "'");
  return r;
}

}  // namespace setcalc::cli
