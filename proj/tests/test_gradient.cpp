#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "setcalc/catalog.hpp"
#include "setcalc/gradient.hpp"
#include "setcalc/metric.hpp"

using namespace setcalc;
using Catch::Approx;

namespace {

// Worst node-wise interval distance between a scalar field and a class.
double field_class_gap(const GradientField& F, const ClassPair& want) {
  const ClassPair& got = F.component(0);
  const Grid1D& g = got.grid();
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    worst = std::max(worst, interval_hausdorff(value_at(got, x), value_at(want, x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("the kink field of abs carries the unit interval at zero") {
  Grid1D g = default_grid();
  const CatalogEntry e = make_catalog_entry("abs", g);
  const GradientField d = clarke_gradient(e.fn.lower);

  const IntervalValue at0 = d.at(0.0);
  CHECK(at0.lo == Approx(-1.0).margin(1e-9));
  CHECK(at0.hi == Approx(1.0).margin(1e-9));
  const IntervalValue away = d.at(0.5);
  CHECK(away.width() <= 1e-9);
  CHECK(away.lo == Approx(1.0).margin(1e-9));

  REQUIRE(e.has_closed_gradient);
  CHECK(field_class_gap(d, e.gradient) <= 1e-9);
}

TEST_CASE("field algebra is linear, with exact cancellation") {
  Grid1D g = default_grid();
  const GradientField d = clarke_gradient(make_catalog_entry("abs", g).fn.lower);
  const GradientField zero = grad_add(d, grad_scale(-1.0, d));
  CHECK(zero.component(0).is_continuous());
  CHECK(std::all_of(zero.component(0).rep().begin(), zero.component(0).rep().end(),
                    [](double v) { return v == 0.0; }));
  const IntervalValue at0 = zero.at(0.0);
  CHECK(at0.is_point());
  CHECK(at0.lo == 0.0);
}

TEST_CASE("classical differentiation uses declared slopes or stencils") {
  Grid1D g(-1.0, 1.0, 401);
  std::vector<double> v(static_cast<std::size_t>(g.n)), dv(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    v[static_cast<std::size_t>(i)] = x * x;
    dv[static_cast<std::size_t>(i)] = 2.0 * x;
  }
  const GradientField with_d = classical_gradient(SmoothFn(SampledFn::inferred(g, v), dv));
  const GradientField stencil = classical_gradient(SmoothFn(SampledFn::inferred(g, v)));
  double worst_decl = 0.0, worst_sten = 0.0;
  for (int i = 1; i + 1 < g.n; ++i) {
    const double x = g.x(i);
    worst_decl = std::max(worst_decl, std::fabs(with_d.at(x).lo - 2.0 * x));
    // central differences of a quadratic are exact up to rounding
    worst_sten = std::max(worst_sten, std::fabs(stencil.at(x).lo - 2.0 * x));
  }
  CHECK(worst_decl <= 1e-12);
  CHECK(worst_sten <= 1e-9);

  CHECK_THROWS_AS(SmoothFn(make_catalog_entry("sign", g).fn.lower), HasJumps);
}

TEST_CASE("closure differentiation recovers the kink field") {
  Grid1D g = default_grid();
  const CatalogEntry e = make_catalog_entry("abs", g);
  const ClosureResult res = closure_gradient(e.fn.lower, SmoothingSchedule::standard(g));
  REQUIRE(res.diag.converged);
  REQUIRE(res.field.has_value());
  CHECK(field_class_gap(*res.field, e.gradient) <= slope_tol(e.fn) + 1e-12);
  REQUIRE(res.diag.stage_gaps.size() >= 2);
  CHECK(res.diag.stage_gaps.back() <= slope_tol(e.fn));
}

TEST_CASE("closure failure modes are honest") {
  Grid1D g = default_grid();
  SECTION("a jump class defeats every smoothing width") {
    const SampledFn s = make_catalog_entry("sign", g).fn.lower;
    CHECK_THROWS_AS(closure_gradient(s, SmoothingSchedule::standard(g)),
                    ScheduleTooCoarse);
  }
  SECTION("oscillating slopes report non-convergence without a field") {
    const SampledFn w = make_catalog_entry("sinlog", g).fn.lower;
    const ClosureResult res = closure_gradient(w, SmoothingSchedule::standard(g));
    CHECK_FALSE(res.diag.converged);
    CHECK_FALSE(res.field.has_value());
    CHECK(res.diag.stage_gaps.size() >= 2);
  }
}

TEST_CASE("product rule on abs squared matches the smooth derivative") {
  Grid1D g = default_grid();
  const CatalogEntry e = make_catalog_entry("abs", g);
  const GradientField d = clarke_gradient(e.fn.lower);
  const GradientField prod = grad_product(e.fn, d, e.fn, d);

  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    if (std::fabs(x) < 0.05) continue;
    const IntervalValue v = value_at(prod.component(0), x);
    worst = std::max(worst, std::fabs(0.5 * (v.lo + v.hi) - 2.0 * x));
  }
  CHECK(worst <= 1e-9);
  // both one-sided products vanish at the kink, so the set value is {0}
  const IntervalValue at0 = prod.at(0.0);
  CHECK(std::fabs(at0.lo) <= 1e-12);
  CHECK(std::fabs(at0.hi) <= 1e-12);
}

TEST_CASE("the selector rule hulls one-sided slopes at crossings") {
  Grid1D g = default_grid();
  const CatalogEntry lin = make_catalog_entry("linear", g);
  const CatalogEntry zer = make_catalog_entry("zero", g);
  const GradientField dl = clarke_gradient(lin.fn.lower);
  const GradientField dz = clarke_gradient(zer.fn.lower);

  const GradientField dmin = grad_minmax(lin.fn, dl, zer.fn, dz, true);
  const ClassPair minc = class_min(lin.fn, zer.fn);
  const GradientField want = clarke_gradient(minc.lower);
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    worst = std::max(worst,
                     interval_hausdorff(value_at(dmin.component(0), x),
                                        value_at(want.component(0), x)));
  }
  CHECK(worst <= slope_tol(minc) + 1e-12);
  const IntervalValue at0 = dmin.at(0.0);
  CHECK(at0.lo == Approx(0.0).margin(1e-9));
  CHECK(at0.hi == Approx(1.0).margin(1e-9));
}

TEST_CASE("the chain rule kills a kink under a flat outer slope") {
  Grid1D g = default_grid();
  const CatalogEntry e = make_catalog_entry("abs", g);
  const GradientField d = clarke_gradient(e.fn.lower);

  // phi(t) = t^2 sampled over the range of abs, with padding
  Grid1D rg(-0.05, 1.05, 2001);
  std::vector<double> pv(static_cast<std::size_t>(rg.n)), pd(static_cast<std::size_t>(rg.n));
  for (int i = 0; i < rg.n; ++i) {
    const double t = rg.x(i);
    pv[static_cast<std::size_t>(i)] = t * t;
    pd[static_cast<std::size_t>(i)] = 2.0 * t;
  }
  const SmoothFn phi(SampledFn::inferred(rg, pv), pd);
  const GradientField chained = grad_chain(phi, e.fn, d);

  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    if (std::fabs(x) < 0.05) continue;
    const IntervalValue v = value_at(chained.component(0), x);
    worst = std::max(worst, std::fabs(0.5 * (v.lo + v.hi) - 2.0 * x));
  }
  CHECK(worst <= slope_tol(e.fn) + 1e-12);
  // phi'(0) = 0 collapses the [-1,1] kink interval to a point
  const IntervalValue at0 = chained.at(0.0);
  CHECK(std::fabs(at0.lo) <= 1e-6);
  CHECK(std::fabs(at0.hi) <= 1e-6);

  SECTION("a range gap is rejected") {
    Grid1D small(0.5, 0.9, 101);
    std::vector<double> sv(101), sd(101);
    for (int i = 0; i < 101; ++i) {
      sv[static_cast<std::size_t>(i)] = small.x(i);
      sd[static_cast<std::size_t>(i)] = 1.0;
    }
    CHECK_THROWS_AS(grad_chain(SmoothFn(SampledFn::inferred(small, sv), sd), e.fn, d),
                    RangeMismatch);
  }
}

TEST_CASE("stationarity and pointwise differentiability probes") {
  Grid1D g = default_grid();
  const CatalogEntry a = make_catalog_entry("abs", g);
  const CatalogEntry q = make_catalog_entry("quadratic", g);
  const GradientField da = clarke_gradient(a.fn.lower);
  const GradientField dq = clarke_gradient(q.fn.lower);

  CHECK(stationarity_check(a.fn, da, 0.0));
  CHECK_THROWS_AS(stationarity_check(a.fn, da, 0.5), NotAnExtremum);
  CHECK(stationarity_check(q.fn, dq, 0.0));

  CHECK(differentiability_at_continuity(q.fn, dq, 0.3));
  CHECK(differentiability_at_continuity(a.fn, da, 0.4));
  CHECK_THROWS_AS(differentiability_at_continuity(a.fn, da, 0.0),
                  NotAContinuityPoint);
}

TEST_CASE("limit exchange recovers the uniform limit and its field") {
  Grid1D g(-1.0, 1.0, 257);
  std::vector<ClassPair> fs;
  std::vector<GradientField> dfs;
  for (int n : {4, 8, 16, 32, 64}) {
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
      v[static_cast<std::size_t>(i)] = std::hypot(g.x(i), 1.0 / n);
    const ClassPair c = continuous_class(SampledFn::inferred(g, v));
    fs.push_back(c);
    dfs.push_back(clarke_gradient(c.lower));
  }
  const LimitExchange ex = limit_exchange(fs, dfs, 0.25, default_k_schedule(), 0.3);

  double worst = 0.0;
  for (int i = 0; i < g.n; ++i)
    worst = std::max(worst, std::fabs(ex.limit_fn.rep()[static_cast<std::size_t>(i)] -
                                      std::fabs(g.x(i))));
  CHECK(worst <= 1.0 / 64.0 + 1e-9);
  REQUIRE(ex.fn_gaps.size() >= 2);
  CHECK(ex.fn_gaps.back() <= ex.fn_gaps.front() + 1e-12);
  CHECK(ex.grad_gaps.back() <= 0.3);
  CHECK(ex.clarke_gap <= slope_tol(ex.limit_fn) + 1e-9);

  SECTION("a non-cauchy function sequence is rejected") {
    std::vector<ClassPair> bad;
    std::vector<GradientField> dbad;
    for (int n = 0; n < 4; ++n) {
      const CatalogEntry e = make_catalog_entry(n % 2 ? "neg-abs" : "abs",
                                                Grid1D(-1.0, 1.0, 257));
      bad.push_back(e.fn);
      dbad.push_back(clarke_gradient(e.fn.lower));
    }
    CHECK_THROWS_AS(limit_exchange(bad, dbad, 0.25, default_k_schedule(), 0.05),
                    HypothesisViolated);
  }
}
