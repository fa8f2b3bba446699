#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "setcalc/sampled_fn.hpp"

using namespace setcalc;
using Catch::Approx;

namespace {

// -1 up to the node nearest 0 (inclusive), +1 to its right.
SampledFn step_fn(const Grid1D& g) {
  std::vector<double> v(static_cast<std::size_t>(g.n));
  const int j = g.nearest(0.0);
  for (int i = 0; i < g.n; ++i)
    v[static_cast<std::size_t>(i)] = i <= j ? -1.0 : 1.0;
  return SampledFn::inferred(g, v, {j});
}

std::vector<double> abs_values(const Grid1D& g) {
  std::vector<double> v(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i)
    v[static_cast<std::size_t>(i)] = std::fabs(g.x(i));
  return v;
}

}  // namespace

TEST_CASE("grid geometry and node lookup") {
  Grid1D g(-1.0, 1.0, 21);
  CHECK(g.h() == Approx(0.1));
  CHECK(g.x(10) == Approx(0.0).margin(1e-15));
  CHECK(g.nearest(0.04) == 10);
  CHECK(g.nearest(0.06) == 11);
  CHECK(g.nearest(-1.0) == 0);
  CHECK(g.nearest(1.0) == 20);
  CHECK_THROWS_AS(g.nearest(1.5), OutOfDomain);
  CHECK(g.at_node(g.x(7), 7));
  CHECK_FALSE(g.at_node(g.x(7) + 0.03, 7));
  CHECK_THROWS_AS(Grid1D(1.0, -1.0, 21), InvalidSampledFn);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), InvalidSampledFn);
  CHECK_THROWS_AS(require_same_grid(g, Grid1D(-1.0, 1.0, 22)), GridMismatch);
}

TEST_CASE("sample metadata is measured and validated") {
  Grid1D g(-1.0, 1.0, 21);
  std::vector<double> v = abs_values(g);

  SECTION("inferred measures lip and bound") {
    const SampledFn f = SampledFn::inferred(g, v);
    CHECK(f.lip == Approx(1.0));
    CHECK(f.bound == Approx(1.0));
    CHECK(f.tol_rep() == Approx(4.0 * f.lip * g.h() + 1e-12));
  }
  SECTION("a declared lip below the samples is rejected") {
    CHECK_THROWS_AS(SampledFn(g, v, {}, 0.2, 1.0), InvalidSampledFn);
  }
  SECTION("boundary jumps are rejected") {
    CHECK_THROWS_AS(SampledFn::inferred(g, v, {0}), InvalidSampledFn);
    CHECK_THROWS_AS(SampledFn::inferred(g, v, {20}), InvalidSampledFn);
  }
  SECTION("nonfinite samples are rejected") {
    v[3] = std::nan("");
    CHECK_THROWS_AS(SampledFn::inferred(g, v), InvalidSampledFn);
  }
  SECTION("a size mismatch is rejected") {
    v.pop_back();
    CHECK_THROWS_AS(SampledFn::inferred(g, v), InvalidSampledFn);
  }
}

TEST_CASE("one-sided limits come from the jump neighbors") {
  Grid1D g(-1.0, 1.0, 21);
  const SampledFn f = step_fn(g);
  const int j = g.nearest(0.0);
  CHECK(f.is_jump(j));
  CHECK_FALSE(f.is_jump(j + 1));
  CHECK(f.left_limit(j) == -1.0);
  CHECK(f.right_limit(j) == 1.0);
  CHECK(f.left_limit(5) == -1.0);
  CHECK(f.right_limit(5) == -1.0);
}

TEST_CASE("semicontinuous hulls repair parked spike values") {
  Grid1D g(-1.0, 1.0, 21);
  const int j = g.nearest(0.0);
  std::vector<double> v(21, -1.0);
  for (int i = j + 1; i < 21; ++i) v[static_cast<std::size_t>(i)] = 1.0;
  v[static_cast<std::size_t>(j)] = 0.25;  // neither one-sided limit
  const SampledFn f = SampledFn::inferred(g, v, {j});

  const SampledFn lo = lsc_hull(f);
  const SampledFn hi = usc_hull(f);
  CHECK(lo.values[static_cast<std::size_t>(j)] == -1.0);
  CHECK(hi.values[static_cast<std::size_t>(j)] == 1.0);
  CHECK(lsc_hull(lo).values == lo.values);
  CHECK(usc_hull(hi).values == hi.values);
  for (int i = 0; i < 21; ++i) {
    if (i == j) continue;
    CHECK(lo.values[static_cast<std::size_t>(i)] == f.values[static_cast<std::size_t>(i)]);
    CHECK(hi.values[static_cast<std::size_t>(i)] == f.values[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("quasicontinuity separates one-sided limits from spikes") {
  Grid1D g(-1.0, 1.0, 21);
  CHECK(is_quasicontinuous(step_fn(g), 1e-9));

  const int j = g.nearest(0.0);
  std::vector<double> v(21, -1.0);
  for (int i = j + 1; i < 21; ++i) v[static_cast<std::size_t>(i)] = 1.0;
  v[static_cast<std::size_t>(j)] = 5.0;
  CHECK_FALSE(is_quasicontinuous(SampledFn::inferred(g, v, {j}), 1e-9));
}

TEST_CASE("sup norm and trapezoid integral") {
  Grid1D g(-1.0, 1.0, 201);
  const std::vector<double> v = abs_values(g);
  CHECK(sup_norm(SampledFn::inferred(g, v)) == 1.0);
  // |x| is piecewise linear with its kink on a node, so the rule is exact.
  CHECK(trapezoid(g, v) == Approx(1.0));
}
