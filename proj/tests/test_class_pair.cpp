#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "setcalc/catalog.hpp"
#include "setcalc/class_pair.hpp"

using namespace setcalc;
using Catch::Approx;

namespace {

ClassPair entry(const std::string& name, const Grid1D& g) {
  return make_catalog_entry(name, g).fn;
}

}  // namespace

TEST_CASE("canonicalization forgets the sampled value at a jump") {
  Grid1D g(-1.0, 1.0, 201);
  const int j = g.nearest(0.0);
  std::vector<double> v(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i)
    v[static_cast<std::size_t>(i)] = i < j ? -1.0 : (i == j ? 0.3 : 1.0);
  const ClassPair a = canonical_pair(SampledFn::inferred(g, v, {j}));
  v[static_cast<std::size_t>(j)] = -0.7;
  const ClassPair b = canonical_pair(SampledFn::inferred(g, v, {j}));

  CHECK(a.lower.values[static_cast<std::size_t>(j)] == -1.0);
  CHECK(a.upper.values[static_cast<std::size_t>(j)] == 1.0);
  CHECK(a.lower.values == b.lower.values);
  CHECK(a.upper.values == b.upper.values);
  CHECK(a.jumps() == std::vector<int>{j});
  CHECK(a.max_jump() == Approx(2.0));
}

TEST_CASE("the two representatives are hulls of each other") {
  Grid1D g(-1.0, 1.0, 201);
  const ClassPair s = entry("sign", g);
  const SampledFn up = usc_hull(s.lower);
  const SampledFn dn = lsc_hull(s.upper);
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    worst = std::max({worst, std::fabs(up.values[k] - s.upper.values[k]),
                      std::fabs(dn.values[k] - s.lower.values[k])});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("class algebra identities") {
  Grid1D g(-1.0, 1.0, 201);
  const ClassPair s = entry("sign", g);

  SECTION("sign minus sign is the zero class, exactly") {
    const ClassPair z = class_add(s, class_scale(-1.0, s));
    CHECK(z.is_continuous());
    CHECK(std::all_of(z.rep().begin(), z.rep().end(),
                      [](double x) { return x == 0.0; }));
  }
  SECTION("sign times sign is the constant one, exactly") {
    const ClassPair one = class_mul(s, s);
    CHECK(one.is_continuous());
    CHECK(std::all_of(one.rep().begin(), one.rep().end(),
                      [](double x) { return x == 1.0; }));
  }
  SECTION("absorption: min(f, max(f, q)) returns f") {
    const ClassPair f = entry("abs", g);
    const ClassPair back = class_min(f, class_max(f, s));
    CHECK(back.rep() == f.rep());
    CHECK(back.upper.values == f.upper.values);
    CHECK(back.is_continuous());
  }
  SECTION("operands must share the grid") {
    CHECK_THROWS_AS(class_add(s, entry("sign", Grid1D(-1.0, 1.0, 202))),
                    GridMismatch);
  }
}

TEST_CASE("set values are piece-aware between nodes") {
  Grid1D g(-1.0, 1.0, 201);
  const ClassPair s = entry("sign", g);
  const int j = g.nearest(0.0);

  const IntervalValue at_jump = value_at(s, g.x(j));
  CHECK(at_jump.lo == -1.0);
  CHECK(at_jump.hi == 1.0);
  CHECK(at_jump.width() == 2.0);

  // The segment beside a jump node reads from its continuous side.
  const IntervalValue right = value_at(s, g.x(j) + 0.3 * g.h());
  CHECK(right.is_point());
  CHECK(right.lo == 1.0);
  const IntervalValue left = value_at(s, g.x(j) - 0.3 * g.h());
  CHECK(left.is_point());
  CHECK(left.hi == -1.0);

  const ClassPair a = entry("abs", g);
  const double xq = g.x(50) + 0.5 * g.h();
  CHECK(value_at(a, xq).lo == Approx(std::fabs(xq)).margin(1e-12));
  CHECK(a.max_jump() == 0.0);

  CHECK_THROWS_AS(value_at(s, 2.0), OutOfDomain);
}

TEST_CASE("wrapping helpers check their preconditions") {
  Grid1D g(-1.0, 1.0, 201);
  const ClassPair s = entry("sign", g);
  CHECK_THROWS_AS(continuous_class(s.lower), HasJumps);
  CHECK(continuous_class(entry("abs", g).lower).is_continuous());
}

TEST_CASE("irrecoverable jump metadata is rejected") {
  // A genuine three-level staircase across two adjacent declared jumps
  // cannot be reproduced from any lower/upper hull pair.
  Grid1D g(-1.0, 1.0, 201);
  const int j = 100;
  std::vector<double> v(static_cast<std::size_t>(g.n), -1.0);
  v[static_cast<std::size_t>(j)] = 0.0;
  for (int i = j + 1; i < g.n; ++i) v[static_cast<std::size_t>(i)] = 1.0;
  CHECK_THROWS_AS(canonical_pair(SampledFn::inferred(g, v, {j, j + 1})),
                  RepresentativeInconsistent);
}
