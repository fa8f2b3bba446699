#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "setcalc/catalog.hpp"

using namespace setcalc;
using Catch::Approx;

TEST_CASE("every shipped entry builds on an arbitrary grid") {
  const Grid1D g(-1.0, 1.0, 257);
  const auto names = catalog_names();
  CHECK(names.size() == 12);
  for (const std::string& name : names) {
    const CatalogEntry e = make_catalog_entry(name, g);
    CHECK(e.name == name);
    CHECK(e.fn.n() == g.n);
    if (e.has_closed_gradient) CHECK(e.gradient.grid() == g);
  }
}

TEST_CASE("default grid") {
  const Grid1D g = default_grid();
  CHECK(g.a == -1.0);
  CHECK(g.b == 1.0);
  CHECK(g.n == 2001);
}

TEST_CASE("closed-form gradients are flagged where they exist") {
  const Grid1D g = default_grid();
  CHECK(make_catalog_entry("abs", g).has_closed_gradient);
  CHECK(make_catalog_entry("ramp", g).has_closed_gradient);
  CHECK_FALSE(make_catalog_entry("sign", g).has_closed_gradient);
  CHECK_FALSE(make_catalog_entry("sinlog", g).has_closed_gradient);

  // the gradient of abs is the unit step pair
  const CatalogEntry e = make_catalog_entry("abs", g);
  const int j = g.nearest(0.0);
  CHECK(e.gradient.lower.values[static_cast<std::size_t>(j)] == -1.0);
  CHECK(e.gradient.upper.values[static_cast<std::size_t>(j)] == 1.0);
}

TEST_CASE("parametric entries parse their parameters") {
  const Grid1D g(-1.0, 1.0, 201);

  SECTION("constants") {
    const ClassPair c = make_catalog_entry("const:2.5", g).fn;
    CHECK(std::all_of(c.rep().begin(), c.rep().end(),
                      [](double v) { return v == 2.5; }));
  }
  SECTION("mollified entries are continuous and lift the kink") {
    const CatalogEntry e = make_catalog_entry("mollified:abs:0.2", g);
    CHECK(e.fn.is_continuous());
    CHECK(value_at(e.fn, 0.0).lo > 0.01);
    CHECK(e.fn.lower.lip <= 1.0 + 1e-9);
  }
  SECTION("sub-step widths degrade to the identity kernel") {
    const ClassPair c = make_catalog_entry("mollified:sign:1e-9", g).fn;
    CHECK(c.is_continuous());  // metadata-wise: the step survives as steep slope
    CHECK(c.lower.lip > 1.0 / g.h());
  }
  SECTION("bad parameters are rejected") {
    CHECK_THROWS_AS(make_catalog_entry("nope", g), UnknownFunction);
    CHECK_THROWS_AS(make_catalog_entry("const:xx", g), UnknownFunction);
    CHECK_THROWS_AS(make_catalog_entry("mollified:abs", g), UnknownFunction);
    CHECK_THROWS_AS(make_catalog_entry("mollified:abs:-0.5", g), BadConfig);
    CHECK_THROWS_AS(make_catalog_entry("mollified:abs:50", g), BadConfig);
  }
}

TEST_CASE("the step-sum entry carries three jumps") {
  const Grid1D g = default_grid();
  const ClassPair s = make_catalog_entry("step-sum", g).fn;
  CHECK(s.jumps().size() == 3);
  CHECK(s.max_jump() == Approx(1.0));
  CHECK(value_at(s, -0.9).is_point());
}
