#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "setcalc/grid2d.hpp"

using namespace setcalc;
using Catch::Approx;

namespace {

// |x| + |y|, optionally lifted by `lift` on the right half plane with a
// vertical jump line at column `col`.
Sampled2D cross_fn(const Grid2D& g, int col = -1, double lift = 0.0) {
  std::vector<double> v(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double val = std::fabs(g.x(i)) + std::fabs(g.y(j));
      if (col >= 0 && i > col) val += lift;
      v[static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) +
        static_cast<std::size_t>(i)] = val;
    }
  std::vector<int> cols;
  if (col >= 0) cols.push_back(col);
  return Sampled2D::inferred(g, std::move(v), std::move(cols));
}

}  // namespace

TEST_CASE("2d samples validate their jump lines") {
  Grid2D g(-1.0, 1.0, -1.0, 1.0, 33, 33);
  CHECK_THROWS_AS(cross_fn(g, 0, 1.0), InvalidSampledFn);  // boundary line
  const Sampled2D f = cross_fn(g, 16, 0.8);
  CHECK(f.at(16, 0) == Approx(1.0).margin(1e-12));  // |0| + |-1|, unlifted
  CHECK(f.at(17, 0) == Approx(1.0 + 0.0625 + 0.8).margin(1e-12));
  CHECK(f.lip == Approx(1.0).margin(1e-9));
}

TEST_CASE("2d envelope sweeps match the direct oracle at spot nodes") {
  Grid2D g(-1.0, 1.0, -1.0, 1.0, 65, 65);
  const double k = 3.0;
  const int spots[][2] = {{0, 0}, {64, 64}, {32, 32}, {7, 50}, {50, 7},
                          {20, 20}, {45, 31}, {31, 45}, {1, 63}, {33, 20}};

  for (const bool with_jump : {false, true}) {
    const Sampled2D f = with_jump ? cross_fn(g, 32, 0.8) : cross_fn(g);
    const Sampled2D lo = lip_lower_envelope2d(f, k);
    const Sampled2D hi = lip_upper_envelope2d(f, k);
    for (const auto& s : spots) {
      const int i = s[0], j = s[1];
      CHECK(lo.at(i, j) ==
            Approx(envelope2d_oracle_at(f, k, false, i, j)).margin(1e-9));
      CHECK(hi.at(i, j) ==
            Approx(envelope2d_oracle_at(f, k, true, i, j)).margin(1e-9));
    }
  }
}

TEST_CASE("2d gradient values hull the quadrant slopes") {
  Grid2D g(-1.0, 1.0, -1.0, 1.0, 65, 65);
  const Sampled2D f = cross_fn(g);

  SECTION("the crossing point carries the full square") {
    const ConvexValue v = gradient_value2d(f, 32, 32);
    for (const double sx : {-1.0, 1.0})
      for (const double sy : {-1.0, 1.0})
        CHECK(v.contains({sx, sy}, 1e-6));
    CHECK_FALSE(v.contains({1.5, 0.0}, 1e-3));
    CHECK(v.distance_to({2.0, 0.0}) == Approx(1.0).margin(1e-6));
  }
  SECTION("smooth points give a near-singleton") {
    const ConvexValue v = gradient_value2d(f, 48, 16);  // x > 0, y < 0
    CHECK(v.distance_to({1.0, -1.0}) <= 1e-9);
    CHECK_FALSE(v.contains({0.0, 0.0}, 0.5));
  }
  SECTION("boundary and jump-line nodes are rejected") {
    CHECK_THROWS_AS(gradient_value2d(f, 0, 10), OutOfDomain);
    const Sampled2D withj = cross_fn(g, 32, 0.8);
    CHECK_THROWS_AS(gradient_value2d(withj, 32, 10), NotAContinuityPoint);
  }
}
