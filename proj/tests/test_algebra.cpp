#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "algebra.hpp"
#include "setcalc/errors.hpp"

using namespace setcalc;
using Catch::Approx;

namespace {
double mid(const IntervalValue& v) { return 0.5 * (v.lo + v.hi); }
}  // namespace

TEST_CASE("sum and scale follow the derivative rules through the parser") {
  const Grid1D g = default_grid();
  const auto r = cli::eval_algebra("add(abs, scale(-1, abs))", g);

  // |x| - |x| cancels exactly, and the gradient rule keeps the
  // cancellation: a single-point zero interval even at the kink.
  CHECK(r.fn.is_continuous());
  for (double v : r.fn.rep()) CHECK(v == 0.0);
  const IntervalValue at0 = r.grad.at(0.0);
  CHECK(at0.lo == 0.0);
  CHECK(at0.hi == 0.0);
}

TEST_CASE("nested min and compose evaluate pointwise") {
  const Grid1D g = default_grid();
  const auto r = cli::eval_algebra("min(abs, compose(square, linear))", g);
  // min(|x|, x^2): the parabola wins inside the unit interval
  CHECK(mid(value_at(r.fn, 0.5)) == Approx(0.25).margin(1e-6));
  CHECK(mid(value_at(r.fn, -0.5)) == Approx(0.25).margin(1e-6));
  CHECK(mid(value_at(r.fn, 0.0)) == Approx(0.0).margin(1e-9));
}

TEST_CASE("whitespace is insignificant") {
  const Grid1D g(-1.0, 1.0, 201);
  const auto tight = cli::eval_algebra("max(abs,sign)", g);
  const auto loose = cli::eval_algebra("  max ( abs ,  sign )  ", g);
  CHECK(tight.fn.rep() == loose.fn.rep());
}

TEST_CASE("chain rule through log matches the closed form") {
  const Grid1D g = default_grid();
  const auto r = cli::eval_algebra("compose(log, add(abs, const:1))", g);
  // d/dx log(|x| + 1) = sign(x) / (|x| + 1)
  CHECK(mid(r.grad.at(0.5)) == Approx(1.0 / 1.5).margin(0.01));
  CHECK(mid(r.grad.at(-0.5)) == Approx(-1.0 / 1.5).margin(0.01));
  const IntervalValue at0 = r.grad.at(0.0);
  CHECK(at0.lo == Approx(-1.0).margin(0.01));
  CHECK(at0.hi == Approx(1.0).margin(0.01));
}

TEST_CASE("malformed expressions are rejected with the right category") {
  const Grid1D g(-1.0, 1.0, 201);
  // arity and argument-kind errors are config errors
  CHECK_THROWS_AS(cli::eval_algebra("add(abs)", g), BadConfig);
  CHECK_THROWS_AS(cli::eval_algebra("scale(abs, 2)", g), BadConfig);
  CHECK_THROWS_AS(cli::eval_algebra("frobnicate(abs)", g), BadConfig);
  CHECK_THROWS_AS(cli::eval_algebra("abs)", g), BadConfig);
  CHECK_THROWS_AS(cli::eval_algebra("add(abs, sign", g), BadConfig);
  // log needs a positive range; |x| touches zero
  CHECK_THROWS_AS(cli::eval_algebra("compose(log, abs)", g), BadConfig);
  // an unknown leaf is a lookup failure, not a parse failure
  CHECK_THROWS_AS(cli::eval_algebra("nope", g), UnknownFunction);
  CHECK_THROWS_AS(cli::eval_algebra("min(abs, nope)", g), UnknownFunction);
}
