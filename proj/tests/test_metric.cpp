#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "oracles.hpp"
#include "setcalc/catalog.hpp"
#include "setcalc/metric.hpp"
#include "setcalc/verify.hpp"

using namespace setcalc;
using Catch::Approx;

TEST_CASE("delta adds the graph and integral distances") {
  Grid1D g(-1.0, 1.0, 201);
  const SampledFn zero = make_catalog_entry("zero", g).fn.lower;
  const SampledFn quarter =
      SampledFn::inferred(g, std::vector<double>(static_cast<std::size_t>(g.n), 0.25));
  // Graph part 0.25 between the parallel lines, integral part 0.5.
  CHECK(delta_metric(zero, quarter) == Approx(0.75).margin(1e-12));
  CHECK(delta_metric(zero, zero) == 0.0);
  CHECK(delta_metric(quarter, zero) == Approx(delta_metric(zero, quarter)).margin(1e-15));
}

TEST_CASE("polyline distance agrees with a dense point cloud") {
  Grid1D g(-1.0, 1.0, 201);
  for (std::uint64_t seed : {21, 22, 23}) {
    const SampledFn f = random_piecewise_fn(g, seed, 3, 2.0, false);
    const SampledFn q = random_piecewise_fn(g, seed + 50, 3, 2.0, false);
    const double fast = graph_hausdorff(f, q);
    const double ref = oracle::graph_hausdorff_oracle(f, q, 0.5 * g.h());
    // Vertex sampling and cloud spacing each miss at most half a segment.
    const double L = std::max({f.lip, q.lip, 1.0});
    CHECK(std::fabs(fast - ref) <= 0.75 * g.h() * std::hypot(1.0, L));
  }
}

TEST_CASE("the graph metric of the unit jump against zero is one") {
  Grid1D g = default_grid();
  const ClassPair s = make_catalog_entry("sign", g).fn;
  const ClassPair z = make_catalog_entry("zero", g).fn;
  const MetricReport rep = s_metric(s, z, default_k_schedule());
  CHECK(rep.value == Approx(1.0).margin(1e-9));
  REQUIRE(rep.per_k.size() == 11);
  for (const PerKTerm& t : rep.per_k) {
    CHECK(t.lower_term == Approx(1.0).margin(1e-9));
    CHECK(t.upper_term == Approx(1.0).margin(1e-9));
  }
  CHECK(rep.truncation_bound >= 0.0);
}

TEST_CASE("the integral-augmented metric dominates and hits its closed form") {
  Grid1D g = default_grid();
  const ClassPair s = make_catalog_entry("sign", g).fn;
  const ClassPair z = make_catalog_entry("zero", g).fn;
  const auto ks = default_k_schedule();
  const double rv = r_metric(s, z, ks).value;
  const double sv = s_metric(s, z, ks).value;
  CHECK(rv >= sv - 1e-12);
  // Graph term 1 plus integral term 2 - 1/k, increasing toward k = 1024.
  CHECK(rv == Approx(3.0 - 1.0 / 1024.0).margin(0.02));
}

TEST_CASE("metric axioms hold on seeded jump classes") {
  Grid1D g(-1.0, 1.0, 401);
  const auto ks = default_k_schedule();
  const ClassPair f = random_piecewise_class(g, 31, 3, 2.0, true);
  const ClassPair q = random_piecewise_class(g, 32, 3, 2.0, true);
  const ClassPair w = random_piecewise_class(g, 33, 3, 2.0, true);

  for (auto metric : {s_metric, r_metric}) {
    const double fq = metric(f, q, ks).value;
    const double qf = metric(q, f, ks).value;
    const double fw = metric(f, w, ks).value;
    const double qw = metric(q, w, ks).value;
    CHECK(metric(f, f, ks).value <= 1e-12);
    CHECK(fq == Approx(qf).margin(1e-12));
    CHECK(fw <= fq + qw + 1e-9);
    CHECK(fq > 0.01);
  }
}

TEST_CASE("the vector reduction at one component is the scalar metric") {
  Grid1D g(-1.0, 1.0, 401);
  const auto ks = default_k_schedule();
  const ClassPair f = random_piecewise_class(g, 41, 3, 2.0, true);
  const ClassPair q = random_piecewise_class(g, 42, 3, 2.0, true);
  const MetricReport sv =
      s_metric_vec(VectorClass::scalar(f), VectorClass::scalar(q), ks);
  CHECK(sv.value == Approx(s_metric(f, q, ks).value).margin(1e-9));
  CHECK(sv.directions.size() == 2);
}

TEST_CASE("tail convergence test") {
  CHECK(converging_tail({0.9, 0.5, 0.3, 0.2, 0.15}, 0.2));
  CHECK_FALSE(converging_tail({0.9, 0.5, 0.3, 0.2, 0.35}, 0.2));
  CHECK_FALSE(converging_tail({0.9, 0.5, 0.3, 0.25, 0.24}, 0.1));
}

TEST_CASE("the graph limit checker verifies premises and the limit value") {
  Grid1D g(-1.0, 1.0, 401);
  const ClassPair s = make_catalog_entry("sign", g).fn;
  const int j = g.nearest(0.0);
  const double xj = g.x(j);
  const auto ks = default_k_schedule();

  std::vector<VectorClass> Fs;
  std::vector<double> xs;
  std::vector<std::vector<double>> etas;
  for (int n = 8; n <= 128; n *= 2) {
    char name[64];
    std::snprintf(name, sizeof name, "mollified:sign:%.17g", 1.0 / n);
    const ClassPair fn = make_catalog_entry(name, g).fn;
    Fs.push_back(VectorClass::scalar(fn));
    xs.push_back(xj);
    const IntervalValue v = value_at(fn, xj);
    etas.push_back({0.5 * (v.lo + v.hi)});
  }
  CHECK(check_graph_limit(Fs, xs, etas, VectorClass::scalar(s), xj, {0.0}, ks,
                          0.06 + 10.0 * g.h()));

  SECTION("a diverging family violates the premises") {
    std::vector<VectorClass> bad;
    for (std::size_t i = 0; i < Fs.size(); ++i)
      bad.push_back(VectorClass::scalar(
          make_catalog_entry(i % 2 ? "abs" : "neg-abs", g).fn));
    CHECK_THROWS_AS(check_graph_limit(bad, xs, etas, VectorClass::scalar(s), xj,
                                      {0.0}, ks, 1e-3 + g.h()),
                    HypothesisViolated);
  }
}

TEST_CASE("graph convergence of continuous approximants forces s convergence") {
  Grid1D g(-1.0, 1.0, 401);
  const ClassPair s = make_catalog_entry("sign", g).fn;
  const double xj = g.x(g.nearest(0.0));
  const auto ks = default_k_schedule();

  std::vector<SampledFn> seq;
  for (int n = 8; n <= 1024; n *= 2) {
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
      v[static_cast<std::size_t>(i)] =
          std::clamp(n * (g.x(i) - xj), -1.0, 1.0);
    seq.push_back(SampledFn::inferred(g, v));
  }
  CHECK(check_statement_4_1(s, seq, ks, 0.05 + 10.0 * g.h()));

  SECTION("a sequence stuck at the wrong graph is flagged") {
    const std::vector<SampledFn> bad(5, make_catalog_entry("abs", g).fn.lower);
    CHECK_THROWS_AS(check_statement_4_1(s, bad, ks, 0.01), HypothesisViolated);
  }
}
