#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "setcalc/catalog.hpp"
#include "setcalc/gradient.hpp"
#include "setcalc/io.hpp"
#include "setcalc/metric.hpp"
#include "setcalc/verify.hpp"

using namespace setcalc;

TEST_CASE("csv function round trip is bit exact") {
  Grid1D g(-1.0, 1.0, 201);
  SampledFn f = random_piecewise_fn(g, 77, 4, 3.0, true);
  // make the payload awkward on purpose
  for (double& v : f.values) v += 1.0 / 3.0;
  f = SampledFn::inferred(g, f.values, f.jumps);

  std::stringstream ss;
  write_fn_csv(ss, f);
  const SampledFn back = read_fn_csv(ss);
  CHECK(back.values == f.values);
  CHECK(back.jumps == f.jumps);
  CHECK(back.grid == f.grid);
  CHECK(back.lip == f.lip);
  CHECK(back.bound == f.bound);
}

TEST_CASE("json class round trip is bit exact") {
  Grid1D g(-1.0, 1.0, 201);
  for (const char* name : {"sign", "step-sum", "abs"}) {
    const ClassPair c = make_catalog_entry(name, g).fn;
    const ClassPair back = class_from_json(class_to_json(c));
    CHECK(back.lower.values == c.lower.values);
    CHECK(back.upper.values == c.upper.values);
    CHECK(back.jumps() == c.jumps());
    CHECK(back.grid() == c.grid());
  }
  CHECK_THROWS_AS(class_from_json("{ not json"), BadConfig);
}

TEST_CASE("gradient plot rows split exactly at jump nodes") {
  Grid1D g = default_grid();
  const GradientField d = clarke_gradient(make_catalog_entry("abs", g).fn.lower);
  std::stringstream ss;
  write_grad_csv(ss, d);
  const std::string out = ss.str();
  CHECK(out.find("\n0,-1,1\n") != std::string::npos);
  // away from the kink the two endpoints coincide
  CHECK(out.find(",1,1\n") != std::string::npos);
}

TEST_CASE("report serializations carry their key fields") {
  Grid1D g(-1.0, 1.0, 201);
  const ClassPair s = make_catalog_entry("sign", g).fn;
  const ClassPair z = make_catalog_entry("zero", g).fn;

  const std::string mj = metric_report_json(s_metric(s, z, default_k_schedule()));
  CHECK(mj.find("\"per_k\"") != std::string::npos);
  CHECK(mj.find("\"truncation_bound\"") != std::string::npos);

  const std::string fj = envelope_family_json(envelope_family(s, {1.0, 4.0}));
  CHECK(fj.find("\"gaps\"") != std::string::npos);

  const ClosureResult res =
      closure_gradient(make_catalog_entry("abs", g).fn.lower,
                       SmoothingSchedule::standard(g));
  const std::string cj = closure_diagnostic_json(res.diag);
  CHECK(cj.find("\"stage_gaps\"") != std::string::npos);
  CHECK(cj.find("\"converged\":true") != std::string::npos);
}

TEST_CASE("tower elements serialize as self-contained bundles") {
  Grid1D g(-1.0, 1.0, 201);
  const LipschitzTower tower(g);
  const TowerElement e =
      class_element(tower, make_catalog_entry("sign", g).fn);
  const std::string tj = tower_element_json(e);
  CHECK(tj.find("\"functions\"") != std::string::npos);
  CHECK(tj.find("\"gap\"") != std::string::npos);
  CHECK(tj.find("\"tail\"") != std::string::npos);
}
