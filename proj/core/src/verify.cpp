#include "setcalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <utility>

#include "setcalc/catalog.hpp"
#include "setcalc/completion.hpp"
#include "setcalc/envelope.hpp"
#include "setcalc/errors.hpp"
#include "setcalc/gradient.hpp"
#include "setcalc/grid2d.hpp"
#include "setcalc/metric.hpp"
#include "setcalc/mollify.hpp"
#include "setcalc/polyline.hpp"
#include "setcalc/vector_class.hpp"

namespace setcalc {

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double class_diff(const ClassPair& f, const ClassPair& g) {
  return std::max(sup_diff(f.lower.values, g.lower.values),
                  sup_diff(f.upper.values, g.upper.values));
}

// Worst-case-normalized check: `measured` collects error / case_tolerance
// ratios, so 1.0 is the uniform pass line. `flag` marks structural
// failures (a convergence test, an expected throw) that have no ratio.
struct Ratio {
  SuiteCheck c;
  Ratio(std::string name, std::string note = {}) {
    c.name = std::move(name);
    c.tol = 1.0;
    c.pass = true;
    c.note = std::move(note);
  }
  void add(double err, double case_tol) {
    c.measured = std::max(c.measured, err / std::max(case_tol, 1e-300));
  }
  void flag(const std::string& why) {
    c.pass = false;
    if (!why.empty()) c.note = c.note.empty() ? why : c.note + "; " + why;
  }
  SuiteCheck finish() {
    if (c.measured > c.tol) c.pass = false;
    return std::move(c);
  }
};

// Absolute-tolerance variant.
struct Abs {
  SuiteCheck c;
  Abs(std::string name, double tol, std::string note = {}) {
    c.name = std::move(name);
    c.tol = tol;
    c.pass = true;
    c.note = std::move(note);
  }
  void add(double err) { c.measured = std::max(c.measured, err); }
  void flag(const std::string& why) {
    c.pass = false;
    if (!why.empty()) c.note = c.note.empty() ? why : c.note + "; " + why;
  }
  SuiteCheck finish() {
    if (c.measured > c.tol) c.pass = false;
    return std::move(c);
  }
};

double gap_tol(const ClassPair& f, double k_max) {
  const double lip = std::max(f.lower.lip, f.upper.lip);
  return std::max(10.0 * f.h() * (1.0 + lip),
                  4.0 * (f.max_jump() + 1.0) / k_max);
}

}  // namespace

SampledFn random_piecewise_fn(const Grid1D& grid, std::uint64_t seed,
                              int pieces, double slope, bool with_jumps) {
  if (pieces < 1) throw BadConfig("random_piecewise_fn needs pieces >= 1");
  if (!(slope > 0)) throw BadConfig("random_piecewise_fn needs slope > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const int n = grid.n;
  const int lo_idx = 4, hi_idx = n - 5;
  std::vector<int> brk;
  int guard = 0;
  while (static_cast<int>(brk.size()) < pieces - 1 && guard++ < 2000) {
    int cand = lo_idx + static_cast<int>(uni(0.0, 1.0) * (hi_idx - lo_idx));
    cand -= cand % 2;
    if (cand < lo_idx || cand > hi_idx) continue;
    bool ok = true;
    for (int b : brk)
      if (std::abs(b - cand) < 4) ok = false;
    if (ok) brk.push_back(cand);
  }
  std::sort(brk.begin(), brk.end());

  std::vector<double> v(static_cast<std::size_t>(n));
  std::vector<int> jumps;
  const double h = grid.h();
  double cur = uni(-1.0, 1.0);
  int start = 0;
  for (std::size_t p = 0; p <= brk.size(); ++p) {
    const int stop = p < brk.size() ? brk[p] : n - 1;  // inclusive piece end
    const double len = std::max(1, stop - start) * h;
    const double s = uni(-slope, slope);
    // Cap the curvature so one arc cannot more than double the slope.
    const double c2 = uni(-1.0, 1.0) * slope / (2.0 * len);
    for (int i = start; i <= stop; ++i) {
      const double t = (i - start) * h;
      v[static_cast<std::size_t>(i)] = cur + s * t + c2 * t * t;
    }
    if (p < brk.size()) {
      const double t = (stop - start) * h;
      const double reached = cur + s * t + c2 * t * t;
      if (with_jumps && unit(rng) < 0.75) {
        const double off = (unit(rng) < 0.5 ? -1.0 : 1.0) * uni(0.4, 1.2);
        jumps.push_back(stop);
        cur = reached + off;  // the breakpoint sample is rewritten below
        v[static_cast<std::size_t>(stop)] = cur;
      } else {
        cur = reached;
      }
      start = stop;
    }
  }
  return SampledFn::inferred(grid, std::move(v), std::move(jumps));
}

ClassPair random_piecewise_class(const Grid1D& grid, std::uint64_t seed,
                                 int pieces, double slope, bool with_jumps) {
  return canonical_pair(
      random_piecewise_fn(grid, seed, pieces, slope, with_jumps));
}

namespace {

// ---------------------------------------------------------------- core

SuiteReport core_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "core";
  const Grid1D& g = cfg.grid;

  Abs idem("hull_idempotent", 1e-15);
  Abs order("hull_order", 0.0);
  for (int t = 0; t < 12; ++t) {
    SampledFn f = random_piecewise_fn(g, cfg.seed + 100 + t, 4, 3.0, true);
    const SampledFn l = lsc_hull(f), u = usc_hull(f);
    idem.add(sup_diff(lsc_hull(l).values, l.values));
    idem.add(sup_diff(usc_hull(u).values, u.values));
    for (int i = 0; i < g.n; ++i) {
      order.add(l.values[i] - f.values[i]);
      order.add(f.values[i] - u.values[i]);
    }
  }
  rep.checks.push_back(idem.finish());
  rep.checks.push_back(order.finish());

  Ratio rel("hull_relation", "usc(lower)=upper, lsc(upper)=lower / tol_rep");
  for (const std::string& name : catalog_names()) {
    const ClassPair f = make_catalog_entry(name, g).fn;
    rel.add(sup_diff(usc_hull(f.lower).values, f.upper.values), f.tol_rep());
    rel.add(sup_diff(lsc_hull(f.upper).values, f.lower.values), f.tol_rep());
  }
  rep.checks.push_back(rel.finish());

  Abs indep("representative_independence", 1e-15);
  {
    std::mt19937_64 rng(cfg.seed + 131);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 8; ++t) {
      SampledFn f = random_piecewise_fn(g, cfg.seed + 150 + t, 4, 3.0, true);
      if (f.jumps.empty()) continue;
      const ClassPair base = canonical_pair(f);
      SampledFn mut = f;
      for (int j : mut.jumps)
        mut.values[static_cast<std::size_t>(j)] += unit(rng);
      mut.bound = 0.0;
      for (double x : mut.values) mut.bound = std::max(mut.bound, std::fabs(x));
      const ClassPair alt = canonical_pair(mut);
      indep.add(class_diff(base, alt));
      for (double x : {g.a + 0.3, 0.5 * (g.a + g.b), g.b - 0.2}) {
        const IntervalValue p = value_at(base, x), q = value_at(alt, x);
        indep.add(interval_hausdorff(p, q));
      }
      const ClassPair other =
          random_piecewise_class(g, cfg.seed + 170 + t, 3, 2.0, false);
      indep.add(class_diff(class_add(base, other), class_add(alt, other)));
    }
  }
  rep.checks.push_back(indep.finish());

  Ratio laws("algebra_laws", "assoc/comm/distrib/absorption / tol_rep");
  for (int t = 0; t < 10; ++t) {
    const ClassPair f = random_piecewise_class(g, cfg.seed + 200 + t, 3, 2.0, t % 2 == 0);
    const ClassPair q = random_piecewise_class(g, cfg.seed + 220 + t, 3, 2.0, true);
    const ClassPair k = random_piecewise_class(g, cfg.seed + 240 + t, 3, 2.0, false);
    laws.add(class_diff(class_add(f, q), class_add(q, f)), 1e-15);
    const ClassPair lhs_a = class_add(class_add(f, q), k);
    const ClassPair rhs_a = class_add(f, class_add(q, k));
    laws.add(class_diff(lhs_a, rhs_a), lhs_a.tol_rep() + 1e-12);
    const ClassPair lhs_d = class_mul(f, class_add(q, k));
    const ClassPair rhs_d = class_add(class_mul(f, q), class_mul(f, k));
    laws.add(class_diff(lhs_d, rhs_d), lhs_d.tol_rep() + 1e-9);
    const ClassPair lhs_ab = class_min(f, class_max(f, q));
    laws.add(class_diff(lhs_ab, f), f.tol_rep() + 1e-12);
  }
  rep.checks.push_back(laws.finish());

  Ratio integ("integral_equality", "|int lower - int upper| / 2*M*h*jumps");
  for (int t = 0; t < 8; ++t) {
    const ClassPair f = random_piecewise_class(g, cfg.seed + 300 + t, 4, 3.0, true);
    if (f.jumps().empty()) continue;
    const double lhs = std::fabs(trapezoid(g, f.lower.values) -
                                 trapezoid(g, f.upper.values));
    const double cap = 2.0 * f.lower.bound * g.h() *
                       static_cast<double>(f.jumps().size());
    integ.add(lhs, cap + 1e-12);
  }
  rep.checks.push_back(integ.finish());
  return rep;
}

// ------------------------------------------------------------ envelope

SuiteReport envelope_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "envelope";
  const Grid1D& g = cfg.grid;

  Abs oracle("oracle_equivalence", 1e-9, "30 random fns, n=1000");
  {
    const Grid1D og(g.a, g.b, 1000);
    for (int t = 0; t < 30; ++t) {
      SampledFn f = random_piecewise_fn(og, cfg.seed + 400 + t, 4, 4.0, true);
      for (double k : {0.7, 3.0, 17.5}) {
        oracle.add(sup_diff(lip_lower_envelope(f, k).values,
                            envelope_oracle(f, k, false).values));
        oracle.add(sup_diff(lip_upper_envelope(f, k).values,
                            envelope_oracle(f, k, true).values));
      }
    }
  }
  rep.checks.push_back(oracle.finish());

  Abs proj("projection_laws", 1e-9, "idempotent; k of k' >= k collapses");
  Abs sand("sandwich_monotone", 1e-12);
  Abs contr("contraction", 1e-12, "excess of sup|Ef-Eg| over sup|f-g|");
  for (int t = 0; t < 10; ++t) {
    SampledFn f = random_piecewise_fn(g, cfg.seed + 450 + t, 4, 4.0, true);
    SampledFn q = random_piecewise_fn(g, cfg.seed + 470 + t, 4, 4.0, true);
    const double k = 1.0 + 2.0 * (t % 3);
    const SampledFn ek = lip_lower_envelope(f, k);
    proj.add(sup_diff(lip_lower_envelope(ek, k).values, ek.values));
    proj.add(sup_diff(lip_lower_envelope(lip_lower_envelope(f, 4.0 * k), k).values,
                      ek.values));
    const SampledFn uk = lip_upper_envelope(f, k);
    proj.add(sup_diff(lip_upper_envelope(uk, k).values, uk.values));
    for (int i = 0; i < g.n; ++i) {
      sand.add(ek.values[i] - f.values[i]);
      sand.add(f.values[i] - uk.values[i]);
      sand.add(ek.values[i] - lip_lower_envelope(f, 2.0 * k).values[i]);
    }
    contr.add(sup_diff(ek.values, lip_lower_envelope(q, k).values) -
              sup_diff(f.values, q.values));
  }
  rep.checks.push_back(proj.finish());
  rep.checks.push_back(sand.finish());
  rep.checks.push_back(contr.finish());

  Ratio decay("gap_decay", "family gaps settle under the class modulus");
  for (const std::string& name : catalog_names()) {
    const ClassPair f = make_catalog_entry(name, g).fn;
    const EnvelopeFamily fam = envelope_family(f, default_k_schedule());
    const double tol = gap_tol(f, fam.ks.back());
    if (!converging_tail(fam.gaps, tol)) decay.flag("gaps stall: " + name);
    decay.add(fam.gaps.back(), tol);
  }
  rep.checks.push_back(decay.finish());

  if (cfg.demo2d) {
    Abs demo("demo_2d", 1e-9, "255x255 l1 envelopes vs oracle; corner hull");
    const Grid2D g2(-1.0, 1.0, -1.0, 1.0, 255, 255);
    std::vector<double> v(255 * 255);
    for (int j = 0; j < 255; ++j)
      for (int i = 0; i < 255; ++i)
        v[static_cast<std::size_t>(j) * 255 + i] =
            std::fabs(g2.x(i)) + std::fabs(g2.y(j));
    const Sampled2D f = Sampled2D::inferred(g2, v);
    // A step along the vertical mid-line exercises the jump-line path.
    std::vector<double> w = v;
    for (int j = 0; j < 255; ++j)
      for (int i = 128; i < 255; ++i)
        w[static_cast<std::size_t>(j) * 255 + i] += 0.8;
    const Sampled2D fj = Sampled2D::inferred(g2, std::move(w), {127}, {});
    std::mt19937_64 rng(cfg.seed + 550);
    std::uniform_int_distribution<int> pick(0, 254);
    for (const Sampled2D* fn : {&f, &fj}) {
      const Sampled2D lo = lip_lower_envelope2d(*fn, 0.5);
      const Sampled2D hi = lip_upper_envelope2d(*fn, 0.5);
      for (int t = 0; t < 40; ++t) {
        const int i = pick(rng), j = pick(rng);
        demo.add(std::fabs(lo.at(i, j) - envelope2d_oracle_at(*fn, 0.5, false, i, j)));
        demo.add(std::fabs(hi.at(i, j) - envelope2d_oracle_at(*fn, 0.5, true, i, j)));
      }
    }
    const ConvexValue corner = gradient_value2d(f, 127, 127);
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0})
        demo.add(corner.distance_to(Vec2{sx, sy}));
    const ConvexValue flat = gradient_value2d(f, 64, 190);
    demo.add(flat.distance_to(Vec2{-1.0, 1.0}));
    rep.checks.push_back(demo.finish());
  }
  return rep;
}

// -------------------------------------------------------------- metric

SuiteReport metric_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "metric";
  const Grid1D& g = cfg.grid;
  const std::vector<double> ks = default_k_schedule();

  Abs ax("metric_axioms", 1e-9, "symmetry, identity, triangle for h/s/r");
  for (int t = 0; t < 6; ++t) {
    const SampledFn a = random_piecewise_fn(g, cfg.seed + 600 + t, 3, 2.0, false);
    const SampledFn b = random_piecewise_fn(g, cfg.seed + 620 + t, 3, 2.0, false);
    const SampledFn c = random_piecewise_fn(g, cfg.seed + 640 + t, 3, 2.0, false);
    ax.add(std::fabs(graph_hausdorff(a, b) - graph_hausdorff(b, a)));
    ax.add(graph_hausdorff(a, c) - (graph_hausdorff(a, b) + graph_hausdorff(b, c)));
    const ClassPair fa = random_piecewise_class(g, cfg.seed + 660 + t, 3, 2.0, true);
    const ClassPair fb = random_piecewise_class(g, cfg.seed + 680 + t, 3, 2.0, true);
    const ClassPair fc = random_piecewise_class(g, cfg.seed + 700 + t, 3, 2.0, true);
    ax.add(s_metric(fa, fa, ks).value);
    ax.add(r_metric(fa, fa, ks).value);
    ax.add(std::fabs(s_metric(fa, fb, ks).value - s_metric(fb, fa, ks).value));
    ax.add(s_metric(fa, fc, ks).value -
           (s_metric(fa, fb, ks).value + s_metric(fb, fc, ks).value));
    ax.add(r_metric(fa, fc, ks).value -
           (r_metric(fa, fb, ks).value + r_metric(fb, fc, ks).value));
  }
  rep.checks.push_back(ax.finish());

  Ratio complete("completeness_proxy", "envelope ladder is s-Cauchy; family is termwise limit");
  Ratio density("density_c0", "s(class(f_k^-), f) settles to 0");
  Abs incl("inclusion_continuity", 1e-12, "s <= r termwise; r tail settles");
  for (const std::string& name : {"sign", "step-sum", "abs"}) {
    const ClassPair f = make_catalog_entry(name, g).fn;
    const double tol = gap_tol(f, ks.back());
    std::vector<ClassPair> seq;
    std::vector<double> sdist, rdist;
    for (double k : ks) {
      seq.push_back(continuous_class(lip_lower_envelope(f.lower, k)));
      sdist.push_back(s_metric(seq.back(), f, ks).value);
      rdist.push_back(r_metric(seq.back(), f, ks).value);
    }
    std::vector<double> cauchy;
    for (std::size_t j = 0; j + 1 < seq.size(); ++j)
      cauchy.push_back(s_metric(seq[j], seq[j + 1], ks).value);
    if (!converging_tail(cauchy, tol)) complete.flag("ladder not Cauchy: " + name);
    const EnvelopeFamily limit_fam = envelope_family(seq.back(), ks);
    const EnvelopeFamily f_fam = envelope_family(f, ks);
    for (std::size_t j = 0; j < 3; ++j)
      complete.add(sup_diff(limit_fam.lowers[j].values, f_fam.lowers[j].values),
                   1e-9);
    if (!converging_tail(sdist, tol)) density.flag("s distances stall: " + name);
    density.add(sdist.back(), tol);
    for (std::size_t j = 0; j < seq.size(); ++j)
      incl.add(sdist[j] - rdist[j]);
    if (!converging_tail(rdist, 2.0 * tol + 0.02 * f.max_jump()))
      incl.flag("r distances stall: " + name);
  }
  rep.checks.push_back(complete.finish());
  rep.checks.push_back(density.finish());
  rep.checks.push_back(incl.finish());

  Ratio lemma("envelope_sum_limit", "s(class(f_k^- + g_k^+), f+g) settles to 0");
  for (int t = 0; t < 5; ++t) {
    const ClassPair f = random_piecewise_class(g, cfg.seed + 800 + t, 3, 2.0, true);
    const ClassPair q = random_piecewise_class(g, cfg.seed + 820 + t, 3, 2.0, true);
    const ClassPair sum = class_add(f, q);
    std::vector<double> dist;
    for (double k : ks) {
      const SampledFn fl = lip_lower_envelope(f.lower, k);
      const SampledFn qu = lip_upper_envelope(q.upper, k);
      std::vector<double> v(fl.values.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = fl.values[i] + qu.values[i];
      dist.push_back(
          s_metric(continuous_class(SampledFn::inferred(g, std::move(v))), sum, ks)
              .value);
    }
    const double tol = gap_tol(f, ks.back()) + gap_tol(q, ks.back());
    if (!converging_tail(dist, tol)) lemma.flag("sum ladder stalls");
    lemma.add(dist.back(), tol);
  }
  rep.checks.push_back(lemma.finish());

  Abs chk("graph_limit_checkers", 0.0, "three families each; adversarial trips");
  {
    const ClassPair sign = make_catalog_entry("sign", g).fn;
    const ClassPair absf = make_catalog_entry("abs", g).fn;
    // The sign jump sits on the node nearest zero; approach from its
    // right so containment is exact on any grid.
    const double xj = g.x(g.nearest(0.0));
    const double htol = 10.0 * g.h();
    // Closed-graph limit: three hypothesis-satisfying families.
    {
      std::vector<VectorClass> F;
      std::vector<double> xs;
      std::vector<std::vector<double>> etas;
      for (int n = 0; n < 6; ++n) {
        F.push_back(VectorClass::scalar(sign));
        xs.push_back(xj + 0.25 / std::ldexp(1.0, n));
        etas.push_back({1.0});
      }
      if (!check_graph_limit(F, xs, etas, VectorClass::scalar(sign), xj, {1.0},
                             ks, 0.05 + htol))
        chk.flag("family A rejected");
    }
    {
      std::vector<VectorClass> F;
      std::vector<double> xs;
      std::vector<std::vector<double>> etas;
      for (int n = 0; n < 5; ++n) {
        F.push_back(VectorClass::scalar(absf));
        xs.push_back(0.3);
        etas.push_back({0.3});
      }
      if (!check_graph_limit(F, xs, etas, VectorClass::scalar(absf), 0.3, {0.3},
                             ks, 1e-6))
        chk.flag("family B rejected");
    }
    {
      std::vector<VectorClass> F;
      std::vector<double> xs;
      std::vector<std::vector<double>> etas;
      for (int n = 8; n <= 256; n *= 2) {
        const ClassPair fn = make_catalog_entry(
            "mollified:sign:" + std::to_string(1.0 / n), g).fn;
        const IntervalValue v = value_at(fn, xj);
        F.push_back(VectorClass::scalar(fn));
        xs.push_back(xj);
        etas.push_back({0.5 * (v.lo + v.hi)});
      }
      if (!check_graph_limit(F, xs, etas, VectorClass::scalar(sign), xj, {0.0},
                             ks, 0.06 + htol))
        chk.flag("family C rejected");
    }
    // Statement 4.1: continuous graphs converging to the closed class graph.
    {
      std::vector<SampledFn> fs;
      for (int n = 8; n <= 1024; n *= 2) {
        std::vector<double> v(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i)
          v[static_cast<std::size_t>(i)] =
              std::clamp(static_cast<double>(n) * (g.x(i) - xj), -1.0, 1.0);
        fs.push_back(SampledFn::inferred(g, std::move(v)));
      }
      if (!check_statement_4_1(sign, fs, ks, 0.05 + htol))
        chk.flag("4.1 ramps rejected");
    }
    {
      std::vector<SampledFn> fs(5, absf.lower);
      if (!check_statement_4_1(absf, fs, ks, 1e-6)) chk.flag("4.1 constants rejected");
    }
    {
      const ClassPair ramp = make_catalog_entry("ramp", g).fn;
      std::vector<SampledFn> fs;
      for (int n = 8; n <= 256; n *= 2) {
        const double sh = 1.0 / n;
        std::vector<double> v(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i)
          v[static_cast<std::size_t>(i)] = std::max(g.x(i) - sh, 0.0);
        fs.push_back(SampledFn::inferred(g, std::move(v)));
      }
      if (!check_statement_4_1(ramp, fs, ks, 0.05 + htol))
        chk.flag("4.1 shifts rejected");
    }
    // Adversarial fixtures must trip the hypothesis guards.
    {
      const ClassPair neg = make_catalog_entry("neg-abs", g).fn;
      bool threw = false;
      try {
        std::vector<VectorClass> F;
        std::vector<double> xs;
        std::vector<std::vector<double>> etas;
        for (int n = 0; n < 6; ++n) {
          F.push_back(VectorClass::scalar(n % 2 == 0 ? absf : neg));
          xs.push_back(0.1);
          etas.push_back({value_at(n % 2 == 0 ? absf : neg, 0.1).lo});
        }
        check_graph_limit(F, xs, etas, VectorClass::scalar(absf), 0.1, {0.1},
                          ks, 1e-3 + g.h());
      } catch (const HypothesisViolated&) {
        threw = true;
      }
      if (!threw) chk.flag("alternating family accepted");
      threw = false;
      try {
        std::vector<SampledFn> fs;
        for (int n = 0; n < 6; ++n)
          fs.push_back(n % 2 == 0 ? absf.lower : neg.lower);
        check_statement_4_1(absf, fs, ks, 1e-3 + g.h());
      } catch (const HypothesisViolated&) {
        threw = true;
      }
      if (!threw) chk.flag("alternating graphs accepted");
    }
  }
  rep.checks.push_back(chk.finish());
  return rep;
}

// ------------------------------------------------------------ gradient

SuiteReport gradient_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "gradient";
  const Grid1D& g = cfg.grid;
  const std::vector<double> ks = default_k_schedule();
  const SmoothingSchedule sched = SmoothingSchedule::standard(g);

  Ratio coin("clarke_coincidence", "");
  {
    int converged = 0, skipped = 0;
    for (const std::string& name : catalog_names()) {
      const CatalogEntry e = make_catalog_entry(name, g);
      ClosureResult res;
      try {
        res = closure_gradient(e.fn.lower, sched, ks);
      } catch (const ScheduleTooCoarse&) {
        ++skipped;
        continue;
      }
      if (!res.diag.converged) {
        ++skipped;
        continue;
      }
      ++converged;
      const GradientField clarke = clarke_gradient(e.fn.lower);
      const ClassPair& a = res.field->component(0);
      const ClassPair& b = clarke.component(0);
      const double tol = slope_tol(e.fn.lower) + 1e-12;
      for (int i = 0; i < g.n; ++i) {
        const IntervalValue p(a.lower.values[i], a.upper.values[i]);
        const IntervalValue q(b.lower.values[i], b.upper.values[i]);
        coin.add(interval_hausdorff(p, q), tol);
      }
    }
    coin.c.note = std::to_string(converged) + " converged, " +
                  std::to_string(skipped) + " skipped of " +
                  std::to_string(catalog_names().size()) + " entries";
    if (converged < 6) coin.flag("too few converged runs");
  }
  rep.checks.push_back(coin.finish());

  Ratio lin("linearity_sum_rule", "r(closure(lf+g), l*Df+Dg) / tol_grad");
  for (int t = 0; t < 8; ++t) {
    const ClassPair f = random_piecewise_class(g, cfg.seed + 900 + t, 4, 2.0, false);
    const ClassPair q = random_piecewise_class(g, cfg.seed + 930 + t, 4, 2.0, false);
    const ClosureResult Ff = closure_gradient(f.lower, sched, ks);
    const ClosureResult Fq = closure_gradient(q.lower, sched, ks);
    if (!Ff.field || !Fq.field) {
      lin.flag("operand closure failed to converge");
      continue;
    }
    for (double lam : {-2.0, -1.0, 0.0, 1.0, 3.0}) {
      const ClassPair comb = class_add(class_scale(lam, f), q);
      const ClosureResult Fc = closure_gradient(comb.lower, sched, ks);
      if (!Fc.field) {
        lin.flag("combination closure failed to converge");
        continue;
      }
      const GradientField rhs = grad_add(grad_scale(lam, *Ff.field), *Fq.field);
      const double d = r_metric(Fc.field->component(0), rhs.component(0), ks).value;
      lin.add(d, slope_tol(comb) + 1e-12);
    }
  }
  rep.checks.push_back(lin.finish());

  Ratio incl("clarke_inclusion", "value(D(f+g)) inside value(Df)+value(Dg)");
  {
    for (int t = 0; t < 6; ++t) {
      const ClassPair f = random_piecewise_class(g, cfg.seed + 960 + t, 4, 2.0, false);
      const ClassPair q = random_piecewise_class(g, cfg.seed + 990 + t, 4, 2.0, false);
      const GradientField Ff = clarke_gradient(f.lower);
      const GradientField Fq = clarke_gradient(q.lower);
      const GradientField Fsum = clarke_gradient(class_add(f, q).lower);
      const double tol =
          slope_tol(f.lower) + slope_tol(q.lower) + 1e-9;
      const ClassPair &a = Ff.component(0), &b = Fq.component(0),
                      &s = Fsum.component(0);
      for (int i = 0; i < g.n; ++i) {
        const double lo_sum = a.lower.values[i] + b.lower.values[i];
        const double hi_sum = a.upper.values[i] + b.upper.values[i];
        incl.add(lo_sum - s.lower.values[i], tol);
        incl.add(s.upper.values[i] - hi_sum, tol);
      }
    }
    // Strictness witness: the pointwise sum is coarser than the closure
    // value for |x| plus -|x| at the kink.
    const CatalogEntry pa = make_catalog_entry("abs", cfg.grid);
    const CatalogEntry pn = make_catalog_entry("neg-abs", cfg.grid);
    const GradientField da = clarke_gradient(pa.fn.lower);
    const GradientField dn = clarke_gradient(pn.fn.lower);
    const GradientField dsum = clarke_gradient(class_add(pa.fn, pn.fn).lower);
    const IntervalValue vs = dsum.at(0.0);
    const IntervalValue va = da.at(0.0), vn = dn.at(0.0);
    const double mink_lo = va.lo + vn.lo, mink_hi = va.hi + vn.hi;
    if (!(vs.lo == 0.0 && vs.hi == 0.0 && mink_lo <= -1.9 && mink_hi >= 1.9))
      incl.flag("strict inclusion witness failed");
  }
  rep.checks.push_back(incl.finish());

  Ratio leib("leibniz_chain", "grad_product/grad_chain vs closure of composite");
  {
    const CatalogEntry ea = make_catalog_entry("abs", g);
    const CatalogEntry el = make_catalog_entry("linear", g);
    const CatalogEntry eq = make_catalog_entry("quadratic", g);
    const GradientField da = clarke_gradient(ea.fn.lower);
    const GradientField dl = clarke_gradient(el.fn.lower);
    const GradientField dq = clarke_gradient(eq.fn.lower);
    struct Case {
      const ClassPair *f, *g;
      const GradientField *df, *dg;
    } cases[] = {{&ea.fn, &ea.fn, &da, &da},
                 {&ea.fn, &el.fn, &da, &dl},
                 {&el.fn, &eq.fn, &dl, &dq}};
    for (const Case& c : cases) {
      const ClassPair prod = class_mul(*c.f, *c.g);
      const ClosureResult direct = closure_gradient(prod.lower, sched, ks);
      if (!direct.field) {
        leib.flag("product closure failed to converge");
        continue;
      }
      const GradientField rule = grad_product(*c.f, *c.df, *c.g, *c.dg);
      leib.add(r_metric(direct.field->component(0), rule.component(0), ks).value,
               slope_tol(prod) + 1e-12);
    }
    // Chain rule through a smooth outer function on the range of |x|+1.
    const ClassPair inner = class_add(ea.fn, make_catalog_entry("const:1", g).fn);
    const Grid1D rg(0.5, 2.5, g.n);
    std::vector<double> pv(static_cast<std::size_t>(rg.n)),
        pd(static_cast<std::size_t>(rg.n));
    for (int i = 0; i < rg.n; ++i) {
      pv[static_cast<std::size_t>(i)] = std::log(rg.x(i));
      pd[static_cast<std::size_t>(i)] = 1.0 / rg.x(i);
    }
    const SmoothFn phi(SampledFn::inferred(rg, std::move(pv)), std::move(pd));
    const GradientField chained = grad_chain(phi, inner, clarke_gradient(inner.lower));
    std::vector<double> cv(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
      cv[static_cast<std::size_t>(i)] = std::log(std::fabs(g.x(i)) + 1.0);
    const SampledFn composite = SampledFn::inferred(g, std::move(cv));
    const ClosureResult direct = closure_gradient(composite, sched, ks);
    if (!direct.field) {
      leib.flag("composite closure failed to converge");
    } else {
      leib.add(
          r_metric(direct.field->component(0), chained.component(0), ks).value,
          slope_tol(composite) + 1e-12);
    }
  }
  rep.checks.push_back(leib.finish());

  Ratio mm("minmax_rule", "grad_minmax vs clarke of class_min/max");
  for (int t = 0; t < 8; ++t) {
    const ClassPair f = random_piecewise_class(g, cfg.seed + 1100 + t, 3, 2.0, false);
    const ClassPair q = random_piecewise_class(g, cfg.seed + 1130 + t, 3, 2.0, false);
    const GradientField df = clarke_gradient(f.lower);
    const GradientField dq = clarke_gradient(q.lower);
    const double tol = slope_tol(f.lower) + slope_tol(q.lower) + 1e-12;
    for (bool take_min : {true, false}) {
      const GradientField rule = grad_minmax(f, df, q, dq, take_min);
      const ClassPair target =
          take_min ? class_min(f, q) : class_max(f, q);
      const GradientField direct = clarke_gradient(target.lower);
      mm.add(r_metric(rule.component(0), direct.component(0), ks).value, tol);
    }
  }
  rep.checks.push_back(mm.finish());

  Ratio pre("preclosedness", "mollifier vs envelope-average limits");
  for (const std::string& name :
       {"abs", "quadratic", "mollified:abs:0.064", "linear"}) {
    const CatalogEntry e = make_catalog_entry(name, g);
    const ClosureResult a = closure_gradient(e.fn.lower, sched, ks);
    const SmoothingSchedule esched = SmoothingSchedule::standard(
        g, SmoothingSchedule::Kind::envelope_average);
    const ClosureResult b = closure_gradient(e.fn.lower, esched, ks);
    if (!a.field || !b.field) {
      pre.flag("schedule failed to converge: " + name);
      continue;
    }
    pre.add(r_metric(a.field->component(0), b.field->component(0), ks).value,
            2.0 * slope_tol(e.fn.lower) + 1e-12);
  }
  rep.checks.push_back(pre.finish());
  return rep;
}

// ---------------------------------------------------------- completion

SuiteReport completion_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "completion";
  const Grid1D& g = cfg.grid;

  std::vector<SampledFn> samples;
  samples.push_back(make_catalog_entry("abs", g).fn.lower);
  samples.push_back(make_catalog_entry("quadratic", g).fn.lower);
  {
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
      v[static_cast<std::size_t>(i)] = std::clamp(40.0 * g.x(i), -1.0, 1.0);
    samples.push_back(SampledFn::inferred(g, std::move(v)));
  }
  samples.push_back(random_piecewise_fn(g, cfg.seed + 1200, 3, 5.0, false));

  const LipschitzTower tower(g);

  Abs axioms("tower_axioms", 0.0, "");
  {
    const TowerReport tr = verify_tower(tower, samples);
    int failed = 0;
    std::string names;
    for (const TowerCheck& c : tr.checks)
      if (!c.pass) {
        ++failed;
        names += (names.empty() ? "" : ", ") + c.name;
      }
    axioms.add(failed);
    axioms.c.note = failed == 0 ? "all tower checks pass" : "failing: " + names;
  }
  rep.checks.push_back(axioms.finish());

  Abs broken("broken_tower_detected", 0.0,
             "discrete metric must fail only the Cauchy chain check");
  {
    const DiscreteMetricTower bad(g);
    const TowerReport tr = verify_tower(bad, samples);
    int mismatches = 0;
    for (const TowerCheck& c : tr.checks) {
      const bool want_fail = c.name == "monotone_chain_cauchy";
      if (c.pass == want_fail) ++mismatches;
    }
    broken.add(mismatches);
  }
  rep.checks.push_back(broken.finish());

  Ratio round("density_roundtrip", "approximant re-embeds within eps");
  {
    const ClassPair sign = make_catalog_entry("sign", g).fn;
    const TowerElement xs = class_element(tower, sign);
    // Coarser grids need a wider target; the 64-Lipschitz landing is
    // only pinned at the reference resolution.
    const double eps = std::max(0.05, 25.0 * g.h());
    const SampledFn a = density_approx(tower, xs, eps);
    const TowerElement ea = embed(tower, a);
    round.add(rho_tilde(tower, ea, xs) + rho_tilde_tail(ea, xs), eps);
    if (g.n >= 1001) {
      if (tower.in_level(a, 5)) round.flag("sign approximant coarser than expected");
      if (!tower.in_level(a, 6)) round.flag("sign approximant not 64-Lipschitz");
    }
    bool threw = false;
    try {
      density_approx(tower, xs, 1e-6);
    } catch (const PrecisionUnreachable&) {
      threw = true;
    }
    if (!threw) round.flag("unreachable eps accepted");
    const TowerElement xa = embed(tower, samples[0]);
    const SampledFn back = density_approx(tower, xa, 1e-9);
    round.add(sup_diff(back.values, samples[0].values), 1e-12);
  }
  rep.checks.push_back(round.finish());

  Ratio uniq("limit_uniqueness", "interleaved Cauchy ladders share a limit");
  {
    const ClassPair sign = make_catalog_entry("sign", g).fn;
    std::vector<TowerElement> even, odd;
    for (int n = 0; n < tower.depth(); ++n) {
      const TowerElement e = embed(tower, tower.project_down(sign.lower, n));
      (n % 2 == 0 ? even : odd).push_back(e);
    }
    const double tol = 10.0 * g.h() * 2.0 + 8.0 / tower.level_k(tower.depth() - 1);
    const TowerElement la = cauchy_limit(tower, even, tol);
    const TowerElement lb = cauchy_limit(tower, odd, tol);
    uniq.add(rho_tilde(tower, la, lb), tol + rho_tilde_tail(la, lb));
    const TowerElement target = class_element(tower, sign);
    uniq.add(rho_tilde(tower, la, target),
             tol + rho_tilde_tail(la, target));
    bool threw = false;
    try {
      std::vector<TowerElement> zig;
      for (int r = 0; r < 4; ++r) {
        zig.push_back(even.front());
        zig.push_back(even.back());
      }
      cauchy_limit(tower, zig, tol);
    } catch (const NotCauchy&) {
      threw = true;
    }
    if (!threw) uniq.flag("oscillating sequence accepted");
  }
  rep.checks.push_back(uniq.finish());

  Ratio cons("rho_s_consistency", "rho_tilde equals s within certified tails");
  {
    std::vector<double> tks;
    for (int n = 0; n < tower.depth(); ++n) tks.push_back(tower.level_k(n));
    std::vector<ClassPair> cls;
    for (int t = 0; t < 20; ++t)
      cls.push_back(
          random_piecewise_class(g, cfg.seed + 1300 + t, 3, 2.5, false));
    for (std::size_t t = 0; t + 1 < cls.size(); ++t) {
      const TowerElement x = class_element(tower, cls[t]);
      const TowerElement y = class_element(tower, cls[t + 1]);
      const MetricReport s = s_metric(cls[t], cls[t + 1], tks);
      const double combined =
          s.truncation_bound + rho_tilde_tail(x, y) + 1e-9;
      cons.add(std::fabs(rho_tilde(tower, x, y) - s.value), combined);
    }
    const TowerElement x0 = class_element(tower, cls[0]);
    cons.add(rho_tilde(tower, x0, x0), 1e-12);
  }
  rep.checks.push_back(cons.finish());
  return rep;
}

}  // namespace

SuiteReport run_suite(const std::string& which, const SuiteConfig& cfg) {
  if (cfg.grid.n < 16) throw BadConfig("suite grids need n >= 16");
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  if (which == "core") rep = core_suite(cfg);
  else if (which == "envelope") rep = envelope_suite(cfg);
  else if (which == "metric") rep = metric_suite(cfg);
  else if (which == "gradient") rep = gradient_suite(cfg);
  else if (which == "completion") rep = completion_suite(cfg);
  else throw BadConfig("unknown suite '" + which + "'");
  rep.all_pass = true;
  for (const SuiteCheck& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<SuiteReport> run_suites(const std::string& which,
                                    const SuiteConfig& cfg) {
  std::vector<SuiteReport> out;
  if (which == "all") {
    for (const char* s : {"core", "envelope", "metric", "gradient", "completion"})
      out.push_back(run_suite(s, cfg));
  } else {
    out.push_back(run_suite(which, cfg));
  }
  return out;
}

}  // namespace setcalc
