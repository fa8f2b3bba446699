#include "setcalc/completion.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "setcalc/envelope.hpp"
#include "setcalc/errors.hpp"
#include "setcalc/metric.hpp"
#include "setcalc/polyline.hpp"

namespace setcalc {

namespace {

double max_slope(const SampledFn& f) {
  const double h = f.h();
  double s = 0.0;
  for (int i = 0; i + 1 < f.n(); ++i)
    s = std::max(s, std::fabs(f.values[i + 1] - f.values[i]) / h);
  return s;
}

}  // namespace

LipschitzTower::LipschitzTower(Grid1D grid, Metric metric, int levels)
    : grid_(grid), metric_(metric), levels_(levels) {
  if (levels_ < 1 || levels_ > 30)
    throw BadConfig("tower depth must lie in [1, 30]");
}

double LipschitzTower::level_k(int n) const {
  if (n < 0 || n >= levels_) throw BadConfig("tower level index out of range");
  return std::ldexp(1.0, n);
}

bool LipschitzTower::in_level(const SampledFn& f, int n) const {
  require_same_grid(f.grid, grid_);
  if (!f.jumps.empty()) return false;
  const double k = level_k(n);
  return max_slope(f) <= k * (1.0 + 1e-9) + 1e-9;
}

bool LipschitzTower::leq(const SampledFn& a, const SampledFn& b) const {
  require_same_grid(a.grid, grid_);
  require_same_grid(b.grid, grid_);
  for (int i = 0; i < a.n(); ++i)
    if (a.values[i] > b.values[i] + 1e-12) return false;
  return true;
}

double LipschitzTower::rho(const SampledFn& a, const SampledFn& b) const {
  require_same_grid(a.grid, grid_);
  require_same_grid(b.grid, grid_);
  if (metric_ == Metric::graph) return graph_hausdorff(a, b);
  return delta_metric(a, b);
}

SampledFn LipschitzTower::project_down(const SampledFn& f, int n) const {
  require_same_grid(f.grid, grid_);
  return lip_lower_envelope(f, level_k(n));
}

SampledFn LipschitzTower::project_up(const SampledFn& f, int n) const {
  require_same_grid(f.grid, grid_);
  return lip_upper_envelope(f, level_k(n));
}

SampledFn LipschitzTower::between(const SampledFn& a, const SampledFn& b) const {
  require_same_grid(a.grid, grid_);
  require_same_grid(b.grid, grid_);
  std::vector<double> mid(a.values.size());
  for (std::size_t i = 0; i < mid.size(); ++i)
    mid[i] = 0.5 * (a.values[i] + b.values[i]);
  std::vector<int> j = a.jumps;
  j.insert(j.end(), b.jumps.begin(), b.jumps.end());
  std::sort(j.begin(), j.end());
  j.erase(std::unique(j.begin(), j.end()), j.end());
  return SampledFn::inferred(grid_, std::move(mid), std::move(j));
}

double DiscreteMetricTower::rho(const SampledFn& a, const SampledFn& b) const {
  return LipschitzTower::rho(a, b) <= 1e-12 ? 0.0 : 1.0;
}

TowerElement embed(const LatticeTower& tower, const SampledFn& f) {
  const int depth = tower.depth();
  int first = -1;
  for (int n = 0; n < depth; ++n) {
    if (tower.in_level(f, n)) {
      first = n;
      break;
    }
  }
  if (first < 0) throw NotInTower("function lies in no tower level");

  TowerElement e;
  e.pairs.reserve(depth);
  for (int n = 0; n < depth; ++n) {
    if (n >= first)
      e.pairs.push_back({f, f});
    else
      e.pairs.push_back({tower.project_down(f, n), tower.project_up(f, n)});
    e.tail.push_back(tower.rho(e.pairs.back().lower, e.pairs.back().upper));
  }
  e.gap = e.tail.back();
  return e;
}

TowerElement class_element(const LatticeTower& tower, const ClassPair& f) {
  const int depth = tower.depth();
  TowerElement e;
  e.pairs.reserve(depth);
  for (int n = 0; n < depth; ++n) {
    e.pairs.push_back(
        {tower.project_down(f.lower, n), tower.project_up(f.upper, n)});
    e.tail.push_back(tower.rho(e.pairs.back().lower, e.pairs.back().upper));
  }
  e.gap = e.tail.back();
  return e;
}

double rho_tilde(const LatticeTower& tower, const TowerElement& x,
                 const TowerElement& y) {
  if (x.depth() != y.depth())
    throw DepthMismatch("elements have different tower depths");
  if (x.depth() == 0) throw BadConfig("empty tower element");
  double v = 0.0;
  for (int n = 0; n < x.depth(); ++n) {
    v = std::max(v, tower.rho(x.pairs[n].lower, y.pairs[n].lower));
    v = std::max(v, tower.rho(x.pairs[n].upper, y.pairs[n].upper));
  }
  return v;
}

double rho_tilde_tail(const TowerElement& x, const TowerElement& y) {
  if (x.depth() != y.depth())
    throw DepthMismatch("elements have different tower depths");
  return x.gap + y.gap;
}

TowerElement cauchy_limit(const LatticeTower& tower,
                          const std::vector<TowerElement>& seq, double tol) {
  if (seq.empty()) throw BadConfig("cauchy_limit needs a nonempty sequence");
  if (seq.size() == 1) return seq.front();
  std::vector<double> gaps;
  gaps.reserve(seq.size() - 1);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    gaps.push_back(rho_tilde(tower, seq[i], seq[i + 1]));
  if (!converging_tail(gaps, tol))
    throw NotCauchy("successive element distances do not settle below tol");
  return seq.back();
}

SampledFn density_approx(const LatticeTower& tower, const TowerElement& x,
                         double eps) {
  if (!(eps > 0)) throw BadConfig("density_approx needs eps > 0");
  if (x.depth() != tower.depth())
    throw DepthMismatch("element depth differs from tower depth");
  for (int n = 0; n < x.depth(); ++n) {
    const SampledFn& g = x.pairs[n].lower;
    TowerElement e;
    try {
      e = embed(tower, g);
    } catch (const NotInTower&) {
      continue;
    }
    if (rho_tilde(tower, e, x) + rho_tilde_tail(e, x) < eps) return g;
  }
  throw PrecisionUnreachable("no tower level approximates the element to eps");
}

namespace {

// Levels probed by the sample-based checks: bottom, a middle rung and a
// deep one, clipped to the available depth.
std::vector<int> probe_levels(const LatticeTower& tower) {
  std::vector<int> ls = {0};
  if (tower.depth() > 2) ls.push_back(2);
  if (tower.depth() > 5) ls.push_back(5);
  return ls;
}

}  // namespace

TowerReport verify_tower(const LatticeTower& tower,
                         const std::vector<SampledFn>& samples) {
  TowerReport rep;
  std::vector<SampledFn> fns;
  for (const SampledFn& s : samples)
    if (s.jumps.empty()) fns.push_back(s);

  const std::vector<int> levels = probe_levels(tower);

  // Projections land in their level and bracket the input.
  {
    TowerCheck c{"projection_bracket", true, 0.0, 0.5};
    for (const SampledFn& s : fns) {
      for (int n : levels) {
        SampledFn lo = tower.project_down(s, n);
        SampledFn hi = tower.project_up(s, n);
        const bool ok = tower.in_level(lo, n) && tower.in_level(hi, n) &&
                        tower.leq(lo, s) && tower.leq(s, hi);
        if (!ok) {
          c.pass = false;
          c.measured = 1.0;
        }
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // Strict betweenness wherever the bracket leaves room.
  {
    TowerCheck c{"betweenness", true, 0.0, 0.5};
    for (const SampledFn& s : fns) {
      SampledFn lo = tower.project_down(s, 0);
      SampledFn hi = tower.project_up(s, 0);
      double room = 0.0;
      for (int i = 0; i < lo.n(); ++i)
        room = std::max(room, hi.values[i] - lo.values[i]);
      if (room <= 1e-9) continue;
      SampledFn mid = tower.between(lo, hi);
      double above = 0.0, below = 0.0;
      for (int i = 0; i < lo.n(); ++i) {
        above = std::max(above, mid.values[i] - lo.values[i]);
        below = std::max(below, hi.values[i] - mid.values[i]);
      }
      const bool ok = tower.leq(lo, mid) && tower.leq(mid, hi) &&
                      above > 1e-12 && below > 1e-12;
      if (!ok) {
        c.pass = false;
        c.measured = 1.0;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // Order interval inclusion shrinks the metric: for a <= c <= b both
  // rho(a, c) and rho(c, b) stay within rho(a, b).
  {
    TowerCheck c{"metric_monotone", true, 0.0, 1e-9};
    auto probe = [&](const SampledFn& a, const SampledFn& m,
                     const SampledFn& b) {
      const double whole = tower.rho(a, b);
      const double part = std::max(tower.rho(a, m), tower.rho(m, b));
      c.measured = std::max(c.measured, part - whole);
    };
    for (const SampledFn& s : fns) {
      SampledFn lo = tower.project_down(s, 0);
      SampledFn hi = tower.project_up(s, 0);
      probe(lo, tower.between(lo, hi), hi);
      if (levels.size() > 1) probe(lo, tower.project_down(s, levels[1]), s);
    }
    c.pass = c.measured <= c.tol;
    rep.checks.push_back(std::move(c));
  }

  // The level projection chain of each sample settles: the ladder of
  // lower projections is Cauchy with the grid-resolution tolerance.
  {
    TowerCheck c{"level_chain_cauchy", true, 0.0, 0.0};
    for (const SampledFn& s : fns) {
      std::vector<SampledFn> chain;
      for (int n = 0; n < tower.depth(); ++n)
        chain.push_back(tower.project_down(s, n));
      std::vector<double> gaps;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        gaps.push_back(tower.rho(chain[i], chain[i + 1]));
      if (gaps.empty()) continue;  // single-level tower: nothing to settle
      const double tol = 10.0 * s.h() * (1.0 + s.lip);
      c.tol = std::max(c.tol, tol);
      c.measured = std::max(c.measured, gaps.back());
      if (!converging_tail(gaps, tol)) c.pass = false;
    }
    rep.checks.push_back(std::move(c));
  }

  // Bounded monotone sequences are Cauchy: iterate between(u, s) from
  // below and demand geometric settling of the step distances. This is
  // the check a collapsed (discrete) metric cannot fake.
  {
    TowerCheck c{"monotone_chain_cauchy", true, 0.0, 0.0};
    constexpr int kSteps = 10;
    for (const SampledFn& s : fns) {
      SampledFn u = tower.project_down(s, 0);
      const double start = tower.rho(u, s);
      if (start <= 1e-12) continue;
      const double tol = std::max(1e-9, start * std::ldexp(1.0, -(kSteps - 2)));
      std::vector<double> gaps;
      for (int m = 0; m < kSteps; ++m) {
        SampledFn next = tower.between(u, s);
        gaps.push_back(tower.rho(u, next));
        u = std::move(next);
      }
      c.tol = std::max(c.tol, tol);
      c.measured = std::max(c.measured, gaps.back());
      if (!converging_tail(gaps, tol)) c.pass = false;
    }
    rep.checks.push_back(std::move(c));
  }

  // Uniform continuity of the projections, stated as a Lipschitz-style
  // modulus: moving the input by rho moves each projection by at most
  // a fixed multiple of rho.
  {
    TowerCheck c{"projection_modulus", true, 0.0, 3.0};
    for (std::size_t i = 0; i < fns.size(); ++i) {
      for (std::size_t j = i + 1; j < fns.size(); ++j) {
        const double base = tower.rho(fns[i], fns[j]);
        if (base <= 1e-12) continue;
        for (int n : levels) {
          const double dn = tower.rho(tower.project_down(fns[i], n),
                                      tower.project_down(fns[j], n));
          const double up = tower.rho(tower.project_up(fns[i], n),
                                      tower.project_up(fns[j], n));
          c.measured = std::max(c.measured, std::max(dn, up) / base);
        }
      }
    }
    c.pass = c.measured <= c.tol;
    rep.checks.push_back(std::move(c));
  }

  rep.all_pass = true;
  for (const TowerCheck& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

}  // namespace setcalc
