#include "setcalc/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "setcalc/envelope.hpp"
#include "setcalc/errors.hpp"
#include "setcalc/metric.hpp"
#include "setcalc/mollify.hpp"
#include "setcalc/polyline.hpp"

namespace setcalc {

SmoothFn::SmoothFn(SampledFn f, std::vector<double> d) : fn(std::move(f)), derivative(std::move(d)) {
  if (!fn.jumps.empty()) throw HasJumps("SmoothFn: sample has jump nodes");
  if (derivative.empty()) return;
  if (derivative.size() != fn.values.size())
    throw InvalidSampledFn("SmoothFn: derivative length does not match the sample");
  // The declared slopes must at least be compatible with the samples.
  const double h = fn.grid.h();
  const double tol = 10.0 * fn.lip * h + 1e-12;
  for (std::size_t i = 1; i + 1 < fn.values.size(); ++i) {
    double central = (fn.values[i + 1] - fn.values[i - 1]) / (2.0 * h);
    if (std::fabs(derivative[i] - central) > tol)
      throw InvalidSampledFn("SmoothFn: declared derivative contradicts the samples");
  }
}

IntervalValue GradientField::at(double x) const {
  if (m() != 1) throw DimensionMismatch("GradientField::at: scalar fields only");
  return value_at(component(0), x);
}

double slope_tol(const SampledFn& f) { return 10.0 * f.lip * f.grid.h(); }

double slope_tol(const ClassPair& f) {
  return 10.0 * std::max(f.lower.lip, f.upper.lip) * f.h();
}

SmoothingSchedule SmoothingSchedule::standard(const Grid1D& grid, Kind kind,
                                              double w0_in_steps, int stages) {
  if (stages < 3) throw BadConfig("SmoothingSchedule: need at least three stages");
  if (!(w0_in_steps >= 1.0)) throw BadConfig("SmoothingSchedule: initial width below one step");
  // Small grids cannot host the full default ladder; halve the lead
  // width until it fits in half the domain.
  while (w0_in_steps > 0.5 * static_cast<double>(grid.n - 1) && w0_in_steps > 1.0)
    w0_in_steps /= 2.0;
  SmoothingSchedule s;
  s.kind = kind;
  double w = w0_in_steps;
  for (int j = 0; j < stages && w >= 1.0; ++j, w /= 2.0) s.widths.push_back(w * grid.h());
  // Refine past the requested count down to the one-step floor, where
  // smoothing degenerates to the identity; the late stages are what
  // the Cauchy check looks at.
  while (s.widths.back() > 1.5 * grid.h()) s.widths.push_back(s.widths.back() / 2.0);
  if (s.widths.size() < 3) throw BadConfig("SmoothingSchedule: grid too coarse for the width ladder");
  return s;
}

namespace {

void validate_schedule(const SmoothingSchedule& sched, const Grid1D& grid) {
  if (sched.widths.size() < 3) throw BadConfig("smoothing schedule: need at least three widths");
  for (std::size_t j = 0; j < sched.widths.size(); ++j) {
    if (!(sched.widths[j] > 0.0)) throw BadConfig("smoothing schedule: widths must be positive");
    if (sched.widths[j] < 0.5 * grid.h())
      throw BadConfig("smoothing schedule: width below the grid step");
    if (j > 0 && !(sched.widths[j] < sched.widths[j - 1]))
      throw BadConfig("smoothing schedule: widths must decrease strictly");
  }
}

// Keeps one node per run of consecutive indices, the one with the
// largest score; earlier nodes win ties.
template <class Score>
std::vector<int> thin_adjacent(const std::vector<int>& nodes, Score score) {
  std::vector<int> kept;
  std::size_t i = 0;
  while (i < nodes.size()) {
    std::size_t j = i;
    while (j + 1 < nodes.size() && nodes[j + 1] == nodes[j] + 1) ++j;
    int best = nodes[i];
    double best_score = score(best);
    for (std::size_t k = i + 1; k <= j; ++k)
      if (score(nodes[k]) > best_score) { best = nodes[k]; best_score = score(best); }
    kept.push_back(best);
    i = j + 1;
  }
  return kept;
}

// Assembles a gradient pair from per-node slope intervals. The
// Lipschitz certificate is widened when a slope hull at a jump node
// leaves more slack than curvature alone would, so the pair's own
// consistency check is satisfied by construction.
ClassPair make_field_pair(const Grid1D& grid, std::vector<double> lo, std::vector<double> hi,
                          std::vector<int> jumps) {
  const double h = grid.h();
  const int n = grid.n;
  std::sort(jumps.begin(), jumps.end());
  auto is_j = [&](int i) {
    return std::binary_search(jumps.begin(), jumps.end(), i);
  };

  double lip = 0.0, bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::max(std::fabs(lo[i]), std::fabs(hi[i])));
  for (int i = 0; i + 1 < n; ++i) {
    if (is_j(i) || is_j(i + 1)) continue;
    lip = std::max(lip, std::fabs(lo[i + 1] - lo[i]) / h);
    lip = std::max(lip, std::fabs(hi[i + 1] - hi[i]) / h);
  }
  double slack = 0.0;
  for (int i : jumps) {
    double up = std::max({lo[i - 1], lo[i], lo[i + 1]});
    double dn = std::min({hi[i - 1], hi[i], hi[i + 1]});
    slack = std::max(slack, std::fabs(up - hi[i]));
    slack = std::max(slack, std::fabs(dn - lo[i]));
  }
  lip = std::max(lip, slack / (3.5 * h));

  SampledFn lower(grid, std::move(lo), jumps, lip, bound);
  SampledFn upper(grid, std::move(hi), std::move(jumps), lip, bound);
  return ClassPair(std::move(lower), std::move(upper));
}

std::vector<double> divided_differences(const SampledFn& f) {
  const int n = f.grid.n;
  const double h = f.grid.h();
  const auto& v = f.values;
  std::vector<double> d(static_cast<std::size_t>(n));
  d[0] = (v[1] - v[0]) / h;
  for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[n - 1] = (v[n - 1] - v[n - 2]) / h;
  return d;
}

}  // namespace

GradientField classical_gradient(const SmoothFn& f) {
  std::vector<double> d = f.derivative.empty() ? divided_differences(f.fn) : f.derivative;
  return GradientField(continuous_class(SampledFn::inferred(f.fn.grid, std::move(d))));
}

GradientField clarke_gradient(const SampledFn& f) {
  const int n = f.grid.n;
  const double h = f.grid.h();
  const auto& v = f.values;
  if (n < 3) throw InvalidSampledFn("clarke_gradient: need at least three nodes");
  const double kink_thresh = 5.0 * slope_tol(f);

  // Slope of the segment ending at node i; segments touching a jump
  // node carry no slope information.
  auto seg = [&](int i) { return (v[i] - v[i - 1]) / h; };
  auto seg_ok = [&](int i) { return i >= 1 && i < n && !f.is_jump(i) && !f.is_jump(i - 1); };

  // Kinks: interior nodes where the one-sided slopes disagree beyond
  // what curvature at this resolution can explain. A genuine corner
  // flags its node and often a neighbor; each run is thinned to the
  // node with the sharpest slope change.
  std::vector<int> flagged;
  std::vector<double> score(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i + 1 < n; ++i) {
    if (f.is_jump(i) || !seg_ok(i) || !seg_ok(i + 1)) continue;
    double change = std::fabs(seg(i + 1) - seg(i));
    if (change > kink_thresh) { flagged.push_back(i); score[i] = change; }
  }
  std::vector<int> kinks = thin_adjacent(flagged, [&](int i) { return score[i]; });

  // Union with the sample's own jumps; where a kink lands next to a
  // jump node the jump wins, since the kink flag there is an artifact
  // of differencing across the gap.
  std::vector<int> all;
  std::merge(kinks.begin(), kinks.end(), f.jumps.begin(), f.jumps.end(), std::back_inserter(all));
  std::vector<int> nodes;
  for (int i : all) {
    if (!nodes.empty() && i == nodes.back()) continue;
    if (!nodes.empty() && i == nodes.back() + 1) {
      if (f.is_jump(i) && !f.is_jump(nodes.back())) nodes.back() = i;
      continue;
    }
    nodes.push_back(i);
  }

  // One-sided slopes at a marked node. Kink nodes own a valid sample,
  // so the touching segments serve directly; at a jump node the value
  // is representative-dependent and the next segment out is used.
  auto one_sided = [&](int i) {
    double ql, qr;
    if (f.is_jump(i)) {
      ql = seg_ok(i - 1) ? seg(i - 1) : std::numeric_limits<double>::quiet_NaN();
      qr = seg_ok(i + 2) ? seg(i + 2) : std::numeric_limits<double>::quiet_NaN();
      if (std::isnan(ql) && std::isnan(qr)) { ql = qr = 0.0; }
      else if (std::isnan(ql)) ql = qr;
      else if (std::isnan(qr)) qr = ql;
    } else {
      ql = seg_ok(i) ? seg(i) : seg(i + 1);
      qr = seg_ok(i + 1) ? seg(i + 1) : seg(i);
    }
    return std::make_pair(ql, qr);
  };

  std::vector<double> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  auto marked = [&](int i) { return std::binary_search(nodes.begin(), nodes.end(), i); };
  for (int i = 0; i < n; ++i) {
    if (marked(i)) {
      auto [ql, qr] = one_sided(i);
      lo[i] = std::min(ql, qr);
      hi[i] = std::max(ql, qr);
      continue;
    }
    // Plain nodes: central difference when both neighbor values are
    // trustworthy, one-sided toward the clean side next to a jump.
    bool left_ok = i - 1 >= 0 && !f.is_jump(i - 1);
    bool right_ok = i + 1 < n && !f.is_jump(i + 1);
    double d;
    if (left_ok && right_ok) d = (v[i + 1] - v[i - 1]) / (2.0 * h);
    else if (right_ok) d = (v[i + 1] - v[i]) / h;
    else if (left_ok) d = (v[i] - v[i - 1]) / h;
    else d = (v[std::min(i + 1, n - 1)] - v[std::max(i - 1, 0)]) / (2.0 * h);
    lo[i] = hi[i] = d;
  }
  return GradientField(make_field_pair(f.grid, std::move(lo), std::move(hi), std::move(nodes)));
}

SampledFn collapse_transitions(const SampledFn& g, double tol) {
  const int n = g.grid.n;
  std::vector<double> v = g.values;

  // A node is unresolved when the stage climbs a jump's worth between
  // neighbors. Wide resolved ramps step gently and are left alone.
  std::vector<char> hot(static_cast<std::size_t>(n), 0);
  for (int i = 0; i + 1 < n; ++i)
    if (std::fabs(v[i + 1] - v[i]) > 5.0 * tol) hot[i] = hot[i + 1] = 1;

  // Merge runs separated by at most two quiet nodes, so a symmetric
  // transition whose center already agrees stays one run.
  std::vector<std::pair<int, int>> runs;
  for (int i = 0; i < n;) {
    if (!hot[i]) { ++i; continue; }
    int s = i, e = i;
    int j = i + 1;
    while (j < n) {
      if (hot[j]) { e = j; ++j; continue; }
      if (j - e <= 2 && j + 1 < n && (hot[j + 1] || (j + 2 < n && hot[j + 2]))) { ++j; continue; }
      break;
    }
    runs.emplace_back(s, e);
    i = e + 1;
  }

  // A smoothing kernel leaves shoulders that decay toward the plateaus.
  // Claim them too, or the collapsed step inherits a width-dependent
  // bite of the transition and the stage levels keep creeping. Each run
  // expands while the next step still clears a twentieth of the run's
  // sharpest one; expansion can make neighbors touch, so remerge.
  for (auto& [s, e] : runs) {
    double peak = 0.0;
    for (int i = s; i < e; ++i) peak = std::max(peak, std::fabs(v[i + 1] - v[i]));
    const double theta = 0.05 * peak;
    while (s > 0 && std::fabs(v[s] - v[s - 1]) > theta) --s;
    while (e + 1 < n && std::fabs(v[e + 1] - v[e]) > theta) ++e;
  }
  std::vector<std::pair<int, int>> merged;
  for (auto [s, e] : runs) {
    if (!merged.empty() && s <= merged.back().second + 1)
      merged.back().second = std::max(merged.back().second, e);
    else
      merged.emplace_back(s, e);
  }

  std::vector<int> jumps;
  for (auto [s, e] : merged) {
    if (s == 0 || e == n - 1) continue;  // no plateau to read past the boundary
    const double lraw = v[s - 1], rraw = v[e + 1];
    if (std::fabs(rraw - lraw) <= 5.0 * tol) continue;  // shallow wobble, not a jump
    const double mid0 = 0.5 * (lraw + rraw);
    int c = s;
    double best = std::fabs(v[s] - mid0);
    for (int i = s + 1; i <= e; ++i) {
      double dev = std::fabs(v[i] - mid0);
      if (dev < best) { best = dev; c = i; }
    }
    // The raw plateau reads sit half a run off the jump node; where the
    // neighbor piece is itself sloped, that offset biases the level by
    // slope times offset, and the offset tracks the smoothing width.
    // Extrapolating the outside slope to the jump node pins the
    // one-sided limits independently of the width.
    const int q = (e - s) / 2 + 1;
    double lval = lraw, rval = rraw;
    if (s - 1 - q >= 0)
      lval = lraw + (lraw - v[s - 1 - q]) * (static_cast<double>(c - s + 1) / q);
    if (e + 1 + q <= n - 1)
      rval = rraw + (rraw - v[e + 1 + q]) * (static_cast<double>(e + 1 - c) / q);
    for (int i = s; i < c; ++i) v[i] = lval;
    v[c] = 0.5 * (lval + rval);
    for (int i = c + 1; i <= e; ++i) v[i] = rval;
    jumps.push_back(c);
  }
  return SampledFn::inferred(g.grid, std::move(v), std::move(jumps));
}

ClosureResult closure_gradient(const SampledFn& f, const SmoothingSchedule& sched,
                               const std::vector<double>& ks) {
  validate_schedule(sched, f.grid);
  const ClassPair fhat = canonical_pair(f);
  const double tol = slope_tol(f);

  std::vector<SampledFn> grads;
  ClosureDiagnostic diag;
  for (double w : sched.widths) {
    SampledFn stage = [&] {
      if (sched.kind == SmoothingSchedule::Kind::mollifier) return mollify(f, w);
      const double k = 1.0 / w;
      SampledFn low = lip_lower_envelope(f, k);
      SampledFn up = lip_upper_envelope(f, k);
      std::vector<double> avg(low.values.size());
      for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = 0.5 * (low.values[i] + up.values[i]);
      return SampledFn::inferred(f.grid, std::move(avg));
    }();
    diag.stage_dists.push_back(r_metric(continuous_class(stage), fhat, ks).value);
    grads.push_back(SampledFn::inferred(f.grid, divided_differences(stage)));
  }

  // A kink leaves a transition ramp whose width tracks the smoothing
  // width, so consecutive raw gradients stay a jump-height apart and the
  // gap sequence never settles. Collapsing each stage turns resolved
  // ramps into honest jumps first; the Cauchy test then measures only
  // what the stages still disagree on. Spike stages (a genuine
  // non-member like the sign class) have no plateau step to collapse
  // and keep their growing raw gaps.
  std::vector<ClassPair> stages;
  for (const SampledFn& gr : grads) {
    SampledFn c = collapse_transitions(gr, tol);
    stages.push_back(c.jumps.empty() ? continuous_class(std::move(c))
                                     : canonical_pair(c));
  }
  for (std::size_t j = 0; j + 1 < stages.size(); ++j)
    diag.stage_gaps.push_back(r_metric(stages[j + 1], stages[j], ks).value);

  // A genuine jump defeats every width: its difference quotients blow
  // up like 1/w, while a continuous class saturates at its own slope
  // bound (the mollified slope never exceeds it). Growth well past
  // that bound across the schedule is the unresolvable case.
  double m_first = 0.0, m_last = 0.0;
  for (double q : grads.front().values) m_first = std::max(m_first, std::fabs(q));
  for (double q : grads.back().values) m_last = std::max(m_last, std::fabs(q));
  if (m_last > 2.5 * m_first + 1e-9)
    throw ScheduleTooCoarse(
        "closure_gradient: difference quotients keep growing as the width shrinks");

  const auto& g = diag.stage_gaps;

  bool converged = g.size() >= 3;
  for (std::size_t j = g.size() >= 3 ? g.size() - 3 : 0; converged && j < g.size(); ++j) {
    if (!(g[j] <= tol)) converged = false;
    if (j + 1 < g.size() && g[j + 1] > g[j] + 1e-12) converged = false;
  }
  diag.converged = converged;
  diag.in_domain_hint =
      converged && diag.stage_dists.back() <= 1.05 * diag.stage_dists.front() + tol;

  ClosureResult out;
  out.diag = std::move(diag);
  if (converged) out.field = GradientField(stages.back());
  return out;
}

GradientField grad_add(const GradientField& F, const GradientField& G) {
  if (F.m() != G.m()) throw DimensionMismatch("grad_add: component counts differ");
  std::vector<ClassPair> comps;
  for (int j = 0; j < F.m(); ++j) comps.push_back(class_add(F.component(j), G.component(j)));
  return GradientField(VectorClass(std::move(comps)));
}

GradientField grad_scale(double lambda, const GradientField& F) {
  std::vector<ClassPair> comps;
  for (int j = 0; j < F.m(); ++j) comps.push_back(class_scale(lambda, F.component(j)));
  return GradientField(VectorClass(std::move(comps)));
}

GradientField grad_product(const ClassPair& f, const GradientField& df,
                           const ClassPair& g, const GradientField& dg) {
  if (df.m() != 1 || dg.m() != 1) throw DimensionMismatch("grad_product: scalar fields only");
  return GradientField(class_add(class_mul(f, dg.component(0)), class_mul(g, df.component(0))));
}

GradientField grad_minmax(const ClassPair& f, const GradientField& df,
                          const ClassPair& g, const GradientField& dg,
                          bool take_min) {
  if (df.m() != 1 || dg.m() != 1) throw DimensionMismatch("grad_minmax: scalar fields only");
  require_same_grid(f.grid(), g.grid());
  require_same_grid(f.grid(), df.grid());
  require_same_grid(f.grid(), dg.grid());
  const int n = f.n();

  // Which branch is active at each node: +1 for f, -1 for g. The sign of
  // f - g places the branch however thin the margin is, so only exact
  // equality counts as a tie (coinciding branches share doubles after
  // class_min/class_max, and a node crossing lands on an exact zero).
  std::vector<int> act(static_cast<std::size_t>(n), 0);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    d[i] = f.rep()[i] - g.rep()[i];
    if (d[i] == 0.0) act[i] = 0;
    else if (take_min) act[i] = d[i] < 0.0 ? +1 : -1;
    else act[i] = d[i] > 0.0 ? +1 : -1;
  }

  // Ties take the branch of the nearer decided node, so a tied run
  // flanked by opposite branches switches sides at its center. Every
  // node of such a run is a crossing candidate; the sharpness thinning
  // below keeps the switch node.
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<int> cand;
  auto branch_value = [&](int side, int i) {
    return side >= 0 ? df.component(0).rep()[i] : dg.component(0).rep()[i];
  };
  for (int i = 0; i < n; ++i) {
    int side = act[i];
    if (side == 0) {
      int l = i;
      while (l >= 0 && act[l] == 0) --l;
      int r = i;
      while (r < n && act[r] == 0) ++r;
      int ls = l >= 0 ? act[l] : 0, rs = r < n ? act[r] : 0;
      if (ls != 0 && rs != 0 && ls != rs) cand.push_back(i);
      if (ls == 0) side = rs != 0 ? rs : +1;
      else if (rs == 0) side = ls;
      else side = i - l <= r - i ? ls : rs;
    }
    w[i] = branch_value(side, i);
  }

  // Transversal crossings between decided nodes of opposite branch:
  // the node nearer the sign change takes the jump.
  for (int i = 0; i + 1 < n; ++i) {
    if (act[i] != 0 && act[i + 1] != 0 && act[i] != act[i + 1])
      cand.push_back(std::fabs(d[i]) <= std::fabs(d[i + 1]) ? i : i + 1);
  }
  // Branch kinks survive where their branch is the active one nearby.
  auto active_near = [&](int j, int side) {
    for (int i = std::max(0, j - 1); i <= std::min(n - 1, j + 1); ++i)
      if (act[i] == side) return true;
    return false;
  };
  for (int j : df.component(0).jumps())
    if (active_near(j, +1)) cand.push_back(j);
  for (int j : dg.component(0).jumps())
    if (active_near(j, -1)) cand.push_back(j);

  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  cand.erase(std::remove_if(cand.begin(), cand.end(),
                            [&](int i) { return i <= 0 || i >= n - 1; }),
             cand.end());
  std::vector<int> jumps = thin_adjacent(cand, [&](int i) {
    return std::fabs(w[std::min(i + 1, n - 1)] - w[std::max(i - 1, 0)]);
  });

  return GradientField(jumps.empty()
                           ? continuous_class(SampledFn::inferred(f.grid(), std::move(w)))
                           : canonical_pair(SampledFn::inferred(f.grid(), std::move(w), std::move(jumps))));
}

namespace {

double lerp_on_grid(const Grid1D& g, const std::vector<double>& v, double y) {
  double t = (y - g.a) / g.h();
  if (t <= 0.0) return v.front();
  if (t >= static_cast<double>(g.n - 1)) return v.back();
  int i = static_cast<int>(t);
  double frac = t - static_cast<double>(i);
  return v[i] + frac * (v[i + 1] - v[i]);
}

}  // namespace

GradientField grad_chain(const SmoothFn& phi, const ClassPair& f, const GradientField& df) {
  if (df.m() != 1) throw DimensionMismatch("grad_chain: scalar fields only");
  double vmin = f.lower.values[0], vmax = vmin;
  for (int i = 0; i < f.n(); ++i) {
    vmin = std::min({vmin, f.lower.values[i], f.upper.values[i]});
    vmax = std::max({vmax, f.lower.values[i], f.upper.values[i]});
  }
  const double slack = 1e-9 * (1.0 + std::fabs(vmin) + std::fabs(vmax));
  if (vmin < phi.fn.grid.a - slack || vmax > phi.fn.grid.b + slack)
    throw RangeMismatch("grad_chain: outer function does not cover the value range");

  std::vector<double> dphi = phi.derivative.empty() ? divided_differences(phi.fn) : phi.derivative;
  std::vector<double> w(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.n(); ++i) w[i] = lerp_on_grid(phi.fn.grid, dphi, f.rep()[i]);

  std::vector<int> jumps = f.jumps();
  ClassPair outer = jumps.empty()
                        ? continuous_class(SampledFn::inferred(f.grid(), std::move(w)))
                        : canonical_pair(SampledFn::inferred(f.grid(), std::move(w), std::move(jumps)));
  return GradientField(class_mul(outer, df.component(0)));
}

bool stationarity_check(const ClassPair& f, const GradientField& df, double x0) {
  if (df.m() != 1) throw DimensionMismatch("stationarity_check: scalar fields only");
  const int i0 = f.grid().nearest(x0);
  const int n = f.n();
  const double tol = f.tol_rep();
  // The window must out-scale tol_rep (four slope-steps), or a plain
  // slope could never be told from an extremum.
  bool is_min = true, is_max = true;
  for (int j = std::max(0, i0 - 8); j <= std::min(n - 1, i0 + 8); ++j) {
    if (f.lower.values[i0] > f.lower.values[j] + tol) is_min = false;
    if (f.upper.values[i0] < f.upper.values[j] - tol) is_max = false;
  }
  if (!is_min && !is_max)
    throw NotAnExtremum("stationarity_check: x0 is not a grid-local extremum");
  return df.at(f.grid().x(i0)).contains(0.0, slope_tol(f));
}

bool differentiability_at_continuity(const ClassPair& f, const GradientField& df, double x) {
  if (df.m() != 1) throw DimensionMismatch("differentiability check: scalar fields only");
  const Grid1D& grid = f.grid();
  const int i = grid.nearest(x);
  const ClassPair& comp = df.component(0);
  const double tol = slope_tol(f);
  if (comp.lower.is_jump(i) || f.lower.is_jump(i))
    throw NotAContinuityPoint("differentiability check: jump node");
  if (comp.upper.values[i] - comp.lower.values[i] > tol)
    throw NotAContinuityPoint("differentiability check: slope interval is not a point");
  if (i - 4 < 0 || i + 4 >= grid.n)
    throw OutOfDomain("differentiability check: stencil leaves the grid");

  const double s = comp.rep()[i];
  const double h = grid.h();
  double err[3];
  int widths[3] = {1, 2, 4};
  for (int t = 0; t < 3; ++t) {
    int w = widths[t];
    double q = (f.rep()[i + w] - f.rep()[i - w]) / (2.0 * w * h);
    err[t] = std::fabs(q - s);
  }
  // Deviations must be small and not grow as the stencil shrinks.
  if (std::max({err[0], err[1], err[2]}) > tol) return false;
  return err[0] <= 1.25 * err[1] + 1e-12 && err[1] <= 1.25 * err[2] + 1e-12;
}

LimitExchange limit_exchange(const std::vector<ClassPair>& fs,
                             const std::vector<GradientField>& dfs, double x0,
                             const std::vector<double>& ks, double tol) {
  if (fs.size() != dfs.size()) throw BadConfig("limit_exchange: sequence lengths differ");
  if (fs.size() < 3) throw BadConfig("limit_exchange: need at least three terms");
  for (std::size_t i = 1; i < fs.size(); ++i) require_same_grid(fs[0].grid(), fs[i].grid());
  for (const auto& g : dfs) {
    if (g.m() != 1) throw DimensionMismatch("limit_exchange: scalar fields only");
    require_same_grid(fs[0].grid(), g.grid());
  }
  const double fn_tol = tol > 0.0 ? tol : fs.back().tol_rep();
  const double gr_tol = tol > 0.0 ? tol : slope_tol(fs.back());

  LimitExchange out{fs.back(), dfs.back(), {}, {}, 0.0};
  std::vector<double> trace;
  for (const auto& fi : fs) {
    IntervalValue iv = value_at(fi, x0);
    trace.push_back(0.5 * (iv.lo + iv.hi));
  }
  std::vector<double> trace_gaps;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i)
    trace_gaps.push_back(std::fabs(trace[i + 1] - trace[i]));
  if (!converging_tail(trace_gaps, fn_tol))
    throw HypothesisViolated("limit_exchange: the value trace at x0 does not converge");
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    double gap = 0.0;
    for (int j = 0; j < fs[i].n(); ++j) {
      gap = std::max(gap, std::fabs(fs[i + 1].lower.values[j] - fs[i].lower.values[j]));
      gap = std::max(gap, std::fabs(fs[i + 1].upper.values[j] - fs[i].upper.values[j]));
    }
    out.fn_gaps.push_back(gap);
  }
  if (!converging_tail(out.fn_gaps, fn_tol))
    throw HypothesisViolated("limit_exchange: the functions are not uniformly Cauchy");

  std::vector<Polyline> graphs;
  for (const auto& g : dfs) graphs.push_back(closed_graph_polyline(g.component(0)));
  for (std::size_t i = 0; i + 1 < graphs.size(); ++i)
    out.grad_gaps.push_back(polyline_hausdorff(graphs[i], graphs[i + 1]));
  if (!converging_tail(out.grad_gaps, gr_tol))
    throw HypothesisViolated("limit_exchange: the derivative graphs are not Cauchy");

  // Late terms pin the limit; whatever transition ramp is still
  // unresolved in the last field becomes an honest jump.
  const ClassPair& last = dfs.back().component(0);
  if (last.is_continuous()) {
    SampledFn limit = collapse_transitions(last.lower, gr_tol);
    out.limit_grad = GradientField(limit.jumps.empty() ? continuous_class(std::move(limit))
                                                       : canonical_pair(limit));
  }
  if (out.limit_fn.is_continuous()) {
    out.clarke_gap =
        r_metric(out.limit_grad.component(0),
                 clarke_gradient(out.limit_fn.lower).component(0), ks)
            .value;
  }
  return out;
}

}  // namespace setcalc
