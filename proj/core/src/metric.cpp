#include "setcalc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace setcalc {

double delta_metric(const SampledFn& phi, const SampledFn& psi) {
  require_same_grid(phi.grid, psi.grid);
  std::vector<double> diff(phi.n());
  for (int i = 0; i < phi.n(); ++i)
    diff[i] = std::fabs(phi.values[i] - psi.values[i]);
  return graph_hausdorff(phi, psi) + trapezoid(phi.grid, diff);
}

namespace {

// Certified bound on the metric terms past the largest tested modulus K.
//
// For k >= K >= lip, an envelope differs from the canonical representative
// only on jump cones of slope k, so its graph stays within (max jump)/k of
// the closed class graph; chaining through the K-th term bounds every
// further term by term_K + 2*(J_f + J_g)/K. When K < lip that geometry is
// not available and the sup-norm distance to the K-th envelope is used
// instead. The delta metric adds the integral the envelopes still have to
// close, which is monotone in k and therefore bounded by its value at K.
double truncation_bound(const ClassPair& f, const ClassPair& g,
                        const EnvelopeFamily& ff, const EnvelopeFamily& gf,
                        bool with_integral) {
  const double K = ff.ks.back();

  auto sup_gap = [](const SampledFn& rep, const SampledFn& env) {
    double m = 0.0;
    for (int i = 0; i < rep.n(); ++i)
      m = std::max(m, std::fabs(rep.values[i] - env.values[i]));
    return m;
  };

  double tail;
  if (K >= f.lower.lip && K >= g.lower.lip) {
    tail = 2.0 * (f.max_jump() + g.max_jump()) / K;
  } else {
    tail = std::max(
        sup_gap(f.lower, ff.lowers.back()) + sup_gap(g.lower, gf.lowers.back()),
        sup_gap(f.upper, ff.uppers.back()) + sup_gap(g.upper, gf.uppers.back()));
  }

  if (with_integral) {
    auto int_gap = [](const SampledFn& rep, const SampledFn& env) {
      std::vector<double> d(rep.n());
      for (int i = 0; i < rep.n(); ++i)
        d[i] = std::fabs(rep.values[i] - env.values[i]);
      return trapezoid(rep.grid, d);
    };
    tail += std::max(int_gap(f.lower, ff.lowers.back()) +
                         int_gap(g.lower, gf.lowers.back()),
                     int_gap(f.upper, ff.uppers.back()) +
                         int_gap(g.upper, gf.uppers.back()));
  }
  return tail;
}

MetricReport envelope_metric(const ClassPair& f, const ClassPair& g,
                             const std::vector<double>& ks, bool with_integral) {
  require_same_grid(f.grid(), g.grid());
  const EnvelopeFamily ff = envelope_family(f, ks);
  const EnvelopeFamily gf = envelope_family(g, ks);

  MetricReport rep;
  for (size_t j = 0; j < ks.size(); ++j) {
    PerKTerm t;
    t.k = ks[j];
    if (with_integral) {
      t.lower_term = delta_metric(ff.lowers[j], gf.lowers[j]);
      t.upper_term = delta_metric(ff.uppers[j], gf.uppers[j]);
    } else {
      t.lower_term = graph_hausdorff(ff.lowers[j], gf.lowers[j]);
      t.upper_term = graph_hausdorff(ff.uppers[j], gf.uppers[j]);
    }
    rep.per_k.push_back(t);
    rep.value = std::max({rep.value, t.lower_term, t.upper_term});
  }
  rep.truncation_bound = truncation_bound(f, g, ff, gf, with_integral);
  return rep;
}

}  // namespace

MetricReport s_metric(const ClassPair& f, const ClassPair& g,
                      const std::vector<double>& ks) {
  return envelope_metric(f, g, ks, false);
}

MetricReport r_metric(const ClassPair& f, const ClassPair& g,
                      const std::vector<double>& ks) {
  return envelope_metric(f, g, ks, true);
}

std::vector<std::vector<double>> uniform_directions(int m, int count) {
  if (m == 1) return {{1.0}, {-1.0}};
  if (m != 2) throw DimensionMismatch("directions supported for m <= 2");
  if (count < 2) throw BadConfig("need at least two directions");
  std::vector<std::vector<double>> dirs;
  dirs.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double th = 2.0 * std::numbers::pi * j / count;
    dirs.push_back({std::cos(th), std::sin(th)});
  }
  return dirs;
}

namespace {

MetricReport vec_metric(const VectorClass& F, const VectorClass& G,
                        const std::vector<double>& ks, int dir_count,
                        bool with_integral) {
  if (F.m() != G.m())
    throw DimensionMismatch("vector classes of different dimension");
  require_same_grid(F.grid(), G.grid());

  MetricReport best;
  best.value = -1.0;
  const auto dirs = uniform_directions(F.m(), dir_count);
  for (const auto& xi : dirs) {
    MetricReport r = envelope_metric(dot(F, xi), dot(G, xi), ks, with_integral);
    if (r.value > best.value) {
      r.truncation_bound = std::max(r.truncation_bound, best.truncation_bound);
      best = std::move(r);
    } else {
      best.truncation_bound = std::max(best.truncation_bound, r.truncation_bound);
    }
  }
  best.directions = dirs;
  return best;
}

}  // namespace

MetricReport s_metric_vec(const VectorClass& F, const VectorClass& G,
                          const std::vector<double>& ks, int dir_count) {
  return vec_metric(F, G, ks, dir_count, false);
}

MetricReport r_metric_vec(const VectorClass& F, const VectorClass& G,
                          const std::vector<double>& ks, int dir_count) {
  return vec_metric(F, G, ks, dir_count, true);
}

bool converging_tail(const std::vector<double>& d, double tol) {
  if (d.empty()) return false;
  if (d.back() > tol) return false;
  const size_t take = std::min<size_t>(3, d.size());
  for (size_t i = d.size() - take + 1; i < d.size(); ++i)
    if (d[i] > 1.05 * d[i - 1] + 1e-12) return false;
  return true;
}

bool check_graph_limit(const std::vector<VectorClass>& F_seq,
                       const std::vector<double>& x_seq,
                       const std::vector<std::vector<double>>& eta_seq,
                       const VectorClass& F, double x,
                       const std::vector<double>& eta,
                       const std::vector<double>& ks, double tol) {
  const size_t n = F_seq.size();
  if (n < 3 || x_seq.size() != n || eta_seq.size() != n)
    throw HypothesisViolated("graph limit check needs three aligned sequence entries");

  std::vector<double> class_dist, point_dist;
  for (size_t j = 0; j < n; ++j) {
    class_dist.push_back(s_metric_vec(F_seq[j], F, ks).value);
    point_dist.push_back(std::fabs(x_seq[j] - x));
    if (static_cast<int>(eta_seq[j].size()) != F.m())
      throw HypothesisViolated("eta dimension does not match the class");
    const ConvexValue val = value_at_vec(F_seq[j], x_seq[j]);
    const Vec2 p{eta_seq[j][0], F.m() == 2 ? eta_seq[j][1] : 0.0};
    if (!val.contains(p, tol))
      throw HypothesisViolated("eta_n is not a value of F_n at x_n");
  }
  if (!converging_tail(class_dist, tol))
    throw HypothesisViolated("F_n does not converge to F in the class metric");
  if (!converging_tail(point_dist, tol))
    throw HypothesisViolated("x_n does not converge to x");

  const ConvexValue limit_val = value_at_vec(F, x);
  const Vec2 p{eta[0], F.m() == 2 ? eta[1] : 0.0};
  return limit_val.contains(p, tol);
}

bool check_statement_4_1(const ClassPair& f, const std::vector<SampledFn>& fn_seq,
                         const std::vector<double>& ks, double tol) {
  if (fn_seq.size() < 3)
    throw HypothesisViolated("need at least three sequence entries");
  const Polyline target = closed_graph_polyline(f);
  std::vector<double> graph_dist, s_dist;
  for (const SampledFn& fn : fn_seq) {
    graph_dist.push_back(polyline_hausdorff(graph_polyline(fn), target));
    s_dist.push_back(s_metric(continuous_class(fn), f, ks).value);
  }
  if (!converging_tail(graph_dist, tol))
    throw HypothesisViolated("graphs do not converge to the closed class graph");
  return converging_tail(s_dist, tol);
}

}  // namespace setcalc
