#pragma once

#include <string>
#include <vector>

#include "setcalc/class_pair.hpp"
#include "setcalc/sampled_fn.hpp"

namespace setcalc {

// A tower of nested approximation levels inside one ordered metric
// family of grid functions. Implementations supply the order, the
// metric, level membership and the two level projections; the
// completion machinery below (TowerElement, rho_tilde, cauchy_limit,
// density_approx, verify_tower) is generic over this interface.
//
// Required behavior, checked by verify_tower rather than trusted:
//  - betweenness: whenever a < b strictly, between(a,b) lies strictly
//    inside the order interval;
//  - metric monotonicity: a <= c <= b implies rho(a,c) and rho(c,b)
//    are at most rho(a,b);
//  - bounded monotone sequences are Cauchy in rho;
//  - the projections are uniformly continuous level by level.
class LatticeTower {
 public:
  virtual ~LatticeTower() = default;

  virtual const Grid1D& domain() const = 0;
  virtual int depth() const = 0;            // number of levels N
  virtual double level_k(int n) const = 0;  // modulus of level n (0-based, increasing)

  virtual bool in_level(const SampledFn& f, int n) const = 0;
  virtual bool leq(const SampledFn& a, const SampledFn& b) const = 0;
  virtual double rho(const SampledFn& a, const SampledFn& b) const = 0;
  // Greatest level-n minorant and least level-n majorant.
  virtual SampledFn project_down(const SampledFn& f, int n) const = 0;
  virtual SampledFn project_up(const SampledFn& f, int n) const = 0;
  // Some element strictly between a and b wherever they leave room.
  virtual SampledFn between(const SampledFn& a, const SampledFn& b) const = 0;
};

// Lipschitz levels Lip_{k_n}, k_n = 2^n, over continuous grid
// functions, under the graph distance or its integral-augmented
// variant. Projections are the Lipschitz envelopes.
class LipschitzTower : public LatticeTower {
 public:
  enum class Metric { graph, graph_integral };

  LipschitzTower(Grid1D grid, Metric metric = Metric::graph, int levels = 12);

  const Grid1D& domain() const override { return grid_; }
  int depth() const override { return levels_; }
  double level_k(int n) const override;
  bool in_level(const SampledFn& f, int n) const override;
  bool leq(const SampledFn& a, const SampledFn& b) const override;
  double rho(const SampledFn& a, const SampledFn& b) const override;
  SampledFn project_down(const SampledFn& f, int n) const override;
  SampledFn project_up(const SampledFn& f, int n) const override;
  SampledFn between(const SampledFn& a, const SampledFn& b) const override;

 private:
  Grid1D grid_;
  Metric metric_;
  int levels_;
};

// Adversarial fixture: the same levels and projections, but distances
// collapse to 0-or-1. Bounded monotone chains stop being Cauchy, so
// verify_tower must flag it; exists to show the checks have teeth.
class DiscreteMetricTower : public LipschitzTower {
 public:
  using LipschitzTower::LipschitzTower;
  double rho(const SampledFn& a, const SampledFn& b) const override;
};

struct LevelPair {
  SampledFn lower, upper;
};

// A finite-depth point of the completion: one lower/upper pair per
// level, compatible under the projections, with the deepest-level gap
// standing in for the vanishing tail of the infinite object.
struct TowerElement {
  std::vector<LevelPair> pairs;
  double gap = 0.0;          // rho between the deepest pair
  std::vector<double> tail;  // per-level gaps, the decay certificate

  int depth() const { return static_cast<int>(pairs.size()); }
};

// Embeds a single function: its projections at shallow levels, itself
// from the first level that contains it (gap 0). NotInTower when no
// level does.
TowerElement embed(const LatticeTower& tower, const SampledFn& f);

// The element whose level pairs are the envelope projections of a
// class's two representatives. For a continuous class this coincides
// with embed; for a jump class it is the completion point the class
// corresponds to.
TowerElement class_element(const LatticeTower& tower, const ClassPair& f);

// Sup over shared levels of the pairwise distances. The exact metric
// on infinite sequences exceeds this by at most rho_tilde_tail.
double rho_tilde(const LatticeTower& tower, const TowerElement& x, const TowerElement& y);
double rho_tilde_tail(const TowerElement& x, const TowerElement& y);

// Limit of a rho_tilde-Cauchy sequence (NotCauchy otherwise). Level
// sequences here converge within the tolerance to the final term's
// levels, which the returned element adopts.
TowerElement cauchy_limit(const LatticeTower& tower, const std::vector<TowerElement>& seq,
                          double tol);

// Cheapest level whose lower projection approximates x within eps:
// returns that projection, or throws PrecisionUnreachable when even
// the deepest level falls short.
SampledFn density_approx(const LatticeTower& tower, const TowerElement& x, double eps);

struct TowerCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // worst observed violation or modulus
  double tol = 0.0;
};
struct TowerReport {
  std::vector<TowerCheck> checks;
  bool all_pass = false;
};

// Exercises the tower axioms on concrete samples: betweenness, metric
// monotonicity along ordered triples, Cauchy behavior of bounded
// monotone projection chains, and a uniform-continuity modulus for
// the projections. Violations are reported, never thrown.
TowerReport verify_tower(const LatticeTower& tower, const std::vector<SampledFn>& samples);

}  // namespace setcalc
