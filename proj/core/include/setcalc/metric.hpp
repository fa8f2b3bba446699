#pragma once

#include "setcalc/envelope.hpp"
#include "setcalc/polyline.hpp"
#include "setcalc/vector_class.hpp"

namespace setcalc {

// One row of the k-schedule table behind a metric value.
struct PerKTerm {
  double k = 0.0;
  double lower_term = 0.0;
  double upper_term = 0.0;
};

struct MetricReport {
  double value = 0.0;
  std::vector<PerKTerm> per_k;
  // Certified bound on what the terms beyond the largest tested k could
  // add: the true supremum lies in [value, value + truncation_bound].
  double truncation_bound = 0.0;
  // Unit directions used for the vector reduction; empty in the scalar case.
  std::vector<std::vector<double>> directions;
};

// Graph distance plus trapezoid L1 distance between two continuous
// functions on the same grid.
double delta_metric(const SampledFn& phi, const SampledFn& psi);

// Envelope metric of the comeager-class space: sup over the k schedule of
// the graph distance between matching envelopes.
MetricReport s_metric(const ClassPair& f, const ClassPair& g,
                      const std::vector<double>& ks);

// Envelope metric of the a.e.-class space: same schedule with delta_metric
// per term.
MetricReport r_metric(const ClassPair& f, const ClassPair& g,
                      const std::vector<double>& ks);

// Unit directions for the vector reduction: {+1, -1} for m = 1, `count`
// uniformly spaced angles for m = 2.
std::vector<std::vector<double>> uniform_directions(int m, int count);

MetricReport s_metric_vec(const VectorClass& F, const VectorClass& G,
                          const std::vector<double>& ks, int dir_count = 64);
MetricReport r_metric_vec(const VectorClass& F, const VectorClass& G,
                          const std::vector<double>& ks, int dir_count = 64);

// Tail test used by the convergence checkers: the last few entries must be
// nonincreasing (small slack) and the final one below tol.
bool converging_tail(const std::vector<double>& d, double tol);

// Graph-limit checker: verifies the hypotheses (F_n -> F in the s metric,
// x_n -> x, eta_n in F_n(x_n)) and then reports whether eta lies in F(x).
// Throws HypothesisViolated when a premise fails, so a vacuous pass cannot
// be mistaken for a verified one.
bool check_graph_limit(const std::vector<VectorClass>& F_seq,
                       const std::vector<double>& x_seq,
                       const std::vector<std::vector<double>>& eta_seq,
                       const VectorClass& F, double x,
                       const std::vector<double>& eta,
                       const std::vector<double>& ks, double tol);

// Checks that graph convergence of continuous functions to the closed
// class graph forces s-convergence. Premise failure throws
// HypothesisViolated; otherwise returns the s-convergence verdict.
bool check_statement_4_1(const ClassPair& f, const std::vector<SampledFn>& fn_seq,
                         const std::vector<double>& ks, double tol);

}  // namespace setcalc
