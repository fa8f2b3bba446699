#pragma once

#include "setcalc/class_pair.hpp"

namespace setcalc {

// Largest k-Lipschitz function below f, i.e. the cone transform
// g(x_i) = min_j f(x_j) + k*|x_i - x_j|. Runs in O(n) with one forward
// and one backward sweep. Throws NonpositiveK for k <= 0.
SampledFn lip_lower_envelope(const SampledFn& f, double k);

// Smallest k-Lipschitz function above f (the max-dual sweep).
SampledFn lip_upper_envelope(const SampledFn& f, double k);

// Reference implementation of the same transforms by direct minimization
// over all nodes, O(n^2). Kept as the independent check for the sweeps.
SampledFn envelope_oracle(const SampledFn& f, double k, bool upper);

// The two envelope ladders of a class along an increasing k schedule,
// lowers from f.lower and uppers from f.upper, with the graph distance
// between the rungs recorded as `gaps`.
struct EnvelopeFamily {
  ClassPair source;
  std::vector<double> ks;
  std::vector<SampledFn> lowers;
  std::vector<SampledFn> uppers;
  std::vector<double> gaps;
};

EnvelopeFamily envelope_family(const ClassPair& f, std::vector<double> ks);

// Default k schedule: powers of two from 1 to 1024.
std::vector<double> default_k_schedule();

}  // namespace setcalc
