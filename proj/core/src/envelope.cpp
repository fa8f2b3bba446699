#include "setcalc/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "setcalc/polyline.hpp"

namespace setcalc {

namespace {

void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw NonpositiveK("envelope modulus k must be positive");
}

// Candidate cost of reaching node i from node j along the slope-k cone.
// Shared by the sweeps and the oracle so both evaluate the identical
// floating point expression.
inline double cone(double vj, double k, double h, int steps) {
  return vj + k * (h * static_cast<double>(steps));
}

SampledFn finish(const SampledFn& f, std::vector<double> out) {
  return SampledFn::inferred(f.grid, std::move(out));
}

}  // namespace

SampledFn lip_lower_envelope(const SampledFn& f, double k) {
  check_k(k);
  const int n = f.n();
  const double h = f.h();
  std::vector<double> out(n);

  // Along a one-sided ray the order of two cone candidates never changes
  // as i advances, so a single incumbent per direction suffices.
  int w = 0;
  out[0] = f.values[0];
  for (int i = 1; i < n; ++i) {
    const double cand = cone(f.values[w], k, h, i - w);
    if (f.values[i] <= cand) {
      w = i;
      out[i] = f.values[i];
    } else {
      out[i] = cand;
    }
  }
  w = n - 1;
  for (int i = n - 2; i >= 0; --i) {
    const double cand = cone(f.values[w], k, h, w - i);
    if (f.values[i] <= cand) {
      w = i;
    } else {
      out[i] = std::min(out[i], cand);
    }
  }
  return finish(f, std::move(out));
}

SampledFn lip_upper_envelope(const SampledFn& f, double k) {
  check_k(k);
  const int n = f.n();
  const double h = f.h();
  std::vector<double> out(n);

  int w = 0;
  out[0] = f.values[0];
  for (int i = 1; i < n; ++i) {
    const double cand = cone(f.values[w], -k, h, i - w);
    if (f.values[i] >= cand) {
      w = i;
      out[i] = f.values[i];
    } else {
      out[i] = cand;
    }
  }
  w = n - 1;
  for (int i = n - 2; i >= 0; --i) {
    const double cand = cone(f.values[w], -k, h, w - i);
    if (f.values[i] >= cand) {
      w = i;
    } else {
      out[i] = std::max(out[i], cand);
    }
  }
  return finish(f, std::move(out));
}

SampledFn envelope_oracle(const SampledFn& f, double k, bool upper) {
  check_k(k);
  const int n = f.n();
  const double h = f.h();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double best = f.values[i];
    for (int j = 0; j < n; ++j) {
      const double cand = cone(f.values[j], upper ? -k : k, h, std::abs(i - j));
      best = upper ? std::max(best, cand) : std::min(best, cand);
    }
    out[i] = best;
  }
  return finish(f, std::move(out));
}

EnvelopeFamily envelope_family(const ClassPair& f, std::vector<double> ks) {
  if (ks.empty()) throw BadConfig("envelope_family: empty k schedule");
  for (size_t j = 0; j < ks.size(); ++j) {
    check_k(ks[j]);
    if (j > 0 && !(ks[j] > ks[j - 1]))
      throw BadConfig("envelope_family: ks must be strictly increasing");
  }
  EnvelopeFamily fam;
  fam.source = f;
  fam.ks = std::move(ks);
  fam.lowers.reserve(fam.ks.size());
  fam.uppers.reserve(fam.ks.size());
  for (double k : fam.ks) {
    fam.lowers.push_back(lip_lower_envelope(f.lower, k));
    fam.uppers.push_back(lip_upper_envelope(f.upper, k));
    fam.gaps.push_back(graph_hausdorff(fam.lowers.back(), fam.uppers.back()));
  }
  return fam;
}

std::vector<double> default_k_schedule() {
  std::vector<double> ks;
  for (double k = 1.0; k <= 1024.0; k *= 2.0) ks.push_back(k);
  return ks;
}

}  // namespace setcalc
