#include "setcalc/sampled_fn.hpp"

#include <algorithm>
#include <cmath>

namespace setcalc {

SampledFn::SampledFn(Grid1D g, std::vector<double> v, std::vector<int> j,
                     double lip_, double bound_)
    : grid(g), values(std::move(v)), jumps(std::move(j)), lip(lip_), bound(bound_) {
  validate();
}

SampledFn SampledFn::inferred(Grid1D g, std::vector<double> v, std::vector<int> j) {
  SampledFn f;
  f.grid = g;
  f.values = std::move(v);
  f.jumps = std::move(j);
  std::sort(f.jumps.begin(), f.jumps.end());
  double m = 0.0, slope = 0.0;
  for (int i = 0; i < f.n(); ++i) m = std::max(m, std::fabs(f.values[i]));
  for (int i = 0; i + 1 < f.n(); ++i) {
    if (f.is_jump(i) || f.is_jump(i + 1)) continue;
    slope = std::max(slope, std::fabs(f.values[i + 1] - f.values[i]) / f.h());
  }
  f.bound = m;
  f.lip = slope;
  f.validate();
  return f;
}

bool SampledFn::is_jump(int i) const {
  return std::binary_search(jumps.begin(), jumps.end(), i);
}

double SampledFn::left_limit(int i) const {
  if (!is_jump(i) || i == 0) return values[i];
  return values[i - 1];
}

double SampledFn::right_limit(int i) const {
  if (!is_jump(i) || i == n() - 1) return values[i];
  return values[i + 1];
}

void SampledFn::validate() const {
  if (static_cast<int>(values.size()) != grid.n)
    throw InvalidSampledFn("sample count does not match grid");
  if (lip < 0 || bound < 0 || !std::isfinite(lip) || !std::isfinite(bound))
    throw InvalidSampledFn("lip and bound must be finite and nonnegative");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidSampledFn("non-finite sample");
  for (double v : values)
    if (std::fabs(v) > bound + tol_rep())
      throw InvalidSampledFn("sample exceeds declared bound");
  for (size_t k = 0; k < jumps.size(); ++k) {
    if (jumps[k] <= 0 || jumps[k] >= grid.n - 1)
      throw InvalidSampledFn("jump node must be interior");
    if (k > 0 && jumps[k] <= jumps[k - 1])
      throw InvalidSampledFn("jump nodes must be sorted and unique");
  }
  // A pruned jump leaves a midpoint whose neighbor steps reach twice the
  // certificate, hence the factor two; anything beyond that means the
  // declared lip undersells the samples.
  const double slack = 2.0 * lip * h() + 1e-12 * (1.0 + bound);
  for (int i = 0; i + 1 < n(); ++i) {
    if (is_jump(i) || is_jump(i + 1)) continue;
    if (std::fabs(values[i + 1] - values[i]) > slack)
      throw InvalidSampledFn("samples violate the declared Lipschitz bound");
  }
}

namespace {

template <class Op>
SampledFn hull(const SampledFn& f, Op op) {
  SampledFn g = f;
  for (int i : f.jumps) {
    double v = f.values[i];
    v = op(v, f.values[i - 1]);
    v = op(v, f.values[i + 1]);
    g.values[i] = v;
  }
  return g;
}

}  // namespace

SampledFn lsc_hull(const SampledFn& f) {
  return hull(f, [](double a, double b) { return std::min(a, b); });
}

SampledFn usc_hull(const SampledFn& f) {
  return hull(f, [](double a, double b) { return std::max(a, b); });
}

bool is_quasicontinuous(const SampledFn& f, double tol) {
  for (int i : f.jumps) {
    const bool left_ok = std::fabs(f.values[i - 1] - f.values[i]) <= tol;
    const bool right_ok = std::fabs(f.values[i + 1] - f.values[i]) <= tol;
    if (!left_ok && !right_ok) return false;
  }
  return true;
}

double sup_norm(const SampledFn& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::fabs(v));
  return m;
}

double trapezoid(const Grid1D& grid, const std::vector<double>& v) {
  double s = 0.0;
  for (int i = 0; i + 1 < grid.n; ++i) s += 0.5 * (v[i] + v[i + 1]);
  return s * grid.h();
}

}  // namespace setcalc
