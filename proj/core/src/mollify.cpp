#include "setcalc/mollify.hpp"

#include <cmath>
#include <vector>

#include "setcalc/errors.hpp"

namespace setcalc {

namespace {

// Reads f at integer offset j from the start of the grid, extending
// out-of-range indices by reflected extrapolation. The three-point
// stencil 3 f(0) - 3 f(d) + f(2d) reproduces quadratics exactly, so
// curved pieces keep their curvature past the boundary instead of
// flipping it; point reflection alone would bend a parabola's smoothed
// gradient near the ends by an amount proportional to the width.
double reflected(const std::vector<double>& v, long j) {
  const long n = static_cast<long>(v.size());
  if (0 <= j && j < n) return v[static_cast<std::size_t>(j)];
  const long d = j < 0 ? -j : j - (n - 1);
  const long base = j < 0 ? 0 : n - 1;
  const long step = j < 0 ? 1 : -1;
  if (2 * d < n)
    return 3.0 * v[base] - 3.0 * v[base + step * d] + v[base + step * 2 * d];
  return 2.0 * v[base] - v[base + step * d];
}

}  // namespace

SampledFn mollify(const SampledFn& f, double width) {
  const double h = f.grid.h();
  if (!(width > 0.0)) throw BadConfig("mollify: width must be positive");
  const long r = std::max(1L, std::lround(width / h));
  const long n = static_cast<long>(f.values.size());
  if (r >= n) throw BadConfig("mollify: width exceeds the domain length");

  // Triangular weights (r - |t|), t = -r..r, total weight r^2.
  const double total = static_cast<double>(r) * static_cast<double>(r);
  std::vector<double> out(f.values.size());
  for (long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long t = -r + 1; t < r; ++t)
      acc += static_cast<double>(r - std::labs(t)) * reflected(f.values, i + t);
    out[static_cast<std::size_t>(i)] = acc / total;
  }
  return SampledFn::inferred(f.grid, std::move(out));
}

}  // namespace setcalc
