#include "setcalc/grid2d.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace setcalc {

namespace {

bool sorted_unique_interior(const std::vector<int>& idx, int n) {
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] <= 0 || idx[t] >= n - 1) return false;
    if (t > 0 && idx[t] <= idx[t - 1]) return false;
  }
  return true;
}

bool contains_idx(const std::vector<int>& idx, int i) {
  return std::binary_search(idx.begin(), idx.end(), i);
}

// An x-segment (i, i+1) in row j crosses a vertical jump line when either
// endpoint sits on one; same for y-segments and horizontal lines.
bool seg_crosses(const std::vector<int>& lines, int i) {
  return contains_idx(lines, i) || contains_idx(lines, i + 1);
}

}  // namespace

Grid2D::Grid2D(double ax_, double bx_, double ay_, double by_, int nx_, int ny_)
    : ax(ax_), bx(bx_), ay(ay_), by(by_), nx(nx_), ny(ny_) {
  if (!(ax < bx) || !(ay < by) || nx < 2 || ny < 2 || !std::isfinite(ax) ||
      !std::isfinite(bx) || !std::isfinite(ay) || !std::isfinite(by))
    throw InvalidSampledFn("Grid2D requires ax < bx, ay < by and nx, ny >= 2");
}

Sampled2D::Sampled2D(Grid2D g, std::vector<double> v, std::vector<int> cols,
                     std::vector<int> rows, double lip_, double bound_)
    : grid(g),
      values(std::move(v)),
      jump_cols(std::move(cols)),
      jump_rows(std::move(rows)),
      lip(lip_),
      bound(bound_) {
  validate();
}

void Sampled2D::validate() const {
  const std::size_t want =
      static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
  if (values.size() != want)
    throw InvalidSampledFn("Sampled2D value count does not match the grid");
  if (!sorted_unique_interior(jump_cols, grid.nx) ||
      !sorted_unique_interior(jump_rows, grid.ny))
    throw InvalidSampledFn("jump lines must be sorted, unique and interior");
  if (!(lip >= 0.0) || !(bound >= 0.0))
    throw InvalidSampledFn("lip and bound must be nonnegative");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidSampledFn("non-finite sample");
    if (std::fabs(v) > bound + 1e-12)
      throw InvalidSampledFn("sample exceeds declared bound");
  }
  const double tol_x = 1e-9 * (1.0 + lip);
  for (int j = 0; j < grid.ny; ++j) {
    if (contains_idx(jump_rows, j)) continue;
    for (int i = 0; i + 1 < grid.nx; ++i) {
      if (seg_crosses(jump_cols, i)) continue;
      if (std::fabs(at(i + 1, j) - at(i, j)) > lip * grid.hx() + tol_x)
        throw InvalidSampledFn("x-segment violates the Lipschitz bound");
    }
  }
  for (int i = 0; i < grid.nx; ++i) {
    if (contains_idx(jump_cols, i)) continue;
    for (int j = 0; j + 1 < grid.ny; ++j) {
      if (seg_crosses(jump_rows, j)) continue;
      if (std::fabs(at(i, j + 1) - at(i, j)) > lip * grid.hy() + tol_x)
        throw InvalidSampledFn("y-segment violates the Lipschitz bound");
    }
  }
}

Sampled2D Sampled2D::inferred(Grid2D g, std::vector<double> v,
                              std::vector<int> cols, std::vector<int> rows) {
  Sampled2D f;
  f.grid = g;
  f.values = std::move(v);
  f.jump_cols = std::move(cols);
  f.jump_rows = std::move(rows);
  double lip = 0.0, bound = 0.0;
  for (double q : f.values) bound = std::max(bound, std::fabs(q));
  for (int j = 0; j < g.ny; ++j) {
    if (contains_idx(f.jump_rows, j)) continue;
    for (int i = 0; i + 1 < g.nx; ++i)
      if (!seg_crosses(f.jump_cols, i))
        lip = std::max(lip, std::fabs(f.at(i + 1, j) - f.at(i, j)) / g.hx());
  }
  for (int i = 0; i < g.nx; ++i) {
    if (contains_idx(f.jump_cols, i)) continue;
    for (int j = 0; j + 1 < g.ny; ++j)
      if (!seg_crosses(f.jump_rows, j))
        lip = std::max(lip, std::fabs(f.at(i, j + 1) - f.at(i, j)) / g.hy());
  }
  f.lip = lip;
  f.bound = bound;
  f.validate();
  return f;
}

namespace {

// One monotone clamp pass along every row (axis = x) or column (axis = y).
// Returns true when any value moved.
bool sweep(std::vector<double>& v, const Grid2D& g, double k, bool upper,
           bool along_x) {
  bool changed = false;
  const double step = k * (along_x ? g.hx() : g.hy());
  const int outer = along_x ? g.ny : g.nx;
  const int inner = along_x ? g.nx : g.ny;
  auto idx = [&](int o, int t) {
    return along_x ? static_cast<std::size_t>(o) * g.nx + t
                   : static_cast<std::size_t>(t) * g.nx + o;
  };
  for (int o = 0; o < outer; ++o) {
    for (int t = 1; t < inner; ++t) {
      const double cand = v[idx(o, t - 1)] + (upper ? -step : step);
      double& cur = v[idx(o, t)];
      if (upper ? cand > cur : cand < cur) {
        cur = cand;
        changed = true;
      }
    }
    for (int t = inner - 2; t >= 0; --t) {
      const double cand = v[idx(o, t + 1)] + (upper ? -step : step);
      double& cur = v[idx(o, t)];
      if (upper ? cand > cur : cand < cur) {
        cur = cand;
        changed = true;
      }
    }
  }
  return changed;
}

Sampled2D envelope2d(const Sampled2D& f, double k, bool upper) {
  if (!(k > 0)) throw NonpositiveK("envelope modulus must be positive");
  std::vector<double> v = f.values;
  bool changed = true;
  for (int round = 0; round < 8 && changed; ++round) {
    changed = sweep(v, f.grid, k, upper, true);
    changed = sweep(v, f.grid, k, upper, false) || changed;
  }
  if (changed)
    throw Error("2-D envelope sweeps failed to reach a fixed point");
  return Sampled2D::inferred(f.grid, std::move(v));
}

}  // namespace

Sampled2D lip_lower_envelope2d(const Sampled2D& f, double k) {
  return envelope2d(f, k, false);
}

Sampled2D lip_upper_envelope2d(const Sampled2D& f, double k) {
  return envelope2d(f, k, true);
}

double envelope2d_oracle_at(const Sampled2D& f, double k, bool upper, int i,
                            int j) {
  if (!(k > 0)) throw NonpositiveK("envelope modulus must be positive");
  const Grid2D& g = f.grid;
  if (i < 0 || i >= g.nx || j < 0 || j >= g.ny)
    throw OutOfDomain("oracle node outside the grid");
  double best = upper ? -1e300 : 1e300;
  for (int qj = 0; qj < g.ny; ++qj) {
    for (int qi = 0; qi < g.nx; ++qi) {
      const double d = k * (g.hx() * std::abs(i - qi) + g.hy() * std::abs(j - qj));
      const double cand = upper ? f.at(qi, qj) - d : f.at(qi, qj) + d;
      best = upper ? std::max(best, cand) : std::min(best, cand);
    }
  }
  return best;
}

ConvexValue gradient_value2d(const Sampled2D& f, int i, int j) {
  const Grid2D& g = f.grid;
  if (i <= 0 || i >= g.nx - 1 || j <= 0 || j >= g.ny - 1)
    throw OutOfDomain("gradient needs an interior node");
  for (int d = -1; d <= 1; ++d) {
    if (contains_idx(f.jump_cols, i + d) || contains_idx(f.jump_rows, j + d))
      throw NotAContinuityPoint("node touches a jump line");
  }
  const double dxm = (f.at(i, j) - f.at(i - 1, j)) / g.hx();
  const double dxp = (f.at(i + 1, j) - f.at(i, j)) / g.hx();
  const double dym = (f.at(i, j) - f.at(i, j - 1)) / g.hy();
  const double dyp = (f.at(i, j + 1) - f.at(i, j)) / g.hy();
  return ConvexValue::hull_of(
      {{dxm, dym}, {dxm, dyp}, {dxp, dym}, {dxp, dyp}});
}

}  // namespace setcalc
