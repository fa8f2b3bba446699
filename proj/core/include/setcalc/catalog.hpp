#pragma once

#include <string>
#include <vector>

#include "setcalc/class_pair.hpp"

namespace setcalc {

// A named test function buildable on any grid. Entries whose Clarke
// gradient is known in closed form carry it for oracle checks.
struct CatalogEntry {
  std::string name;
  ClassPair fn;
  bool has_closed_gradient = false;
  ClassPair gradient;  // meaningful only when has_closed_gradient
};

// The shipped entries, in a stable order. Parametric families appear with
// their default parameters spelled out (const:<c>, mollified:<base>:<w>).
std::vector<std::string> catalog_names();

Grid1D default_grid();  // [-1, 1] with 2001 nodes

// Builds `name` on `grid`. Parametric syntax: `const:<c>` for a constant,
// `mollified:<base>:<width>` for a triangular-kernel smoothing of another
// entry (width in x units). Throws UnknownFunction for unparseable names,
// BadConfig for unusable parameters.
CatalogEntry make_catalog_entry(const std::string& name, const Grid1D& grid);

}  // namespace setcalc
