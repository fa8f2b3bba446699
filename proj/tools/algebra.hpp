#pragma once

#include <string>

#include "setcalc/catalog.hpp"
#include "setcalc/gradient.hpp"

namespace setcalc::cli {

// A calculus expression evaluated bottom-up: the function class plus
// the gradient field assembled by the derivative rules (leaves take
// their Clarke gradient).
struct AlgebraResult {
  ClassPair fn;
  GradientField grad;
};

// Grammar:  expr := <catalog-name> | <op> '(' expr ( ',' expr )* ')'
// with ops add(f,g), scale(c,f), mul(f,g), min(f,g), max(f,g) and
// compose(phi,f) for phi in {square, log}. scale's first argument is a
// literal number; compose builds phi on a grid covering the range of f
// (log requires that range to be positive). Unparseable input throws
// BadConfig, unknown leaves UnknownFunction.
AlgebraResult eval_algebra(const std::string& expr, const Grid1D& grid);

}  // namespace setcalc::cli
