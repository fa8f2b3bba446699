#pragma once

#include "setcalc/sampled_fn.hpp"

namespace setcalc {

// Triangular-kernel smoothing with half-width `width` (in x units).
// Samples past the ends are supplied by point reflection about the
// boundary node, which extends linear pieces exactly. The result is
// continuous: any jump is averaged out at the kernel scale.
SampledFn mollify(const SampledFn& f, double width);

}  // namespace setcalc
