#pragma once

#include <stdexcept>
#include <string>

namespace setcalc {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSampledFn : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct RepresentativeInconsistent : Error { using Error::Error; };
struct NonpositiveK : Error { using Error::Error; };
struct HasJumps : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct ScheduleTooCoarse : Error { using Error::Error; };
struct RangeMismatch : Error { using Error::Error; };
struct NotAnExtremum : Error { using Error::Error; };
struct NotAContinuityPoint : Error { using Error::Error; };
struct NotInTower : Error { using Error::Error; };
struct DepthMismatch : Error { using Error::Error; };
struct NotCauchy : Error { using Error::Error; };
struct PrecisionUnreachable : Error { using Error::Error; };
struct UnknownFunction : Error { using Error::Error; };
struct BadConfig : Error { using Error::Error; };

}  // namespace setcalc
