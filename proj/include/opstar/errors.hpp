#pragma once

#include <stdexcept>
#include <string>

namespace opstar {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct EmptyGenerators : Error { using Error::Error; };
struct NotAGroup : Error { using Error::Error; };
struct WindowOverflow : Error { using Error::Error; };
struct AlgebraMismatch : Error { using Error::Error; };
struct NotUnital : Error { using Error::Error; };
struct NoRealization : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };
struct PoleOnSpectrum : Error { using Error::Error; };
struct MuInSpectrum : Error { using Error::Error; };
struct RadiusTooLarge : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct NotCommutative : Error { using Error::Error; };
struct DegenerateAfterRetries : Error { using Error::Error; };
struct ZeroOnTorus : Error { using Error::Error; };
struct NotAState : Error { using Error::Error; };
struct InconsistentSystem : Error { using Error::Error; };
struct Degenerate : Error { using Error::Error; };
struct NotCyclic : Error { using Error::Error; };
struct MissingValue : Error { using Error::Error; };
struct OneInSpectrum : Error { using Error::Error; };
struct NotHermitianAlgebra : Error { using Error::Error; };

}  // namespace opstar
