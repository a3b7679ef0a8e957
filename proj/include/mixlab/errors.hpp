#pragma once

#include <stdexcept>
#include <string>

namespace mixlab {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidTime : Error { using Error::Error; };
struct InvalidSpeed : Error { using Error::Error; };
struct OutsideMixingZone : Error { using Error::Error; };
struct NonNeutralData : Error { using Error::Error; };
struct NotInCone : Error { using Error::Error; };
struct DegenerateState : Error { using Error::Error; };
// Raised when the admissible direction arc comes out empty. This cannot
// happen for strictly interior states; if it fires, an invariant is broken.
struct EmptyTheta : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };
struct SegmentFailure : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace mixlab
