#pragma once

#include <stdexcept>
#include <string>

namespace hms {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- tropical model --
struct MaximalDegenerationViolated : Error { using Error::Error; };
struct NonIntegralVertex : Error { using Error::Error; };
struct DegenerateWall : Error { using Error::Error; };

// -- A-side --
struct WeightTooSmall : Error { using Error::Error; };
struct EdgeUnbounded : Error { using Error::Error; };
struct NotOnSharedCylinder : Error { using Error::Error; };
struct NotComposable : Error { using Error::Error; };
struct UnspecifiedProduct : Error { using Error::Error; };

// -- B-side --
struct ComponentNotOnChart : Error { using Error::Error; };
struct EdgeNotOnChart : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };

// -- A-infinity toolkit --
struct NotCyclicallyComposable : Error { using Error::Error; };
struct NotLinear : Error { using Error::Error; };
struct NotSurjective : Error { using Error::Error; };
struct HomotopyMismatch : Error { using Error::Error; };

// -- CLI / IO --
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct ConstraintError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace hms
