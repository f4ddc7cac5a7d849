#pragma once

#include <stdexcept>
#include <string>

namespace equiweyl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedGroup : Error { using Error::Error; };
struct IdentityElement : Error { using Error::Error; };
struct EmptyDiscretization : Error { using Error::Error; };
struct GridNotClosed : Error { using Error::Error; };
struct NonPositiveCoefficient : Error { using Error::Error; };
struct DimensionOverflow : Error { using Error::Error; };
struct RankMismatch : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct TrivialGroup : Error { using Error::Error; };
struct SymbolNotElliptic : Error { using Error::Error; };
struct BoundingRadiusTooSmall : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };
struct OracleUnavailable : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace equiweyl
