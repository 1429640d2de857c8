#pragma once

#include <stdexcept>
#include <string>

namespace soconv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument: out-of-range rank, inverting zero, non-central element, ...
struct DomainError : Error { using Error::Error; };
// A matrix that should satisfy the bilinear-form/determinant constraints does not.
struct FormError : Error { using Error::Error; };
// Requested enumeration exceeds the configured element budget.
struct BudgetError : Error { using Error::Error; };
// Numerical linear algebra failed to converge or a residual is too large.
struct NumericsError : Error { using Error::Error; };
// Eigenvalue clusters could not be separated after the retry limit.
struct DegenerateSplitError : Error { using Error::Error; };
// The psi-average of a supposedly generic constituent vanished.
struct NotGenericError : Error { using Error::Error; };
// Cross-checked quantities disagree beyond tolerance.
struct ConsistencyError : Error { using Error::Error; };
// Every probe denominator of a gamma ratio was below tolerance.
struct DegenerateZetaError : Error { using Error::Error; };
// Gamma ratios across probes disagree: the proportionality is violated.
struct ProportionalityError : Error { using Error::Error; };
// Invalid CLI / suite configuration.
struct ConfigError : Error { using Error::Error; };

}  // namespace soconv
