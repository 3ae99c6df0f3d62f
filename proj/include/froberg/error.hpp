#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace froberg {

enum class ErrorKind {
  InvalidDegrees,
  IndexOutOfRange,
  ZeroPolynomial,
  NegativeInput,
  DomainError,
  PrecisionExhausted,
  HypothesisViolation,
  NotPrime,
  NotDivisible,
  SelectionMismatch,
  UnknownRow,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Shown whenever a caller asks for d' >= d.
inline constexpr std::string_view kKoszulRestriction =
    "the method used here cannot be used in the case when d' >= d since in this case, "
    "there are Koszul relations, so we cannot prove that the forms spanned by the "
    "generators in degree d+d' are linearly independent";

/// Throws InvalidDegrees unless d > d' >= 1, citing the restriction above
/// when d' >= d.
void require_degree_pair(std::uint32_t d, std::uint32_t dprime);

}  // namespace froberg
