#include "froberg/error.hpp"

namespace froberg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDegrees: return "InvalidDegrees";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::SelectionMismatch: return "SelectionMismatch";
    case ErrorKind::UnknownRow: return "UnknownRow";
  }
  return "Unknown";
}

void require_degree_pair(std::uint32_t d, std::uint32_t dprime) {
  if (dprime >= 1 && d > dprime) return;
  std::string msg = "need d > d' >= 1, got d=" + std::to_string(d) + ", d'=" + std::to_string(dprime);
  if (dprime >= 1) msg += "; " + std::string(kKoszulRestriction);
  throw Error(ErrorKind::InvalidDegrees, msg);
}

}  // namespace froberg
