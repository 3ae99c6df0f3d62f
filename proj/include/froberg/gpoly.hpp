#pragma once

// The polynomial g_{d,d'}(x) = C(x+d+d', d) / C(d+d', d) - C(x+d', d'):
// construction, coefficient sign analysis, and the bound certificate
// g(x) <= g(n-1) on [0, n-1].

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "froberg/exactpoly.hpp"

namespace froberg::gpoly {

using exactpoly::Rational;
using exactpoly::RatPoly;

struct GPoly {
  std::uint32_t d = 0;
  std::uint32_t dprime = 0;
  RatPoly poly;  // degree d, zero constant term, positive leading coefficient
};

/// Throws InvalidDegrees unless d > dprime >= 1.
GPoly build_g(std::uint32_t d, std::uint32_t dprime);

/// e_0 .. e_max_j of the given values.
std::vector<Rational> elementary_symmetric(std::span<const Rational> values, std::uint32_t max_j);

/// Coefficient of x^j from the elementary symmetric sums of 1/(d'+1..d+d')
/// and 1/(1..d'). Independent of build_g's polynomial expansion.
Rational coeff_via_symmetric(std::uint32_t d, std::uint32_t dprime, std::uint32_t j);

struct SignProfile {
  int changes = 0;
  std::vector<int> signs;  // signs of the coefficients of x^1 .. x^d
};

SignProfile sign_change_profile(std::uint32_t d, std::uint32_t dprime);

enum class BoundMethod { OneSignChange, SturmFallback, HypothesisFails };
std::string_view to_string(BoundMethod m);

struct BoundCertificate {
  std::uint32_t d = 0;
  std::uint32_t dprime = 0;
  std::uint32_t n = 0;
  bool holds = false;
  BoundMethod method = BoundMethod::HypothesisFails;
  Rational g_at_nminus1;
  int sign_changes = 0;
  bool propagates_in_d = false;  // the bound then also holds for d + 1
};

/// holds iff g(n-1) >= 0 and g(x) <= g(n-1) on [0, n-1]. The one sign change
/// shortcut is tried before the Sturm-based check of g(n-1) - g >= 0.
BoundCertificate certify_bound(std::uint32_t d, std::uint32_t dprime, std::uint32_t n);

enum class ScanMode { Exact, IntervalFast };
std::string_view to_string(ScanMode m);

struct ScanFailure {
  std::uint32_t d = 0;
  int changes = 0;

  bool operator==(const ScanFailure&) const = default;
};

struct ScanResult {
  std::uint32_t dprime = 0;
  std::uint64_t max_d_checked = 0;
  bool all_at_most_one = true;
  std::vector<ScanFailure> failures;
  std::uint64_t ambiguous_signs = 0;  // interval-fast: signs re-decided at higher precision
  std::uint64_t exact_fallbacks = 0;  // interval-fast: signs decided in exact arithmetic

  /// Compares the scan outcome, not the diagnostic counters.
  bool operator==(const ScanResult& o) const {
    return dprime == o.dprime && max_d_checked == o.max_d_checked &&
           all_at_most_one == o.all_at_most_one && failures == o.failures;
  }
};

/// Walks d = d'+1, d'+2, ... until every coefficient of g_{d,d'} is
/// non-negative. Coefficients only grow with d, so no later d can add a sign
/// change. Reports every d whose g has more than one change.
ScanResult scan_dprime(std::uint32_t dprime, ScanMode mode);

/// True iff the x^d coefficient of g_{d,d-1} is positive and all of
/// x^1 .. x^{d-1} are negative.
bool check_d_minus_1_signs(std::uint32_t d);

struct EquivTriple {
  bool g_nonneg = false;  // g_{d,d'}(n-1) >= 0
  bool dim_sq = false;    // dim R_{d+d'} >= (dim R_{d'})^2
  bool r_cond = false;    // r >= dim R_{d'} if s = dim R_{d'}, else r > dim R_{d'}

  bool agree() const { return g_nonneg == dim_sq && dim_sq == r_cond; }
};

EquivTriple equiv_triple(std::uint32_t n, std::uint32_t d, std::uint32_t dprime);

}  // namespace froberg::gpoly
