#pragma once

// Macaulay growth bounds in Eliahou's real-binomial form, the dimension
// formulas for the rank strata P_t, Y_t, X_{t,h}, and a row-by-row audit of
// the dimension count that bounds the bad locus.

#include <cstdint>
#include <optional>
#include <vector>

#include "froberg/exactpoly.hpp"
#include "froberg/ring.hpp"

namespace froberg::bounds {

using exactpoly::RatInterval;
using exactpoly::Rational;
using ring::BigInt;

/// Encloses C(x+1, j+1) where x >= j-1 solves C(x, j) = dim_j. This bounds
/// dim A_{j+1} for any standard graded algebra A with dim A_j = dim_j.
RatInterval macaulay_next_upper(const BigInt& dim_j, std::uint32_t j,
                                const Rational& width = exactpoly::default_binom_width());

/// Encloses C(x + steps, dprime + steps) where C(x, dprime) = t, with
/// x = dprime - 1 for t = 0: the bound after `steps` applications.
RatInterval macaulay_iterated_upper(const BigInt& t, std::uint32_t dprime, std::uint32_t steps,
                                    const Rational& width = exactpoly::default_binom_width());

struct PartitionDims {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t dprime = 0;
  BigInt t;
  BigInt h;
  BigInt h_max;                        // min(D - t - 1, D - s), D = dim R_{d'}
  std::optional<BigInt> dim_Yt;        // unset in the r = s = D case
  std::optional<BigInt> dim_Xth;       // X_{t,h} at the requested h; unset when empty (h < D - t - s)
  std::optional<BigInt> dim_Xth_best;  // X_{t,h_max}
  BigInt dim_Pt;
  bool square_case = false;  // r = s = D: P is all of P(R_{d'}^r)
};

/// Closed-form dimensions of the rank strata. Needs r > dim R_{d'}, or the
/// square case r = s = dim R_{d'}; otherwise HypothesisViolation.
/// dim P uses (r - 1) * dim R_{d'} + s for dim R_{d+d'}, so r and s may be
/// supplied freely to exercise the formulas.
PartitionDims dim_partition(std::uint32_t n, std::uint32_t d, std::uint32_t dprime, const BigInt& r,
                            const BigInt& s, const BigInt& t, const BigInt& h);

struct AuditRow {
  BigInt t;
  RatInterval x;               // C(x, d') = t
  RatInterval macaulay_term;   // C(x + d, d + d')
  RatInterval lhs;             // t(D - t - r) + max(t - s, 0) + macaulay_term
  bool satisfied = false;      // lhs <= 0 on the whole enclosure
  bool precision_exhausted = false;
};

struct AuditResult {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t dprime = 0;
  BigInt r;
  BigInt s;
  std::vector<AuditRow> rows;
  bool hypothesis = false;  // r > D, or r = s = D
  bool concludes = false;   // hypothesis and every row satisfied: dim V < r dim R_d
};

/// One row per t = 0 .. dim R_{d'} - 1. Rows whose sign stays undecided down
/// to width 2^-512 count as unsatisfied.
AuditResult audit_chain(std::uint32_t n, std::uint32_t d, std::uint32_t dprime);

}  // namespace froberg::bounds
