#pragma once

// Monomial combinatorics of the standard graded ring k[x_1, ..., x_n].

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace froberg::ring {

using BigInt = mpz_class;

/// Exponent vector of a monomial x_1^{a_1} ... x_n^{a_n}.
struct Monomial {
  std::vector<std::uint32_t> exponents;

  std::uint32_t degree() const;
  std::size_t variables() const { return exponents.size(); }

  bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic order with x_1 > x_2 > ... > x_n.
bool grlex_less(const Monomial& a, const Monomial& b);

Monomial operator*(const Monomial& a, const Monomial& b);

/// All monomials of one degree, listed in decreasing graded-lex order
/// (x_1^e first, x_n^e last). index_of() is the inverse of operator[].
class DegreeBasis {
 public:
  DegreeBasis(std::uint32_t n, std::uint32_t degree);

  std::uint32_t variables() const { return n_; }
  std::uint32_t degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }

  /// Position of a monomial with this basis' variable count and degree.
  /// Throws IndexOutOfRange on a shape mismatch.
  std::size_t index_of(std::span<const std::uint32_t> exponents) const;
  std::size_t index_of(const Monomial& m) const { return index_of(m.exponents); }

 private:
  std::uint64_t count(std::uint32_t vars, std::int64_t degree) const;

  std::uint32_t n_;
  std::uint32_t degree_;
  std::vector<Monomial> monomials_;
  // counts_[v * (degree_ + 1) + e] = number of degree-e monomials in v variables
  std::vector<std::uint64_t> counts_;
};

/// dim_k R_e = C(n + e - 1, e).
BigInt dim_graded(std::uint32_t n, std::uint32_t e);

/// dim_graded as a machine word; throws DomainError if it does not fit.
std::uint64_t dim_graded_u64(std::uint32_t n, std::uint32_t e);

DegreeBasis monomial_basis(std::uint32_t n, std::uint32_t e);

struct RingParams {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t dprime = 0;
  BigInt dim_ddprime;  // dim R_{d+d'}
  BigInt dim_dprime;   // dim R_{d'}
  BigInt r;            // least r with r * dim R_{d'} >= dim R_{d+d'}
  BigInt s;            // dim R_{d+d'} - (r - 1) * dim R_{d'}
};

/// Quotient/remainder split of dim R_{d+d'} by dim R_{d'}. Any d' >= 1 is
/// accepted here; callers that need d > d' check it themselves.
RingParams rs_params(std::uint32_t n, std::uint32_t d, std::uint32_t dprime);

/// Coefficients 0..max_deg of [prod (1 - t^{d_i}) / (1 - t)^n], truncated at
/// the first non-positive coefficient.
std::vector<BigInt> conjectured_series(std::uint32_t n,
                                       std::span<const std::uint32_t> degrees,
                                       std::uint32_t max_deg);

}  // namespace froberg::ring
