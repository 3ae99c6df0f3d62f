#pragma once

// Exact univariate polynomials over Q: arithmetic, Sturm root counting and
// isolation, certified non-negativity on intervals, and binomials with a
// rational upper argument. No floating point anywhere in this module.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace froberg::exactpoly {

/// Always canonical: reduced, positive denominator, zero is 0/1.
using Rational = mpq_class;

Rational make_rational(const mpz_class& num, const mpz_class& den);

/// "num/den", denominator always present.
std::string format_rational(const Rational& q);
Rational parse_rational(const std::string& text);

int sign(const Rational& q);

/// Dense polynomial; coeffs()[i] is the coefficient of x^i. The highest
/// stored coefficient is non-zero; the zero polynomial has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  RatPoly(std::initializer_list<Rational> coeffs) : RatPoly(std::vector<Rational>(coeffs)) {}

  static RatPoly constant(const Rational& c);
  /// x + a
  static RatPoly linear(const Rational& a);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const;
  Rational coeff(std::size_t i) const;

  Rational eval(const Rational& x) const;
  RatPoly derivative() const;
  RatPoly monic() const;

  RatPoly operator-() const;
  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rational& c, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder; throws ZeroPolynomial when dividing by zero.
  static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

enum class ArithOp { Add, Sub, Mul };

RatPoly poly_arith(const RatPoly& a, const RatPoly& b, ArithOp op);
Rational eval(const RatPoly& a, const Rational& x);

/// Monic gcd; gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);
RatPoly squarefree_part(const RatPoly& p);

/// C(x + a, m) = (x+a)(x+a-1)...(x+a-m+1) / m! as a polynomial in x.
RatPoly binom_shift_poly(std::int64_t a, std::uint32_t m);

/// Sign alternations after deleting zeros.
int sign_changes(std::span<const Rational> coeffs);

/// Closed rational interval [lo, hi]. Root counting reads it as (lo, hi].
struct RatInterval {
  Rational lo;
  Rational hi;

  RatInterval() = default;
  RatInterval(Rational lo_, Rational hi_);
  static RatInterval point(const Rational& x) { return RatInterval(x, x); }

  Rational width() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  RatInterval operator+(const Rational& shift) const { return {lo + shift, hi + shift}; }
  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  bool operator==(const RatInterval&) const = default;
};

/// Sturm sequence of the square-free part of p: q, q', then negated
/// remainders. Variation differences count distinct roots of p.
class SturmChain {
 public:
  explicit SturmChain(const RatPoly& p);

  const std::vector<RatPoly>& polys() const { return polys_; }
  int variations_at(const Rational& x) const;
  /// Distinct real roots of p in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<RatPoly> polys_;
};

/// Distinct real roots of p in (iv.lo, iv.hi]. Throws ZeroPolynomial.
int count_real_roots(const RatPoly& p, const RatInterval& iv);

/// Disjoint intervals, each holding exactly one distinct root of p in
/// (iv.lo, iv.hi]. A point interval is an exact rational root; otherwise the
/// root lies in (lo, hi]. Sorted left to right.
std::vector<RatInterval> isolate_roots(const RatPoly& p, const RatInterval& iv);

struct NonnegResult {
  bool nonneg = true;
  std::optional<Rational> witness;  // set iff !nonneg, with p(witness) < 0
};

/// Decides p(x) >= 0 on [iv.lo, iv.hi] by checking the endpoints and the
/// sign of p at every isolated root of p'.
NonnegResult certify_nonneg_on_interval(const RatPoly& p, const RatInterval& iv);

/// Generalized binomial x(x-1)...(x-m+1)/m! for rational x.
Rational generalized_binom(const Rational& x, std::uint32_t m);

/// 2^-64, the starting width for solve_binom_eq.
Rational default_binom_width();
/// 2^-512; asking for anything narrower raises PrecisionExhausted.
Rational min_binom_width();

/// Interval of width <= `width` around the unique x >= j-1 with C(x, j) = t.
/// Collapses to a point when bisection lands on the exact solution.
RatInterval solve_binom_eq(const Rational& t, std::uint32_t j,
                           const Rational& width = default_binom_width());

/// Enclosure of C(x, m) over x in the interval; requires x.lo >= m - 1 where
/// C(., m) is increasing.
RatInterval eval_generalized_binom(const RatInterval& x, std::uint32_t m);

}  // namespace froberg::exactpoly
