#include "froberg/gpoly.hpp"

#include <mpfr.h>

#include <algorithm>
#include <memory>

#include <string>
#include <utility>

#include "froberg/error.hpp"
#include "froberg/ring.hpp"

namespace froberg::gpoly {

namespace {

// e_j(1, 1/2, ..., 1/d') for j = 0..d'.
std::vector<Rational> lower_sums(std::uint32_t dprime) {
  std::vector<Rational> values;
  for (std::uint32_t i = 1; i <= dprime; ++i) values.emplace_back(1, i);
  return elementary_symmetric(values, dprime);
}

int change_count(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// --------------------------------------------------------------- exact scan

// e_j(1/(d'+1), ..., 1/(d'+d)) = numer[j] / denom with
// denom = (d'+1)(d'+2)...(d'+d). Adding the value 1/m maps
// numer[j] -> m * numer[j] + numer[j-1], so the walk over d is integer-only.
class ExactUpperSums {
 public:
  explicit ExactUpperSums(std::uint32_t dprime) : numer_(dprime + 1, 0), denom_(1) { numer_[0] = 1; }

  void add_reciprocal(unsigned long m) {
    for (std::size_t j = numer_.size(); j-- > 1;) {
      numer_[j] *= m;
      numer_[j] += numer_[j - 1];
    }
    numer_[0] *= m;
    denom_ *= m;
  }

  // sign(numer[j] / denom - target)
  int compare(std::size_t j, const Rational& target) const {
    const mpz_class lhs = numer_[j] * target.get_den();
    const mpz_class rhs = target.get_num() * denom_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }

 private:
  std::vector<mpz_class> numer_;
  mpz_class denom_;
};

// Exact signs of the x^1 .. x^{d'} coefficients of g_{d,d'}.
std::vector<int> exact_low_signs(std::uint32_t d, std::uint32_t dprime, const std::vector<Rational>& lower) {
  ExactUpperSums upper(dprime);
  for (std::uint32_t k = 1; k <= d; ++k) upper.add_reciprocal(dprime + k);
  std::vector<int> signs(dprime);
  for (std::uint32_t j = 1; j <= dprime; ++j) signs[j - 1] = upper.compare(j, lower[j]);
  return signs;
}

// ------------------------------------------------------- interval-fast scan

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Outward-rounded enclosures of e_j(1/(d'+1), ..., 1/(d'+d)), j = 0..d'.
// All quantities are non-negative, so lower and upper bounds propagate
// through the recurrence independently.
class IntervalUpperSums {
 public:
  IntervalUpperSums(std::uint32_t dprime, mpfr_prec_t prec) {
    for (std::uint32_t j = 0; j <= dprime; ++j) {
      lo_.emplace_back(prec);
      hi_.emplace_back(prec);
    }
    mpfr_set_ui(lo_[0].get(), 1, MPFR_RNDD);
    mpfr_set_ui(hi_[0].get(), 1, MPFR_RNDU);
    scratch_lo_ = std::make_unique<Mpfr>(prec);
    scratch_hi_ = std::make_unique<Mpfr>(prec);
  }

  void add_reciprocal(unsigned long m) {
    for (std::size_t j = lo_.size(); j-- > 1;) {
      mpfr_div_ui(scratch_lo_->get(), lo_[j - 1].get(), m, MPFR_RNDD);
      mpfr_add(lo_[j].get(), lo_[j].get(), scratch_lo_->get(), MPFR_RNDD);
      mpfr_div_ui(scratch_hi_->get(), hi_[j - 1].get(), m, MPFR_RNDU);
      mpfr_add(hi_[j].get(), hi_[j].get(), scratch_hi_->get(), MPFR_RNDU);
    }
  }

  // +1 / -1 when decided, 0 when the enclosure overlaps [target_lo, target_hi].
  int compare(std::size_t j, const Mpfr& target_lo, const Mpfr& target_hi) const {
    if (mpfr_greater_p(lo_[j].get(), target_hi.get())) return 1;
    if (mpfr_less_p(hi_[j].get(), target_lo.get())) return -1;
    return 0;
  }

 private:
  std::vector<Mpfr> lo_;
  std::vector<Mpfr> hi_;
  std::unique_ptr<Mpfr> scratch_lo_;
  std::unique_ptr<Mpfr> scratch_hi_;
};

struct LowerEnclosure {
  std::vector<Mpfr> lo;
  std::vector<Mpfr> hi;
};

LowerEnclosure enclose(const std::vector<Rational>& lower, mpfr_prec_t prec) {
  LowerEnclosure out;
  for (const auto& q : lower) {
    out.lo.emplace_back(prec);
    out.hi.emplace_back(prec);
    mpfr_set_q(out.lo.back().get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi.back().get(), q.get_mpq_t(), MPFR_RNDU);
  }
  return out;
}

constexpr mpfr_prec_t kStartPrecision = 256;
constexpr mpfr_prec_t kMaxPrecision = 4096;

// Decides the sign of coefficient j at this d by recomputing from scratch at
// doubling precision, then exactly.
int redecide_sign(std::uint32_t d, std::uint32_t dprime, std::uint32_t j,
                  const std::vector<Rational>& lower, ScanResult& stats) {
  for (mpfr_prec_t prec = 2 * kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    IntervalUpperSums upper(dprime, prec);
    for (std::uint32_t k = 1; k <= d; ++k) upper.add_reciprocal(dprime + k);
    const LowerEnclosure enc = enclose(lower, prec);
    const int s = upper.compare(j, enc.lo[j], enc.hi[j]);
    if (s != 0) return s;
  }
  ++stats.exact_fallbacks;
  return exact_low_signs(d, dprime, lower)[j - 1];
}

}  // namespace

GPoly build_g(std::uint32_t d, std::uint32_t dprime) {
  require_degree_pair(d, dprime);
  mpz_class norm;
  mpz_bin_uiui(norm.get_mpz_t(), d + dprime, d);
  RatPoly poly = Rational(1, norm) * exactpoly::binom_shift_poly(d + dprime, d) -
                 exactpoly::binom_shift_poly(dprime, dprime);
  return GPoly{d, dprime, std::move(poly)};
}

std::vector<Rational> elementary_symmetric(std::span<const Rational> values, std::uint32_t max_j) {
  std::vector<Rational> e(std::size_t{max_j} + 1, 0);
  e[0] = 1;
  std::size_t seen = 0;
  for (const auto& v : values) {
    ++seen;
    const std::size_t top = std::min<std::size_t>(seen, max_j);
    for (std::size_t j = top; j >= 1; --j) e[j] += e[j - 1] * v;
  }
  return e;
}

Rational coeff_via_symmetric(std::uint32_t d, std::uint32_t dprime, std::uint32_t j) {
  require_degree_pair(d, dprime);
  if (j > d) {
    throw Error(ErrorKind::IndexOutOfRange,
                "coefficient index " + std::to_string(j) + " exceeds degree " + std::to_string(d));
  }
  std::vector<Rational> upper;
  for (std::uint32_t i = dprime + 1; i <= d + dprime; ++i) upper.emplace_back(1, i);
  std::vector<Rational> lower;
  for (std::uint32_t i = 1; i <= dprime; ++i) lower.emplace_back(1, i);
  return elementary_symmetric(upper, j)[j] - elementary_symmetric(lower, j)[j];
}

SignProfile sign_change_profile(std::uint32_t d, std::uint32_t dprime) {
  const GPoly g = build_g(d, dprime);
  SignProfile out;
  for (std::uint32_t j = 1; j <= d; ++j) out.signs.push_back(exactpoly::sign(g.poly.coeff(j)));
  out.changes = change_count(out.signs);
  return out;
}

std::string_view to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::OneSignChange: return "one-sign-change";
    case BoundMethod::SturmFallback: return "sturm-fallback";
    case BoundMethod::HypothesisFails: return "hypothesis-fails";
  }
  return "unknown";
}

std::string_view to_string(ScanMode m) {
  return m == ScanMode::Exact ? "exact" : "interval-fast";
}

BoundCertificate certify_bound(std::uint32_t d, std::uint32_t dprime, std::uint32_t n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "need n >= 1");
  const GPoly g = build_g(d, dprime);
  BoundCertificate cert;
  cert.d = d;
  cert.dprime = dprime;
  cert.n = n;
  const Rational end(static_cast<long>(n) - 1);
  cert.g_at_nminus1 = g.poly.eval(end);
  cert.sign_changes = exactpoly::sign_changes(g.poly.coeffs());

  if (cert.g_at_nminus1 < 0) {
    cert.method = BoundMethod::HypothesisFails;
    cert.holds = false;
  } else if (cert.sign_changes <= 1) {
    cert.method = BoundMethod::OneSignChange;
    cert.holds = true;
  } else {
    cert.method = BoundMethod::SturmFallback;
    const RatPoly gap = RatPoly::constant(cert.g_at_nminus1) - g.poly;
    cert.holds = exactpoly::certify_nonneg_on_interval(gap, exactpoly::RatInterval(0, end)).nonneg;
  }
  cert.propagates_in_d = cert.holds;
  return cert;
}

ScanResult scan_dprime(std::uint32_t dprime, ScanMode mode) {
  if (dprime < 1) throw Error(ErrorKind::InvalidDegrees, "need d' >= 1");
  ScanResult result;
  result.dprime = dprime;
  const std::vector<Rational> lower = lower_sums(dprime);

  // Coefficients of x^{d'+1} .. x^d are positive for every d > d', so only
  // x^1 .. x^{d'} can carry a sign, and the tail ends on '+'.
  auto record = [&](std::uint32_t d, std::vector<int> signs) {
    signs.push_back(1);
    const int changes = change_count(signs);
    if (changes > 1) {
      result.all_at_most_one = false;
      result.failures.push_back({d, changes});
    }
    result.max_d_checked = d;
    for (std::size_t j = 0; j + 1 < signs.size(); ++j) {
      if (signs[j] < 0) return false;
    }
    return true;
  };

  std::vector<int> signs(dprime);
  if (mode == ScanMode::Exact) {
    ExactUpperSums upper(dprime);
    for (std::uint32_t k = 1; k <= dprime; ++k) upper.add_reciprocal(dprime + k);
    for (std::uint32_t d = dprime + 1;; ++d) {
      upper.add_reciprocal(dprime + d);
      for (std::uint32_t j = 1; j <= dprime; ++j) signs[j - 1] = upper.compare(j, lower[j]);
      if (record(d, signs)) break;
    }
    return result;
  }

  IntervalUpperSums upper(dprime, kStartPrecision);
  const LowerEnclosure enc = enclose(lower, kStartPrecision);
  for (std::uint32_t k = 1; k <= dprime; ++k) upper.add_reciprocal(dprime + k);
  for (std::uint32_t d = dprime + 1;; ++d) {
    upper.add_reciprocal(dprime + d);
    for (std::uint32_t j = 1; j <= dprime; ++j) {
      int s = upper.compare(j, enc.lo[j], enc.hi[j]);
      if (s == 0) {
        ++result.ambiguous_signs;
        s = redecide_sign(d, dprime, j, lower, result);
      }
      signs[j - 1] = s;
    }
    if (record(d, signs)) break;
  }
  return result;
}

bool check_d_minus_1_signs(std::uint32_t d) {
  if (d < 2) throw Error(ErrorKind::InvalidDegrees, "need d >= 2");
  const GPoly g = build_g(d, d - 1);
  if (g.poly.coeff(d) <= 0) return false;
  for (std::uint32_t j = 1; j < d; ++j) {
    if (g.poly.coeff(j) >= 0) return false;
  }
  return true;
}

EquivTriple equiv_triple(std::uint32_t n, std::uint32_t d, std::uint32_t dprime) {
  const GPoly g = build_g(d, dprime);
  if (n < 1) throw Error(ErrorKind::DomainError, "need n >= 1");
  const ring::RingParams rp = ring::rs_params(n, d, dprime);
  EquivTriple out;
  out.g_nonneg = g.poly.eval(Rational(static_cast<long>(n) - 1)) >= 0;
  out.dim_sq = rp.dim_ddprime >= rp.dim_dprime * rp.dim_dprime;
  out.r_cond = rp.s == rp.dim_dprime ? rp.r >= rp.dim_dprime : rp.r > rp.dim_dprime;
  return out;
}

}  // namespace froberg::gpoly
