#include "froberg/exactpoly.hpp"

#include <algorithm>

#include "froberg/error.hpp"

namespace froberg::exactpoly {

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::DomainError, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(text));
    return make_rational(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::DomainError, "not a rational number: '" + text + "'");
  }
}

int sign(const Rational& q) { return sgn(q); }

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void RatPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::linear(const Rational& a) { return RatPoly(std::vector<Rational>{a, 1}); }

const Rational& RatPoly::leading() const {
  if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational RatPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

Rational RatPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return RatPoly(std::move(out));
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return {};
  const Rational inv = 1 / leading();
  return inv * *this;
}

RatPoly RatPoly::operator-() const {
  RatPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return RatPoly(std::move(out));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
  return RatPoly(std::move(out));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RatPoly(std::move(out));
}

RatPoly operator*(const Rational& c, const RatPoly& a) {
  if (c == 0) return {};
  RatPoly out = a;
  for (auto& v : out.coeffs_) v *= c;
  return out;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  if (a.degree() < b.degree()) return {RatPoly{}, a};
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
  const Rational inv_lead = 1 / b.leading();
  const std::size_t db = b.coeffs_.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = rem[k + db] * inv_lead;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
  }
  rem.resize(db);
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly poly_arith(const RatPoly& a, const RatPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return {};
}

Rational eval(const RatPoly& a, const Rational& x) { return a.eval(x); }

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a;
  RatPoly y = b;
  while (!y.is_zero()) {
    RatPoly r = RatPoly::divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return p;
  const RatPoly g = gcd(p, p.derivative());
  return RatPoly::divmod(p, g).first;
}

RatPoly binom_shift_poly(std::int64_t a, std::uint32_t m) {
  RatPoly out = RatPoly::constant(1);
  mpz_class factorial = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    out = out * RatPoly::linear(Rational(mpz_class(static_cast<long>(a - i))));
    factorial *= i + 1;
  }
  return Rational(1, factorial) * out;
}

int sign_changes(std::span<const Rational> coeffs) {
  int changes = 0;
  int last = 0;
  for (const auto& c : coeffs) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// ---------------------------------------------------------------- intervals

RatInterval::RatInterval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) throw Error(ErrorKind::DomainError, "interval with lo > hi");
}

// ---------------------------------------------------------------- Sturm

SturmChain::SturmChain(const RatPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Sturm chain of the zero polynomial");
  polys_.push_back(squarefree_part(p).monic());
  RatPoly next = polys_.front().derivative();
  while (!next.is_zero()) {
    polys_.push_back(next);
    const auto& a = polys_[polys_.size() - 2];
    const auto& b = polys_.back();
    next = -RatPoly::divmod(a, b).second;
  }
}

int SturmChain::variations_at(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : polys_) {
    const int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmChain::count(const Rational& lo, const Rational& hi) const {
  if (hi <= lo) return 0;
  return variations_at(lo) - variations_at(hi);
}

int count_real_roots(const RatPoly& p, const RatInterval& iv) {
  return SturmChain(p).count(iv.lo, iv.hi);
}

std::vector<RatInterval> isolate_roots(const RatPoly& p, const RatInterval& iv) {
  const SturmChain chain(p);
  const RatPoly& q = chain.polys().front();
  std::vector<RatInterval> out;

  struct Pending {
    Rational lo, hi;
    int roots;
  };
  std::vector<Pending> stack{{iv.lo, iv.hi, chain.count(iv.lo, iv.hi)}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.roots == 0) continue;
    if (cur.roots == 1) {
      if (q.eval(cur.hi) == 0) {
        out.push_back(RatInterval::point(cur.hi));
      } else {
        out.emplace_back(cur.lo, cur.hi);
      }
      continue;
    }
    const Rational mid = (cur.lo + cur.hi) / 2;
    if (q.eval(mid) != 0) {
      const int left = chain.count(cur.lo, mid);
      stack.push_back({mid, cur.hi, cur.roots - left});
      stack.push_back({cur.lo, mid, left});
      continue;
    }
    // Exact root at the midpoint: cut out a window holding only that root.
    out.push_back(RatInterval::point(mid));
    Rational delta = (cur.hi - cur.lo) / 4;
    while (chain.count(mid - delta, mid + delta) != 1 || q.eval(mid - delta) == 0) delta /= 2;
    const int left = chain.count(cur.lo, mid - delta);
    stack.push_back({mid + delta, cur.hi, cur.roots - left - 1});
    stack.push_back({cur.lo, mid - delta, left});
  }
  std::sort(out.begin(), out.end(), [](const RatInterval& a, const RatInterval& b) { return a.hi < b.hi; });
  return out;
}

NonnegResult certify_nonneg_on_interval(const RatPoly& p, const RatInterval& iv) {
  if (p.is_zero()) return {};
  if (p.eval(iv.lo) < 0) return {false, iv.lo};
  if (p.eval(iv.hi) < 0) return {false, iv.hi};
  if (iv.is_point()) return {};

  const RatPoly dp = p.derivative();
  if (dp.is_zero()) return {};
  const RatPoly common = gcd(p, dp);  // roots shared by p and p' (p vanishes there)
  const SturmChain p_chain(p);
  const SturmChain dp_chain(dp);
  const RatPoly& dp_sq = dp_chain.polys().front();

  for (const auto& crit : isolate_roots(dp, iv)) {
    if (crit.is_point()) {
      if (p.eval(crit.lo) < 0) return {false, crit.lo};
      continue;
    }
    if (common.degree() >= 1 && count_real_roots(common, crit) > 0) continue;

    // p does not vanish at the critical point; shrink until p has no root on
    // [a, b], then p keeps one sign there.
    Rational a = crit.lo;
    Rational b = crit.hi;
    while (true) {
      if (p.eval(a) != 0 && p_chain.count(a, b) == 0) {
        if (p.eval(b) < 0) return {false, b};
        break;
      }
      const Rational mid = (a + b) / 2;
      if (dp_sq.eval(mid) == 0) {
        if (p.eval(mid) < 0) return {false, mid};
        break;
      }
      if (dp_chain.count(a, mid) > 0) {
        b = mid;
      } else {
        a = mid;
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------- binomials

Rational generalized_binom(const Rational& x, std::uint32_t m) {
  Rational acc = 1;
  mpz_class factorial = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    acc *= x - i;
    factorial *= i + 1;
  }
  return acc / factorial;
}

Rational default_binom_width() {
  mpz_class den = 1;
  den <<= 64;
  return Rational(1, den);
}

Rational min_binom_width() {
  mpz_class den = 1;
  den <<= 512;
  return Rational(1, den);
}

RatInterval solve_binom_eq(const Rational& t, std::uint32_t j, const Rational& width) {
  if (t < 0) throw Error(ErrorKind::NegativeInput, "C(x, j) = t needs t >= 0");
  if (j == 0) throw Error(ErrorKind::DomainError, "C(x, 0) = t has no unique solution");
  if (width <= 0) throw Error(ErrorKind::DomainError, "width must be positive");
  if (width < min_binom_width()) {
    throw Error(ErrorKind::PrecisionExhausted, "requested width below 2^-512");
  }
  const long base = static_cast<long>(j) - 1;
  if (t == 0) return RatInterval::point(Rational(base));

  auto binom_int = [j](unsigned long k) {
    mpz_class v;
    mpz_bin_uiui(v.get_mpz_t(), k, j);
    return Rational(v);
  };
  // Smallest integer k >= j with C(k, j) >= t, by doubling then halving.
  unsigned long lo = static_cast<unsigned long>(base);  // C(lo, j) = 0 < t
  unsigned long hi = j;
  while (binom_int(hi) < t) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const unsigned long mid = lo + (hi - lo) / 2;
    if (binom_int(mid) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (binom_int(hi) == t) return RatInterval::point(Rational(mpz_class(hi)));

  Rational a{mpz_class(hi - 1)};
  Rational b{mpz_class(hi)};
  while (b - a > width) {
    const Rational mid = (a + b) / 2;
    const Rational v = generalized_binom(mid, j);
    if (v == t) return RatInterval::point(mid);
    if (v < t) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return {a, b};
}

RatInterval eval_generalized_binom(const RatInterval& x, std::uint32_t m) {
  if (m >= 1 && x.lo < static_cast<long>(m) - 1) {
    throw Error(ErrorKind::DomainError, "C(x, m) is only monotone for x >= m - 1");
  }
  // Exact endpoint values bound the monotone image.
  return {generalized_binom(x.lo, m), generalized_binom(x.hi, m)};
}

}  // namespace froberg::exactpoly
