#include "froberg/exactpoly.hpp"

#include <gtest/gtest.h>

#include <random>

#include "froberg/error.hpp"
#include "oracles.hpp"

using namespace froberg;
using namespace froberg::exactpoly;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const RatPoly& g32() {
  static const RatPoly p{q(0), q(-43, 60), q(-3, 10), q(1, 60)};
  return p;
}

RatPoly random_poly(std::mt19937_64& rng, int degree, long bound) {
  std::vector<Rational> c(degree + 1);
  for (auto& v : c) v = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  if (c.back() == 0) c.back() = 1;
  return RatPoly(c);
}

// Sign flips of p between consecutive points lo + k*step in (lo, hi].
int grid_flips(const RatPoly& p, const Rational& lo, const Rational& hi, const Rational& step) {
  int flips = 0;
  int prev = sign(p.eval(lo));
  for (Rational x = lo + step; x <= hi; x += step) {
    const int s = sign(p.eval(x));
    if (s != 0 && prev != 0 && s != prev) ++flips;
    if (s != 0) prev = s;
  }
  return flips;
}

}  // namespace

TEST(Rational, FormatAndParse) {
  EXPECT_EQ(format_rational(q(7)), "7/1");
  EXPECT_EQ(format_rational(q(-6, 4)), "-3/2");
  EXPECT_EQ(parse_rational("-3/2"), q(-3, 2));
  EXPECT_EQ(parse_rational("5"), q(5));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Rational x = q(static_cast<long>(rng() % 20001) - 10000, 1 + static_cast<long>(rng() % 999));
    EXPECT_EQ(parse_rational(format_rational(x)), x);
  }
  EXPECT_THROW(make_rational(1, 0), Error);
}

TEST(PolyArith, Examples) {
  EXPECT_EQ(poly_arith(RatPoly{q(0), q(1)}, RatPoly{q(1)}, ArithOp::Add), (RatPoly{q(1), q(1)}));
  EXPECT_EQ(poly_arith(RatPoly{q(-1), q(1)}, RatPoly{q(1), q(1)}, ArithOp::Mul), (RatPoly{q(-1), q(0), q(1)}));
  EXPECT_EQ(eval(g32(), q(21)), q(7));
}

TEST(PolyArith, Exact) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const RatPoly a = random_poly(rng, static_cast<int>(rng() % 7), 50);
    const RatPoly b = random_poly(rng, static_cast<int>(rng() % 7), 50);
    EXPECT_EQ(poly_arith(poly_arith(a, b, ArithOp::Add), b, ArithOp::Sub), a);
    const RatPoly ab = poly_arith(a, b, ArithOp::Mul);
    for (int k = 0; k < 5; ++k) {
      const Rational x = q(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 17));
      EXPECT_EQ(eval(ab, x), eval(a, x) * eval(b, x));
    }
    const auto [quo, rem] = RatPoly::divmod(ab + RatPoly{q(3)}, b);
    EXPECT_EQ(quo * b + rem, ab + RatPoly{q(3)});
    EXPECT_LT(rem.degree(), b.degree());
  }
  EXPECT_THROW(RatPoly::divmod(RatPoly{q(1)}, RatPoly{}), Error);
}

TEST(PolyArith, SubtractionCancelsToZero) {
  const RatPoly a{q(1), q(2), q(3)};
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((a - a).degree(), -1);
}

TEST(Gcd, MonicCommonFactor) {
  const RatPoly f{q(-1), q(1)};  // x - 1
  const RatPoly g{q(2), q(1)};   // x + 2
  const RatPoly h{q(1), q(0), q(1)};
  EXPECT_EQ(gcd(f * g * g, f * h * g), f * g);
  EXPECT_EQ(squarefree_part(f * f * f * g * g), f * g);
}

TEST(BinomShiftPoly, Examples) {
  EXPECT_EQ(binom_shift_poly(2, 2), (RatPoly{q(1), q(3, 2), q(1, 2)}));
  EXPECT_EQ(binom_shift_poly(3, 3), (RatPoly{q(1), q(11, 6), q(1), q(1, 6)}));
  EXPECT_EQ(binom_shift_poly(0, 1), (RatPoly{q(0), q(1)}));
}

TEST(BinomShiftPoly, MatchesProductOracle) {
  for (long a = -3; a <= 8; ++a) {
    for (long m = 0; m <= 7; ++m) {
      const auto want = oracle::shifted_binomial(a, m);
      EXPECT_EQ(binom_shift_poly(a, m), RatPoly(std::vector<Rational>(want.begin(), want.end()))) << a << " " << m;
    }
  }
}

TEST(SignChanges, Examples) {
  const std::vector<Rational> s{q(1), q(-1), q(-1), q(0), q(1)};
  EXPECT_EQ(sign_changes(s), 2);
  EXPECT_EQ(sign_changes(g32().coeffs()), 1);
  EXPECT_EQ(sign_changes(std::vector<Rational>{}), 0);
}

TEST(Sturm, Examples) {
  EXPECT_EQ(count_real_roots(RatPoly{q(-1), q(0), q(1)}, RatInterval(q(-2), q(2))), 2);
  EXPECT_EQ(count_real_roots(RatPoly{q(1), q(0), q(1)}, RatInterval(q(-10), q(10))), 0);
  EXPECT_EQ(count_real_roots(g32().derivative(), RatInterval(q(0), q(21))), 1);
  EXPECT_THROW(count_real_roots(RatPoly{}, RatInterval(q(0), q(1))), Error);
}

TEST(Sturm, HalfOpenConvention) {
  const RatPoly p{q(-1), q(1)};  // root at 1
  EXPECT_EQ(count_real_roots(p, RatInterval(q(0), q(1))), 1);
  EXPECT_EQ(count_real_roots(p, RatInterval(q(1), q(2))), 0);
  // Repeated roots are counted once.
  EXPECT_EQ(count_real_roots(p * p * p, RatInterval(q(0), q(2))), 1);
}

TEST(Sturm, MatchesGridScan) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 60; ++iter) {
    // Distinct real roots at odd multiples of 1/256 (off the 1/128 grid),
    // spaced more than 1/64 apart, times a factor without real roots.
    const int real_roots = static_cast<int>(rng() % 5);
    std::vector<long> nums;
    while (static_cast<int>(nums.size()) < real_roots) {
      const long k = 2 * (static_cast<long>(rng() % 512) - 256) + 1;
      bool ok = true;
      for (long o : nums) ok = ok && std::abs(o - k) > 4;
      if (ok) nums.push_back(k);
    }
    RatPoly p{q(1 + static_cast<long>(rng() % 5))};
    for (long k : nums) p = p * RatPoly{q(-k, 256), q(1)};
    if (rng() % 2) p = p * RatPoly{q(1 + static_cast<long>(rng() % 9)), q(0), q(1)};
    const Rational lo = q(-3), hi = q(3);
    EXPECT_EQ(count_real_roots(p, RatInterval(lo, hi)), grid_flips(p, lo, hi, q(1, 128)));
    EXPECT_EQ(count_real_roots(p, RatInterval(lo, hi)), real_roots);

    const auto roots = isolate_roots(p, RatInterval(lo, hi));
    ASSERT_EQ(static_cast<int>(roots.size()), real_roots);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      EXPECT_EQ(count_real_roots(p, roots[i]) + (roots[i].is_point() ? 1 : 0), 1);
      if (i > 0) EXPECT_LE(roots[i - 1].hi, roots[i].lo);
    }
  }
}

TEST(Sturm, Descartes) {
  std::mt19937_64 rng(8);
  int tested = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const RatPoly p = random_poly(rng, 1 + static_cast<int>(rng() % 6), 9);
    if (gcd(p, p.derivative()).degree() > 0) continue;  // multiplicities would need counting
    Rational bound = 0;
    for (const auto& c : p.coeffs()) bound = std::max<Rational>(bound, abs(c / p.leading()));
    const int positive = count_real_roots(p, RatInterval(q(0), bound + 1));
    const int changes = sign_changes(p.coeffs());
    EXPECT_LE(positive, changes);
    EXPECT_EQ((changes - positive) % 2, 0);
    ++tested;
  }
  EXPECT_GT(tested, 200);
}

TEST(CertifyNonneg, Examples) {
  EXPECT_TRUE(certify_nonneg_on_interval(RatPoly{q(0), q(0), q(1)}, RatInterval(q(-1), q(1))).nonneg);

  const RatPoly at21 = RatPoly::constant(g32().eval(q(21))) - g32();
  EXPECT_TRUE(certify_nonneg_on_interval(at21, RatInterval(q(0), q(21))).nonneg);

  const RatPoly at20 = RatPoly::constant(g32().eval(q(20))) - g32();
  const auto r = certify_nonneg_on_interval(at20, RatInterval(q(0), q(20)));
  EXPECT_FALSE(r.nonneg);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(at20.eval(*r.witness), 0);
  EXPECT_TRUE(RatInterval(q(0), q(20)).contains(*r.witness));
}

TEST(CertifyNonneg, AgreesWithGridScan) {
  // at21 >= 0 everywhere on [0, 21] at step 1/64.
  const RatPoly at21 = RatPoly::constant(g32().eval(q(21))) - g32();
  for (Rational x = 0; x <= 21; x += q(1, 64)) ASSERT_GE(at21.eval(x), 0);
}

TEST(CertifyNonneg, Squares) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 60; ++iter) {
    const RatPoly a = random_poly(rng, 1 + static_cast<int>(rng() % 3), 6);
    const RatPoly b = random_poly(rng, static_cast<int>(rng() % 3), 6);
    const RatPoly p = a * a * b * b;
    const Rational lo = q(-static_cast<long>(rng() % 10), 1 + static_cast<long>(rng() % 3));
    const Rational hi = lo + q(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 3));
    EXPECT_TRUE(certify_nonneg_on_interval(p, RatInterval(lo, hi)).nonneg);
    // Shifting down by 1 makes it negative wherever a or b vanishes, if at all.
    const auto shifted = certify_nonneg_on_interval(p - RatPoly{q(1)}, RatInterval(lo, hi));
    if (!shifted.nonneg) EXPECT_LT(p.eval(*shifted.witness), 1);
  }
}

TEST(RatInterval, RejectsReversedBounds) { EXPECT_THROW(RatInterval(q(2), q(1)), Error); }

TEST(SolveBinomEq, Examples) {
  EXPECT_EQ(solve_binom_eq(q(3), 2, q(1, 1024)), RatInterval::point(q(3)));
  EXPECT_EQ(solve_binom_eq(q(0), 3, q(1, 1024)), RatInterval::point(q(2)));
  EXPECT_EQ(solve_binom_eq(q(1), 5, q(1, 1024)), RatInterval::point(q(5)));
  EXPECT_THROW(solve_binom_eq(q(-1), 2), Error);
  EXPECT_THROW(solve_binom_eq(q(5), 2, q(1, 4) * min_binom_width()), Error);
}

TEST(SolveBinomEq, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const std::uint32_t j = 1 + static_cast<std::uint32_t>(rng() % 6);
    const Rational t = q(static_cast<long>(rng() % 100000), 1 + static_cast<long>(rng() % 7));
    const RatInterval x = solve_binom_eq(t, j);
    EXPECT_LE(x.width(), default_binom_width());
    EXPECT_GE(x.lo, q(j - 1));
    const RatInterval c = eval_generalized_binom(x, j);
    EXPECT_TRUE(c.contains(t)) << format_rational(t) << " j=" << j;
  }
}

TEST(EvalGeneralizedBinom, Examples) {
  EXPECT_EQ(eval_generalized_binom(RatInterval::point(q(3)), 2), RatInterval::point(q(3)));
  EXPECT_EQ(eval_generalized_binom(RatInterval::point(q(4)), 3), RatInterval::point(q(4)));
  EXPECT_EQ(eval_generalized_binom(RatInterval::point(q(7, 2)), 2), RatInterval::point(q(35, 8)));
  EXPECT_THROW(eval_generalized_binom(RatInterval(q(0), q(3)), 3), Error);
}

TEST(GeneralizedBinom, MatchesIntegerBinomials) {
  for (long x = 0; x <= 30; ++x) {
    for (std::uint32_t m = 0; m <= 10; ++m) EXPECT_EQ(generalized_binom(q(x), m), Rational(oracle::binomial(x, m)));
  }
}
