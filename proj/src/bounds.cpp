#include "froberg/bounds.hpp"

#include <string>

#include "froberg/error.hpp"

namespace froberg::bounds {

namespace {

Rational to_rational(const BigInt& v) { return Rational(v); }

}  // namespace

RatInterval macaulay_next_upper(const BigInt& dim_j, std::uint32_t j, const Rational& width) {
  if (dim_j < 0) throw Error(ErrorKind::NegativeInput, "dimension must be non-negative");
  const RatInterval x = exactpoly::solve_binom_eq(to_rational(dim_j), j, width);
  return exactpoly::eval_generalized_binom(x + Rational(1), j + 1);
}

RatInterval macaulay_iterated_upper(const BigInt& t, std::uint32_t dprime, std::uint32_t steps,
                                    const Rational& width) {
  if (t < 0) throw Error(ErrorKind::NegativeInput, "t must be non-negative");
  const RatInterval x = exactpoly::solve_binom_eq(to_rational(t), dprime, width);
  return exactpoly::eval_generalized_binom(x + Rational(steps), dprime + steps);
}

PartitionDims dim_partition(std::uint32_t n, std::uint32_t d, std::uint32_t dprime, const BigInt& r,
                            const BigInt& s, const BigInt& t, const BigInt& h) {
  require_degree_pair(d, dprime);
  const BigInt dim = ring::dim_graded(n, dprime);
  if (s < 1 || s > dim) throw Error(ErrorKind::DomainError, "need 1 <= s <= dim R_{d'}");
  if (t < 0 || t >= dim) throw Error(ErrorKind::DomainError, "need 0 <= t <= dim R_{d'} - 1");

  PartitionDims out;
  out.n = n;
  out.d = d;
  out.dprime = dprime;
  out.t = t;
  out.h = h;
  const BigInt a = dim - t - 1;
  const BigInt b = dim - s;
  out.h_max = a < b ? a : b;
  if (h < 0 || h > out.h_max) {
    throw Error(ErrorKind::HypothesisViolation, "need 0 <= h <= min(D - t - 1, D - s)");
  }

  if (r == dim && s == dim) {
    out.square_case = true;
    out.dim_Pt = (r + t) * (dim - t) - 1;
    return out;
  }
  if (r <= dim) {
    throw Error(ErrorKind::HypothesisViolation,
                "the stratum formulas need r > dim R_{d'} (or r = s = dim R_{d'})");
  }

  auto x_dim = [&](const BigInt& hh) -> BigInt {
    return (r + s + t - dim) * (dim - t) - 1 + (2 * dim - s - t - 1) * hh - hh * hh;
  };
  out.dim_Yt = (r + t - 1) * (dim - t) - 1;
  // The first s columns carry at most rank s, so the tail needs rank
  // D - t - s or more; below that the stratum is empty.
  if (h >= dim - t - s) out.dim_Xth = x_dim(h);
  out.dim_Xth_best = x_dim(out.h_max);
  const BigInt total = (r - 1) * dim + s;
  const BigInt excess = t > s ? BigInt(t - s) : BigInt(0);
  out.dim_Pt = total + t * (dim - t - r) + excess - 1;
  return out;
}

AuditResult audit_chain(std::uint32_t n, std::uint32_t d, std::uint32_t dprime) {
  require_degree_pair(d, dprime);
  const ring::RingParams rp = ring::rs_params(n, d, dprime);
  AuditResult out;
  out.n = n;
  out.d = d;
  out.dprime = dprime;
  out.r = rp.r;
  out.s = rp.s;
  const BigInt& dim = rp.dim_dprime;
  out.hypothesis = rp.r > dim || (rp.r == dim && rp.s == dim);
  out.concludes = out.hypothesis;

  for (BigInt t = 0; t < dim; ++t) {
    AuditRow row;
    row.t = t;
    const BigInt excess = t > rp.s ? BigInt(t - rp.s) : BigInt(0);
    const Rational base(BigInt(t * (dim - t - rp.r) + excess));

    // Refine by squaring the width: 2^-64, 2^-128, 2^-256, 2^-512.
    Rational width = exactpoly::default_binom_width();
    while (true) {
      row.x = exactpoly::solve_binom_eq(Rational(t), dprime, width);
      row.macaulay_term = exactpoly::eval_generalized_binom(row.x + Rational(d), d + dprime);
      row.lhs = row.macaulay_term + base;
      if (row.lhs.hi <= 0) {
        row.satisfied = true;
        break;
      }
      if (row.lhs.lo > 0) break;
      if (width == exactpoly::min_binom_width()) {
        row.precision_exhausted = true;
        break;
      }
      width *= width;
    }
    out.concludes = out.concludes && row.satisfied;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace froberg::bounds
