#include "froberg/ring.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "froberg/error.hpp"

namespace froberg::ring {

namespace {

void require_variables(std::uint32_t n) {
  if (n == 0) throw Error(ErrorKind::DomainError, "need at least one variable");
}

}  // namespace

std::uint32_t Monomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), std::uint32_t{0});
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  // Same degree: the larger exponent at the first difference wins.
  return std::lexicographical_compare(a.exponents.begin(), a.exponents.end(),
                                      b.exponents.begin(), b.exponents.end());
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.variables() != b.variables()) {
    throw Error(ErrorKind::IndexOutOfRange, "monomials live in different rings");
  }
  Monomial out{a.exponents};
  for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] += b.exponents[i];
  return out;
}

DegreeBasis::DegreeBasis(std::uint32_t n, std::uint32_t degree) : n_(n), degree_(degree) {
  require_variables(n);

  const std::size_t stride = std::size_t{degree} + 1;
  counts_.assign((std::size_t{n} + 1) * stride, 0);
  for (std::uint32_t e = 0; e <= degree; ++e) counts_[stride + e] = 1;
  for (std::uint32_t v = 2; v <= n; ++v) {
    std::uint64_t running = 0;
    for (std::uint32_t e = 0; e <= degree; ++e) {
      // Pascal: count(v, e) = count(v - 1, e) + count(v, e - 1).
      const std::uint64_t prev = counts_[(v - 1) * stride + e];
      if (running > std::numeric_limits<std::uint64_t>::max() - prev) {
        throw Error(ErrorKind::DomainError, "basis too large to enumerate");
      }
      running += prev;
      counts_[v * stride + e] = running;
    }
  }

  const std::uint64_t total = counts_[n * stride + degree];
  if (total > (std::uint64_t{1} << 32)) {
    throw Error(ErrorKind::DomainError, "basis too large to enumerate");
  }
  monomials_.reserve(total);

  std::vector<std::uint32_t> a(n, 0);
  a[0] = degree;
  while (true) {
    monomials_.push_back(Monomial{a});
    // Rightmost non-zero exponent among the first n-1 positions moves one
    // unit to its right neighbour, which also absorbs the tail.
    std::int64_t j = static_cast<std::int64_t>(n) - 2;
    while (j >= 0 && a[j] == 0) --j;
    if (j < 0) break;
    std::uint32_t tail = 0;
    for (std::size_t k = j + 1; k < n; ++k) {
      tail += a[k];
      a[k] = 0;
    }
    --a[j];
    a[j + 1] = tail + 1;
  }
}

std::uint64_t DegreeBasis::count(std::uint32_t vars, std::int64_t degree) const {
  if (degree < 0) return 0;
  return counts_[vars * (std::size_t{degree_} + 1) + static_cast<std::size_t>(degree)];
}

std::size_t DegreeBasis::index_of(std::span<const std::uint32_t> exponents) const {
  if (exponents.size() != n_) {
    throw Error(ErrorKind::IndexOutOfRange, "monomial has the wrong number of variables");
  }
  std::int64_t remaining = degree_;
  std::uint64_t rank = 0;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    const std::int64_t a = exponents[k];
    if (a > remaining) break;
    // Monomials sharing the prefix but with a larger exponent at k.
    rank += count(n_ - static_cast<std::uint32_t>(k), remaining - a - 1);
    remaining -= a;
  }
  std::uint64_t total = 0;
  for (auto e : exponents) total += e;
  if (total != degree_) {
    throw Error(ErrorKind::IndexOutOfRange, "monomial has degree " + std::to_string(total) +
                                                ", basis degree is " + std::to_string(degree_));
  }
  return static_cast<std::size_t>(rank);
}

BigInt dim_graded(std::uint32_t n, std::uint32_t e) {
  require_variables(n);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n) + e - 1, e);
  return out;
}

std::uint64_t dim_graded_u64(std::uint32_t n, std::uint32_t e) {
  const BigInt v = dim_graded(n, e);
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 63) {
    throw Error(ErrorKind::DomainError, "dimension does not fit in a machine word");
  }
  return static_cast<std::uint64_t>(v.get_ui());
}

DegreeBasis monomial_basis(std::uint32_t n, std::uint32_t e) { return DegreeBasis(n, e); }

RingParams rs_params(std::uint32_t n, std::uint32_t d, std::uint32_t dprime) {
  if (d == 0 || dprime == 0) {
    throw Error(ErrorKind::InvalidDegrees, "degrees must be positive");
  }
  RingParams p;
  p.n = n;
  p.d = d;
  p.dprime = dprime;
  p.dim_ddprime = dim_graded(n, d + dprime);
  p.dim_dprime = dim_graded(n, dprime);
  BigInt q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), p.dim_ddprime.get_mpz_t(), p.dim_dprime.get_mpz_t());
  p.r = rem == 0 ? q : BigInt(q + 1);
  p.s = p.dim_ddprime - (p.r - 1) * p.dim_dprime;
  return p;
}

std::vector<BigInt> conjectured_series(std::uint32_t n, std::span<const std::uint32_t> degrees,
                                       std::uint32_t max_deg) {
  require_variables(n);
  std::vector<BigInt> c(std::size_t{max_deg} + 1, 0);
  c[0] = 1;
  for (auto di : degrees) {
    if (di == 0) throw Error(ErrorKind::InvalidDegrees, "generator degrees must be positive");
    for (std::size_t k = max_deg; k >= di; --k) c[k] -= c[k - di];
  }
  // Each division by (1 - t) is a prefix sum.
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::size_t k = 1; k <= max_deg; ++k) c[k] += c[k - 1];
  }
  bool truncated = false;
  for (auto& v : c) {
    if (truncated || v <= 0) {
      truncated = true;
      v = 0;
    }
  }
  return c;
}

}  // namespace froberg::ring
