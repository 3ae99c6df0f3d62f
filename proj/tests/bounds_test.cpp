#include "froberg/bounds.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <tuple>
#include <random>

#include "froberg/error.hpp"
#include "froberg/gpoly.hpp"
#include "froberg/verify.hpp"
#include "oracles.hpp"

using namespace froberg;
using namespace froberg::bounds;
using exactpoly::make_rational;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

struct Shape {
  int r;
  int D;
  int s;
};

struct Cell {
  int rank;
  bool last_row_zero;
  int tail_rank;  // rank of the last D - s columns
};

int rank_mod(std::vector<std::vector<long>> m, long p) {
  int rank = 0;
  const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int i = rank; i < rows; ++i) {
      if (m[i][c] % p != 0) piv = i;
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    long inv = 1;
    while (m[rank][c] * inv % p != 1) ++inv;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const long f = m[i][c] * inv % p;
      for (int k = 0; k < cols; ++k) m[i][k] = ((m[i][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Point counts over F_p of the affine space of P (rows 1..r-1 full, last
// row supported on the first s columns), tallied by cell.
std::map<std::tuple<int, bool, int>, long> count_cells(const Shape& sh, long p) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i + 1 < sh.r; ++i) {
    for (int j = 0; j < sh.D; ++j) slots.push_back({i, j});
  }
  for (int j = 0; j < sh.s; ++j) slots.push_back({sh.r - 1, j});
  std::vector<long> digits(slots.size(), 0);
  std::map<std::tuple<int, bool, int>, long> tally;
  while (true) {
    std::vector<std::vector<long>> m(sh.r, std::vector<long>(sh.D, 0));
    for (std::size_t k = 0; k < slots.size(); ++k) m[slots[k].first][slots[k].second] = digits[k];
    std::vector<std::vector<long>> tail(sh.r, std::vector<long>(sh.D - sh.s, 0));
    for (int i = 0; i < sh.r; ++i) {
      for (int j = sh.s; j < sh.D; ++j) tail[i][j - sh.s] = m[i][j];
    }
    bool zero_last = true;
    for (long v : m[sh.r - 1]) zero_last = zero_last && v == 0;
    ++tally[{rank_mod(m, p), zero_last, sh.D == sh.s ? 0 : rank_mod(tail, p)}];
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return tally;
}

// Degree and leading coefficient of the polynomial through (q_i, c_i),
// after checking it also predicts the last point.
std::pair<int, mpq_class> count_polynomial(const std::vector<long>& qs, const std::vector<long>& counts) {
  const std::size_t k = qs.size() - 1;
  // Newton divided differences on the first k points.
  std::vector<mpq_class> dd(counts.begin(), counts.begin() + k);
  for (std::size_t level = 1; level < k; ++level) {
    for (std::size_t i = k - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / mpq_class(qs[i] - qs[i - level]);
    }
  }
  mpq_class at = dd[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) at = at * (qs[k] - qs[i]) + dd[i];
  EXPECT_EQ(at, counts[k]) << "counts are not a polynomial of degree < " << k;
  // Expand to monomial coefficients.
  std::vector<mpq_class> poly{dd[k - 1]};
  for (std::size_t i = k - 1; i-- > 0;) {
    std::vector<mpq_class> next(poly.size() + 1, 0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * qs[i];
    }
    next[0] += dd[i];
    poly = next;
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.empty()) return {-1, 0};
  return {static_cast<int>(poly.size()) - 1, poly.back()};
}

struct ConeCounts {
  Shape shape;
  std::vector<long> qs{2, 3, 5, 7, 11, 13, 17};
  std::vector<std::map<std::tuple<int, bool, int>, long>> tallies;

  explicit ConeCounts(Shape sh) : shape(sh) {
    for (long p : qs) tallies.push_back(count_cells(sh, p));
  }

  // Projective dimension of the cone of cells passing `keep`, or -1 when it
  // is empty. The count is a polynomial of degree dim + 1 whose leading
  // coefficient is the number of top-dimensional components.
  long projective_dim(const std::function<bool(const Cell&)>& keep, long components = 1) const {
    std::vector<long> counts;
    for (const auto& tally : tallies) {
      long c = 0;
      for (const auto& [key, n] : tally) {
        if (keep({std::get<0>(key), std::get<1>(key), std::get<2>(key)})) c += n;
      }
      counts.push_back(c);
    }
    const auto [deg, lead] = count_polynomial(qs, counts);
    if (deg < 0) return -1;
    EXPECT_EQ(lead, components);
    return deg - 1;
  }
};

}  // namespace

TEST(MacaulayNextUpper, Examples) {
  EXPECT_EQ(macaulay_next_upper(3, 2), RatInterval::point(q(4)));
  EXPECT_EQ(macaulay_next_upper(1, 1), RatInterval::point(q(1)));
}

TEST(MacaulayNextUpper, FullRingAttainsBound) {
  for (std::uint32_t n = 1; n <= 10; ++n) {
    for (std::uint32_t j = 1; j <= 8; ++j) {
      const auto up = macaulay_next_upper(ring::dim_graded(n, j), j);
      EXPECT_EQ(up, RatInterval::point(Rational(ring::dim_graded(n, j + 1)))) << n << " " << j;
    }
  }
}

TEST(MacaulayNextUpper, ContainsTrueValueForNonIntegerRoot) {
  // C(x, 2) = 5 has x = (1 + sqrt(41)) / 2; C(x+1, 3) = x(x+1)(x-1)/6.
  const auto up = macaulay_next_upper(5, 2);
  EXPECT_LE(up.width(), q(1, 1000000));
  const double x = (1 + std::sqrt(41.0)) / 2;
  const double v = x * (x + 1) * (x - 1) / 6;
  EXPECT_LE(up.lo.get_d(), v + 1e-9);
  EXPECT_GE(up.hi.get_d(), v - 1e-9);
}

TEST(MacaulayIteratedUpper, Examples) {
  EXPECT_EQ(macaulay_iterated_upper(0, 2, 3), RatInterval::point(q(0)));
  EXPECT_EQ(macaulay_iterated_upper(1, 2, 3), RatInterval::point(q(1)));
  // C(x, 2) = 10 gives x = 5 and C(8, 5) = 56 = dim R_5 for n = 4.
  EXPECT_EQ(macaulay_iterated_upper(10, 2, 3), RatInterval::point(q(56)));
  EXPECT_EQ(ring::dim_graded(4, 5), 56);
}

TEST(MacaulayNextUpper, BoundsActualHilbertFunctions) {
  std::mt19937_64 rng(101);
  const verify::PrimeField field(101);
  for (int iter = 0; iter < 40; ++iter) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 3);
    std::vector<verify::FormSet> gens;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) {
      const std::uint32_t deg = 1 + static_cast<std::uint32_t>(rng() % 3);
      gens.push_back(verify::sample_forms(n, deg, 1, field, rng()));
    }
    const auto h = verify::hilbert_function(gens, 7);
    for (std::uint32_t j = 1; j + 1 < h.size(); ++j) {
      const auto up = macaulay_next_upper(ring::BigInt(static_cast<unsigned long>(h[j])), j);
      EXPECT_LE(Rational(static_cast<unsigned long>(h[j + 1])), up.hi) << "iter " << iter << " degree " << j;
    }
  }
}

TEST(DimPartition, TZero) {
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (std::uint32_t d = 2; d <= 5; ++d) {
      for (std::uint32_t dp = 1; dp < d; ++dp) {
        const auto rp = ring::rs_params(n, d, dp);
        const bool square = rp.r == rp.dim_dprime && rp.s == rp.dim_dprime;
        if (rp.r <= rp.dim_dprime && !square) {
          EXPECT_THROW(dim_partition(n, d, dp, rp.r, rp.s, 0, 0), Error);
          continue;
        }
        const auto pd = dim_partition(n, d, dp, rp.r, rp.s, 0, 0);
        EXPECT_EQ(pd.dim_Pt, rp.dim_ddprime - 1);
        EXPECT_EQ(pd.square_case, square);
        if (!square) EXPECT_EQ(*pd.dim_Yt, (rp.r - 1) * rp.dim_dprime - 1);
      }
    }
  }
}

TEST(DimPartition, PtIsLargestStratum) {
  for (std::uint32_t n = 2; n <= 4; ++n) {
    for (std::uint32_t dp = 1; dp <= 2; ++dp) {
      const ring::BigInt D = ring::dim_graded(n, dp);
      for (ring::BigInt r = D + 1; r <= D + 4; ++r) {
        for (ring::BigInt s = 1; s <= D; ++s) {
          for (ring::BigInt t = 0; t < D; ++t) {
            const auto best = dim_partition(n, dp + 1, dp, r, s, t, 0);
            for (ring::BigInt h = 0; h <= best.h_max; ++h) {
              const auto pd = dim_partition(n, dp + 1, dp, r, s, t, h);
              if (pd.dim_Xth) EXPECT_LE(*pd.dim_Xth, *pd.dim_Xth_best);
            }
            EXPECT_EQ(best.dim_Pt, std::max(*best.dim_Yt, *best.dim_Xth_best));
          }
        }
      }
    }
  }
}

TEST(DimPartition, Synthetic) {
  // D = dim R_1 = 2 for n = 2; r = 3.
  const auto pd = dim_partition(2, 2, 1, 3, 2, 1, 0);
  EXPECT_EQ(*pd.dim_Yt, 2);
}

TEST(DimPartition, MatchesPointCounts) {
  // n = 2, d' = 1 gives D = 2; r = 3, s = 1.
  const ConeCounts cone(Shape{3, 2, 1});
  for (int t = 0; t <= 1; ++t) {
    const auto pd = dim_partition(2, 2, 1, 3, 1, t, 0);
    const int rank = 2 - t;
    EXPECT_EQ(*pd.dim_Yt, cone.projective_dim([&](const Cell& c) { return c.rank == rank && c.last_row_zero; }));
    // P_1 has two top components, Y_1 and X_{1,0}, both of dimension 2.
    EXPECT_EQ(pd.dim_Pt, cone.projective_dim([&](const Cell& c) { return c.rank == rank; }, t == 1 ? 2 : 1));
    for (long h = 0; h <= pd.h_max.get_si(); ++h) {
      const auto ph = dim_partition(2, 2, 1, 3, 1, t, h);
      const long counted = cone.projective_dim([&](const Cell& c) {
        return c.rank == rank && !c.last_row_zero && c.tail_rank == h;
      });
      if (ph.dim_Xth) {
        EXPECT_EQ(*ph.dim_Xth, counted) << "t=" << t << " h=" << h;
      } else {
        EXPECT_EQ(counted, -1) << "t=" << t << " h=" << h;
      }
    }
  }
}

TEST(DimPartition, EmptyStrataBelowRankFloor) {
  // D = 2, s = 1, t = 0: rank 2 needs the single tail column.
  EXPECT_FALSE(dim_partition(2, 2, 1, 3, 1, 0, 0).dim_Xth.has_value());
  EXPECT_TRUE(dim_partition(2, 2, 1, 3, 1, 0, 1).dim_Xth.has_value());
  // The maximizing h is never below the floor.
  for (std::uint32_t n = 2; n <= 4; ++n) {
    const ring::BigInt D = ring::dim_graded(n, 1);
    for (ring::BigInt s = 1; s <= D; ++s) {
      for (ring::BigInt t = 0; t < D; ++t) EXPECT_GE(dim_partition(n, 2, 1, D + 1, s, t, 0).h_max, D - t - s);
    }
  }
}

TEST(DimPartition, Errors) {
  EXPECT_THROW(dim_partition(2, 2, 1, 2, 1, 0, 0), Error);  // r <= D, not square
  EXPECT_THROW(dim_partition(2, 2, 1, 3, 1, 2, 0), Error);  // t >= D
  EXPECT_THROW(dim_partition(2, 2, 1, 3, 1, 0, 2), Error);  // h > h_max
  EXPECT_THROW(dim_partition(2, 2, 2, 3, 1, 0, 0), Error);  // d' >= d
}

TEST(AuditChain, Examples) {
  const auto a = audit_chain(3, 5, 2);
  EXPECT_TRUE(a.concludes);
  EXPECT_EQ(a.rows.size(), 6u);
  EXPECT_TRUE(audit_chain(22, 3, 2).concludes);
  EXPECT_FALSE(audit_chain(21, 3, 2).concludes);
  EXPECT_THROW(audit_chain(5, 2, 2), Error);
}

TEST(AuditChain, RequiresEnoughForms) {
  // n = 2, d = 5, d' = 2: r = 3 = D but s = 2, so the rows alone prove nothing.
  const auto a = audit_chain(2, 5, 2);
  EXPECT_FALSE(a.hypothesis);
  EXPECT_FALSE(a.concludes);
  bool all_rows = true;
  for (const auto& row : a.rows) all_rows = all_rows && row.satisfied;
  EXPECT_TRUE(all_rows);
}

TEST(AuditChain, DegenerateFirstRow) {
  const auto a = audit_chain(4, 3, 2);
  ASSERT_FALSE(a.rows.empty());
  EXPECT_EQ(a.rows[0].t, 0);
  EXPECT_EQ(a.rows[0].x, RatInterval::point(q(1)));
}

TEST(AuditChain, ImpliesNonnegativeG) {
  for (std::uint32_t d = 2; d <= 6; ++d) {
    for (std::uint32_t dp = 1; dp < d && dp <= 3; ++dp) {
      for (std::uint32_t n = 2; n <= 12; ++n) {
        const auto a = audit_chain(n, d, dp);
        const auto c = gpoly::certify_bound(d, dp, n);
        EXPECT_EQ(a.hypothesis, c.g_at_nminus1 >= 0);
        if (a.concludes) EXPECT_GE(c.g_at_nminus1, 0) << n << " " << d << " " << dp;
        // Where the certificate holds the audit should conclude too; the
        // audit is the finer instrument, so any divergence is reported here.
        EXPECT_EQ(a.concludes, c.holds) << "divergence at n=" << n << " d=" << d << " d'=" << dp;
      }
    }
  }
}
