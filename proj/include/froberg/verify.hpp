#pragma once

// Randomized verification over F_p. A single instance of forms whose product
// matrix has full rank certifies the generic statement, since full rank is an
// open condition and a non-zero determinant mod p is non-zero over Z.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "froberg/gflinalg.hpp"
#include "froberg/ring.hpp"

namespace froberg::verify {

using gflinalg::CounterRng;
using gflinalg::FFMatrix;
using gflinalg::PrimeField;

/// Forms of one degree as coefficient vectors over monomial_basis(n, degree).
struct FormSet {
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  PrimeField field{2};
  std::vector<std::vector<std::uint32_t>> forms;

  bool operator==(const FormSet&) const = default;
};

/// Coefficients drawn in order (form by form, monomial by monomial) from
/// CounterRng(seed); a longer request extends a shorter one.
FormSet sample_forms(std::uint32_t n, std::uint32_t degree, std::size_t count, PrimeField field,
                     std::uint64_t seed);
FormSet sample_forms(std::uint32_t n, std::uint32_t degree, std::size_t count, PrimeField field,
                     CounterRng& rng);

/// Same forms viewed in a ring with more variables.
FormSet embed(const FormSet& forms, std::uint32_t n);

struct Selection {
  enum class Kind { GCase, All };
  Kind kind = Kind::All;
  std::size_t r = 0;
  std::size_t s = 0;

  /// {f_i m_j}_{i<r} together with f_r m_1 .. f_r m_s.
  static Selection gcase(std::size_t r, std::size_t s) { return {Kind::GCase, r, s}; }
  /// Every product f_i m_j.
  static Selection all() { return {Kind::All, 0, 0}; }
};

/// Rows are products f_i * m_j expanded over monomial_basis(n, d + d'), with
/// m_j running over monomial_basis(n, d') in its canonical order.
FFMatrix build_product_matrix(const FormSet& forms, std::uint32_t dprime, Selection selection);

enum class Outcome { Verified, Inconclusive, Error };
std::string_view to_string(Outcome o);

struct StageReport {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;

  bool full_rank() const { return rank == rows && rank == cols; }
  bool operator==(const StageReport&) const = default;
};

struct VerifyReport {
  ring::RingParams params;
  std::uint32_t prime = 0;
  std::uint64_t seed = 0;
  std::uint32_t trials = 0;       // allowed
  std::uint32_t trials_used = 0;
  std::uint32_t failures = 0;     // trials without full rank
  Outcome outcome = Outcome::Inconclusive;
  std::size_t rows = 0;           // final matrix of the last trial
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::vector<StageReport> stages;  // last trial, in order
  std::int64_t elapsed_ms = 0;
};

/// Tries up to `trials` random form sets; verified on the first square,
/// invertible gcase matrix. Never reports a refutation.
VerifyReport check_gcase(std::uint32_t n, std::uint32_t d, std::uint32_t dprime, std::uint64_t p,
                         std::uint64_t seed, std::uint32_t trials);

/// Parameters of the reduction to a subring in the first n' variables.
struct SplitPlan {
  std::uint32_t n = 0;
  std::uint32_t nprime = 0;
  std::uint32_t d = 0;
  std::uint32_t dprime = 0;
  std::uint64_t l = 0;  // dim R'_{d+d'} / dim R'_{d'}
  std::uint32_t p = 0;
  std::uint64_t sub_dim_dprime = 0;   // dim R'_{d'}
  std::uint64_t sub_dim_ddprime = 0;  // dim R'_{d+d'}
  std::uint64_t dim_dprime = 0;       // dim R_{d'}
  std::uint64_t dim_ddprime = 0;      // dim R_{d+d'}
  std::uint64_t quotient_dim = 0;     // dim R_{d+d'} - dim R'_{d+d'}
  std::uint64_t r = 0;
  std::uint64_t s = 0;

  /// l (D - D') + (r - 1 - l) D + s; always equals quotient_dim.
  std::uint64_t stage2_rows() const;
};

SplitPlan split_plan(std::uint32_t n, std::uint32_t d, std::uint32_t dprime, std::uint32_t nprime,
                     std::uint64_t p);

/// Stage 1: l forms in R'_d times the degree-d' monomials of R' must give a
/// basis of R'_{d+d'}. Stage 2: those forms plus r - l forms in R_d must give
/// a basis of R_{d+d'} / R'_{d+d'} (forms 1..l times the monomials using a
/// variable beyond x_{n'}, forms l+1..r-1 times all of R_{d'}, form r times
/// the first s). Verified when both hold in the same trial.
VerifyReport check_split(const SplitPlan& plan, std::uint64_t seed, std::uint32_t trials);

struct Table1Row {
  std::uint32_t n;
  std::uint32_t nprime;
  std::uint64_t l;
  std::uint32_t p;
};

/// The (n', p) choices for d = 3, d' = 2 and n = 16..21, with their l.
std::span<const Table1Row> table1_rows();

/// Throws UnknownRow outside n = 16..21.
SplitPlan table1_plan(std::uint32_t row_n);

VerifyReport reproduce_table1(std::uint32_t row_n, std::uint64_t seed, std::uint32_t trials = 3);

/// Hilbert function of R / (generators) in degrees 0..max_deg, by rank of the
/// degree-e products. All generator sets must share n and the field.
std::vector<std::uint64_t> hilbert_function(std::span<const FormSet> generators, std::uint32_t max_deg);

}  // namespace froberg::verify
