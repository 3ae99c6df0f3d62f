#pragma once

// Prime fields F_p with p < 2^32, dense matrices over them, and
// rank / pivot-column computation by Gaussian elimination.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace froberg::gflinalg {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t v);

class PrimeField {
 public:
  /// Throws NotPrime for composite p (or p < 2) and DomainError for p >= 2^32.
  explicit PrimeField(std::uint64_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p_ - b);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// Throws DomainError for a = 0.
  std::uint32_t inv(std::uint32_t a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// Counter-based generator: output k is the SplitMix64 finalizer applied to
/// seed + (k + 1) * 0x9E3779B97F4A7C15, i.e. the SplitMix64 stream for
/// `seed`. Any draw can be recomputed from (seed, k) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t at(std::uint64_t counter) const;
  std::uint64_t next() { return at(counter_++); }
  std::uint64_t counter() const { return counter_; }

  /// Uniform on [0, bound) by rejection sampling; bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Dense row-major matrix with entries in [0, p).
class FFMatrix {
 public:
  FFMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Stores v mod p.
  void set(std::size_t i, std::size_t j, std::uint64_t v) {
    data_[i * cols_ + j] = static_cast<std::uint32_t>(v % field_.p());
  }
  std::span<std::uint32_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<std::uint32_t>& data() const { return data_; }
  std::vector<std::uint32_t> take_data() && { return std::move(data_); }

  FFMatrix transpose() const;
  bool operator==(const FFMatrix&) const = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

FFMatrix multiply(const FFMatrix& a, const FFMatrix& b);

struct RankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // lexicographically first, ascending

  bool operator==(const RankProfile&) const = default;
};

/// Worker count from FROBERG_THREADS; 0 or unset means hardware concurrency.
unsigned worker_count();

/// Row echelon reduction with lazy modular reduction. The result does not
/// depend on `threads` (0 = worker_count()).
RankProfile rank_profile(const FFMatrix& m, unsigned threads = 0);
/// Same, reusing the matrix storage as the working copy when possible.
RankProfile rank_profile(FFMatrix&& m, unsigned threads = 0);

/// Entries i.i.d. uniform on [0, p), drawn row-major from CounterRng(seed).
FFMatrix random_matrix(PrimeField field, std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace froberg::gflinalg
