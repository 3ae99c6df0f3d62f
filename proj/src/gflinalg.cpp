#include "froberg/gflinalg.hpp"

#include <algorithm>
#include <barrier>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "froberg/error.hpp"

namespace froberg::gflinalg {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128{a} * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

// Elimination state for one working copy. Word is wide enough to hold
// p - 1 + (p - 1)^2, so at least one update fits between reductions.
template <typename Word>
class Eliminator {
 public:
  Eliminator(const FFMatrix& m, unsigned threads)
      : Eliminator(m.field().p(), m.rows(), m.cols(), threads,
                   std::vector<Word>(m.data().begin(), m.data().end())) {}

  Eliminator(std::uint64_t p, std::size_t rows, std::size_t cols, unsigned threads, std::vector<Word> storage)
      : p_(p), rows_(rows), cols_(cols), threads_(threads), storage_(std::move(storage)), row_ptr_(rows_) {
    for (std::size_t i = 0; i < rows_; ++i) row_ptr_[i] = storage_.data() + i * cols_;
    const u128 step = u128{p_ - 1} * (p_ - 1);
    const u128 cap = std::numeric_limits<Word>::max();
    // bound after k updates is (p - 1) + k (p - 1)^2
    updates_per_reduction_ = step == 0 ? std::numeric_limits<std::uint64_t>::max()
                                       : static_cast<std::uint64_t>((cap - (p_ - 1)) / step);
  }

  RankProfile run() {
    if (threads_ <= 1 || rows_ * cols_ < kParallelThreshold || rows_ < 2 * threads_) {
      while (advance()) {
        if (has_pivot_) update_rows(rank_ + 1, rows_);
        finish_step();
      }
    } else {
      run_parallel();
    }
    return {rank_, pivots_};
  }

 private:
  static constexpr std::size_t kParallelThreshold = 256 * 256;

  // Finds the next pivot column; false when elimination is finished.
  bool advance() {
    has_pivot_ = false;
    while (col_ < cols_ && rank_ < rows_) {
      const std::size_t c = col_;
      std::size_t found = rows_;
      for (std::size_t i = rank_; i < rows_; ++i) {
        if (row_ptr_[i][c] % p_ != 0) {
          found = i;
          break;
        }
      }
      if (found == rows_) {
        ++col_;
        continue;
      }
      std::swap(row_ptr_[rank_], row_ptr_[found]);
      normalize_pivot_row(c);
      reduce_now_ = pending_updates_ >= updates_per_reduction_;
      if (reduce_now_) pending_updates_ = 0;
      ++pending_updates_;
      has_pivot_ = true;
      return true;
    }
    return false;
  }

  void normalize_pivot_row(std::size_t c) {
    Word* row = row_ptr_[rank_];
    for (std::size_t j = c; j < cols_; ++j) row[j] %= p_;
    const std::uint64_t inv = powmod(row[c], p_ - 2, p_);
    for (std::size_t j = c + 1; j < cols_; ++j) row[j] = static_cast<Word>(std::uint64_t{row[j]} * inv % p_);
    row[c] = 1;
  }

  // Rows [begin, end) lose their entry in the pivot column.
  void update_rows(std::size_t begin, std::size_t end) {
    const std::size_t c = col_;
    const Word* __restrict piv = row_ptr_[rank_];
    for (std::size_t i = begin; i < end; ++i) {
      Word* __restrict row = row_ptr_[i];
      if (reduce_now_) {
        for (std::size_t j = c; j < cols_; ++j) row[j] %= p_;
      }
      const Word f = static_cast<Word>(row[c] % p_);
      if (f == 0) continue;
      const Word mult = static_cast<Word>(p_ - f);
      for (std::size_t j = c + 1; j < cols_; ++j) row[j] += mult * piv[j];
    }
  }

  void finish_step() {
    pivots_.push_back(col_);
    ++rank_;
    ++col_;
  }

  void run_parallel() {
    bool done = false;
    std::barrier sync(static_cast<std::ptrdiff_t>(threads_));
    auto worker = [&](unsigned tid) {
      while (true) {
        if (tid == 0) done = !advance();
        sync.arrive_and_wait();
        if (done) return;
        const std::size_t first = rank_ + 1;
        const std::size_t remaining = rows_ - first;
        const std::size_t block = (remaining + threads_ - 1) / threads_;
        const std::size_t begin = std::min(rows_, first + tid * block);
        const std::size_t end = std::min(rows_, begin + block);
        update_rows(begin, end);
        sync.arrive_and_wait();
        if (tid == 0) finish_step();
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads_; ++t) pool.emplace_back(worker, t);
    worker(0);
  }

  std::uint64_t p_;
  std::size_t rows_;
  std::size_t cols_;
  unsigned threads_;
  std::vector<Word> storage_;
  std::vector<Word*> row_ptr_;
  std::uint64_t updates_per_reduction_ = 0;
  std::uint64_t pending_updates_ = 0;
  bool reduce_now_ = false;
  bool has_pivot_ = false;
  std::size_t rank_ = 0;
  std::size_t col_ = 0;
  std::vector<std::size_t> pivots_;
};

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (v % q == 0) return v == q;
  }
  std::uint64_t d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32)) {
    throw Error(ErrorKind::DomainError, "modulus must be below 2^32");
  }
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  return static_cast<std::uint32_t>(powmod(a, e, p_));
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw Error(ErrorKind::DomainError, "zero has no inverse");
  return pow(a, p_ - 2);
}

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::at(std::uint64_t counter) const {
  return mix(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t CounterRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::DomainError, "empty sampling range");
  // 2^64 mod bound leading values would bias the result.
  const std::uint64_t skew = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  while (true) {
    const std::uint64_t x = next();
    if (skew == 0 || x < 0 - skew) return x % bound;
  }
}

FFMatrix::FFMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FFMatrix FFMatrix::transpose() const {
  FFMatrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
  }
  return out;
}

FFMatrix multiply(const FFMatrix& a, const FFMatrix& b) {
  if (!(a.field() == b.field()) || a.cols() != b.rows()) {
    throw Error(ErrorKind::DomainError, "matrices are not conformable");
  }
  const std::uint64_t p = a.field().p();
  FFMatrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = (acc + std::uint64_t{a.at(i, k)} * b.at(k, j)) % p;
      out.set(i, j, acc);
    }
  }
  return out;
}

unsigned worker_count() {
  unsigned requested = 0;
  if (const char* env = std::getenv("FROBERG_THREADS")) {
    try {
      requested = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      requested = 0;
    }
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

RankProfile rank_profile(const FFMatrix& m, unsigned threads) {
  if (threads == 0) threads = worker_count();
  if (m.rows() == 0 || m.cols() == 0) return {};
  const std::uint64_t p = m.field().p();
  if (u128{p - 1} * (p - 1) + (p - 1) <= std::numeric_limits<std::uint32_t>::max()) {
    return Eliminator<std::uint32_t>(m, threads).run();
  }
  return Eliminator<std::uint64_t>(m, threads).run();
}

RankProfile rank_profile(FFMatrix&& m, unsigned threads) {
  if (threads == 0) threads = worker_count();
  if (m.rows() == 0 || m.cols() == 0) return {};
  const std::uint64_t p = m.field().p();
  if (u128{p - 1} * (p - 1) + (p - 1) <= std::numeric_limits<std::uint32_t>::max()) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    return Eliminator<std::uint32_t>(p, rows, cols, threads, std::move(m).take_data()).run();
  }
  return Eliminator<std::uint64_t>(m, threads).run();
}

FFMatrix random_matrix(PrimeField field, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  FFMatrix out(field, rows, cols);
  CounterRng rng(seed);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, rng.uniform_below(field.p()));
  }
  return out;
}

}  // namespace froberg::gflinalg
