#include "froberg/verify.hpp"

#include <array>
#include <chrono>
#include <optional>

#include "froberg/error.hpp"

namespace froberg::verify {

namespace {

using ring::DegreeBasis;

std::uint64_t to_u64(const ring::BigInt& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 63) {
    throw Error(ErrorKind::DomainError, "value does not fit in a machine word");
  }
  return v.get_ui();
}

// product_index[u * multipliers.size() + j] = position of basis_u * mult_j in target.
std::vector<std::uint32_t> product_table(const DegreeBasis& forms_basis, const DegreeBasis& multipliers,
                                         const DegreeBasis& target) {
  std::vector<std::uint32_t> table(forms_basis.size() * multipliers.size());
  std::vector<std::uint32_t> exps(target.variables());
  for (std::size_t u = 0; u < forms_basis.size(); ++u) {
    const auto& a = forms_basis[u].exponents;
    for (std::size_t j = 0; j < multipliers.size(); ++j) {
      const auto& b = multipliers[j].exponents;
      for (std::size_t k = 0; k < exps.size(); ++k) exps[k] = a[k] + b[k];
      table[u * multipliers.size() + j] = static_cast<std::uint32_t>(target.index_of(exps));
    }
  }
  return table;
}

struct ProductRow {
  std::size_t form;
  std::size_t multiplier;
};

constexpr std::uint32_t kDropped = ~std::uint32_t{0};

// Writes the requested products as rows of `out`, starting at `first_row`.
// column_of maps target-basis positions to matrix columns (kDropped = omit);
// an empty map is the identity.
void write_products(FFMatrix& out, std::size_t first_row, const FormSet& forms, const DegreeBasis& multipliers,
                    const DegreeBasis& target, std::span<const ProductRow> rows,
                    std::span<const std::uint32_t> column_of) {
  const DegreeBasis forms_basis(forms.n, forms.degree);
  const auto table = product_table(forms_basis, multipliers, target);
  const std::size_t width = multipliers.size();
  std::size_t row = first_row;
  for (const auto& spec : rows) {
    const auto& coeffs = forms.forms[spec.form];
    for (std::size_t u = 0; u < coeffs.size(); ++u) {
      if (coeffs[u] == 0) continue;
      std::uint32_t col = table[u * width + spec.multiplier];
      if (!column_of.empty()) col = column_of[col];
      if (col != kDropped) out.set(row, col, coeffs[u]);
    }
    ++row;
  }
}

std::int64_t millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

bool uses_outer_variable(const ring::Monomial& m, std::uint32_t nprime) {
  for (std::size_t k = nprime; k < m.exponents.size(); ++k) {
    if (m.exponents[k] != 0) return true;
  }
  return false;
}

StageReport run_stage(std::string name, FFMatrix&& m) {
  StageReport st{std::move(name), m.rows(), m.cols(), 0};
  st.rank = gflinalg::rank_profile(std::move(m)).rank;
  return st;
}

constexpr std::array<Table1Row, 6> kTable1{{
    {16, 13, 68, 11},
    {17, 13, 68, 11},
    {18, 16, 114, 11},
    {19, 17, 133, 5},
    {20, 18, 154, 5},
    {21, 18, 154, 5},
}};

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "verified";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::Error: return "error";
  }
  return "unknown";
}

FormSet sample_forms(std::uint32_t n, std::uint32_t degree, std::size_t count, PrimeField field,
                     CounterRng& rng) {
  if (count < 1) throw Error(ErrorKind::DomainError, "need at least one form");
  const std::uint64_t width = ring::dim_graded_u64(n, degree);
  FormSet out{n, degree, field, {}};
  out.forms.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::uint32_t> coeffs(width);
    for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng.uniform_below(field.p()));
    out.forms.push_back(std::move(coeffs));
  }
  return out;
}

FormSet sample_forms(std::uint32_t n, std::uint32_t degree, std::size_t count, PrimeField field,
                     std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_forms(n, degree, count, field, rng);
}

FormSet embed(const FormSet& forms, std::uint32_t n) {
  if (n < forms.n) throw Error(ErrorKind::DomainError, "cannot embed into fewer variables");
  const DegreeBasis from(forms.n, forms.degree);
  const DegreeBasis to(n, forms.degree);
  std::vector<std::size_t> position(from.size());
  std::vector<std::uint32_t> exps(n, 0);
  for (std::size_t u = 0; u < from.size(); ++u) {
    std::copy(from[u].exponents.begin(), from[u].exponents.end(), exps.begin());
    position[u] = to.index_of(exps);
  }
  FormSet out{n, forms.degree, forms.field, {}};
  for (const auto& f : forms.forms) {
    std::vector<std::uint32_t> g(to.size(), 0);
    for (std::size_t u = 0; u < f.size(); ++u) g[position[u]] = f[u];
    out.forms.push_back(std::move(g));
  }
  return out;
}

FFMatrix build_product_matrix(const FormSet& forms, std::uint32_t dprime, Selection selection) {
  require_degree_pair(forms.degree, dprime);
  const DegreeBasis multipliers(forms.n, dprime);
  const DegreeBasis target(forms.n, forms.degree + dprime);
  const std::size_t dim = multipliers.size();

  std::vector<ProductRow> rows;
  if (selection.kind == Selection::Kind::GCase) {
    if (forms.forms.size() != selection.r || selection.r == 0 || selection.s < 1 || selection.s > dim) {
      throw Error(ErrorKind::SelectionMismatch, "gcase(r, s) needs exactly r forms and 1 <= s <= dim R_{d'}");
    }
    for (std::size_t i = 0; i + 1 < selection.r; ++i) {
      for (std::size_t j = 0; j < dim; ++j) rows.push_back({i, j});
    }
    for (std::size_t j = 0; j < selection.s; ++j) rows.push_back({selection.r - 1, j});
  } else {
    for (std::size_t i = 0; i < forms.forms.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) rows.push_back({i, j});
    }
  }
  FFMatrix out(forms.field, rows.size(), target.size());
  write_products(out, 0, forms, multipliers, target, rows, {});
  return out;
}

VerifyReport check_gcase(std::uint32_t n, std::uint32_t d, std::uint32_t dprime, std::uint64_t p,
                         std::uint64_t seed, std::uint32_t trials) {
  const auto start = std::chrono::steady_clock::now();
  require_degree_pair(d, dprime);
  if (trials < 1) throw Error(ErrorKind::DomainError, "need at least one trial");
  const PrimeField field(p);

  VerifyReport rep;
  rep.params = ring::rs_params(n, d, dprime);
  rep.prime = field.p();
  rep.seed = seed;
  rep.trials = trials;
  const std::size_t r = to_u64(rep.params.r);
  const std::size_t s = to_u64(rep.params.s);

  CounterRng rng(seed);
  for (std::uint32_t t = 0; t < trials; ++t) {
    const FormSet forms = sample_forms(n, d, r, field, rng);
    const StageReport st = run_stage("gcase", build_product_matrix(forms, dprime, Selection::gcase(r, s)));
    ++rep.trials_used;
    rep.rows = st.rows;
    rep.cols = st.cols;
    rep.rank = st.rank;
    rep.stages = {st};
    if (st.full_rank()) {
      rep.outcome = Outcome::Verified;
      break;
    }
    ++rep.failures;
  }
  rep.elapsed_ms = millis_since(start);
  return rep;
}

std::uint64_t SplitPlan::stage2_rows() const {
  return l * (dim_dprime - sub_dim_dprime) + (r - 1 - l) * dim_dprime + s;
}

SplitPlan split_plan(std::uint32_t n, std::uint32_t d, std::uint32_t dprime, std::uint32_t nprime,
                     std::uint64_t p) {
  require_degree_pair(d, dprime);
  if (nprime < 1 || nprime >= n) throw Error(ErrorKind::DomainError, "need 1 <= n' < n");
  const PrimeField field(p);

  SplitPlan plan;
  plan.n = n;
  plan.nprime = nprime;
  plan.d = d;
  plan.dprime = dprime;
  plan.p = field.p();
  plan.sub_dim_dprime = ring::dim_graded_u64(nprime, dprime);
  plan.sub_dim_ddprime = ring::dim_graded_u64(nprime, d + dprime);
  if (plan.sub_dim_ddprime % plan.sub_dim_dprime != 0) {
    throw Error(ErrorKind::NotDivisible,
                "dim R'_{d'} = " + std::to_string(plan.sub_dim_dprime) + " does not divide dim R'_{d+d'} = " +
                    std::to_string(plan.sub_dim_ddprime) + " for n' = " + std::to_string(nprime));
  }
  plan.l = plan.sub_dim_ddprime / plan.sub_dim_dprime;
  plan.dim_dprime = ring::dim_graded_u64(n, dprime);
  plan.dim_ddprime = ring::dim_graded_u64(n, d + dprime);
  plan.quotient_dim = plan.dim_ddprime - plan.sub_dim_ddprime;
  const ring::RingParams rp = ring::rs_params(n, d, dprime);
  plan.r = to_u64(rp.r);
  plan.s = to_u64(rp.s);
  if (plan.l + 1 > plan.r) {
    throw Error(ErrorKind::HypothesisViolation, "the subring needs l = " + std::to_string(plan.l) +
                                                    " forms but r = " + std::to_string(plan.r));
  }
  return plan;
}

VerifyReport check_split(const SplitPlan& plan, std::uint64_t seed, std::uint32_t trials) {
  const auto start = std::chrono::steady_clock::now();
  if (trials < 1) throw Error(ErrorKind::DomainError, "need at least one trial");
  const PrimeField field(plan.p);

  VerifyReport rep;
  rep.params = ring::rs_params(plan.n, plan.d, plan.dprime);
  rep.prime = field.p();
  rep.seed = seed;
  rep.trials = trials;

  const DegreeBasis sub_mult(plan.nprime, plan.dprime);
  const DegreeBasis sub_target(plan.nprime, plan.d + plan.dprime);
  const DegreeBasis mult(plan.n, plan.dprime);
  const DegreeBasis target(plan.n, plan.d + plan.dprime);

  // Stage 1 rows: every p_i * m'_j.
  std::vector<ProductRow> stage1_rows;
  for (std::size_t i = 0; i < plan.l; ++i) {
    for (std::size_t j = 0; j < sub_mult.size(); ++j) stage1_rows.push_back({i, j});
  }

  // Stage 2 rows and the projection onto R_{d+d'} / R'_{d+d'}.
  std::vector<ProductRow> stage2_rows;
  std::vector<std::size_t> outer;  // m'' positions in the canonical R_{d'} basis
  for (std::size_t j = 0; j < mult.size(); ++j) {
    if (uses_outer_variable(mult[j], plan.nprime)) outer.push_back(j);
  }
  for (std::size_t i = 0; i < plan.l; ++i) {
    for (auto j : outer) stage2_rows.push_back({i, j});
  }
  for (std::size_t i = plan.l; i + 1 < plan.r; ++i) {
    for (std::size_t j = 0; j < mult.size(); ++j) stage2_rows.push_back({i, j});
  }
  for (std::size_t j = 0; j < plan.s; ++j) stage2_rows.push_back({plan.r - 1, j});

  std::vector<std::uint32_t> column_of(target.size(), kDropped);
  std::uint32_t next = 0;
  for (std::size_t k = 0; k < target.size(); ++k) {
    if (uses_outer_variable(target[k], plan.nprime)) column_of[k] = next++;
  }
  if (next != plan.quotient_dim || stage2_rows.size() != plan.stage2_rows()) {
    throw Error(ErrorKind::DomainError, "split plan is inconsistent with the monomial bases");
  }

  CounterRng rng(seed);
  for (std::uint32_t t = 0; t < trials; ++t) {
    // Both stages always draw their forms so the stream does not depend on
    // the outcome of stage 1.
    const FormSet sub_forms = sample_forms(plan.nprime, plan.d, plan.l, field, rng);
    FormSet rest = sample_forms(plan.n, plan.d, plan.r - plan.l, field, rng);

    FFMatrix m1(field, stage1_rows.size(), sub_target.size());
    write_products(m1, 0, sub_forms, sub_mult, sub_target, stage1_rows, {});
    const StageReport st1 = run_stage("subring", std::move(m1));

    FormSet all = embed(sub_forms, plan.n);
    for (auto& f : rest.forms) all.forms.push_back(std::move(f));
    FFMatrix m2(field, stage2_rows.size(), plan.quotient_dim);
    write_products(m2, 0, all, mult, target, stage2_rows, column_of);
    const StageReport st2 = run_stage("quotient", std::move(m2));

    ++rep.trials_used;
    rep.rows = st2.rows;
    rep.cols = st2.cols;
    rep.rank = st2.rank;
    rep.stages = {st1, st2};
    if (st1.full_rank() && st2.full_rank()) {
      rep.outcome = Outcome::Verified;
      break;
    }
    ++rep.failures;
  }
  rep.elapsed_ms = millis_since(start);
  return rep;
}

std::span<const Table1Row> table1_rows() { return kTable1; }

SplitPlan table1_plan(std::uint32_t row_n) {
  for (const auto& row : kTable1) {
    if (row.n == row_n) return split_plan(row.n, 3, 2, row.nprime, row.p);
  }
  throw Error(ErrorKind::UnknownRow, "no table row for n = " + std::to_string(row_n) + " (expected 16..21)");
}

VerifyReport reproduce_table1(std::uint32_t row_n, std::uint64_t seed, std::uint32_t trials) {
  const SplitPlan plan = table1_plan(row_n);
  for (const auto& row : kTable1) {
    if (row.n == row_n && row.l != plan.l) {
      throw Error(ErrorKind::NotDivisible, "computed l = " + std::to_string(plan.l) +
                                               " disagrees with the table value " + std::to_string(row.l));
    }
  }
  return check_split(plan, seed, trials);
}

std::vector<std::uint64_t> hilbert_function(std::span<const FormSet> generators, std::uint32_t max_deg) {
  if (generators.empty()) throw Error(ErrorKind::DomainError, "need at least one generator set");
  const std::uint32_t n = generators.front().n;
  const PrimeField field = generators.front().field;
  for (const auto& g : generators) {
    if (g.n != n || !(g.field == field)) {
      throw Error(ErrorKind::SelectionMismatch, "generator sets must share n and the field");
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(max_deg + 1);
  for (std::uint32_t e = 0; e <= max_deg; ++e) {
    const DegreeBasis target(n, e);
    std::size_t row_count = 0;
    for (const auto& g : generators) {
      if (g.degree <= e) row_count += g.forms.size() * ring::dim_graded_u64(n, e - g.degree);
    }
    FFMatrix m(field, row_count, target.size());
    std::size_t row = 0;
    for (const auto& g : generators) {
      if (g.degree > e) continue;
      const DegreeBasis multipliers(n, e - g.degree);
      std::vector<ProductRow> rows;
      for (std::size_t i = 0; i < g.forms.size(); ++i) {
        for (std::size_t j = 0; j < multipliers.size(); ++j) rows.push_back({i, j});
      }
      write_products(m, row, g, multipliers, target, rows, {});
      row += rows.size();
    }
    const std::size_t rank = row_count == 0 ? 0 : gflinalg::rank_profile(std::move(m)).rank;
    out.push_back(target.size() - rank);
  }
  return out;
}

}  // namespace froberg::verify
