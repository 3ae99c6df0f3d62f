#include "froberg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "froberg/bounds.hpp"
#include "froberg/error.hpp"
#include "froberg/exactpoly.hpp"
#include "froberg/gpoly.hpp"
#include "froberg/ring.hpp"
#include "froberg/verify.hpp"

namespace froberg::cli {

namespace {

using report::Json;
using report::Outcome;
using report::Report;

struct Options {
  std::uint64_t seed = 1;
  std::uint32_t n = 0;
  std::vector<std::uint32_t> degrees;
  std::uint32_t d = 0;
  std::uint32_t dprime = 0;
  std::uint32_t nprime = 0;
  std::uint32_t max_deg = 10;
  std::uint32_t dprime_min = 1;
  std::uint32_t dprime_max = 10;
  std::string mode = "exact";
  bool csv = false;
  std::uint64_t p = 11;
  std::uint32_t trials = 3;
  std::optional<std::uint32_t> row;
  bool plan_only = false;
};

struct Verb {
  CLI::App* app;
  std::function<void(const Options&, Report&, std::string&)> body;
};

Json rational_json(const exactpoly::Rational& q) { return exactpoly::format_rational(q); }

Json stages_json(const std::vector<verify::StageReport>& stages) {
  Json out = Json::array();
  for (const auto& st : stages) {
    out.push_back({{"name", st.name}, {"rows", st.rows}, {"cols", st.cols}, {"rank", st.rank},
                   {"full_rank", st.full_rank()}});
  }
  return out;
}

Outcome verify_outcome(const verify::VerifyReport& v) {
  return v.outcome == verify::Outcome::Verified ? Outcome::Verified : Outcome::Inconclusive;
}

Json plan_json(const verify::SplitPlan& plan) {
  return {{"n", plan.n},
          {"nprime", plan.nprime},
          {"d", plan.d},
          {"dprime", plan.dprime},
          {"p", plan.p},
          {"l", plan.l},
          {"sub_dim_dprime", plan.sub_dim_dprime},
          {"sub_dim_ddprime", plan.sub_dim_ddprime},
          {"dim_dprime", plan.dim_dprime},
          {"dim_ddprime", plan.dim_ddprime},
          {"quotient_dim", plan.quotient_dim},
          {"r", plan.r},
          {"s", plan.s},
          {"stage2_rows", plan.stage2_rows()}};
}

void fill_verify(const verify::VerifyReport& v, Json& details) {
  details["prime"] = v.prime;
  details["trials"] = v.trials;
  details["trials_used"] = v.trials_used;
  details["failures"] = v.failures;
  details["rank"] = v.rank;
  details["rows"] = v.rows;
  details["cols"] = v.cols;
  details["r"] = report::big_to_json(v.params.r);
  details["s"] = report::big_to_json(v.params.s);
  details["stages"] = stages_json(v.stages);
}

void run_series(const Options& o, Report& rep, std::string&) {
  rep.params = {{"n", o.n}, {"degrees", o.degrees}, {"max_deg", o.max_deg}};
  const auto coeffs = ring::conjectured_series(o.n, o.degrees, o.max_deg);
  Json arr = Json::array();
  for (const auto& c : coeffs) arr.push_back(report::big_to_json(c));
  rep.details["coefficients"] = arr;
  rep.outcome = Outcome::Holds;
}

void run_g_analyze(const Options& o, Report& rep, std::string&) {
  rep.params = {{"n", o.n}, {"d", o.d}, {"dprime", o.dprime}};
  const gpoly::GPoly g = gpoly::build_g(o.d, o.dprime);
  const gpoly::BoundCertificate cert = gpoly::certify_bound(o.d, o.dprime, o.n);
  const gpoly::EquivTriple eq = gpoly::equiv_triple(o.n, o.d, o.dprime);
  Json coeffs = Json::array();
  for (std::size_t j = 0; j <= o.d; ++j) coeffs.push_back(rational_json(g.poly.coeff(j)));
  rep.details["coeffs"] = coeffs;
  rep.details["sign_changes"] = cert.sign_changes;
  rep.details["g_at_nminus1"] = rational_json(cert.g_at_nminus1);
  rep.details["method"] = gpoly::to_string(cert.method);
  rep.details["holds"] = cert.holds;
  rep.details["propagates_in_d"] = cert.propagates_in_d;
  rep.details["equiv"] = {{"g_nonneg", eq.g_nonneg}, {"dim_sq", eq.dim_sq}, {"r_cond", eq.r_cond},
                          {"agree", eq.agree()}};
  rep.outcome = cert.holds ? Outcome::Holds : Outcome::Fails;
}

void run_scan(const Options& o, Report& rep, std::string& csv) {
  rep.params = {{"dprime_min", o.dprime_min}, {"dprime_max", o.dprime_max}, {"mode", o.mode}};
  if (o.dprime_min < 1 || o.dprime_min > o.dprime_max) {
    throw Error(ErrorKind::DomainError, "need 1 <= --dprime-min <= --dprime-max");
  }
  const gpoly::ScanMode mode = o.mode == "exact" ? gpoly::ScanMode::Exact : gpoly::ScanMode::IntervalFast;
  Json rows = Json::array();
  bool all = true;
  std::ostringstream out;
  out << "dprime,max_d_checked,all_at_most_one,failures,ambiguous_signs,exact_fallbacks\n";
  for (std::uint32_t dp = o.dprime_min; dp <= o.dprime_max; ++dp) {
    const gpoly::ScanResult res = gpoly::scan_dprime(dp, mode);
    all = all && res.all_at_most_one;
    Json failures = Json::array();
    for (const auto& f : res.failures) failures.push_back({{"d", f.d}, {"changes", f.changes}});
    rows.push_back({{"dprime", res.dprime},
                    {"max_d_checked", res.max_d_checked},
                    {"all_at_most_one", res.all_at_most_one},
                    {"failures", failures},
                    {"ambiguous_signs", res.ambiguous_signs},
                    {"exact_fallbacks", res.exact_fallbacks}});
    out << res.dprime << ',' << res.max_d_checked << ',' << (res.all_at_most_one ? "true" : "false") << ','
        << res.failures.size() << ',' << res.ambiguous_signs << ',' << res.exact_fallbacks << '\n';
  }
  rep.details["rows"] = rows;
  rep.details["all_at_most_one"] = all;
  rep.outcome = all ? Outcome::Holds : Outcome::Fails;
  if (o.csv) csv = out.str();
}

void run_audit(const Options& o, Report& rep, std::string&) {
  rep.params = {{"n", o.n}, {"d", o.d}, {"dprime", o.dprime}};
  const bounds::AuditResult res = bounds::audit_chain(o.n, o.d, o.dprime);
  Json unsatisfied = Json::array();
  Json exhausted = Json::array();
  std::optional<std::size_t> worst;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& row = res.rows[i];
    if (!row.satisfied) unsatisfied.push_back(report::big_to_json(row.t));
    if (row.precision_exhausted) exhausted.push_back(report::big_to_json(row.t));
    if (!worst || row.lhs.hi > res.rows[*worst].lhs.hi) worst = i;
  }
  rep.details["r"] = report::big_to_json(res.r);
  rep.details["s"] = report::big_to_json(res.s);
  rep.details["hypothesis"] = res.hypothesis;
  rep.details["rows"] = res.rows.size();
  rep.details["unsatisfied_t"] = unsatisfied;
  rep.details["precision_exhausted_t"] = exhausted;
  if (worst) {
    rep.details["worst_t"] = report::big_to_json(res.rows[*worst].t);
    rep.details["worst_lhs_hi"] = res.rows[*worst].lhs.hi.get_d();
  }
  rep.details["concludes"] = res.concludes;
  rep.outcome = res.concludes ? Outcome::Holds : (exhausted.empty() ? Outcome::Fails : Outcome::Inconclusive);
}

void run_verify(const Options& o, Report& rep, std::string&) {
  rep.params = {{"n", o.n}, {"d", o.d}, {"dprime", o.dprime}, {"p", o.p}, {"trials", o.trials}};
  const verify::VerifyReport v = verify::check_gcase(o.n, o.d, o.dprime, o.p, o.seed, o.trials);
  fill_verify(v, rep.details);
  rep.outcome = verify_outcome(v);
}

void run_verify_split(const Options& o, Report& rep, std::string&) {
  rep.params = {{"n", o.n},         {"d", o.d},           {"dprime", o.dprime}, {"nprime", o.nprime},
                {"p", o.p},         {"trials", o.trials}, {"plan_only", o.plan_only}};
  const verify::SplitPlan plan = verify::split_plan(o.n, o.d, o.dprime, o.nprime, o.p);
  rep.details["plan"] = plan_json(plan);
  if (o.plan_only) {
    rep.outcome = plan.stage2_rows() == plan.quotient_dim ? Outcome::Holds : Outcome::Fails;
    return;
  }
  const verify::VerifyReport v = verify::check_split(plan, o.seed, o.trials);
  fill_verify(v, rep.details);
  rep.outcome = verify_outcome(v);
}

void run_table1(const Options& o, Report& rep, std::string&) {
  rep.params = {{"row", o.row ? Json(*o.row) : Json(nullptr)}, {"trials", o.trials}, {"plan_only", o.plan_only}};
  if (!o.plan_only && !o.row) throw Error(ErrorKind::DomainError, "a full run needs --row (or pass --plan-only)");
  Json plans = Json::array();
  bool consistent = true;
  for (const auto& row : verify::table1_rows()) {
    if (o.row && row.n != *o.row) continue;
    const verify::SplitPlan plan = verify::table1_plan(row.n);
    Json pj = plan_json(plan);
    pj["table_l"] = row.l;
    consistent = consistent && plan.l == row.l && plan.stage2_rows() == plan.quotient_dim;
    plans.push_back(pj);
  }
  if (plans.empty()) verify::table1_plan(*o.row);  // throws UnknownRow
  rep.details["plans"] = plans;
  if (o.plan_only) {
    rep.outcome = consistent ? Outcome::Holds : Outcome::Fails;
    return;
  }
  const verify::VerifyReport v = verify::reproduce_table1(*o.row, o.seed, o.trials);
  fill_verify(v, rep.details);
  rep.outcome = verify_outcome(v);
}

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
};

void run_selftest(const Options&, Report& rep, std::string&) {
  std::vector<Check> checks;
  const auto g_at = [](std::uint32_t d, std::uint32_t dp, long x) {
    return exactpoly::format_rational(gpoly::build_g(d, dp).poly.eval(exactpoly::Rational(x)));
  };
  checks.push_back({"g_{3,2}(21)", "7/1", g_at(3, 2, 21)});
  checks.push_back({"g_{4,2}(5)", "1/1", g_at(4, 2, 5)});
  checks.push_back({"g_{5,2}(2)", "0/1", g_at(5, 2, 2)});
  for (const auto& row : verify::table1_rows()) {
    checks.push_back({"table1 l for n=" + std::to_string(row.n), std::to_string(row.l),
                      std::to_string(verify::table1_plan(row.n).l)});
  }
  const auto holds = [](std::uint32_t d, std::uint32_t dp, std::uint32_t n) {
    return gpoly::certify_bound(d, dp, n).holds ? "true" : "false";
  };
  checks.push_back({"bound holds for d=3, d'=2, n=22", "true", holds(3, 2, 22)});
  checks.push_back({"bound fails for d=3, d'=2, n=21", "false", holds(3, 2, 21)});
  checks.push_back({"bound holds for d=5, d'=2, n=3", "true", holds(5, 2, 3)});

  Json arr = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    const bool pass = c.expected == c.actual;
    all = all && pass;
    arr.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", pass}});
  }
  rep.details["checks"] = arr;
  rep.outcome = all ? Outcome::Holds : Outcome::Fails;
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  CLI::App app{"Degree-wise verification of the Froberg conjecture", "froberg"};
  app.require_subcommand(1);

  std::vector<Verb> verbs;
  const auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Random seed (echoed in the report)"); };
  const auto add_degrees = [&](CLI::App* sub) {
    sub->add_option("-n", o.n, "Number of variables")->required()->check(CLI::PositiveNumber);
    sub->add_option("-d", o.d, "Generator degree d")->required();
    sub->add_option("--dprime", o.dprime, "Multiplier degree d'")->required();
  };

  {
    auto* sub = app.add_subcommand("series", "Truncated conjectured Hilbert series");
    sub->add_option("-n", o.n, "Number of variables")->required()->check(CLI::PositiveNumber);
    sub->add_option("-d", o.degrees, "Generator degrees, comma separated")->required()->delimiter(',');
    sub->add_option("--max-deg", o.max_deg, "Last coefficient to print");
    verbs.push_back({sub, run_series});
  }
  {
    auto* sub = app.add_subcommand("g-analyze", "Coefficients and bound certificate for g_{d,d'}");
    add_degrees(sub);
    verbs.push_back({sub, run_g_analyze});
  }
  {
    auto* sub = app.add_subcommand("scan", "Sign-change scan of g_{d,d'} over d for each d'");
    sub->add_option("--dprime-min", o.dprime_min, "First d'");
    sub->add_option("--dprime-max", o.dprime_max, "Last d'");
    sub->add_option("--mode", o.mode, "exact or interval-fast")
        ->check(CLI::IsMember({"exact", "interval-fast"}));
    sub->add_flag("--csv", o.csv, "Emit CSV rows instead of JSON");
    verbs.push_back({sub, run_scan});
  }
  {
    auto* sub = app.add_subcommand("audit", "Row-by-row audit of the dimension count");
    add_degrees(sub);
    verbs.push_back({sub, run_audit});
  }
  {
    auto* sub = app.add_subcommand("verify", "Randomized rank check of the gcase product matrix");
    add_degrees(sub);
    sub->add_option("-p", o.p, "Prime field size");
    sub->add_option("--trials", o.trials, "Random instances to try")->check(CLI::PositiveNumber);
    verbs.push_back({sub, run_verify});
  }
  {
    auto* sub = app.add_subcommand("verify-split", "Randomized check through a subring in n' variables");
    add_degrees(sub);
    sub->add_option("--nprime", o.nprime, "Subring variable count n'")->required();
    sub->add_option("-p", o.p, "Prime field size");
    sub->add_option("--trials", o.trials, "Random instances to try")->check(CLI::PositiveNumber);
    sub->add_flag("--plan-only", o.plan_only, "Only compute the plan");
    verbs.push_back({sub, run_verify_split});
  }
  {
    auto* sub = app.add_subcommand("table1", "Subring choices for d = 3, d' = 2, n = 16..21");
    sub->add_option("--row", o.row, "Table row (n)");
    sub->add_option("--trials", o.trials, "Random instances to try")->check(CLI::PositiveNumber);
    sub->add_flag("--plan-only", o.plan_only, "Only compute the plans");
    verbs.push_back({sub, run_table1});
  }
  {
    auto* sub = app.add_subcommand("selftest", "Check the published values");
    verbs.push_back({sub, run_selftest});
  }
  for (auto& v : verbs) add_seed(v.app);

  RunResult result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.output = app.help();
    for (auto& v : verbs) {
      if (v.app->parsed()) result.output = v.app->help();
    }
    result.exit_code = 0;
    return result;
  } catch (const CLI::ParseError& e) {
    for (auto& v : verbs) {
      if (v.app->parsed()) result.report.command = v.app->get_name();
    }
    result.report.seed = o.seed;
    result.report.outcome = Outcome::Error;
    result.report.details = {{"error", "usage"}, {"message", e.what()}};
    result.diagnostics = std::string("usage error: ") + e.what() + "\n";
    result.output = report::serialize(result.report);
    result.exit_code = 2;
    return result;
  }

  Report& rep = result.report;
  rep.seed = o.seed;
  std::string csv;
  for (auto& v : verbs) {
    if (!v.app->parsed()) continue;
    rep.command = v.app->get_name();
    try {
      v.body(o, rep, csv);
    } catch (const Error& e) {
      rep.outcome = Outcome::Error;
      rep.details = {{"error", to_string(e.kind())}, {"message", e.what()}};
      result.diagnostics = "error: " + std::string(e.what()) + "\n";
    }
  }
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  result.exit_code = report::exit_code(rep.outcome);
  result.output = csv.empty() ? report::serialize(rep) : csv;
  return result;
}

}  // namespace froberg::cli
