#include "froberg/report.hpp"

#include <array>
#include <utility>

#include "froberg/error.hpp"

namespace froberg::report {

namespace {

constexpr std::array<std::pair<Outcome, std::string_view>, 5> kNames{{
    {Outcome::Verified, "verified"},
    {Outcome::Holds, "holds"},
    {Outcome::Fails, "fails"},
    {Outcome::Inconclusive, "inconclusive"},
    {Outcome::Error, "error"},
}};

const Json& require(const Json& j, const char* key, Json::value_t type) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::DomainError, std::string("report is missing \"") + key + "\"");
  const bool ok = it->type() == type ||
                  (type == Json::value_t::number_unsigned && it->type() == Json::value_t::number_integer &&
                   it->get<std::int64_t>() >= 0) ||
                  (type == Json::value_t::number_integer && it->type() == Json::value_t::number_unsigned);
  if (!ok) throw Error(ErrorKind::DomainError, std::string("report key \"") + key + "\" has the wrong type");
  return *it;
}

}  // namespace

std::string_view to_string(Outcome o) {
  for (const auto& [k, name] : kNames) {
    if (k == o) return name;
  }
  return "error";
}

Outcome parse_outcome(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw Error(ErrorKind::DomainError, "unknown outcome \"" + std::string(name) + "\"");
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Verified:
    case Outcome::Holds: return 0;
    case Outcome::Fails:
    case Outcome::Inconclusive: return 1;
    case Outcome::Error: return 2;
  }
  return 2;
}

Json to_json(const Report& r) {
  Json j = Json::object();
  j["command"] = r.command;
  j["params"] = r.params;
  j["seed"] = r.seed;
  j["outcome"] = to_string(r.outcome);
  j["details"] = r.details;
  j["elapsed_ms"] = r.elapsed_ms;
  j["version"] = r.version;
  return j;
}

Report from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::DomainError, "report must be a JSON object");
  Report r;
  r.command = require(j, "command", Json::value_t::string).get<std::string>();
  r.params = require(j, "params", Json::value_t::object);
  r.seed = require(j, "seed", Json::value_t::number_unsigned).get<std::uint64_t>();
  r.outcome = parse_outcome(require(j, "outcome", Json::value_t::string).get<std::string>());
  r.details = require(j, "details", Json::value_t::object);
  r.elapsed_ms = require(j, "elapsed_ms", Json::value_t::number_integer).get<std::int64_t>();
  r.version = require(j, "version", Json::value_t::string).get<std::string>();
  return r;
}

std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

Json big_to_json(const ring::BigInt& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

}  // namespace froberg::report
