#pragma once

// The single JSON object every CLI invocation emits.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "froberg/ring.hpp"

namespace froberg::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "0.1.0";

enum class Outcome { Verified, Holds, Fails, Inconclusive, Error };
std::string_view to_string(Outcome o);
/// Throws DomainError for an unknown name.
Outcome parse_outcome(std::string_view name);
/// 0 for verified/holds, 1 for fails/inconclusive, 2 for error.
int exit_code(Outcome o);

struct Report {
  std::string command;
  Json params = Json::object();
  std::uint64_t seed = 1;
  Outcome outcome = Outcome::Error;
  Json details = Json::object();
  std::int64_t elapsed_ms = 0;
  std::string version{kVersion};

  bool operator==(const Report&) const = default;
};

Json to_json(const Report& r);
/// Throws DomainError when a key is missing or has the wrong type.
Report from_json(const Json& j);

/// Pretty-printed with a trailing newline.
std::string serialize(const Report& r);

/// Machine-word integers become JSON numbers, larger ones decimal strings.
Json big_to_json(const ring::BigInt& v);

}  // namespace froberg::report
