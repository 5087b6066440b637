#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

namespace cantor4 {

// Structured pass/fail result of an executable verification.  A failing
// report always carries a counterexample pair.
struct CheckReport {
  std::string check_name;
  std::map<std::string, std::int64_t> parameters;
  bool pass = true;
  std::optional<std::pair<std::int64_t, std::int64_t>> counterexample;
  std::string details;

  static CheckReport ok(std::string name, std::map<std::string, std::int64_t> params,
                        std::string details = {}) {
    return CheckReport{std::move(name), std::move(params), true, std::nullopt,
                       std::move(details)};
  }

  static CheckReport fail(std::string name, std::map<std::string, std::int64_t> params,
                          std::pair<std::int64_t, std::int64_t> counterexample,
                          std::string details) {
    return CheckReport{std::move(name), std::move(params), false, counterexample,
                       std::move(details)};
  }
};

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["check"] = r.check_name;
  j["parameters"] = r.parameters;
  j["pass"] = r.pass;
  if (r.counterexample)
    j["counterexample"] = {r.counterexample->first, r.counterexample->second};
  else
    j["counterexample"] = nullptr;
  j["details"] = r.details;
  return j;
}

}  // namespace cantor4
