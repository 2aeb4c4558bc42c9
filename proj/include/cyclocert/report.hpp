// Pass/fail check records shared by the verification suites and the CLI.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cyclocert/arith.hpp"
#include "json.hpp"

namespace cyclocert {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct Check {
  std::string name;
  json params = json::object();
  json expected;
  json actual;
  bool pass = false;

  json to_json() const;
};

struct Report {
  i64 e = 0, p = 0, selector = 0;
  std::vector<Check> checks;

  bool pass() const;
  i64 failures() const;
  void add(std::string name, json params, json expected, json actual, bool pass);
  /// Appends all checks of another report.
  void merge(const Report& o);
  json to_json() const;
};

/// Decimal-string encodings.
json to_json(const mpz_class& x);
json to_json(const std::vector<mpz_class>& v);
json to_json(const std::vector<i64>& v);

/// Recursively sorts object keys so that dumps are stable.
json sorted(const json& j);

}  // namespace cyclocert
