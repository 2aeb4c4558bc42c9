#include "cyclocert/report.hpp"

#include <algorithm>

namespace cyclocert {

json Check::to_json() const {
  json j = json::object();
  j["actual"] = actual;
  j["expected"] = expected;
  j["name"] = name;
  j["params"] = params;
  j["pass"] = pass;
  return j;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

i64 Report::failures() const {
  return std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
}

void Report::add(std::string name, json params, json expected, json actual, bool ok) {
  checks.push_back(Check{std::move(name), std::move(params), std::move(expected), std::move(actual), ok});
}

void Report::merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

json Report::to_json() const {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  json j = json::object();
  j["checks"] = arr;
  j["e"] = std::to_string(e);
  j["p"] = std::to_string(p);
  j["pass"] = pass();
  j["selector"] = std::to_string(selector);
  return j;
}

json to_json(const mpz_class& x) { return x.get_str(); }

json to_json(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json to_json(const std::vector<i64>& v) {
  json a = json::array();
  for (i64 x : v) a.push_back(std::to_string(x));
  return a;
}

json sorted(const json& j) {
  if (j.is_array()) {
    json a = json::array();
    for (const auto& x : j) a.push_back(sorted(x));
    return a;
  }
  if (!j.is_object()) return j;
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  json o = json::object();
  for (const auto& k : keys) o[k] = sorted(j.at(k));
  return o;
}

}  // namespace cyclocert
