#include "cyclocert/cli.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "cyclocert/chartab.hpp"
#include "cyclocert/stickelberger.hpp"
#include "cyclocert/suite.hpp"
#include "cyclocert/sums.hpp"

namespace cyclocert::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "text";
  std::string output;
  // jacobi / gauss
  i64 e = 0, p = 0, selector = 0;
  // verify
  std::string scope = "all";
  i64 max_e = 9, max_pf = 1000;
  std::vector<i64> e_values;
  std::optional<i64> only_p, only_selector;
  unsigned jobs = 0;
  // characters
  std::string group;
  i64 max_order = 200;
};

std::string dump(const json& j) { return sorted(j).dump(2) + "\n"; }

std::string join(const std::vector<mpz_class>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "]";
}

std::string exps_text(const json& j) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    s += (first ? "" : ", ") + k + ": " + v.get<std::string>();
    first = false;
  }
  return s + "}";
}

void check_instance(i64 e, i64 p) {
  if (e < 1) throw UsageError("e must be positive");
  if (!is_prime(p)) throw UsageError("p must be prime");
  if (e % p == 0) throw UsageError("p must not divide e");
}

residue::PrimeAboveP prime_for(const RunConfig& c) {
  check_instance(c.e, c.p);
  const i64 sels = euler_phi(c.e) / multiplicative_order(c.p % c.e, c.e);
  if (c.selector < 0 || c.selector >= sels)
    throw UsageError("selector must lie in [0, " + std::to_string(sels) + ")");
  return residue::split_prime(cyclo::CycField::make(c.e), c.p, c.selector);
}

json instance_json(const std::string& command, const residue::PrimeAboveP& P) {
  json j = json::object();
  j["command"] = command;
  j["e"] = std::to_string(P.e());
  j["f"] = std::to_string(P.f);
  j["p"] = std::to_string(P.p);
  j["prime"] = to_json(std::vector<i64>(P.g.begin(), P.g.end()));
  j["schema_version"] = std::to_string(kSchemaVersion);
  j["selector"] = std::to_string(P.selector);
  return j;
}

/// (x) as exponents at the primes above p, or null when x has other prime factors.
json factorization(const residue::PrimeAboveP& P, const cyclo::CycInt& x) {
  if (x.is_zero()) return nullptr;
  stickelberger::Factorizer Fz(P);
  if (!Fz.supported_above_p(x)) return nullptr;
  return Fz.factor(x).to_json(Fz.cosets());
}

int emit(const RunConfig& c, const std::string& text, const json& j, std::ostream& out) {
  const std::string body = c.format == "json" ? dump(j) : text;
  if (c.output.empty()) {
    out << body;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + c.output);
    f << body;
  }
  return kExitPass;
}

int cmd_jacobi(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const residue::PrimeAboveP P = prime_for(c);
  const auto n = sums::jacobi_coeffs(P);
  const cyclo::CycInt J(P.field, n);
  const bool odd = c.e % 2 == 1;
  json j = instance_json("jacobi", P);
  j["J"] = J.to_string();
  j["n"] = to_json(n);
  j["factorization"] = factorization(P, J);
  std::ostringstream t;
  t << "e=" << c.e << " p=" << c.p << " selector=" << c.selector << " f=" << P.f << "\n";
  t << "n = " << join(n) << "\n";
  t << "J = " << J.to_string() << "\n";
  t << "(J) exponents: " << (j["factorization"].is_null() ? "not supported above p" : exps_text(j["factorization"])) << "\n";
  if (!odd) j["error"] = "e must be odd for S/J coefficient semantics";
  emit(c, t.str(), j, out);
  if (!odd) {
    err << "error: e must be odd for S/J coefficient semantics (J(theta, theta) shown above)\n";
    return kExitUsage;
  }
  return kExitPass;
}

int cmd_gauss(const RunConfig& c, std::ostream& out, std::ostream&) {
  const residue::PrimeAboveP P = prime_for(c);
  const auto m = sums::gauss_power_coeffs(P);
  const cyclo::CycInt Ge(P.field, m);
  json j = instance_json("gauss", P);
  j["G^e"] = Ge.to_string();
  j["m"] = to_json(m);
  j["factorization"] = factorization(P, Ge);
  std::ostringstream t;
  t << "e=" << c.e << " p=" << c.p << " selector=" << c.selector << " f=" << P.f << "\n";
  t << "m = " << join(m) << "\n";
  t << "G^e = " << Ge.to_string() << "\n";
  t << "(G^e) exponents: " << (j["factorization"].is_null() ? "not supported above p" : exps_text(j["factorization"])) << "\n";
  return emit(c, t.str(), j, out);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto scope = suite::parse_scope(c.scope);
  if (!scope) throw UsageError("unknown scope " + c.scope);
  if (c.max_e < 1 || c.max_pf < 1) throw UsageError("grid bounds must be positive");
  for (i64 e : c.e_values)
    if (e < 1 || e % 2 == 0) throw UsageError("e must be odd and positive");
  if (c.only_p) {
    if (!is_prime(*c.only_p)) throw UsageError("p must be prime");
    for (i64 e : c.e_values)
      if (e % *c.only_p == 0) throw UsageError("p must not divide e");
  }
  suite::GridSpec spec;
  spec.max_e = c.max_e;
  spec.max_pf = c.max_pf;
  spec.e_values = c.e_values;
  spec.p = c.only_p;
  spec.selector = c.only_selector;
  const auto points = suite::grid(spec);

  std::ostringstream t;
  const bool text = c.format == "text";
  auto line = [&](const Report& r) {
    if (!text || r.checks.empty()) return;
    t << "e=" << r.e << " p=" << r.p << " selector=" << r.selector << " checks=" << r.checks.size()
      << " failures=" << r.failures() << (r.pass() ? " PASS" : " FAIL") << "\n";
    for (const auto& ch : r.checks)
      if (!ch.pass)
        t << "  FAIL " << ch.name << " " << sorted(ch.params).dump() << " expected=" << sorted(ch.expected).dump()
          << " actual=" << sorted(ch.actual).dump() << "\n";
  };
  const auto result = suite::run_suite(*scope, points, c.jobs ? c.jobs : suite::default_parallelism(), line);

  json reports = json::array();
  for (const auto& r : result.reports)
    if (!r.checks.empty()) reports.push_back(r.to_json());
  json grid = json::object();
  grid["max_e"] = std::to_string(c.max_e);
  grid["max_pf"] = std::to_string(c.max_pf);
  if (!c.e_values.empty()) grid["e"] = to_json(c.e_values);
  if (c.only_p) grid["p"] = std::to_string(*c.only_p);
  if (c.only_selector) grid["selector"] = std::to_string(*c.only_selector);
  json j = json::object();
  j["command"] = "verify";
  j["grid"] = grid;
  j["reports"] = reports;
  j["schema_version"] = std::to_string(kSchemaVersion);
  j["scope"] = suite::scope_name(*scope);
  j["summary"] = json{{"checks", std::to_string(result.checks)},
                      {"failures", std::to_string(result.failures)},
                      {"pass", result.pass()},
                      {"points", std::to_string(points.size())}};
  if (result.checks == 0) {
    j["warnings"] = json::array({"0 checks"});
    err << "warning: the grid is empty (0 checks)\n";
  }
  t << result.checks << " checks, " << result.failures << " failures over " << points.size() << " grid points: "
    << (result.pass() ? "PASS" : "FAIL") << "\n";
  emit(c, t.str(), j, out);
  return result.pass() ? kExitPass : kExitFail;
}

int cmd_characters(const RunConfig& c, std::ostream& out, std::ostream&) {
  chartab::GroupPtr G;
  try {
    G = chartab::build_group(c.group);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (G->order() > c.max_order) throw UsageError("group order exceeds --max-order");
  const auto table = chartab::character_table(G, c.max_order);
  const Report R = chartab::character_report(G);
  const auto names = chartab::labels(table);
  const auto odd = chartab::odd_order_generation(*G);

  std::vector<std::string> symplectic;
  for (size_t t = 0; t < table.size(); ++t)
    if (chartab::frobenius_schur(table[t]) == -1) symplectic.push_back(names[t]);

  json j = json::object();
  j["command"] = "characters";
  j["odd_order_generation"] = json{{"generated", odd.generated},
                                   {"odd_part_order", std::to_string(odd.odd_part.size())},
                                   {"two_power_index_normal_subgroups", std::to_string(odd.two_power_index_normal.size())}};
  j["report"] = R.to_json();
  j["schema_version"] = std::to_string(kSchemaVersion);
  j["symplectic"] = symplectic;
  j["table"] = chartab::table_to_json(table);

  std::ostringstream t;
  t << "group " << G->name() << ": order " << G->order() << ", exponent " << G->exponent() << ", " << G->class_count()
    << " classes (values in Z[ζ_" << G->exponent() << "])\n";
  t << "class sizes:";
  for (int k = 0; k < G->class_count(); ++k) t << " " << G->class_size(k);
  t << "\nelement orders:";
  for (int k = 0; k < G->class_count(); ++k) t << " " << G->element_order(G->class_rep(k));
  t << "\n";
  for (size_t r = 0; r < table.size(); ++r) {
    t << names[r] << "  deg " << table[r].degree() << "  FS " << chartab::frobenius_schur(table[r]) << "  |";
    for (const auto& v : table[r].values()) t << " " << v.to_string();
    t << "\n";
  }
  t << "symplectic: {";
  for (size_t s = 0; s < symplectic.size(); ++s) t << (s ? ", " : "") << symplectic[s];
  t << "}\n";
  t << "generated by odd-order elements: " << (odd.generated ? "yes" : "no") << "\n";
  for (const auto& ch : R.checks)
    if (ch.name == "Ind from H_8")
      t << "Ind_{H_8} " << ch.params["induced"].get<std::string>() << " multiplicities " << ch.actual.dump()
        << (ch.pass ? "" : " FAIL") << "\n";
  t << R.checks.size() << " checks, " << R.failures() << " failures: " << (R.pass() ? "PASS" : "FAIL") << "\n";
  emit(c, t.str(), j, out);
  return R.pass() ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of Gauss/Jacobi sum factorizations, unit certificates and small character tables"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", c.output, "Write the report to this file instead of stdout");
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--e", c.e, "Order of zeta")->required();
    sub->add_option("--p", c.p, "Rational prime not dividing e")->required();
    sub->add_option("--selector", c.selector, "Which prime above p (canonical factor order)");
    add_format(sub);
  };

  CLI::App* jac = app.add_subcommand("jacobi", "n-vector, J(theta, theta) and its factorization");
  add_instance(jac);
  CLI::App* gau = app.add_subcommand("gauss", "m-vector, G(theta)^e and its factorization");
  add_instance(gau);

  CLI::App* ver = app.add_subcommand("verify", "Run a verification suite over a grid");
  ver->add_option("--scope", c.scope, "stickelberger | contents | units | swan | davenport-hasse | all");
  CLI::Option* max_pf = ver->add_option("--max-pf", c.max_pf, "Largest p^f on the grid");
  ver->add_option("--max-e", c.max_e, "Largest odd e on the grid");
  ver->add_option("--e", c.e_values, "Restrict to these e (repeatable)");
  i64 p = 0, sel = 0;
  CLI::Option* p_opt = ver->add_option("--p", p, "Restrict to this prime");
  CLI::Option* sel_opt = ver->add_option("--selector", sel, "Restrict to this selector");
  ver->add_option("--jobs", c.jobs, "Worker threads (default: CYCLOCERT_JOBS or the core count)");
  add_format(ver);

  CLI::App* chars = app.add_subcommand("characters", "Character table and structural checks of a small group");
  chars->add_option("--group", c.group, "quaternion:n | binary-tetrahedral | cyclic:n")->required();
  chars->add_option("--max-order", c.max_order, "Largest group order accepted");
  add_format(chars);

  std::vector<std::string> argv_store{"cyclocert"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (jac->parsed()) return cmd_jacobi(c, out, err);
    if (gau->parsed()) return cmd_gauss(c, out, err);
    if (ver->parsed()) {
      if (*p_opt) {
        c.only_p = p;
        if (!*max_pf) c.max_pf = std::numeric_limits<i64>::max();
      }
      if (*sel_opt) c.only_selector = sel;
      return cmd_verify(c, out, err);
    }
    return cmd_characters(c, out, err);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace cyclocert::cli
