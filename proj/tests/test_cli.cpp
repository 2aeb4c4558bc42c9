#include <sstream>

#include "cyclocert/cli.hpp"
#include "cyclocert/suite.hpp"
#include "doctest.h"

using namespace cyclocert;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("jacobi and gauss at e=3, p=7") {
  Run r = run({"jacobi", "--e", "3", "--p", "7", "--selector", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["n"] == json{"2", "3", "0"});
  CHECK(j["J"] == "2+3ζ");
  CHECK(j["factorization"] == json{{"1", "0"}, {"2", "1"}});
  CHECK(j["schema_version"] == "1");
  CHECK(sorted(j).dump(2) + "\n" == r.out);

  Run g = run({"gauss", "--e", "3", "--p", "7"});
  CHECK(g.code == 0);
  CHECK(g.out.find("m = [2, 9, -12]") != std::string::npos);
  CHECK(g.out.find("G^e = 14+21ζ") != std::string::npos);

  Run other = run({"jacobi", "--e", "3", "--p", "7", "--selector", "1", "--format", "json"});
  // exponents are keyed relative to the chosen prime, so the shape repeats
  CHECK(json::parse(other.out)["factorization"] == j["factorization"]);
  CHECK(json::parse(other.out)["J"] != j["J"]);
}

TEST_CASE("usage errors exit with 2") {
  Run even = run({"jacobi", "--e", "4", "--p", "7"});
  CHECK(even.code == 2);
  CHECK(even.out.find("J = ") != std::string::npos);
  CHECK(even.err.find("e must be odd") != std::string::npos);
  CHECK(run({"jacobi", "--e", "3", "--p", "9"}).code == 2);
  CHECK(run({"jacobi", "--e", "3", "--p", "3"}).code == 2);
  CHECK(run({"jacobi", "--e", "3", "--p", "7", "--selector", "2"}).code == 2);
  CHECK(run({"gauss", "--e", "3"}).code == 2);
  CHECK(run({"verify", "--scope", "nothing"}).code == 2);
  CHECK(run({"verify", "--e", "4"}).code == 2);
  CHECK(run({"characters", "--group", "dihedral:3"}).code == 2);
  CHECK(run({"characters", "--group", "cyclic:300"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify: single instance, empty grid, failures") {
  Run u = run({"verify", "--scope", "units", "--e", "3", "--p", "7", "--format", "json"});
  CHECK(u.code == 0);
  json j = json::parse(u.out);
  CHECK(j["reports"].size() == 2);
  CHECK(j["summary"]["pass"] == true);

  Run empty = run({"verify", "--max-pf", "2"});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("0 checks") != std::string::npos);
  CHECK(empty.err.find("warning") != std::string::npos);

  // f = 2: the trivial-character Jacobi identity for u_s fails at d = e.
  Run gap = run({"verify", "--scope", "units", "--e", "3", "--p", "2"});
  CHECK(gap.code == 1);
  CHECK(gap.out.find("FAIL Det u_s") != std::string::npos);
}

TEST_CASE("verify output is independent of the worker count") {
  const std::vector<std::string> base{"verify", "--scope", "stickelberger", "--max-e", "7", "--max-pf", "200", "--format", "json"};
  auto with_jobs = [&](const char* n) {
    auto a = base;
    a.insert(a.end(), {"--jobs", n});
    return run(a);
  };
  Run one = with_jobs("1"), four = with_jobs("4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(sorted(json::parse(one.out)).dump(2) + "\n" == one.out);
}

TEST_CASE("characters") {
  Run bt = run({"characters", "--group", "binary-tetrahedral", "--format", "json"});
  CHECK(bt.code == 0);
  json j = json::parse(bt.out);
  CHECK(j["symplectic"] == json{"chi_5"});
  CHECK(j["table"]["characters"].size() == 7);
  CHECK(j["odd_order_generation"]["generated"] == true);
  CHECK(json::parse(run({"characters", "--group", "quaternion:2", "--format", "json"}).out)["symplectic"] == json{"phi"});
  CHECK(json::parse(run({"characters", "--group", "cyclic:5", "--format", "json"}).out)["symplectic"] == json::array());
}

TEST_CASE("grid enumeration") {
  suite::GridSpec spec;
  spec.max_e = 5;
  spec.max_pf = 30;
  const auto g = suite::grid(spec);
  // e=5: p = 2 (f = 4, one selector) and p = 11 (f = 1, four selectors)
  std::vector<std::tuple<i64, i64, i64>> got;
  for (const auto& pt : g) got.emplace_back(pt.e, pt.p, pt.selector);
  CHECK(std::is_sorted(got.begin(), got.end()));
  for (const auto& pt : g) {
    CHECK(pt.e % 2 == 1);
    i64 pf = 1;
    for (i64 k = 0; k < pt.f; ++k) pf *= pt.p;
    CHECK(pf <= 30);
  }
  CHECK(std::count_if(g.begin(), g.end(), [](const auto& pt) { return pt.e == 5; }) == 5);
  CHECK(std::count_if(g.begin(), g.end(), [](const auto& pt) { return pt.e == 3 && pt.p == 2; }) == 1);
  CHECK(std::count_if(g.begin(), g.end(), [](const auto& pt) { return pt.e == 3 && pt.p == 7; }) == 2);
  CHECK(suite::parse_scope("davenport-hasse") == suite::Scope::davenport_hasse);
  CHECK_FALSE(suite::parse_scope("x"));
}
