#include <algorithm>
#include <map>

#include "cyclocert/chartab.hpp"
#include "doctest.h"

using namespace cyclocert;
using namespace cyclocert::chartab;
using cyclo::CycField;
using cyclo::CycInt;

namespace {

std::vector<std::string> degrees(const std::vector<ClassFunction>& t) {
  std::vector<std::string> d;
  for (const auto& c : t) d.push_back(c.degree().get_str());
  return d;
}

size_t row(const std::vector<ClassFunction>& t, const std::string& label) {
  const auto names = labels(t);
  return static_cast<size_t>(std::find(names.begin(), names.end(), label) - names.begin());
}

// Oracle table for H_{4n} from its construction: four linear characters
// through H/<sigma^2> and Ind of the faithful-ish characters of <sigma>.
std::vector<ClassFunction> quaternion_oracle(const GroupPtr& G, i64 n) {
  const int sigma = G->generators()[0], tau = G->generators()[1];
  const auto F = CycField::make(G->exponent());
  const i64 e = G->exponent();
  std::vector<ClassFunction> rows;
  // Linear: sigma -> a, tau -> b with a^2 = 1, b^2 = a^n.
  const std::vector<CycInt> fourth{CycInt::constant(F, 1), CycInt::zeta(F, e / 4), CycInt::constant(F, -1),
                                   CycInt::zeta(F, 3 * e / 4)};
  for (int a : {1, -1})
    for (const auto& b : fourth) {
      const CycInt an = CycInt::constant(F, (n % 2 == 1 && a == -1) ? -1 : 1);
      if (b * b != an) continue;
      std::vector<CycInt> v;
      for (int k = 0; k < G->class_count(); ++k) {
        const int g = G->class_rep(k);
        // g = sigma^j or sigma^j tau
        for (i64 j = 0; j < 2 * n; ++j) {
          if (G->pow(sigma, j) == g) v.push_back(CycInt::constant(F, a == -1 && j % 2 ? -1 : 1));
          if (G->mul(G->pow(sigma, j), tau) == g) v.push_back(CycInt::constant(F, a == -1 && j % 2 ? -1 : 1) * b);
        }
      }
      rows.emplace_back(G, v);
    }
  const GroupPtr C = FiniteGroup::subgroup(G, generated(*G, {sigma}));
  for (i64 k = 1; k < n; ++k) {
    std::vector<CycInt> v;
    for (int c = 0; c < C->class_count(); ++c) {
      const int g = C->to_parent(C->class_rep(c));
      for (i64 j = 0; j < 2 * n; ++j)
        if (G->pow(sigma, j) == g) v.push_back(CycInt::zeta(F, (e / (2 * n)) * j * k));
    }
    rows.push_back(induce(ClassFunction(C, v), G));
  }
  return rows;
}

bool same_rows(const std::vector<ClassFunction>& a, const std::vector<ClassFunction>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (std::count(b.begin(), b.end(), x) != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("H_8 elements") {
  const GroupPtr G = build_quaternion(2);
  CHECK(G->order() == 8);
  std::map<i64, int> census;
  for (int g = 0; g < 8; ++g) ++census[G->element_order(g)];
  CHECK(census == std::map<i64, int>{{1, 1}, {2, 1}, {4, 6}});
  const int tau = G->generators()[1];
  for (int g = 0; g < 8; ++g)
    if (G->element_order(g) == 2) CHECK(g == G->mul(tau, tau));
  CHECK(G->verify_axioms());
}

TEST_CASE("H_{4n} has order 4n and a unique involution") {
  for (i64 n = 2; n <= 9; ++n) {
    const GroupPtr G = build_quaternion(n);
    CHECK(G->order() == 4 * n);
    CHECK(G->verify_axioms());
    CHECK(is_generalized_quaternion(*G, whole(*G)));
    int involutions = 0;
    for (int g = 0; g < static_cast<int>(G->order()); ++g) involutions += G->element_order(g) == 2;
    CHECK(involutions == 1);
  }
  CHECK_THROWS(build_quaternion(1));
}

TEST_CASE("binary tetrahedral structure") {
  const GroupPtr G = build_binary_tetrahedral();
  CHECK(G->order() == 24);
  CHECK(center(*G).size() == 2);
  CHECK(commutator_subgroup(*G).size() == 8);
  CHECK(is_generalized_quaternion(*G, commutator_subgroup(*G)));
  CHECK(G->class_count() == 7);
  int index2 = 0, order2 = 0;
  for (const auto& S : all_subgroups(*G)) {
    index2 += S.size() == 12;
    order2 += S.size() == 2;
  }
  CHECK(index2 == 0);
  CHECK(order2 == 1);
  // classes sorted by size then least index, identity first
  CHECK(G->classes()[0] == Subset{0});
  for (int k = 1; k < G->class_count(); ++k) CHECK(G->class_size(k - 1) <= G->class_size(k));
}

TEST_CASE("subgroup scan") {
  CHECK(all_subgroups(*build_cyclic(12)).size() == 6);
  CHECK(all_subgroups(*build_quaternion(2)).size() == 6);
  // 1 + 1 + 3 + 4 + 4 + 1 + 1 subgroups of SL_2(F_3)
  CHECK(all_subgroups(*build_binary_tetrahedral()).size() == 15);
}

TEST_CASE("character table of H_8") {
  const GroupPtr G = build_quaternion(2);
  const auto t = character_table(G);
  CHECK(degrees(t) == std::vector<std::string>{"1", "1", "1", "1", "2"});
  CHECK(check_table(t).pass());
  CHECK(labels(t) == std::vector<std::string>{"psi_1", "psi_2", "psi_3", "psi_4", "phi"});
  CHECK(frobenius_schur(t[0]) == 1);
  CHECK(frobenius_schur(t[4]) == -1);
  const int tau = G->generators()[1];
  CHECK(t[4](G->mul(tau, tau)) == CycInt::constant(t[4](0).field(), -2));
  for (size_t i = 1; i < 4; ++i) CHECK(frobenius_schur(t[i]) == 1);
}

TEST_CASE("character table of the binary tetrahedral group") {
  const GroupPtr G = build_binary_tetrahedral();
  const auto t = character_table(G);
  CHECK(degrees(t) == std::vector<std::string>{"1", "1", "1", "2", "2", "2", "3"});
  CHECK(check_table(t).pass());
  int real = 0, symplectic = 0;
  for (const auto& c : t) {
    real += c.is_real();
    symplectic += frobenius_schur(c) == -1;
  }
  CHECK(real == 3);
  CHECK(symplectic == 1);
  CHECK(frobenius_schur(t[row(t, "chi_5")]) == -1);
  CHECK(t[row(t, "chi_5")].is_real());
  CHECK(t[row(t, "chi_7")] == t[row(t, "chi_6")].conj());
  CHECK(frobenius_schur(t[row(t, "chi_1")]) == 1);
  CHECK(frobenius_schur(t[row(t, "chi_4")]) == 1);
  CHECK(frobenius_schur(t[row(t, "chi_6")]) == 0);
}

TEST_CASE("induction from H_8 to the binary tetrahedral group") {
  const GroupPtr G = build_binary_tetrahedral();
  const auto t = character_table(G);
  const GroupPtr H = FiniteGroup::subgroup(G, commutator_subgroup(*G), "quaternion:2");
  const auto t8 = character_table(H);
  CHECK(induce(t8[row(t8, "psi_1")], G) == t[row(t, "chi_1")] + t[row(t, "chi_2")] + t[row(t, "chi_3")]);
  for (const char* psi : {"psi_2", "psi_3", "psi_4"}) CHECK(induce(t8[row(t8, psi)], G) == t[row(t, "chi_4")]);
  const ClassFunction ind = induce(t8[row(t8, "phi")], G);
  CHECK(ind == t[row(t, "chi_5")] + t[row(t, "chi_6")] + t[row(t, "chi_7")]);
  CHECK(decompose(ind, t) == std::vector<i64>{0, 0, 0, 1, 1, 1, 0});
  // Frobenius reciprocity on every pair
  for (const auto& a : t8)
    for (const auto& b : t) CHECK(inner_product(induce(a, G), b) == inner_product(a, restrict_to(b, H)));
  CHECK_THROWS(induce(t[0], G));
  CHECK(character_report(G).pass());
}

TEST_CASE("cyclic tables against the explicit characters") {
  for (i64 n = 1; n <= 15; ++n) {
    const GroupPtr G = build_cyclic(n);
    const auto t = character_table(G);
    CHECK(check_table(t).pass());
    const auto F = CycField::make(n);
    std::vector<ClassFunction> oracle;
    for (i64 k = 0; k < n; ++k) {
      std::vector<CycInt> v;
      for (int c = 0; c < G->class_count(); ++c) v.push_back(CycInt::zeta(F, k * G->encoding(G->class_rep(c))[0]));
      oracle.emplace_back(G, v);
    }
    CHECK(same_rows(t, oracle));
    for (const auto& c : t) CHECK(frobenius_schur(c) != -1);
  }
}

TEST_CASE("quaternion tables against the induced construction") {
  for (i64 n = 2; n <= 8; ++n) {
    const GroupPtr G = build_quaternion(n);
    const auto t = character_table(G);
    CHECK(check_table(t).pass());
    CHECK(same_rows(t, quaternion_oracle(G, n)));
    CHECK(character_report(G).pass());
  }
}

TEST_CASE("abelian subgroups of H_{4n} fall under the two restriction branches") {
  for (i64 n = 2; n <= 6; ++n) {
    const Report R = check_quaternion_abelian_restrictions(build_quaternion(n));
    CHECK(!R.checks.empty());
    CHECK(R.pass());
  }
}

TEST_CASE("odd-order generation and the 2-power-index scan") {
  auto bt = odd_order_generation(*build_binary_tetrahedral());
  CHECK(bt.generated);
  CHECK(bt.consistent);
  for (i64 n = 2; n <= 6; ++n) {
    auto q = odd_order_generation(*build_quaternion(n));
    CHECK_FALSE(q.generated);
    CHECK(q.consistent);
  }
  for (i64 n = 1; n <= 20; ++n) {
    auto c = odd_order_generation(*build_cyclic(n));
    CHECK(c.generated == (n % 2 == 1));
    CHECK(c.consistent);
  }
}

TEST_CASE("group specs and bounds") {
  CHECK(build_group("cyclic:5")->order() == 5);
  CHECK(build_group("quaternion:3")->order() == 12);
  CHECK(build_group("binary-tetrahedral")->order() == 24);
  CHECK_THROWS_AS(build_group("dihedral:4"), std::invalid_argument);
  CHECK_THROWS_AS(build_group("cyclic:x"), std::invalid_argument);
  CHECK_THROWS_AS(character_table(build_cyclic(30), 20), std::length_error);
  const Report R = character_report(build_cyclic(5));
  CHECK(R.pass());
}
