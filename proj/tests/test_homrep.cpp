#include <random>

#include "cyclocert/homrep.hpp"
#include "cyclocert/sums.hpp"
#include "doctest.h"

using namespace cyclocert;
using namespace cyclocert::homrep;
using cyclo::CycField;
using cyclo::CycInt;

namespace {

GroupRingElem gre(i64 e, std::vector<long> c) { return GroupRingElem(e, std::vector<mpz_class>(c.begin(), c.end())); }

GroupRingElem scalar(i64 e, long c) {
  std::vector<mpz_class> v(static_cast<size_t>(e));
  v[0] = c;
  return GroupRingElem(e, v);
}

GroupRingElem random_gre(i64 e, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<mpz_class> c(static_cast<size_t>(e));
  for (auto& x : c) x = d(rng);
  return GroupRingElem(e, c);
}

// Oracle for invertibility mod q: search for an inverse in F_q[Delta] by
// solving the circulant system over F_q with Gaussian elimination.
bool has_inverse_mod(const GroupRingElem& u, i64 q) {
  const i64 e = u.e();
  std::vector<std::vector<i64>> M(static_cast<size_t>(e), std::vector<i64>(static_cast<size_t>(e)));
  for (i64 i = 0; i < e; ++i)
    for (i64 j = 0; j < e; ++j) {
      mpz_class c;
      mpz_fdiv_r_ui(c.get_mpz_t(), u.coeffs()[static_cast<size_t>(mod(i - j, e))].get_mpz_t(), static_cast<unsigned long>(q));
      M[static_cast<size_t>(i)][static_cast<size_t>(j)] = c.get_si();
    }
  for (i64 c = 0; c < e; ++c) {
    i64 piv = c;
    while (piv < e && M[static_cast<size_t>(piv)][static_cast<size_t>(c)] == 0) ++piv;
    if (piv == e) return false;
    std::swap(M[static_cast<size_t>(c)], M[static_cast<size_t>(piv)]);
    const i64 inv = inverse_mod(M[static_cast<size_t>(c)][static_cast<size_t>(c)], q);
    for (i64 r = c + 1; r < e; ++r) {
      const i64 f = mulmod(M[static_cast<size_t>(r)][static_cast<size_t>(c)], inv, q);
      for (i64 k = c; k < e; ++k)
        M[static_cast<size_t>(r)][static_cast<size_t>(k)] =
            mod(M[static_cast<size_t>(r)][static_cast<size_t>(k)] - f * M[static_cast<size_t>(c)][static_cast<size_t>(k)], q);
    }
  }
  return true;
}

}  // namespace

TEST_CASE("det_at_character examples") {
  GroupRingElem us = gre(3, {2, 3, 0});
  CHECK(det_at_character(us, 1) == CycInt(CycField::make(3), {2, 3, 0}));
  CHECK(det_at_character(us, 3).to_integer() == 5);
  CHECK(det_at_character(us, 0).to_integer() == us.augmentation());
  CHECK(det_at_character(GroupRingElem::swan_unit(3, 7), 1).to_integer() == 1);
  CHECK(det_at_character(GroupRingElem::trace(5), 2).is_zero());
}

TEST_CASE("Det is multiplicative") {
  std::mt19937_64 rng(1);
  for (i64 e : {1, 3, 5, 6, 9, 15}) {
    for (int t = 0; t < 30; ++t) {
      GroupRingElem u = random_gre(e, rng), v = random_gre(e, rng);
      for (i64 h = 0; h < e; ++h) CHECK(det_at_character(u * v, h) == det_at_character(u, h) * det_at_character(v, h));
    }
  }
}

TEST_CASE("invertibility mod q") {
  CHECK(GroupRingElem::swan_unit(3, 7).is_unit_mod(3));
  CHECK(GroupRingElem::swan_unit(3, 7).reduce_mod(3) == residue::PolyFp{0, 2, 2});
  CHECK(gre(3, {2, 3, 0}).is_unit_mod(3));
  CHECK(gre(3, {2, 9, -12}).is_unit_mod(3));
  CHECK_FALSE(GroupRingElem::trace(3).is_unit_mod(3));
  CHECK_FALSE(gre(3, {1, -1, 0}).is_unit_mod(3));
  std::mt19937_64 rng(2);
  for (i64 e : {3, 5, 6, 9, 15})
    for (int t = 0; t < 40; ++t) {
      GroupRingElem u = random_gre(e, rng);
      for (i64 q : prime_factors(e)) CHECK(u.is_unit_mod(q) == has_inverse_mod(u, q));
    }
}

TEST_CASE("idempotents and the local generators x_i") {
  for (i64 e : {1, 3, 5, 9}) {
    auto F = CycField::make(e);
    LocalGroupRingElem sum = LocalGroupRingElem::from(F, GroupRingElem(e));
    for (i64 i = 0; i < e; ++i) {
      LocalGroupRingElem eps = LocalGroupRingElem::idempotent(F, i);
      CHECK(eps * eps == eps);
      sum = sum + eps;
      for (i64 h = 0; h < e; ++h) {
        CHECK(eps.det(h).to_integer() == (h == i ? 1 : 0));
        LocalGroupRingElem x = LocalGroupRingElem::kappa_generator(F, 7, i);
        CHECK(x.det(h).to_integer() == (h == i ? 7 : 1));
      }
      // p = x_i (p - (p-1) eps_i)
      const LocalGroupRingElem x = LocalGroupRingElem::kappa_generator(F, 7, i);
      const LocalGroupRingElem seven = LocalGroupRingElem::from(F, GroupRingElem::delta(e, 0) * scalar(e, 7));
      const LocalGroupRingElem cofactor = seven + eps * LocalGroupRingElem::from(F, scalar(e, -6));
      CHECK(x * cofactor == seven);
    }
    CHECK(sum == LocalGroupRingElem::from(F, GroupRingElem::delta(e, 0)));
  }
}

TEST_CASE("torsion descriptors") {
  auto [T, S, R] = torsion_descriptors(3, 7);
  CHECK(T.parts == std::vector<std::pair<i64, i64>>{{1, 1}, {2, 1}});
  CHECK(S.parts == std::vector<std::pair<i64, i64>>{{2, 1}});
  CHECK(R.parts == std::vector<std::pair<i64, i64>>{{1, 1}, {2, 2}});
  auto one = torsion_descriptors(1, 7);
  CHECK(one.T.parts.empty());
  CHECK(one.S.parts.empty());
  CHECK(one.R.parts.empty());
  CHECK(torsion_S(5).parts == std::vector<std::pair<i64, i64>>{{3, 1}, {4, 1}});
  CHECK_THROWS(torsion_S(4));
  CHECK_THROWS(torsion_descriptors(4, 7));
  CHECK_THROWS(torsion_descriptors(3, 3));
  for (i64 e : {1, 3, 4, 5, 9, 12, 15}) {
    CHECK(quotient_by_trace(group_algebra_descriptor(e)) == torsion_T(e));
    for (i64 a : units_mod(e)) CHECK(relabel(torsion_T(e), a) == torsion_T(e));
    CHECK(torsion_R(e).length() == e * (e - 1) / 2);
  }
}

TEST_CASE("n(Lambda, i, h) examples") {
  CHECK(n_count(3, 7, {1}, 1, 1) == 1);
  CHECK(n_count(9, 7, {1, 4, 7}, 3, 3) == 3);
  CHECK(n_closed_form(9, 7, {1, 4, 7}, 3, 3) == 3);
  CHECK(n_closed_form(9, 7, {1, 4, 7}, 3, 1) == 0);
  CHECK(n_count(9, 7, {1, 4, 7}, 3, 1) == 0);
  CHECK(n_count(9, 7, {1, 4, 7}, 0, 0) == 3);
  CHECK_THROWS(n_count(9, 7, {1, 4}, 1, 1));
  CHECK_THROWS(n_closed_form(9, 7, {3}, 1, 1));
}

TEST_CASE("n_count equals the closed form (odd e <= 15, p < 60)") {
  for (i64 e = 1; e <= 15; e += 2)
    for (i64 p = 2; p < 60; ++p) {
      if (!is_prime(p) || e % p == 0) continue;
      CosetSpace C(e, p);
      for (i64 k = 0; k < C.size(); ++k)
        for (i64 i = 0; i < e; ++i)
          for (i64 h = 0; h < e; ++h) CHECK(n_count(e, p, C.coset(k), i, h) == n_closed_form(e, p, C.coset(k), i, h));
    }
}

TEST_CASE("Swan certificate") {
  Report R = swan_unit_certificate(3, 7);
  CHECK(R.pass());
  for (i64 e : {1, 3, 5, 9, 15, 21})
    for (i64 p : {2, 7, 11, 13, 31, 97}) {
      if (e % p == 0) continue;
      CHECK(swan_unit_certificate(e, p).pass());
    }
  RepMorphism v = swan_representative(9, 7);
  CHECK(v.at(9).is_trivial());
  CHECK(v.at(0).is_trivial());
  CHECK(v.at(3).exps == std::vector<mpz_class>{1, 1});
  CHECK_THROWS(cyclotomic_unit(3, 7, 3));
}

TEST_CASE("kappa representatives and their norms") {
  KappaRepresentative K = kappa_representative(3, 7, 1);
  CHECK(K.norm.at_divisor(1).exps == std::vector<mpz_class>{1, 0});
  CHECK(K.norm.at_divisor(3).is_trivial());
  CHECK(K.v[1].exps == std::vector<mpz_class>{1, 0});
  CHECK(K.v[2].is_trivial());
  KappaRepresentative K0 = kappa_representative(9, 7, 0);
  CHECK(K0.norm.at_divisor(9).exps == std::vector<mpz_class>{3, 3});
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{3, 7}, {9, 7}, {15, 2}, {15, 31}, {5, 11}}) {
    CosetSpace C(e, p);
    for (i64 i = 0; i < e; ++i) {
      KappaRepresentative Ki = kappa_representative(e, p, i);
      for (i64 h = 0; h < e; ++h) {
        CHECK(norm_by_definition(Ki, C, h) == Ki.norm.at(h));
        for (i64 k = 0; k < C.size(); ++k) CHECK(Ki.norm.at(h).exps[static_cast<size_t>(k)] == n_count(e, p, C.coset(k), i, h));
      }
    }
  }
}

TEST_CASE("r and s representatives") {
  RsRepresentatives rs = rs_representatives(3, 7);
  REQUIRE(rs.s.has_value());
  CHECK(rs.s->at_divisor(1).exps == std::vector<mpz_class>{0, 1});
  CHECK(rs.r.at_divisor(1).exps == std::vector<mpz_class>{1, 2});
  CHECK(rs.r.at_divisor(3).is_trivial());
  CHECK(rs.s->at_divisor(3).is_trivial());
  CHECK_FALSE(rs_representatives(4, 5).s.has_value());
}

TEST_CASE("unit certificates") {
  UnitCertificate U = unit_certificates(3, 7, 0);
  CHECK(U.report.pass());
  CHECK(U.u_s == gre(3, {2, 3, 0}));
  CHECK(U.u_r == gre(3, {2, 9, -12}));
  CHECK(U.u_t == gre(3, {3, 2, 2}));
  auto j = U.to_json();
  CHECK(j["unit_mod_q"].size() == 1);
  CHECK(j["unit_mod_q"][0]["pass"] == true);
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{5, 11}, {9, 19}, {15, 31}, {7, 29}, {15, 61}})
    for (i64 sel = 0; sel < euler_phi(e) / multiplicative_order(p, e); ++sel)
      CHECK_MESSAGE(unit_certificates(e, p, sel).report.pass(), "e=", e, " p=", p);
}

TEST_CASE("unit certificates: the u_s identity at d = e fails exactly when f > 1") {
  // The trivial-character Jacobi sum over kappa is p^f - 2, not -(-(p-2))^f.
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{3, 2}, {3, 5}, {5, 2}, {9, 7}, {7, 2}}) {
    UnitCertificate U = unit_certificates(e, p, 0);
    const i64 f = multiplicative_order(p, e);
    for (const auto& c : U.report.checks) {
      const bool degenerate = c.name == "Det u_s" && c.params["d"] == std::to_string(e);
      CHECK_MESSAGE(c.pass == !(degenerate && f > 1), c.name, " e=", e, " p=", p);
    }
    CHECK(det_at_character(U.u_s, e).to_integer() == ipow(p, f) - 2);
    for (i64 q : prime_factors(e)) CHECK(U.u_s.is_unit_mod(q));
  }
}
