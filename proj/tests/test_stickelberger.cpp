#include <random>

#include "cyclocert/stickelberger.hpp"
#include "cyclocert/sums.hpp"
#include "doctest.h"

using namespace cyclocert;
using namespace cyclocert::stickelberger;
using cyclo::CycField;
using cyclo::CycInt;
using residue::PrimeAboveP;

namespace {

CycInt make(i64 e, std::vector<long> c) { return CycInt(CycField::make(e), std::vector<mpz_class>(c.begin(), c.end())); }

CycInt random_elem(const cyclo::FieldPtr& F, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<mpz_class> c(static_cast<size_t>(F->e()));
  for (auto& x : c) x = d(rng);
  return CycInt(F, c);
}

// Oracle for membership in (p, g(zeta)): the image in kappa at zeta_image vanishes.
bool in_prime_by_reduction(const PrimeAboveP& P, const CycInt& x) {
  const auto& K = *P.kappa;
  residue::FqElem acc = K.zero(), z = K.one();
  for (i64 i = 0; i < x.e(); ++i) {
    mpz_class c;
    mpz_fdiv_r_ui(c.get_mpz_t(), x[i].get_mpz_t(), static_cast<unsigned long>(P.p));
    acc = K.add(acc, K.mul(K.from_int(c.get_si()), z));
    z = K.mul(z, P.zeta_image);
  }
  return K.is_zero(acc);
}

}  // namespace

TEST_CASE("coset spaces") {
  CosetSpace C(9, 7);
  CHECK(C.f() == 3);
  REQUIRE(C.size() == 2);
  CHECK(C.coset(0) == std::vector<i64>{1, 4, 7});
  CHECK(C.coset(1) == std::vector<i64>{2, 5, 8});
  CHECK(C.index_of(13) == 0);
  CHECK(C.translate(0, 2) == 1);
  CHECK(C.is_coset({2, 5, 8}));
  CHECK_FALSE(C.is_coset({2, 5}));
  CHECK_THROWS(C.index_of(3));
  CosetSpace one(1, 5);
  CHECK(one.size() == 1);
  CHECK(one.coset(0) == std::vector<i64>{0});
}

TEST_CASE("ideal_from_generators examples") {
  auto F = CycField::make(3);
  IdealLattice P = IdealLattice::from_generators(F, {make(3, {-2, 1, 0})}, 7);
  CHECK(P.norm() == 7);
  CHECK(P == IdealLattice::prime(residue::split_prime(F, 7, 0)));
  CHECK(IdealLattice::from_generators(F, {make(3, {1, 0, 0})}).norm() == 1);
  IdealLattice J = IdealLattice::from_generators(F, {make(3, {2, 3, 0})});
  CHECK(J.norm() == 7);
  CHECK(J == IdealLattice::prime(residue::split_prime(F, 7, 1)));
  CHECK(J == P.galois(2));
  CHECK_THROWS(IdealLattice::from_generators(F, {CycInt(F)}));
}

TEST_CASE("ideal products and powers") {
  auto F = CycField::make(3);
  IdealLattice P = IdealLattice::prime(residue::split_prime(F, 7, 0));
  IdealLattice Pc = IdealLattice::prime(residue::split_prime(F, 7, 1));
  CHECK(P * Pc == IdealLattice::from_generators(F, {CycInt::constant(F, 7)}));
  CHECK(P * IdealLattice::unit(F) == P);
  CHECK(P.pow(0) == IdealLattice::unit(F));
  CHECK(P.pow(3).norm() == 343);
  CHECK(P.pow(2).zeta_stable());
}

TEST_CASE("HNF shape, zeta stability and canonicity") {
  std::mt19937_64 rng(3);
  for (i64 e : {3, 5, 7, 9, 15, 4, 12}) {
    auto F = CycField::make(e);
    for (int t = 0; t < 25; ++t) {
      CycInt x = random_elem(F, rng, 6), y = random_elem(F, rng, 6);
      if (x.is_zero() || y.is_zero()) continue;
      IdealLattice X = IdealLattice::from_generators(F, {x}), Y = IdealLattice::from_generators(F, {y});
      const auto& W = X.rows();
      for (size_t k = 0; k < W.size(); ++k) {
        CHECK(W[k][k] > 0);
        for (size_t j = 0; j < k; ++j) CHECK(W[k][j] == 0);
        for (size_t i = 0; i < k; ++i) CHECK((W[i][k] >= 0 && W[i][k] < W[k][k]));
      }
      CHECK(X.zeta_stable());
      CHECK(X.norm() == abs(x.absolute_norm()));
      CHECK(X * Y == IdealLattice::from_generators(F, {x * y}));
      CHECK(IdealLattice::from_generators(F, {x * CycInt::zeta(F, 2 + t)}) == X);
      CHECK(IdealLattice::from_generators(F, {x, x * y}) == X);
      CHECK(X.contains(x * y));
    }
  }
}

TEST_CASE("prime membership agrees with reduction into kappa") {
  std::mt19937_64 rng(5);
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{3, 7}, {5, 11}, {9, 7}, {15, 2}, {7, 29}}) {
    for (const auto& P : residue::split_all(CycField::make(e), p)) {
      IdealLattice L = IdealLattice::prime(P);
      CHECK(L.norm() == P.kappa->size());
      for (int t = 0; t < 60; ++t) {
        CycInt x = random_elem(P.field, rng, 3 * p);
        CHECK(L.contains(x) == in_prime_by_reduction(P, x));
      }
    }
  }
}

TEST_CASE("valuation examples") {
  auto F = CycField::make(3);
  PrimeAboveP P = residue::split_prime(F, 7, 0), Pc = residue::split_prime(F, 7, 1);
  CHECK(valuation(CycInt::constant(F, 7), P) == 1);
  CHECK(valuation(CycInt::constant(F, 7), Pc) == 1);
  CHECK(valuation(CycInt::constant(F, 1), P) == 0);
  CHECK(valuation(make(3, {2, 3, 0}), P) == 0);
  CHECK(valuation(make(3, {2, 3, 0}), Pc) == 1);
  CHECK(valuation(make(3, {14, 21, 0}), P) == 1);
  CHECK(valuation(make(3, {14, 21, 0}), Pc) == 2);
  CHECK_THROWS(valuation(CycInt(F), P));
}

TEST_CASE("valuation additivity and the norm identity above p") {
  std::mt19937_64 rng(9);
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{3, 7}, {5, 11}, {9, 19}, {15, 31}, {15, 2}}) {
    auto F = CycField::make(e);
    PrimeAboveP P = residue::split_prime(F, p, 0);
    Factorizer Fz(P);
    std::vector<CycInt> pieces{sums::jacobi_sum(P, 1, 1), CycInt::constant(F, p)};
    for (int t = 0; t < 12; ++t) {
      CycInt x = random_elem(F, rng, 5), y = random_elem(F, rng, 5);
      if (x.is_zero() || y.is_zero()) continue;
      auto vx = Fz.factor(x), vy = Fz.factor(y), vxy = Fz.factor(x * y);
      for (size_t k = 0; k < vx.exps.size(); ++k) CHECK(vxy.exps[k] == vx.exps[k] + vy.exps[k]);
      // Supported above p: products of Galois conjugates of J and p.
      CycInt z = CycInt::constant(F, 1);
      for (i64 a : units_mod(e))
        if (rng() % 2) z = z * pieces[rng() % 2].galois(a);
      const auto vz = Fz.factor(z);
      mpz_class N = abs(z.absolute_norm());
      i64 vp = 0;
      while (N % p == 0) {
        N /= p;
        ++vp;
      }
      CHECK(N == 1);
      CHECK(vz.weight() * P.f == vp);
      CHECK(Fz.supported_above_p(z));
    }
  }
}

TEST_CASE("exponent vectors and folding") {
  CosetSpace C3(3, 7), C9(9, 7);
  auto v = exponents_of(cyclo::stickelberger_element(3) * mpq_class(3), C3);
  CHECK(v.exps == std::vector<mpz_class>{1, 2});
  CHECK(v.norm() == 343);
  CHECK_THROWS(exponents_of(cyclo::stickelberger_element(3), C3));
  auto w = fold(v, C3, C9);
  CHECK(w.exps == std::vector<mpz_class>{1, 2});
  auto lifted = exponents_of(cyclo::lift_times_norm(cyclo::stickelberger_element(3) * mpq_class(3), 9), C9);
  CHECK(lifted.exps == std::vector<mpz_class>{3, 6});
  CosetSpace C1(1, 7);
  CHECK(fold(ExponentVector{1, 7, 1, {5}}, C1, C9).exps == std::vector<mpz_class>{5, 5});
}

TEST_CASE("verify_stickelberger anchor e=3, p=7") {
  PrimeAboveP P = residue::split_prime(CycField::make(3), 7, 0);
  Report R = verify_stickelberger(P);
  CHECK(R.pass());
  REQUIRE(R.checks.size() == 4);
  CHECK(R.checks[0].actual == json{{"1", "0"}, {"2", "1"}});
  CHECK(R.checks[2].actual == json{{"1", "1"}, {"2", "2"}});
}

TEST_CASE("verify_stickelberger on a small grid") {
  for (i64 e : {3, 5, 7, 9, 15})
    for (i64 p = 2; p < 80; ++p) {
      if (!is_prime(p) || e % p == 0 || ipow(p, multiplicative_order(p, e)) > 2000) continue;
      for (const auto& P : residue::split_all(CycField::make(e), p)) {
        Report R = verify_stickelberger(P);
        CHECK_MESSAGE(R.pass(), "e=", e, " p=", p, " selector=", P.selector);
      }
    }
}

TEST_CASE("verify_contents examples") {
  Report R = verify_contents(3, 7, 0);
  CHECK(R.pass());
  for (const auto& c : R.checks)
    if (c.name == "cont s vs H_{e,d}" && c.params["d"] == "1") CHECK(c.actual == json{{"1", "0"}, {"2", "1"}});
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{3, 2}, {5, 11}, {9, 7}, {15, 2}, {15, 31}, {1, 5}})
    for (i64 sel = 0; sel < euler_phi(e) / multiplicative_order(p, e); ++sel)
      CHECK_MESSAGE(verify_contents(e, p, sel).pass(), "e=", e, " p=", p);
  CHECK_THROWS(verify_contents(4, 5, 0));
}
