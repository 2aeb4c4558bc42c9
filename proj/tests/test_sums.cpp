#include <cmath>
#include <functional>

#include "cyclocert/sums.hpp"
#include "doctest.h"

using namespace cyclocert;
using namespace cyclocert::sums;
using cyclo::CycField;
using cyclo::CycInt;
using residue::PrimeAboveP;

namespace {

std::vector<mpz_class> z(std::vector<long> c) { return {c.begin(), c.end()}; }

// Oracle: enumerate all e-tuples of nonzero residue-field elements literally,
// using only literal exponentiation for the symbol and the field trace.
std::vector<mpz_class> literal_tuple_m(const PrimeAboveP& P) {
  const auto& K = *P.kappa;
  const i64 e = P.e(), p = P.p, q = K.size();
  std::vector<i64> io(static_cast<size_t>(q)), tr(static_cast<size_t>(q));
  for (i64 idx = 1; idx < q; ++idx) {
    io[static_cast<size_t>(idx)] = mod(-*residue::power_residue_symbol(P, K.from_index(idx), e), e);
    tr[static_cast<size_t>(idx)] = K.trace(K.from_index(idx));
  }
  std::vector<mpz_class> c0(static_cast<size_t>(e)), c1(static_cast<size_t>(e));
  std::function<void(i64, i64, i64)> rec = [&](i64 depth, i64 isum, i64 tsum) {
    if (depth == e) {
      if (tsum == 0) c0[static_cast<size_t>(isum)] += 1;
      if (tsum == 1 % p) c1[static_cast<size_t>(isum)] += 1;
      return;
    }
    for (i64 idx = 1; idx < q; ++idx)
      rec(depth + 1, (isum + io[static_cast<size_t>(idx)]) % e, (tsum + tr[static_cast<size_t>(idx)]) % p);
  };
  rec(0, 0, 0);
  std::vector<mpz_class> m(static_cast<size_t>(e));
  for (i64 i = 0; i < e; ++i) m[static_cast<size_t>(i)] = c0[static_cast<size_t>(i)] - c1[static_cast<size_t>(i)];
  return m;
}

// Oracle: J by literal summation over F_p with the symbol computed as a power.
CycInt literal_jacobi_fp(const PrimeAboveP& P) {
  std::vector<mpz_class> c(static_cast<size_t>(P.e()));
  const auto& K = *P.kappa;
  for (i64 x = 2; x < P.p; ++x) {
    auto a = residue::power_residue_symbol(P, K.from_int(x), P.e());
    auto b = residue::power_residue_symbol(P, K.from_int(1 - x), P.e());
    c[static_cast<size_t>(mod(-*a - *b, P.e()))] += 1;
  }
  return CycInt(P.field, c);
}

std::vector<std::pair<i64, i64>> small_cases() {
  return {{1, 5}, {3, 7}, {3, 2}, {3, 13}, {3, 5}, {5, 11}, {5, 2}, {5, 3}, {7, 2}, {9, 7}, {9, 19}, {15, 31}, {15, 2}};
}

}  // namespace

TEST_CASE("anchor e=3, p=7, P=(7, zeta-2)") {
  PrimeAboveP P = residue::split_prime(CycField::make(3), 7, 0);
  CycInt J = jacobi_sum(P, 1, 1);
  CHECK(J.coeffs() == z({2, 3, 0}));
  CHECK(J == literal_jacobi_fp(P));
  CHECK(J.absolute_norm() == 7);
  CHECK(jacobi_coeffs(P) == z({2, 3, 0}));
  CHECK(literal_tuple_m(P) == z({2, 9, -12}));
  CHECK(gauss_power_counts(P) == z({2, 9, -12}));
  CHECK(gauss_power_multinomial(P) == z({2, 9, -12}));
  CHECK(gauss_power_interpolation(P) == z({2, 9, -12}));
  auto G3 = gauss_sum(P, 1).pow(3).zeta_part();
  REQUIRE(G3.has_value());
  CHECK(*G3 == CycInt(P.field, z({14, 21, 0})));
}

TEST_CASE("Gauss sum basics") {
  PrimeAboveP P = residue::split_prime(CycField::make(3), 7, 0);
  auto trivial = gauss_sum(P, 0).zeta_part();
  REQUIRE(trivial.has_value());
  CHECK(trivial->to_integer() == -1);
  for (auto [e, p] : small_cases()) {
    for (const auto& Q : residue::split_all(CycField::make(e), p)) {
      if (Q.kappa->size() > 400) continue;
      const ExtendedCycInt G = gauss_sum(Q, 1);
      const ExtendedCycInt conj = G.galois_zeta(e - 1 + (e == 1)).galois_xi(-1);
      const i64 k = *residue::power_residue_symbol(Q, Q.kappa->from_int(-1), e);
      ExtendedCycInt rhs = ExtendedCycInt::from_cycint(CycInt::zeta(Q.field, -k) * mpz_class(Q.kappa->size()), p);
      if (e > 1) CHECK(G * conj == rhs);
      for (i64 b = 1; b < p; ++b) {
        const i64 kb = *residue::power_residue_symbol(Q, Q.kappa->from_int(b), e);
        // theta(b)^{-1} = zeta^{k(b)}
        CHECK(G.galois_xi(b) == ExtendedCycInt::from_cycint(CycInt::zeta(Q.field, kb), p) * G);
      }
      CHECK(G.pow(e).zeta_part().has_value());
    }
  }
}

TEST_CASE("m-vector: all paths agree with the literal tuple oracle") {
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{1, 7}, {3, 7}, {3, 2}, {3, 13}, {3, 5}, {5, 11}, {5, 2}, {4, 5}, {7, 2}, {9, 7}}) {
    for (const auto& Q : residue::split_all(CycField::make(e), p)) {
      const auto m = gauss_power_counts(Q);
      if (std::pow(static_cast<double>(Q.kappa->size()), static_cast<double>(e)) <= 2e6) CHECK(literal_tuple_m(Q) == m);
      if (Q.kappa->size() <= 200) {
        CHECK(gauss_power_multinomial(Q) == m);
        CHECK(gauss_power_interpolation(Q) == m);
      }
      mpz_class s = 0;
      for (const auto& c : m) s += c;
      CHECK(s == (e % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("m-vector: the three paths agree for e <= 5, p^f <= 200") {
  for (i64 e = 1; e <= 5; ++e)
    for (i64 p = 2; p <= 200; ++p) {
      if (!is_prime(p) || e % p == 0) continue;
      const i64 f = multiplicative_order(p, e);
      if (ipow(p, f) > 200) continue;
      for (const auto& Q : residue::split_all(CycField::make(e), p)) CHECK_NOTHROW(gauss_power_coeffs(Q));
    }
}

TEST_CASE("evaluating m at zeta^d reproduces G(theta^d)^e") {
  for (auto [e, p] : small_cases()) {
    for (const auto& Q : residue::split_all(CycField::make(e), p)) {
      if (Q.kappa->size() > 64) continue;
      const auto m = gauss_power_counts(Q);
      for (i64 d : divisors(e)) {
        auto F = CycField::make(e / d);
        auto brute = gauss_sum_at_level(Q, d).pow(e).zeta_part();
        REQUIRE(brute.has_value());
        CHECK(evaluate_at_power(m, F, d) == *brute);
      }
    }
  }
}

TEST_CASE("Jacobi coefficients") {
  for (auto [e, p] : small_cases()) {
    for (const auto& Q : residue::split_all(CycField::make(e), p)) {
      const auto n = jacobi_coeffs(Q);
      mpz_class s = 0;
      for (const auto& c : n) {
        CHECK(c >= 0);
        s += c;
      }
      CHECK(s == Q.kappa->size() - 2);
      if (Q.f == 1) CHECK(jacobi_sum(Q, 1, 1) == literal_jacobi_fp(Q));
    }
  }
  PrimeAboveP P1 = residue::split_prime(CycField::make(1), 7, 0);
  CHECK(jacobi_sum(P1, 1, 1).to_integer() == 5);
}

TEST_CASE("Davenport-Hasse examples") {
  auto F9 = CycField::make(9);
  for (const auto& P : residue::split_all(F9, 7)) {
    CHECK(davenport_hasse_jacobi(P, 3));
    CHECK(davenport_hasse_gauss(P, 3));
    CHECK(davenport_hasse_jacobi(P, 9));
    CHECK(davenport_hasse_gauss(P, 9));
    CHECK(davenport_hasse_gauss(P, 1));
  }
  PrimeAboveP P = residue::split_prime(CycField::make(3), 7, 0);
  CHECK(davenport_hasse_jacobi(P, 1));
  CHECK(davenport_hasse_gauss(P, 1));
  CHECK(davenport_hasse_jacobi(P, 3));
  CHECK(davenport_hasse_gauss(P, 3));
}

TEST_CASE("the Jacobi form fails for the trivial character once f > 1") {
  // Lifted sum counts p^f - 2 elements, while -(-(p - 2))^f differs for f >= 2.
  PrimeAboveP P = residue::split_prime(CycField::make(3), 2, 0);
  CHECK_FALSE(davenport_hasse_jacobi(P, 1));
  CHECK(davenport_hasse_gauss(P, 1));
  PrimeAboveP Q = residue::split_prime(CycField::make(3), 5, 0);
  CHECK_FALSE(davenport_hasse_jacobi(Q, 1));
}

TEST_CASE("Jacobi-Gauss relation") {
  for (auto [e, p] : std::vector<std::pair<i64, i64>>{{3, 7}, {5, 11}, {9, 7}}) {
    for (const auto& P : residue::split_all(CycField::make(e), p)) CHECK(jacobi_gauss_relation(P));
  }
}
