// Content theorems: the exponent vectors of cont(r(chi^d)), cont(s(chi^d))
// and cont(N(v_i)(chi^d)) from the counts n(Lambda, i, d), against the
// Stickelberger-side expansions and the generators c_r, c_s.
#include "cyclocert/homrep.hpp"
#include "cyclocert/stickelberger.hpp"
#include "cyclocert/sums.hpp"

namespace cyclocert::stickelberger {

using cyclo::CycField;
using cyclo::CycInt;
using cyclo::GaloisAlgElem;

namespace {

ExponentVector scaled(ExponentVector v, i64 k) {
  for (auto& x : v.exps) x *= k;
  return v;
}

bool norm_is_one_mod_e(const ExponentVector& v, i64 e) {
  const mpz_class n = v.norm() % e;
  return e == 1 || n == 1;
}

}  // namespace

Report verify_contents(i64 e, i64 p, i64 selector) {
  if (e % 2 == 0) throw std::invalid_argument("verify_contents: e must be odd");
  Report R;
  R.e = e;
  R.p = p;
  R.selector = selector;
  const auto F = CycField::make(e);
  const residue::PrimeAboveP P = residue::split_prime(F, p, selector);
  const CosetSpace C(e, p);
  const homrep::RsRepresentatives rs = homrep::rs_representatives(e, p);
  std::vector<homrep::KappaRepresentative> kappa;
  for (i64 i = 0; i < e; ++i) kappa.push_back(homrep::kappa_representative(e, p, i));
  Factorizer Fz(P);

  auto params = [&](i64 d) {
    return json{{"d", std::to_string(d)}, {"e", std::to_string(e)}, {"p", std::to_string(p)}, {"selector", std::to_string(selector)}};
  };
  auto compare = [&](const std::string& name, const json& pr, const ExponentVector& expected, const ExponentVector& actual) {
    R.add(name, pr, expected.to_json(C), actual.to_json(C), expected == actual);
  };

  for (i64 d : divisors(e)) {
    const i64 ep = e / d;
    const CosetSpace Cp(ep, p);
    const i64 s = C.f() / Cp.f();
    const json pr = params(d);
    const GaloisAlgElem theta = cyclo::stickelberger_element(ep);

    // r: e Theta_{e'} N_{e,e'}
    const ExponentVector r_counts = rs.r.at_divisor(d);
    compare("cont r vs e Theta N", pr, exponents_of(cyclo::lift_times_norm(theta * mpq_class(e), e), C), r_counts);
    compare("cont r vs folded level e'", pr, fold(scaled(exponents_of(theta * mpq_class(e), Cp), s), Cp, C), r_counts);
    R.add("cont r norm = 1 mod e", pr, "1", to_json(r_counts.norm() % e), norm_is_one_mod_e(r_counts, e));

    // s: H_{e,d} = H_{e'} N_{e,e'} = (2 - sigma_2) Theta_{e'} N_{e,e'}
    const ExponentVector s_counts = rs.s->at_divisor(d);
    compare("cont s vs H_{e,d}", pr, exponents_of(cyclo::h_ed_element(e, d), C), s_counts);
    compare("cont s vs H_{e'} N", pr, exponents_of(cyclo::lift_times_norm(cyclo::h_element(ep), e), C), s_counts);
    compare("cont s vs (2 - sigma_2) Theta N", pr,
            exponents_of(cyclo::lift_times_norm(cyclo::two_minus_sigma2(ep) * theta, e), C), s_counts);
    compare("cont s vs folded level e'", pr, fold(scaled(exponents_of(cyclo::h_element(ep), Cp), s), Cp, C), s_counts);
    R.add("cont s norm = 1 mod e", pr, "1", to_json(s_counts.norm() % e), norm_is_one_mod_e(s_counts, e));

    // N(v_i): trivial unless gcd(i, e) = d, else (P_{e'}^{sigma_{Lambda'_i}} O)^{f/f_{e'}}.
    for (i64 i = 0; i < e; ++i) {
      json pri = pr;
      pri["i"] = std::to_string(i);
      ExponentVector expected = zero_exponents(C);
      if (gcd(i, e) == d) {
        ExponentVector low = zero_exponents(Cp);
        low.exps[static_cast<size_t>(Cp.index_of(ep == 1 ? 0 : inverse_mod(i / d, ep)))] = s;
        expected = fold(low, Cp, C);
      }
      const ExponentVector counts = kappa[static_cast<size_t>(i)].norm.at_divisor(d);
      compare("cont N(v_i) vs Lambda'_i formula", pri, expected, counts);
      compare("N(v_i) by the norm product", pri, counts, homrep::norm_by_definition(kappa[static_cast<size_t>(i)], C, d));
      R.add("cont N(v_i) norm = 1 mod e", pri, "1", to_json(counts.norm() % e), norm_is_one_mod_e(counts, e));
    }

    // Generators: (c_r(chi^d)) = (G_{e'}^{e'})^{d f/f_{e'}} and (c_s(chi^d)) = (J_{e'})^{f/f_{e'}}.
    const residue::PrimeAboveP Q = residue::contract(P, ep);
    const CycInt Gp = CycInt(Q.field, sums::gauss_power_coeffs(Q)).embed(F);
    compare("c_r generates cont r", pr, r_counts, scaled(Fz.factor(Gp), d * s));
    const CycInt J = sums::jacobi_sum(Q, 1, 1).embed(F);
    if (ep > 1) {
      compare("c_s generates cont s", pr, s_counts, scaled(Fz.factor(J), s));
      R.add("J_{e'} supported above p", pr, true, Fz.supported_above_p(J), Fz.supported_above_p(J));
    } else if (!J.is_zero()) {
      // At e' = 1 the trivial-character sum J_1 = p - 2 is prime to p, so only
      // the valuations above p are compared.
      compare("c_s valuations above p", pr, s_counts, scaled(Fz.factor(J), s));
    }
  }

  // Equivariance: values at every chi^h against the counts at h directly.
  for (i64 h = 0; h < e; ++h) {
    ExponentVector r_direct = zero_exponents(C), s_direct = zero_exponents(C);
    for (i64 k = 0; k < C.size(); ++k)
      for (i64 i = 1; i < e; ++i) {
        const i64 n = homrep::n_count(e, p, C.coset(k), i, h);
        r_direct.exps[static_cast<size_t>(k)] += i * n;
        if (i >= (e + 1) / 2) s_direct.exps[static_cast<size_t>(k)] += n;
      }
    json pr = params(gcd(h, e));
    pr["h"] = std::to_string(h);
    compare("r equivariance", pr, r_direct, rs.r.at(h));
    compare("s equivariance", pr, s_direct, rs.s->at(h));
  }
  return R;
}

}  // namespace cyclocert::stickelberger
