#include "cyclocert/residue.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace cyclocert::residue {

namespace polyfp {

void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

i64 degree(const PolyFp& a) { return static_cast<i64>(a.size()) - 1; }

PolyFp add(const PolyFp& a, const PolyFp& b, i64 p) {
  PolyFp r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    i64 x = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = mod(x, p);
  }
  trim(r);
  return r;
}

PolyFp sub(const PolyFp& a, const PolyFp& b, i64 p) {
  PolyFp r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    i64 x = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = mod(x, p);
  }
  trim(r);
  return r;
}

PolyFp mul(const PolyFp& a, const PolyFp& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(r);
  return r;
}

std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b, i64 p) {
  if (b.empty()) throw std::domain_error("polyfp::divmod: division by zero");
  PolyFp r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  const i64 inv = inverse_mod(b.back(), p);
  PolyFp q(r.size() - b.size() + 1);
  const size_t db = b.size() - 1;
  for (size_t k = r.size() - 1;; --k) {
    i64 c = mulmod(r[k], inv, p);
    q[k - db] = c;
    if (c != 0)
      for (size_t j = 0; j <= db; ++j) r[k - db + j] = mod(r[k - db + j] - mulmod(c, b[j], p), p);
    if (k == db) break;
  }
  trim(q);
  trim(r);
  return {q, r};
}

PolyFp rem(const PolyFp& a, const PolyFp& b, i64 p) { return divmod(a, b, p).second; }

PolyFp make_monic(const PolyFp& a, i64 p) {
  if (a.empty()) return a;
  const i64 inv = inverse_mod(a.back(), p);
  PolyFp r = a;
  for (auto& c : r) c = mulmod(c, inv, p);
  return r;
}

PolyFp gcd(PolyFp a, PolyFp b, i64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFp r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

PolyFp powmod(const PolyFp& a, mpz_class k, const PolyFp& m, i64 p) {
  PolyFp result = rem({1}, m, p);
  PolyFp base = rem(a, m, p);
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = rem(mul(result, base, p), m, p);
    k >>= 1;
    if (k > 0) base = rem(mul(base, base, p), m, p);
  }
  return result;
}

PolyFp from_z(const cyclo::ZPoly& a, i64 p) {
  PolyFp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_class c = a[i] % p;
    if (c < 0) c += p;
    r[i] = c.get_si();
  }
  trim(r);
  return r;
}

}  // namespace polyfp

namespace {

using namespace polyfp;

mpz_class prime_power(i64 p, i64 k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

// Trial element number t for splitting a polynomial of degree n: the
// polynomial whose coefficient list is t written in base p.
PolyFp trial_element(std::uint64_t t, i64 n, i64 p) {
  PolyFp a;
  for (i64 i = 0; i < n && t > 0; ++i) {
    a.push_back(static_cast<i64>(t % static_cast<std::uint64_t>(p)));
    t /= static_cast<std::uint64_t>(p);
  }
  trim(a);
  return a;
}

// Splitting polynomial: a^{(q-1)/2} - 1 for odd p, the trace to F_2 for p = 2.
PolyFp splitter(const PolyFp& a, const PolyFp& h, i64 f, i64 p) {
  if (p == 2) {
    PolyFp t, x = rem(a, h, p);
    for (i64 i = 0; i < f; ++i) {
      t = add(t, x, p);
      x = rem(mul(x, x, p), h, p);
    }
    return t;
  }
  mpz_class k = (prime_power(p, f) - 1) / 2;
  return sub(powmod(a, k, h, p), {1}, p);
}

void equal_degree_split(const PolyFp& h, i64 f, i64 p, std::mt19937_64& rng, std::vector<PolyFp>& out) {
  const i64 n = degree(h);
  if (n == f) {
    out.push_back(h);
    return;
  }
  constexpr std::uint64_t kDeterministicTrials = 64;
  for (std::uint64_t t = 1;; ++t) {
    PolyFp a;
    if (t <= kDeterministicTrials) {
      a = trial_element(t + static_cast<std::uint64_t>(p), n, p);
    } else {
      for (i64 i = 0; i < n; ++i) a.push_back(static_cast<i64>(rng() % static_cast<std::uint64_t>(p)));
      trim(a);
    }
    if (degree(a) < 1) continue;
    PolyFp g = gcd(h, splitter(a, h, f, p), p);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree_split(g, f, p, rng, out);
      equal_degree_split(divmod(h, g, p).first, f, p, rng, out);
      return;
    }
  }
}

std::vector<i64> symmetric(const PolyFp& a, i64 p) {
  std::vector<i64> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] > p / 2 ? a[i] - p : a[i];
  return r;
}

}  // namespace

std::vector<PolyFp> factor_cyclotomic_mod_p(i64 e, i64 p, std::uint64_t seed) {
  if (!is_prime(p)) throw std::invalid_argument("factor_cyclotomic_mod_p: p must be prime");
  if (e % p == 0) throw std::invalid_argument("factor_cyclotomic_mod_p: p divides e");
  PolyFp h = from_z(cyclo::cyclotomic_polynomial(e), p);
  std::mt19937_64 rng(seed);
  std::vector<PolyFp> out;
  // Distinct-degree factorization.
  PolyFp xp = {0, 1};
  for (i64 d = 1; degree(h) >= 2 * d; ++d) {
    xp = powmod(xp, p, h, p);
    PolyFp g = gcd(h, sub(xp, {0, 1}, p), p);
    if (degree(g) > 0) {
      equal_degree_split(g, d, p, rng, out);
      h = divmod(h, g, p).first;
      xp = rem(xp, h, p);
    }
  }
  if (degree(h) > 0) out.push_back(make_monic(h, p));
  std::sort(out.begin(), out.end(), [p](const PolyFp& a, const PolyFp& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return symmetric(a, p) < symmetric(b, p);
  });
  return out;
}

ResidueField::ResidueField(i64 p, PolyFp modulus) : p_(p), g_(std::move(modulus)) {
  f_ = degree(g_);
  if (f_ < 1) throw std::invalid_argument("ResidueField: modulus must have positive degree");
  q_ = ipow(p_, f_);
}

FqElem ResidueField::zero() const { return FqElem{std::vector<i64>(static_cast<size_t>(f_), 0)}; }

FqElem ResidueField::one() const { return from_int(1); }

FqElem ResidueField::from_int(i64 c) const {
  FqElem r = zero();
  r.coeffs[0] = mod(c, p_);
  return r;
}

FqElem ResidueField::gen() const {
  PolyFp x = rem({0, 1}, g_, p_);
  FqElem r = zero();
  for (size_t i = 0; i < x.size(); ++i) r.coeffs[i] = x[i];
  return r;
}

FqElem ResidueField::add(const FqElem& a, const FqElem& b) const {
  FqElem r = zero();
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
  return r;
}

FqElem ResidueField::sub(const FqElem& a, const FqElem& b) const {
  FqElem r = zero();
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = mod(a.coeffs[i] - b.coeffs[i], p_);
  return r;
}

FqElem ResidueField::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem ResidueField::mul(const FqElem& a, const FqElem& b) const {
  PolyFp pa(a.coeffs), pb(b.coeffs);
  trim(pa);
  trim(pb);
  PolyFp r = rem(polyfp::mul(pa, pb, p_), g_, p_);
  FqElem out = zero();
  for (size_t i = 0; i < r.size(); ++i) out.coeffs[i] = r[i];
  return out;
}

FqElem ResidueField::pow(const FqElem& a, mpz_class k) const {
  if (k < 0) return pow(inv(a), -k);
  FqElem r = one(), b = a;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mul(r, b);
    k >>= 1;
    if (k > 0) b = mul(b, b);
  }
  return r;
}

FqElem ResidueField::inv(const FqElem& a) const {
  if (is_zero(a)) throw std::domain_error("ResidueField::inv: zero");
  return pow(a, mpz_class(q_) - 2);
}

bool ResidueField::is_zero(const FqElem& a) const {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](i64 c) { return c == 0; });
}

i64 ResidueField::trace(const FqElem& a) const {
  FqElem t = zero(), x = a;
  for (i64 i = 0; i < f_; ++i) {
    t = add(t, x);
    x = pow(x, p_);
  }
  for (size_t i = 1; i < t.coeffs.size(); ++i)
    if (t.coeffs[i] != 0) throw std::logic_error("trace: result not in the prime field");
  return t.coeffs[0];
}

i64 ResidueField::index(const FqElem& a) const {
  i64 idx = 0;
  for (size_t i = a.coeffs.size(); i-- > 0;) idx = idx * p_ + a.coeffs[i];
  return idx;
}

FqElem ResidueField::from_index(i64 idx) const {
  FqElem r = zero();
  for (auto& c : r.coeffs) {
    c = idx % p_;
    idx /= p_;
  }
  return r;
}

FqElem ResidueField::eval(const PolyFp& poly, const FqElem& a) const {
  FqElem r = zero();
  for (size_t i = poly.size(); i-- > 0;) r = add(mul(r, a), from_int(poly[i]));
  return r;
}

PrimeAboveP split_prime(const cyclo::FieldPtr& field, i64 p, i64 selector) {
  auto factors = std::make_shared<const std::vector<PolyFp>>(factor_cyclotomic_mod_p(field->e(), p));
  if (selector < 0 || selector >= static_cast<i64>(factors->size()))
    throw std::out_of_range("split_prime: selector out of range");
  PrimeAboveP P;
  P.field = field;
  P.p = p;
  P.f = multiplicative_order(p, field->e());
  P.g = (*factors)[static_cast<size_t>(selector)];
  P.selector = selector;
  P.num_selectors = static_cast<i64>(factors->size());
  P.kappa = std::make_shared<const ResidueField>(p, P.g);
  P.zeta_image = P.kappa->gen();
  P.factors = factors;
  if (degree(P.g) != P.f) throw std::logic_error("split_prime: factor degree differs from order of p");
  return P;
}

std::vector<PrimeAboveP> split_all(const cyclo::FieldPtr& field, i64 p) {
  PrimeAboveP first = split_prime(field, p, 0);
  std::vector<PrimeAboveP> out{first};
  for (i64 s = 1; s < first.num_selectors; ++s) out.push_back(split_prime(field, p, s));
  return out;
}

i64 selector_of_conjugate(const PrimeAboveP& P, i64 a) {
  const i64 e = P.e();
  const FqElem root = P.kappa->pow(P.zeta_image, inverse_mod(a, e));
  for (size_t j = 0; j < P.factors->size(); ++j)
    if (P.kappa->is_zero(P.kappa->eval((*P.factors)[j], root))) return static_cast<i64>(j);
  throw std::logic_error("selector_of_conjugate: no factor vanishes at the conjugate root");
}

std::vector<i64> conjugating_residues(const PrimeAboveP& P0, const PrimeAboveP& P) {
  std::vector<i64> out;
  for (i64 a : units_mod(P0.e()))
    if (selector_of_conjugate(P0, a) == P.selector) out.push_back(a);
  return out;
}

PrimeAboveP contract(const PrimeAboveP& P, i64 ep) {
  const i64 e = P.e();
  if (ep < 1 || e % ep != 0) throw std::invalid_argument("contract: e' must divide e");
  auto small = cyclo::CycField::make(ep);
  const FqElem root = P.kappa->pow(P.zeta_image, e / ep);
  auto factors = factor_cyclotomic_mod_p(ep, P.p);
  for (size_t j = 0; j < factors.size(); ++j)
    if (P.kappa->is_zero(P.kappa->eval(factors[j], root))) return split_prime(small, P.p, static_cast<i64>(j));
  throw std::logic_error("contract: no factor of the smaller cyclotomic polynomial vanishes");
}

FqElem embed_contracted(const PrimeAboveP& P, const PrimeAboveP& Q, const FqElem& y) {
  const FqElem root = P.kappa->pow(P.zeta_image, P.e() / Q.e());
  PolyFp poly(y.coeffs);
  return P.kappa->eval(poly, root);
}

i64 field_trace(const PrimeAboveP& P, const FqElem& x) { return P.kappa->trace(x); }

std::optional<i64> power_residue_symbol(const PrimeAboveP& P, const FqElem& x, i64 ep) {
  const i64 e = P.e();
  if (ep < 1 || e % ep != 0) throw std::invalid_argument("power_residue_symbol: e' must divide e");
  if (P.kappa->is_zero(x)) return std::nullopt;
  const FqElem y = P.kappa->pow(x, mpz_class((P.kappa->size() - 1) / ep));
  const FqElem step = P.kappa->pow(P.zeta_image, e / ep);
  FqElem z = P.kappa->one();
  for (i64 k = 0; k < ep; ++k) {
    if (z == y) return k;
    z = P.kappa->mul(z, step);
  }
  throw std::logic_error("power_residue_symbol: power is not a root of unity of the expected order");
}

SymbolTable::SymbolTable(const PrimeAboveP& P) {
  const ResidueField& K = *P.kappa;
  const i64 q = K.size(), p = K.p(), e = P.e();
  const auto qf = prime_factors(q - 1);
  i64 gen_idx = -1;
  for (i64 idx = 1; idx < q && gen_idx < 0; ++idx) {
    FqElem a = K.from_index(idx);
    bool ok = true;
    for (i64 l : qf)
      if (K.pow(a, (q - 1) / l) == K.one()) {
        ok = false;
        break;
      }
    if (ok) gen_idx = idx;
  }
  if (gen_idx < 0) throw std::logic_error("SymbolTable: no generator found");
  exp_.assign(static_cast<size_t>(q - 1), 0);
  log_.assign(static_cast<size_t>(q), -1);
  const FqElem g = K.from_index(gen_idx);
  FqElem x = K.one();
  for (i64 k = 0; k < q - 1; ++k) {
    i64 idx = K.index(x);
    if (log_[static_cast<size_t>(idx)] >= 0) throw std::logic_error("SymbolTable: generator has small order");
    exp_[static_cast<size_t>(k)] = idx;
    log_[static_cast<size_t>(idx)] = k;
    x = K.mul(x, g);
  }
  const i64 L = log_[static_cast<size_t>(K.index(P.zeta_image))];
  const i64 step = (q - 1) / e;
  if (L % step != 0) throw std::logic_error("SymbolTable: zeta image has wrong order");
  const i64 zinv = inverse_mod(L / step, e);
  symbol_.assign(static_cast<size_t>(q), -1);
  for (i64 idx = 1; idx < q; ++idx) symbol_[static_cast<size_t>(idx)] = mulmod(log_[static_cast<size_t>(idx)], zinv, e);

  std::vector<i64> basis_trace(static_cast<size_t>(K.f()));
  for (i64 i = 0; i < K.f(); ++i) basis_trace[static_cast<size_t>(i)] = K.trace(K.pow(K.gen(), i));
  trace_.assign(static_cast<size_t>(q), 0);
  one_minus_.assign(static_cast<size_t>(q), 0);
  for (i64 idx = 0; idx < q; ++idx) {
    i64 t = 0, r = idx, om = 0, place = 1;
    for (i64 i = 0; i < K.f(); ++i) {
      i64 c = r % p;
      r /= p;
      t = (t + c * basis_trace[static_cast<size_t>(i)]) % p;
      i64 c1 = mod((i == 0 ? 1 : 0) - c, p);
      om += c1 * place;
      place *= p;
    }
    trace_[static_cast<size_t>(idx)] = t;
    one_minus_[static_cast<size_t>(idx)] = om;
  }
}

bool lifted_symbol_check(const PrimeAboveP& P, i64 d) {
  const i64 e = P.e();
  if (d < 1 || e % d != 0) throw std::invalid_argument("lifted_symbol_check: d must divide e");
  const i64 ep = e / d;
  const PrimeAboveP Q = contract(P, ep);
  const ResidueField& K = *P.kappa;
  std::unordered_map<i64, i64> pullback;  // kappa index -> Q.kappa index
  for (i64 j = 0; j < Q.kappa->size(); ++j) pullback[K.index(embed_contracted(P, Q, Q.kappa->from_index(j)))] = j;
  if (static_cast<i64>(pullback.size()) != Q.kappa->size()) return false;
  mpz_class S = 0;
  for (i64 t = 0; t < P.f / Q.f; ++t) S += prime_power(P.p, t * Q.f);
  const SymbolTable T(P), TQ(Q);
  for (i64 idx = 1; idx < K.size(); ++idx) {
    const i64 lhs = mod(T.symbol(idx) * d, e) / d;  // zeta^{kd} = zeta_{e'}^{k mod e'}
    auto it = pullback.find(K.index(K.pow(K.from_index(idx), S)));
    if (it == pullback.end()) return false;
    if (lhs != TQ.symbol(it->second)) return false;
  }
  return true;
}

}  // namespace cyclocert::residue
