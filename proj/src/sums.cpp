#include "cyclocert/sums.hpp"

#include <stdexcept>
#include <unordered_map>

namespace cyclocert::sums {

using cyclo::CycField;
using cyclo::CycInt;
using cyclo::FieldPtr;
using residue::PrimeAboveP;
using residue::SymbolTable;

namespace {

// Reduces a length-e column modulo Phi_e in place and reports whether it vanishes.
bool column_vanishes(std::vector<mpz_class>& col, const cyclo::ZPoly& phi) {
  const size_t deg = phi.size() - 1;
  for (size_t k = col.size(); k-- > deg;) {
    if (col[k] == 0) continue;
    mpz_class c = col[k];
    for (size_t j = 0; j <= deg; ++j) col[k - deg + j] -= c * phi[j];
  }
  for (const auto& c : col)
    if (c != 0) return false;
  return true;
}

std::vector<mpz_class> cyclic_convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  const size_t n = a.size();
  std::vector<mpz_class> r(n);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(r[(i + j) % n].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return r;
}

mpz_class binomial(i64 n, i64 k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Reduced coefficients (length phi(e')) of zeta_{e'}^k.
std::vector<mpz_class> reduced_monomial(const FieldPtr& F, i64 k) { return CycInt::zeta(F, k).reduced(); }

}  // namespace

ExtendedCycInt::ExtendedCycInt(FieldPtr field, i64 p)
    : field_(std::move(field)), p_(p), data_(static_cast<size_t>(field_->e() * (p - 1))) {
  if (p < 2 || field_->e() % p == 0) throw std::invalid_argument("ExtendedCycInt: need p prime not dividing e");
}

ExtendedCycInt ExtendedCycInt::from_cycint(const CycInt& x, i64 p) {
  ExtendedCycInt r(x.field(), p);
  for (i64 i = 0; i < x.e(); ++i) r.data_[static_cast<size_t>(i * (p - 1))] = x[i];
  return r;
}

void ExtendedCycInt::add_term(i64 i, i64 j, const mpz_class& c) {
  i = mod(i, e());
  j = mod(j, p_);
  if (j == p_ - 1) {
    for (i64 t = 0; t < p_ - 1; ++t) data_[static_cast<size_t>(i * (p_ - 1) + t)] -= c;
  } else {
    data_[static_cast<size_t>(i * (p_ - 1) + j)] += c;
  }
}

void ExtendedCycInt::check_same(const ExtendedCycInt& o) const {
  if (e() != o.e() || p_ != o.p_) throw std::invalid_argument("ExtendedCycInt: mismatched rings");
}

ExtendedCycInt ExtendedCycInt::operator+(const ExtendedCycInt& o) const {
  check_same(o);
  ExtendedCycInt r = *this;
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

ExtendedCycInt ExtendedCycInt::operator-(const ExtendedCycInt& o) const {
  check_same(o);
  ExtendedCycInt r = *this;
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

ExtendedCycInt ExtendedCycInt::operator-() const {
  ExtendedCycInt r = *this;
  for (auto& c : r.data_) c = -c;
  return r;
}

ExtendedCycInt ExtendedCycInt::operator*(const ExtendedCycInt& o) const {
  check_same(o);
  const i64 e = this->e(), w = p_ - 1;
  std::vector<mpz_class> tmp(static_cast<size_t>(e * p_));
  struct Term {
    i64 i, j;
    const mpz_class* c;
  };
  std::vector<Term> rhs;
  for (i64 i = 0; i < e; ++i)
    for (i64 j = 0; j < w; ++j)
      if (o.at(i, j) != 0) rhs.push_back({i, j, &o.at(i, j)});
  for (i64 i1 = 0; i1 < e; ++i1)
    for (i64 j1 = 0; j1 < w; ++j1) {
      const mpz_class& a = at(i1, j1);
      if (a == 0) continue;
      for (const Term& t : rhs) {
        i64 i = i1 + t.i, j = j1 + t.j;
        if (i >= e) i -= e;
        if (j >= p_) j -= p_;
        mpz_addmul(tmp[static_cast<size_t>(i * p_ + j)].get_mpz_t(), a.get_mpz_t(), t.c->get_mpz_t());
      }
    }
  ExtendedCycInt r(field_, p_);
  for (i64 i = 0; i < e; ++i) {
    const mpz_class& top = tmp[static_cast<size_t>(i * p_ + w)];
    for (i64 j = 0; j < w; ++j) r.data_[static_cast<size_t>(i * w + j)] = tmp[static_cast<size_t>(i * p_ + j)] - top;
  }
  return r;
}

ExtendedCycInt ExtendedCycInt::pow(i64 k) const {
  if (k < 0) throw std::invalid_argument("ExtendedCycInt::pow: negative exponent");
  ExtendedCycInt r(field_, p_);
  r.add_term(0, 0, 1);
  ExtendedCycInt b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k > 0) b = b * b;
  }
  return r;
}

bool ExtendedCycInt::is_zero() const {
  const i64 e = this->e(), w = p_ - 1;
  std::vector<mpz_class> col(static_cast<size_t>(e));
  for (i64 j = 0; j < w; ++j) {
    bool any = false;
    for (i64 i = 0; i < e; ++i) {
      col[static_cast<size_t>(i)] = at(i, j);
      if (col[static_cast<size_t>(i)] != 0) any = true;
    }
    if (any && !column_vanishes(col, field_->phi())) return false;
  }
  return true;
}

ExtendedCycInt ExtendedCycInt::galois_zeta(i64 a) const {
  const i64 e = this->e();
  if (gcd(a, e) != 1) throw std::invalid_argument("galois_zeta: a must be coprime to e");
  ExtendedCycInt r(field_, p_);
  for (i64 i = 0; i < e; ++i)
    for (i64 j = 0; j < p_ - 1; ++j)
      if (at(i, j) != 0) r.add_term(a * i, j, at(i, j));
  return r;
}

ExtendedCycInt ExtendedCycInt::galois_xi(i64 b) const {
  if (mod(b, p_) == 0) throw std::invalid_argument("galois_xi: b must be prime to p");
  ExtendedCycInt r(field_, p_);
  for (i64 i = 0; i < e(); ++i)
    for (i64 j = 0; j < p_ - 1; ++j)
      if (at(i, j) != 0) r.add_term(i, b * j, at(i, j));
  return r;
}

std::optional<CycInt> ExtendedCycInt::zeta_part() const {
  const i64 e = this->e(), w = p_ - 1;
  std::vector<mpz_class> col(static_cast<size_t>(e));
  for (i64 j = 1; j < w; ++j) {
    for (i64 i = 0; i < e; ++i) col[static_cast<size_t>(i)] = at(i, j);
    if (!column_vanishes(col, field_->phi())) return std::nullopt;
  }
  for (i64 i = 0; i < e; ++i) col[static_cast<size_t>(i)] = at(i, 0);
  return CycInt(field_, col);
}

ExtendedCycInt character_gauss_sum(const FieldPtr& level, i64 p, const std::vector<i64>& exps,
                                   const std::vector<i64>& traces) {
  const i64 e = level->e();
  std::vector<i64> counts(static_cast<size_t>(e * p), 0);
  for (size_t x = 0; x < exps.size(); ++x)
    if (exps[x] >= 0) ++counts[static_cast<size_t>(exps[x] * p + traces[x])];
  ExtendedCycInt r(level, p);
  for (i64 i = 0; i < e; ++i)
    for (i64 j = 0; j < p; ++j)
      if (counts[static_cast<size_t>(i * p + j)] != 0) r.add_term(i, j, counts[static_cast<size_t>(i * p + j)]);
  return r;
}

std::vector<i64> character_exponents(const SymbolTable& T, i64 e, i64 t) {
  std::vector<i64> out(static_cast<size_t>(T.size()));
  for (i64 idx = 0; idx < T.size(); ++idx) {
    const i64 k = T.symbol(idx);
    out[static_cast<size_t>(idx)] = k < 0 ? -1 : mod(-t * k, e);
  }
  return out;
}

namespace {

std::vector<i64> traces_of(const SymbolTable& T) {
  std::vector<i64> out(static_cast<size_t>(T.size()));
  for (i64 idx = 0; idx < T.size(); ++idx) out[static_cast<size_t>(idx)] = T.trace(idx);
  return out;
}

}  // namespace

ExtendedCycInt gauss_sum(const PrimeAboveP& P, i64 t) {
  const SymbolTable T(P);
  return character_gauss_sum(P.field, P.p, character_exponents(T, P.e(), t), traces_of(T));
}

ExtendedCycInt gauss_sum_at_level(const PrimeAboveP& P, i64 d) {
  const i64 e = P.e();
  if (d < 1 || e % d != 0) throw std::invalid_argument("gauss_sum_at_level: d must divide e");
  const i64 ep = e / d;
  const SymbolTable T(P);
  return character_gauss_sum(CycField::make(ep), P.p, character_exponents(T, ep, 1), traces_of(T));
}

CycInt jacobi_sum(const PrimeAboveP& P, i64 s, i64 t) {
  const SymbolTable T(P);
  const i64 e = P.e();
  CycInt r(P.field);
  std::vector<mpz_class> c(static_cast<size_t>(e));
  for (i64 idx = 0; idx < T.size(); ++idx) {
    const i64 a = T.symbol(idx), b = T.symbol(T.one_minus(idx));
    if (a < 0 || b < 0) continue;
    c[static_cast<size_t>(mod(-s * a - t * b, e))] += 1;
  }
  return CycInt(P.field, c);
}

std::vector<mpz_class> jacobi_coeffs(const PrimeAboveP& P) { return jacobi_sum(P, 1, 1).coeffs(); }

std::vector<i64> relative_norm_table(const PrimeAboveP& P, const PrimeAboveP& Q) {
  const residue::ResidueField& K = *P.kappa;
  std::unordered_map<i64, i64> pullback;
  for (i64 j = 0; j < Q.kappa->size(); ++j)
    pullback[K.index(residue::embed_contracted(P, Q, Q.kappa->from_index(j)))] = j;
  if (static_cast<i64>(pullback.size()) != Q.kappa->size())
    throw std::logic_error("relative_norm_table: embedding is not injective");
  const i64 q = K.size();
  mpz_class S = 0, pk = 1, pf;
  mpz_ui_pow_ui(pf.get_mpz_t(), static_cast<unsigned long>(P.p), static_cast<unsigned long>(Q.f));
  for (i64 t = 0; t < P.f / Q.f; ++t) {
    S += pk;
    pk *= pf;
  }
  const i64 s = mpz_class(S % (q - 1)).get_si();
  const SymbolTable T(P);
  std::vector<i64> out(static_cast<size_t>(q), -1);
  for (i64 idx = 1; idx < q; ++idx) {
    const i64 img = T.exp(mulmod(T.log(idx), s, q - 1));
    auto it = pullback.find(img);
    if (it == pullback.end()) throw std::logic_error("relative_norm_table: norm outside the subfield");
    out[static_cast<size_t>(idx)] = it->second;
  }
  return out;
}

std::vector<mpz_class> gauss_power_counts(const PrimeAboveP& P) {
  const SymbolTable T(P);
  const i64 n = P.e(), p = P.p;
  const auto iota = character_exponents(T, n, 1);
  std::vector<mpz_class> A1(static_cast<size_t>(n)), B1(static_cast<size_t>(n));
  for (i64 idx = 1; idx < T.size(); ++idx) {
    const i64 tr = T.trace(idx);
    if (tr == 0) A1[static_cast<size_t>(iota[static_cast<size_t>(idx)])] += 1;
    if (tr == 1 % p) B1[static_cast<size_t>(iota[static_cast<size_t>(idx)])] += 1;
  }
  // The prime field F_p sits in kappa as the constants, whose index is the value.
  auto iota_fp = [&](i64 j) { return iota[static_cast<size_t>(mod(j, p))]; };
  std::vector<mpz_class> A = A1, B = B1;
  for (i64 k = 1; k < n; ++k) {
    std::vector<mpz_class> W0(static_cast<size_t>(n)), W1(static_cast<size_t>(n));
    for (i64 j = 1; j < p; ++j) {
      W0[static_cast<size_t>(mod(k * iota_fp(j) + iota_fp(-j), n))] += 1;
      if (j != 1) W1[static_cast<size_t>(mod(k * iota_fp(j) + iota_fp(1 - j), n))] += 1;
    }
    const auto AA = cyclic_convolve(A, A1), AB = cyclic_convolve(A, B1), BA = cyclic_convolve(B, A1);
    const auto BB = cyclic_convolve(B, B1);
    const auto S0 = cyclic_convolve(W0, BB), S1 = cyclic_convolve(W1, BB);
    for (i64 i = 0; i < n; ++i) {
      A[static_cast<size_t>(i)] = AA[static_cast<size_t>(i)] + S0[static_cast<size_t>(i)];
      B[static_cast<size_t>(i)] = AB[static_cast<size_t>(i)] + BA[static_cast<size_t>(i)] + S1[static_cast<size_t>(i)];
    }
  }
  std::vector<mpz_class> m(static_cast<size_t>(n));
  for (i64 i = 0; i < n; ++i) m[static_cast<size_t>(i)] = A[static_cast<size_t>(i)] - B[static_cast<size_t>(i)];
  return m;
}

std::vector<mpz_class> gauss_power_multinomial(const PrimeAboveP& P) {
  const SymbolTable T(P);
  const i64 e = P.e(), p = P.p;
  const auto iota = character_exponents(T, e, 1);
  auto at = [&](i64 s, i64 i, i64 j) { return static_cast<size_t>((s * e + i) * p + j); };
  std::vector<mpz_class> dp(static_cast<size_t>((e + 1) * e * p));
  dp[at(0, 0, 0)] = 1;
  for (i64 idx = 1; idx < T.size(); ++idx) {
    const i64 io = iota[static_cast<size_t>(idx)], tr = T.trace(idx);
    for (i64 s = e - 1; s >= 0; --s)
      for (i64 i = 0; i < e; ++i)
        for (i64 j = 0; j < p; ++j) {
          const mpz_class& v = dp[at(s, i, j)];
          if (v == 0) continue;
          for (i64 k = 1; s + k <= e; ++k)
            dp[at(s + k, mod(i + k * io, e), mod(j + k * tr, p))] += v * binomial(s + k, k);
        }
  }
  std::vector<mpz_class> m(static_cast<size_t>(e));
  for (i64 i = 0; i < e; ++i) m[static_cast<size_t>(i)] = dp[at(e, i, 0)] - dp[at(e, i, 1 % p)];
  return m;
}

std::vector<mpz_class> gauss_power_interpolation(const PrimeAboveP& P) {
  const i64 e = P.e();
  std::vector<std::vector<mpq_class>> M;
  for (i64 d : divisors(e)) {
    const i64 ep = e / d;
    auto F = CycField::make(ep);
    auto val = gauss_sum_at_level(P, d).pow(e).zeta_part();
    if (!val) throw std::logic_error("gauss_power_interpolation: G^e has a xi component");
    const auto rhs = val->reduced();
    std::vector<std::vector<mpz_class>> cols;
    for (i64 i = 0; i < e; ++i) cols.push_back(reduced_monomial(F, i));
    for (size_t r = 0; r < rhs.size(); ++r) {
      std::vector<mpq_class> row(static_cast<size_t>(e + 1));
      for (i64 i = 0; i < e; ++i) row[static_cast<size_t>(i)] = cols[static_cast<size_t>(i)][r];
      row[static_cast<size_t>(e)] = rhs[r];
      M.push_back(row);
    }
  }
  const size_t n = static_cast<size_t>(e);
  if (M.size() != n) throw std::logic_error("gauss_power_interpolation: system is not square");
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) throw std::logic_error("gauss_power_interpolation: singular system");
    std::swap(M[c], M[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      const mpq_class factor = M[r][c] / M[c][c];
      for (size_t k = c; k <= n; ++k) M[r][k] -= factor * M[c][k];
    }
  }
  std::vector<mpz_class> m(n);
  for (size_t i = 0; i < n; ++i) {
    mpq_class v = M[i][n] / M[i][i];
    if (v.get_den() != 1) throw std::logic_error("gauss_power_interpolation: non-integral solution");
    m[i] = v.get_num();
  }
  return m;
}

std::vector<mpz_class> gauss_power_coeffs(const PrimeAboveP& P) {
  auto m = gauss_power_counts(P);
  if (P.e() <= 5 && P.kappa->size() <= 200) {
    if (gauss_power_multinomial(P) != m) throw std::logic_error("gauss_power_coeffs: multinomial path disagrees");
    if (gauss_power_interpolation(P) != m) throw std::logic_error("gauss_power_coeffs: interpolation path disagrees");
  }
  return m;
}

SumCoeffs sum_coeffs(const PrimeAboveP& P) {
  SumCoeffs s;
  s.e = P.e();
  s.p = P.p;
  s.selector = P.selector;
  s.f = P.f;
  s.m = gauss_power_coeffs(P);
  s.n = jacobi_coeffs(P);
  return s;
}

CycInt evaluate_at_power(const std::vector<mpz_class>& c, const FieldPtr& level, i64 d) {
  const i64 ep = level->e();
  if (static_cast<i64>(c.size()) != ep * d) throw std::invalid_argument("evaluate_at_power: size mismatch");
  std::vector<mpz_class> out(static_cast<size_t>(ep));
  for (size_t i = 0; i < c.size(); ++i) out[i % static_cast<size_t>(ep)] += c[i];
  return CycInt(level, out);
}

bool davenport_hasse_jacobi(const PrimeAboveP& P, i64 ep) {
  const PrimeAboveP Q = residue::contract(P, ep);
  const i64 s = P.f / Q.f;
  CycInt lhs = jacobi_sum(Q, 1, 1).pow(s);
  if (s % 2 == 0) lhs = -lhs;
  const auto norm = relative_norm_table(P, Q);
  const SymbolTable T(P), TQ(Q);
  std::vector<mpz_class> c(static_cast<size_t>(ep));
  for (i64 idx = 1; idx < T.size(); ++idx) {
    const i64 om = T.one_minus(idx);
    if (om == 0) continue;
    const i64 a = TQ.symbol(norm[static_cast<size_t>(idx)]), b = TQ.symbol(norm[static_cast<size_t>(om)]);
    c[static_cast<size_t>(mod(-a - b, ep))] += 1;
  }
  return lhs == CycInt(Q.field, c);
}

bool davenport_hasse_gauss(const PrimeAboveP& P, i64 ep) {
  const PrimeAboveP Q = residue::contract(P, ep);
  const i64 s = P.f / Q.f;
  const auto norm = relative_norm_table(P, Q);
  const SymbolTable T(P), TQ(Q);
  std::vector<i64> exps(static_cast<size_t>(T.size()), -1);
  for (i64 idx = 1; idx < T.size(); ++idx) exps[static_cast<size_t>(idx)] = mod(-TQ.symbol(norm[static_cast<size_t>(idx)]), ep);
  const ExtendedCycInt lhs = -character_gauss_sum(Q.field, P.p, exps, traces_of(T));
  const ExtendedCycInt rhs = (-gauss_sum(Q, 1)).pow(s);
  return lhs == rhs;
}

bool jacobi_gauss_relation(const PrimeAboveP& P) {
  const ExtendedCycInt J = ExtendedCycInt::from_cycint(jacobi_sum(P, 1, 1), P.p);
  const ExtendedCycInt G1 = gauss_sum(P, 1), G2 = gauss_sum(P, 2);
  return J * G2 == G1 * G1;
}

}  // namespace cyclocert::sums
