#include "cyclocert/stickelberger.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclocert/sums.hpp"

namespace cyclocert::stickelberger {

using cyclo::CycInt;
using cyclo::FieldPtr;
using cyclo::GaloisAlgElem;
using residue::PrimeAboveP;
using Row = std::vector<mpz_class>;

CosetSpace::CosetSpace(i64 e, i64 p) : e_(e), p_(p), f_(multiplicative_order(p, e)), where_(static_cast<size_t>(e), -1) {
  for (i64 a : units_mod(e)) {
    if (where_[static_cast<size_t>(a)] >= 0) continue;
    std::vector<i64> c;
    i64 x = a;
    do {
      c.push_back(x);
      x = mulmod(x, p, e);
    } while (x != a);
    std::sort(c.begin(), c.end());
    for (i64 y : c) where_[static_cast<size_t>(y)] = size();
    cosets_.push_back(std::move(c));
  }
}

i64 CosetSpace::index_of(i64 a) const {
  const i64 k = where_[static_cast<size_t>(mod(a, e_))];
  if (k < 0) throw std::invalid_argument("CosetSpace: not a unit");
  return k;
}

bool CosetSpace::is_coset(const std::vector<i64>& lambda) const {
  if (lambda.empty()) return false;
  const i64 a = mod(lambda.front(), e_);
  if (where_[static_cast<size_t>(a)] < 0) return false;
  return coset(index_of(a)) == lambda;
}

mpz_class ExponentVector::weight() const {
  mpz_class w = 0;
  for (const auto& x : exps) w += x;
  return w;
}

mpz_class ExponentVector::norm() const {
  const mpz_class w = weight() * f;
  if (w < 0) throw std::domain_error("ExponentVector::norm: fractional ideal");
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(p), w.get_ui());
  return n;
}

bool ExponentVector::is_trivial() const {
  return std::all_of(exps.begin(), exps.end(), [](const mpz_class& x) { return x == 0; });
}

json ExponentVector::to_json(const CosetSpace& C) const {
  json j = json::object();
  for (i64 k = 0; k < C.size(); ++k) j[std::to_string(C.representative(k))] = exps[static_cast<size_t>(k)].get_str();
  return j;
}

ExponentVector zero_exponents(const CosetSpace& C) {
  return ExponentVector{C.e(), C.p(), C.f(), std::vector<mpz_class>(static_cast<size_t>(C.size()))};
}

ExponentVector exponents_of(const GaloisAlgElem& X, const CosetSpace& C) {
  if (X.e() != C.e()) throw std::invalid_argument("exponents_of: level mismatch");
  std::vector<mpq_class> acc(static_cast<size_t>(C.size()));
  for (const auto& [a, c] : X.coeffs()) acc[static_cast<size_t>(C.index_of(a))] += c;
  ExponentVector v = zero_exponents(C);
  for (size_t k = 0; k < acc.size(); ++k) {
    if (acc[k].get_den() != 1) throw std::domain_error("exponents_of: non-integral exponent");
    v.exps[k] = acc[k].get_num();
  }
  return v;
}

ExponentVector fold(const ExponentVector& low, const CosetSpace& low_space, const CosetSpace& high_space) {
  if (high_space.e() % low_space.e() != 0 || low_space.p() != high_space.p())
    throw std::invalid_argument("fold: incompatible levels");
  std::vector<i64> fibre(static_cast<size_t>(low_space.size()), 0);
  ExponentVector v = zero_exponents(high_space);
  for (i64 k = 0; k < high_space.size(); ++k) {
    const i64 img = low_space.index_of(high_space.representative(k));
    for (i64 a : high_space.coset(k))
      if (low_space.index_of(a) != img) throw std::logic_error("fold: coset does not reduce to a coset");
    ++fibre[static_cast<size_t>(img)];
    v.exps[static_cast<size_t>(k)] = low.exps[static_cast<size_t>(img)];
  }
  if (fibre.empty() || fibre.front() == 0 || std::any_of(fibre.begin(), fibre.end(), [&](i64 c) { return c != fibre.front(); }))
    throw std::logic_error("fold: fibres are not of equal positive size");
  return v;
}

namespace {

CycInt as_element(const FieldPtr& F, const Row& r) {
  std::vector<mpz_class> c(static_cast<size_t>(F->e()));
  for (size_t i = 0; i < r.size(); ++i) c[i % c.size()] += r[i];
  return CycInt(F, c);
}

// Merges v into the triangular rows W by extended-gcd row operations, so that
// span(W, v) is unchanged modulo D Z^n (or exactly, when D is zero).
void insert(std::vector<Row>& W, Row v, const mpz_class& D) {
  const size_t n = W.size();
  mpz_class g, a, b, u, t, tmp;
  for (size_t k = 0; k < n; ++k) {
    if (v[k] == 0) continue;
    mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), W[k][k].get_mpz_t(), v[k].get_mpz_t());
    mpz_divexact(u.get_mpz_t(), W[k][k].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(t.get_mpz_t(), v[k].get_mpz_t(), g.get_mpz_t());
    for (size_t j = k; j < n; ++j) {
      tmp = a * W[k][j] + b * v[j];
      v[j] = t * W[k][j] - u * v[j];
      W[k][j] = tmp;
      if (D != 0 && j > k) {
        mpz_fdiv_r(W[k][j].get_mpz_t(), W[k][j].get_mpz_t(), D.get_mpz_t());
        mpz_fdiv_r(v[j].get_mpz_t(), v[j].get_mpz_t(), D.get_mpz_t());
      }
    }
  }
}

}  // namespace

IdealLattice IdealLattice::from_vectors(const FieldPtr& F, const std::vector<Row>& vectors, const mpz_class& D) {
  if (D <= 0) throw std::invalid_argument("IdealLattice: zero ideal");
  const size_t n = static_cast<size_t>(F->degree());
  std::vector<Row> W(n, Row(n));
  for (size_t k = 0; k < n; ++k) W[k][k] = D;
  for (const auto& v : vectors) {
    Row r(n);
    for (size_t j = 0; j < n; ++j) mpz_fdiv_r(r[j].get_mpz_t(), v[j].get_mpz_t(), D.get_mpz_t());
    insert(W, r, D);
  }
  // Make D e_k an exact member for every k.
  for (size_t k = 0; k < n; ++k) {
    const mpz_class c = D / W[k][k];
    Row w(n);
    for (size_t j = k + 1; j < n; ++j) w[j] = -c * W[k][j];
    insert(W, w, 0);
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < k; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), W[i][k].get_mpz_t(), W[k][k].get_mpz_t());
      if (q == 0) continue;
      for (size_t j = k; j < n; ++j) W[i][j] -= q * W[k][j];
    }
  return IdealLattice(F, std::move(W));
}

IdealLattice IdealLattice::from_generators(const FieldPtr& F, const std::vector<CycInt>& gens, const mpz_class& extra) {
  mpz_class D = abs(extra);
  std::vector<Row> vectors;
  const i64 n = F->degree();
  for (const auto& g : gens) {
    if (g.field()->e() != F->e()) throw std::invalid_argument("IdealLattice: generator from another field");
    if (g.is_zero()) continue;
    mpz_class N = abs(g.absolute_norm());
    mpz_gcd(D.get_mpz_t(), D.get_mpz_t(), N.get_mpz_t());
    for (i64 i = 0; i < n; ++i) vectors.push_back((g * CycInt::zeta(F, i)).reduced());
  }
  if (extra != 0) vectors.push_back(CycInt::constant(F, extra).reduced());
  return from_vectors(F, vectors, D);
}

IdealLattice IdealLattice::unit(const FieldPtr& F) { return from_generators(F, {CycInt::constant(F, 1)}); }

IdealLattice IdealLattice::prime(const PrimeAboveP& P) {
  CycInt g(P.field);
  for (size_t i = 0; i < P.g.size(); ++i) g += CycInt::zeta(P.field, static_cast<i64>(i)) * mpz_class(P.g[i]);
  return from_generators(P.field, {g}, P.p);
}

mpz_class IdealLattice::norm() const {
  mpz_class N = 1;
  for (size_t k = 0; k < rows_.size(); ++k) N *= rows_[k][k];
  return N;
}

bool IdealLattice::contains_coords(std::vector<mpz_class> x) const {
  const size_t n = rows_.size();
  if (x.size() != n) throw std::invalid_argument("IdealLattice: coordinate length");
  mpz_class c;
  for (size_t k = 0; k < n; ++k) {
    if (x[k] == 0) continue;
    if (!mpz_divisible_p(x[k].get_mpz_t(), rows_[k][k].get_mpz_t())) return false;
    mpz_divexact(c.get_mpz_t(), x[k].get_mpz_t(), rows_[k][k].get_mpz_t());
    for (size_t j = k; j < n; ++j) x[j] -= c * rows_[k][j];
  }
  return true;
}

bool IdealLattice::contains(const CycInt& x) const { return contains_coords(x.reduced()); }

bool IdealLattice::zeta_stable() const {
  const CycInt z = CycInt::zeta(field_, 1);
  return std::all_of(rows_.begin(), rows_.end(), [&](const Row& r) { return contains(as_element(field_, r) * z); });
}

IdealLattice IdealLattice::operator*(const IdealLattice& o) const {
  if (field_->e() != o.field_->e()) throw std::invalid_argument("IdealLattice: mismatched fields");
  std::vector<CycInt> a, b;
  for (const auto& r : rows_) a.push_back(as_element(field_, r));
  for (const auto& r : o.rows_) b.push_back(as_element(field_, r));
  std::vector<Row> vectors;
  for (const auto& x : a)
    for (const auto& y : b) vectors.push_back((x * y).reduced());
  return from_vectors(field_, vectors, norm() * o.norm());
}

IdealLattice IdealLattice::pow(i64 k) const {
  if (k < 0) throw std::invalid_argument("IdealLattice::pow: negative exponent");
  IdealLattice r = unit(field_);
  for (i64 i = 0; i < k; ++i) r = r * *this;
  return r;
}

IdealLattice IdealLattice::galois(i64 a) const {
  std::vector<Row> vectors;
  for (const auto& r : rows_) vectors.push_back(as_element(field_, r).galois(a).reduced());
  return from_vectors(field_, vectors, norm());
}

PrimeLadder::PrimeLadder(IdealLattice prime, i64 p, i64 f) : p_(p), f_(f) {
  powers_.push_back(IdealLattice::unit(prime.field()));
  powers_.push_back(std::move(prime));
}

const IdealLattice& PrimeLadder::power(i64 k) {
  while (static_cast<i64>(powers_.size()) <= k) powers_.push_back(powers_.back() * powers_[1]);
  return powers_[static_cast<size_t>(k)];
}

i64 PrimeLadder::valuation(const CycInt& x) {
  if (x.is_zero()) throw std::invalid_argument("valuation: zero element");
  mpz_class N = abs(x.absolute_norm());
  const mpz_class pp = p_;
  i64 vp = 0;
  while (mpz_divisible_p(N.get_mpz_t(), pp.get_mpz_t())) {
    N /= pp;
    ++vp;
  }
  const i64 bound = vp / f_;
  i64 k = 0;
  while (k < bound && power(k + 1).contains(x)) ++k;
  return k;
}

i64 valuation(const CycInt& x, const PrimeAboveP& P) {
  PrimeLadder L(IdealLattice::prime(P), P.p, P.f);
  return L.valuation(x);
}

Factorizer::Factorizer(const PrimeAboveP& P) : P_(P), cosets_(P.e(), P.p) {
  const IdealLattice base = IdealLattice::prime(P);
  for (i64 k = 0; k < cosets_.size(); ++k) {
    const i64 a = cosets_.representative(k);
    ladders_.emplace_back(a == 1 || P.e() == 1 ? base : base.galois(a), P.p, P.f);
  }
}

ExponentVector Factorizer::factor(const CycInt& x) {
  ExponentVector v = zero_exponents(cosets_);
  for (size_t k = 0; k < ladders_.size(); ++k) v.exps[k] = ladders_[k].valuation(x);
  return v;
}

bool Factorizer::supported_above_p(const CycInt& x) { return abs(x.absolute_norm()) == factor(x).norm(); }

Report verify_stickelberger(const PrimeAboveP& P) {
  Report R;
  R.e = P.e();
  R.p = P.p;
  R.selector = P.selector;
  const i64 e = P.e();
  Factorizer Fz(P);
  const CosetSpace& C = Fz.cosets();
  const json params = {{"e", std::to_string(e)}, {"p", std::to_string(P.p)}, {"selector", std::to_string(P.selector)}};
  const GaloisAlgElem theta = cyclo::stickelberger_element(e);

  auto record = [&](const std::string& what, const CycInt& x, const GaloisAlgElem& X) {
    const ExponentVector expected = exponents_of(X, C);
    const ExponentVector actual = Fz.factor(x);
    json pr = params;
    pr["element"] = x.to_string();
    R.add(what + " factorization", pr, expected.to_json(C), actual.to_json(C), expected == actual);
    const mpz_class N = abs(x.absolute_norm());
    R.add(what + " norm", pr, to_json(expected.norm()), to_json(N), N == expected.norm());
  };

  if (e % 2 == 1) record("J", sums::jacobi_sum(P, 1, 1), cyclo::two_minus_sigma2(e) * theta);
  record("G^e", CycInt(P.field, sums::gauss_power_coeffs(P)), theta * mpq_class(e));
  return R;
}

}  // namespace cyclocert::stickelberger
