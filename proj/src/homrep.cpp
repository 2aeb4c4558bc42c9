#include "cyclocert/homrep.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cyclocert/sums.hpp"

namespace cyclocert::homrep {

using cyclo::CycField;
using cyclo::CycInt;
using cyclo::FieldPtr;
using residue::PolyFp;

GroupRingElem::GroupRingElem(i64 e) : e_(e), coeffs_(static_cast<size_t>(e)) {
  if (e < 1) throw std::invalid_argument("GroupRingElem: e must be positive");
}

GroupRingElem::GroupRingElem(i64 e, std::vector<mpz_class> coeffs) : e_(e), coeffs_(std::move(coeffs)) {
  if (e < 1 || static_cast<i64>(coeffs_.size()) != e) throw std::invalid_argument("GroupRingElem: need e coefficients");
}

GroupRingElem GroupRingElem::delta(i64 e, i64 k) {
  GroupRingElem u(e);
  u.coeffs_[static_cast<size_t>(mod(k, e))] = 1;
  return u;
}

GroupRingElem GroupRingElem::trace(i64 e) { return GroupRingElem(e, std::vector<mpz_class>(static_cast<size_t>(e), 1)); }

GroupRingElem GroupRingElem::swan_unit(i64 e, i64 p) {
  GroupRingElem u(e);
  for (i64 i = 0; i < p; ++i) u.coeffs_[static_cast<size_t>(i % e)] += 1;
  return u;
}

mpz_class GroupRingElem::augmentation() const {
  mpz_class s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  if (e_ != o.e_) throw std::invalid_argument("GroupRingElem: mismatched e");
  GroupRingElem r = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const {
  if (e_ != o.e_) throw std::invalid_argument("GroupRingElem: mismatched e");
  GroupRingElem r = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  if (e_ != o.e_) throw std::invalid_argument("GroupRingElem: mismatched e");
  GroupRingElem r(e_);
  const size_t n = coeffs_.size();
  for (size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) r.coeffs_[(i + j) % n] += coeffs_[i] * o.coeffs_[j];
  }
  return r;
}

PolyFp GroupRingElem::reduce_mod(i64 q) const {
  PolyFp a(coeffs_.size());
  const mpz_class Q = q;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), coeffs_[i].get_mpz_t(), Q.get_mpz_t());
    a[i] = r.get_si();
  }
  residue::polyfp::trim(a);
  return a;
}

bool GroupRingElem::is_unit_mod(i64 q) const {
  PolyFp xe(static_cast<size_t>(e_ + 1), 0);
  xe[0] = q - 1;
  xe[static_cast<size_t>(e_)] = 1;
  return residue::polyfp::gcd(reduce_mod(q), xe, q) == PolyFp{1};
}

CycInt det_at_character(const GroupRingElem& u, i64 h) {
  const i64 e = u.e();
  std::vector<mpz_class> c(static_cast<size_t>(e));
  for (i64 i = 0; i < e; ++i) c[static_cast<size_t>(mulmod(mod(h, e), i, e))] += u.coeffs()[static_cast<size_t>(i)];
  return CycInt(CycField::make(e), c);
}

LocalGroupRingElem::LocalGroupRingElem(FieldPtr F, std::vector<CycInt> num, mpz_class den)
    : field_(std::move(F)), num_(std::move(num)), den_(std::move(den)) {
  if (static_cast<i64>(num_.size()) != field_->e() || den_ <= 0)
    throw std::invalid_argument("LocalGroupRingElem: need e numerators and a positive denominator");
}

LocalGroupRingElem LocalGroupRingElem::from(const FieldPtr& F, const GroupRingElem& u) {
  std::vector<CycInt> num;
  for (const auto& c : u.coeffs()) num.push_back(CycInt::constant(F, c));
  return LocalGroupRingElem(F, num, 1);
}

LocalGroupRingElem LocalGroupRingElem::idempotent(const FieldPtr& F, i64 i) {
  const i64 e = F->e();
  std::vector<CycInt> num;
  for (i64 k = 0; k < e; ++k) num.push_back(CycInt::zeta(F, -i * k));
  return LocalGroupRingElem(F, num, e);
}

LocalGroupRingElem LocalGroupRingElem::kappa_generator(const FieldPtr& F, i64 p, i64 i) {
  const i64 e = F->e();
  LocalGroupRingElem eps = idempotent(F, i);
  std::vector<CycInt> num;
  for (i64 k = 0; k < e; ++k) {
    CycInt c = eps.num_[static_cast<size_t>(k)] * mpz_class(p - 1);
    if (k == 0) c += CycInt::constant(F, e);
    num.push_back(c);
  }
  return LocalGroupRingElem(F, num, e);
}

LocalGroupRingElem LocalGroupRingElem::operator+(const LocalGroupRingElem& o) const {
  std::vector<CycInt> num;
  for (size_t k = 0; k < num_.size(); ++k) num.push_back(num_[k] * o.den_ + o.num_[k] * den_);
  return LocalGroupRingElem(field_, num, den_ * o.den_);
}

LocalGroupRingElem LocalGroupRingElem::operator*(const LocalGroupRingElem& o) const {
  const size_t n = num_.size();
  std::vector<CycInt> num(n, CycInt(field_));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) num[(i + j) % n] += num_[i] * o.num_[j];
  return LocalGroupRingElem(field_, num, den_ * o.den_);
}

bool LocalGroupRingElem::operator==(const LocalGroupRingElem& o) const {
  for (size_t k = 0; k < num_.size(); ++k)
    if (num_[k] * o.den_ != o.num_[k] * den_) return false;
  return true;
}

CycInt LocalGroupRingElem::det(i64 h) const {
  const i64 e = field_->e();
  CycInt s(field_);
  for (i64 k = 0; k < e; ++k) s += num_[static_cast<size_t>(k)] * CycInt::zeta(field_, h * k);
  std::vector<mpz_class> c = s.canonical_form().coeffs();
  for (auto& x : c) {
    if (!mpz_divisible_p(x.get_mpz_t(), den_.get_mpz_t())) throw std::domain_error("LocalGroupRingElem::det: not integral");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), den_.get_mpz_t());
  }
  return CycInt(field_, c);
}

i64 TorsionDescriptor::length() const {
  i64 n = 0;
  for (const auto& [i, m] : parts) n += m;
  return n;
}

json TorsionDescriptor::to_json() const {
  json a = json::array();
  for (const auto& [i, m] : parts) a.push_back({{"i", std::to_string(i)}, {"mult", std::to_string(m)}});
  return a;
}

TorsionDescriptor torsion_T(i64 e) {
  TorsionDescriptor t{e, {}};
  for (i64 i = 1; i < e; ++i) t.parts.emplace_back(i, 1);
  return t;
}

TorsionDescriptor torsion_S(i64 e) {
  if (e % 2 == 0) throw std::invalid_argument("torsion_S: e must be odd");
  TorsionDescriptor t{e, {}};
  for (i64 i = (e + 1) / 2; i < e; ++i) t.parts.emplace_back(i, 1);
  return t;
}

TorsionDescriptor torsion_R(i64 e) {
  TorsionDescriptor t{e, {}};
  for (i64 i = 1; i < e; ++i) t.parts.emplace_back(i, i);
  return t;
}

TorsionDescriptors torsion_descriptors(i64 e, i64 p) {
  if (e < 1 || !is_prime(p) || e % p == 0) throw std::invalid_argument("torsion_descriptors: need p prime, p not dividing e");
  return {torsion_T(e), torsion_S(e), torsion_R(e)};
}

TorsionDescriptor group_algebra_descriptor(i64 e) {
  TorsionDescriptor t{e, {}};
  for (i64 i = 0; i < e; ++i) t.parts.emplace_back(i, 1);
  return t;
}

namespace {

TorsionDescriptor normalized(i64 e, const std::map<i64, i64>& m) {
  TorsionDescriptor t{e, {}};
  for (const auto& [i, k] : m)
    if (k > 0) t.parts.emplace_back(i, k);
  return t;
}

}  // namespace

TorsionDescriptor quotient_by_trace(const TorsionDescriptor& t) {
  std::map<i64, i64> m(t.parts.begin(), t.parts.end());
  if (m[0] < 1) throw std::invalid_argument("quotient_by_trace: no trivial line");
  --m[0];
  return normalized(t.e, m);
}

TorsionDescriptor relabel(const TorsionDescriptor& t, i64 a) {
  if (gcd(a, t.e) != 1) throw std::invalid_argument("relabel: a must be a unit");
  std::map<i64, i64> m;
  for (const auto& [i, k] : t.parts) m[mulmod(i, mod(a, t.e), t.e)] += k;
  return normalized(t.e, m);
}

namespace {

void check_coset(i64 e, i64 p, const std::vector<i64>& lambda) {
  if (!CosetSpace(e, p).is_coset(lambda)) throw std::invalid_argument("n(Lambda, i, h): Lambda is not a coset of <p>");
}

}  // namespace

i64 n_count(i64 e, i64 p, const std::vector<i64>& lambda, i64 i, i64 h) {
  check_coset(e, p, lambda);
  i64 n = 0;
  for (i64 a : lambda)
    if (mulmod(a, mod(i, e), e) == mod(h, e)) ++n;
  return n;
}

i64 n_closed_form(i64 e, i64 p, const std::vector<i64>& lambda, i64 i, i64 h) {
  check_coset(e, p, lambda);
  const i64 d = gcd(mod(i, e), e);
  if (gcd(mod(h, e), e) != d) return 0;
  const i64 ep = e / d, ip = mod(i, e) / d, hp = mod(h, e) / d;
  const bool hit = std::any_of(lambda.begin(), lambda.end(), [&](i64 a) { return mulmod(a, ip, ep) == mod(hp, ep); });
  return hit ? multiplicative_order(p, e) / multiplicative_order(p, ep) : 0;
}

RepMorphism::RepMorphism(i64 e, i64 p, std::string name)
    : name_(std::move(name)), cosets_(e, p), divisors_(divisors(e)) {
  for (size_t k = 0; k < divisors_.size(); ++k) values_.push_back(stickelberger::zero_exponents(cosets_));
}

void RepMorphism::set(i64 d, ExponentVector v) {
  auto it = std::find(divisors_.begin(), divisors_.end(), d);
  if (it == divisors_.end()) throw std::invalid_argument("RepMorphism::set: not a divisor of e");
  if (v.exps.size() != static_cast<size_t>(cosets_.size())) throw std::invalid_argument("RepMorphism::set: wrong length");
  values_[static_cast<size_t>(it - divisors_.begin())] = std::move(v);
}

const ExponentVector& RepMorphism::at_divisor(i64 d) const {
  auto it = std::find(divisors_.begin(), divisors_.end(), d);
  if (it == divisors_.end()) throw std::invalid_argument("RepMorphism::at_divisor: not a divisor of e");
  return values_[static_cast<size_t>(it - divisors_.begin())];
}

ExponentVector RepMorphism::at(i64 h) const {
  const i64 e = this->e(), hm = mod(h, e);
  const i64 d = gcd(hm, e), ep = e / d;
  const i64 lift = lift_coprime(mod(hm / d, ep), ep, e);
  const ExponentVector& base = at_divisor(d);
  ExponentVector out = base;
  for (i64 k = 0; k < cosets_.size(); ++k)
    out.exps[static_cast<size_t>(cosets_.translate(k, lift))] = base.exps[static_cast<size_t>(k)];
  return out;
}

RepMorphism RepMorphism::operator*(const RepMorphism& o) const {
  if (e() != o.e() || p() != o.p()) throw std::invalid_argument("RepMorphism: mismatched (e, p)");
  RepMorphism r = *this;
  for (size_t k = 0; k < values_.size(); ++k)
    for (size_t j = 0; j < values_[k].exps.size(); ++j) r.values_[k].exps[j] += o.values_[k].exps[j];
  return r;
}

RepMorphism RepMorphism::pow(i64 k) const {
  RepMorphism r = *this;
  for (auto& v : r.values_)
    for (auto& x : v.exps) x *= k;
  return r;
}

json RepMorphism::to_json() const {
  json vals = json::object();
  for (size_t k = 0; k < divisors_.size(); ++k) vals[std::to_string(divisors_[k])] = values_[k].to_json(cosets_);
  return {{"e", std::to_string(e())}, {"name", name_}, {"p", std::to_string(p())}, {"values_at_chi_d", vals}};
}

RepMorphism swan_representative(i64 e, i64 p) {
  RepMorphism v(e, p, "v");
  for (i64 d : divisors(e)) {
    ExponentVector x = stickelberger::zero_exponents(v.cosets());
    for (auto& k : x.exps) k = d == e ? 0 : 1;
    v.set(d, x);
  }
  return v;
}

CycInt cyclotomic_unit(i64 e, i64 p, i64 h) {
  if (mod(h, e) == 0) throw std::invalid_argument("cyclotomic_unit: h must not be divisible by e");
  const auto F = CycField::make(e);
  CycInt c(F);
  for (i64 k = 0; k < p; ++k) c += CycInt::zeta(F, h * k);
  return c;
}

namespace {

json params_of(i64 e, i64 p) { return {{"e", std::to_string(e)}, {"p", std::to_string(p)}}; }

void add_units_mod_q(Report& R, const std::string& label, const GroupRingElem& u, json params) {
  for (i64 q : prime_factors(u.e())) {
    json pr = params;
    pr["q"] = std::to_string(q);
    const bool ok = u.is_unit_mod(q);
    R.add(label + " unit mod q", pr, true, ok, ok);
  }
}

}  // namespace

Report swan_unit_certificate(i64 e, i64 p) {
  Report R;
  R.e = e;
  R.p = p;
  const auto F = CycField::make(e);
  const GroupRingElem ut = GroupRingElem::swan_unit(e, p);
  const RepMorphism v = swan_representative(e, p);
  const CycInt one = CycInt::constant(F, 1);
  for (i64 h = 1; h <= e; ++h) {
    json pr = params_of(e, p);
    pr["h"] = std::to_string(h);
    const CycInt det = det_at_character(ut, h);
    if (h == e) {
      R.add("Det u_t", pr, std::to_string(p), det.to_string(), det == CycInt::constant(F, p));
      R.add("v content", pr, "trivial", v.at(h).to_json(v.cosets()), v.at(h).is_trivial());
      continue;
    }
    const CycInt C = cyclotomic_unit(e, p, h);
    const CycInt lhs = (one - CycInt::zeta(F, h)) * det, rhs = one - CycInt::zeta(F, p * h);
    R.add("Det u_t", pr, rhs.to_string(), lhs.to_string(), lhs == rhs && det == C);
    const mpz_class N = C.absolute_norm();
    R.add("cyclotomic unit norm", pr, "1 or -1", to_json(N), N == 1 || N == -1);
    // C_h^{-1} = sum_{k < p'} zeta^{p h k} with p p' = 1 modulo the order of zeta^h.
    const i64 o = e / gcd(h, e);
    const i64 pinv = o == 1 ? 1 : inverse_mod(p, o);
    CycInt inv(F);
    for (i64 k = 0; k < pinv; ++k) inv += CycInt::zeta(F, p * h * k);
    R.add("cyclotomic unit inverse", pr, "1", (C * inv).to_string(), C * inv == one);
    // c_v = p (1 - zeta^h) / (1 - zeta^{ph}) = p C_h^{-1}; its ideal is the content of v.
    const CycInt cv = inv * mpz_class(p);
    const bool cv_ok = (one - CycInt::zeta(F, p * h)) * cv == (one - CycInt::zeta(F, h)) * mpz_class(p);
    R.add("c_v", pr, "p(1-ζ^h)/(1-ζ^{ph})", cv.to_string(), cv_ok);
    const mpz_class Ncv = abs(cv.absolute_norm());
    R.add("c_v content", pr, to_json(v.at(h).norm()), to_json(Ncv), Ncv == v.at(h).norm());
  }
  add_units_mod_q(R, "u_t", ut, params_of(e, p));
  return R;
}

KappaRepresentative kappa_representative(i64 e, i64 p, i64 i) {
  KappaRepresentative K{mod(i, e), {}, RepMorphism(e, p, "N(v_" + std::to_string(mod(i, e)) + ")")};
  const CosetSpace& C = K.norm.cosets();
  const i64 home = C.index_of(1);
  for (i64 h = 0; h < e; ++h) {
    ExponentVector x = stickelberger::zero_exponents(C);
    if (h == K.i) x.exps[static_cast<size_t>(home)] = 1;
    K.v.push_back(x);
  }
  for (i64 d : divisors(e)) {
    ExponentVector x = stickelberger::zero_exponents(C);
    for (i64 k = 0; k < C.size(); ++k) x.exps[static_cast<size_t>(k)] = n_count(e, p, C.coset(k), K.i, d);
    K.norm.set(d, x);
  }
  return K;
}

ExponentVector norm_by_definition(const KappaRepresentative& K, const CosetSpace& C, i64 h) {
  const i64 e = C.e();
  ExponentVector x = stickelberger::zero_exponents(C);
  for (i64 k = 0; k < C.size(); ++k)
    for (i64 a : units_mod(e))
      x.exps[static_cast<size_t>(k)] += K.v[static_cast<size_t>(mulmod(mod(h, e), a, e))].exps[static_cast<size_t>(C.translate(k, a))];
  return x;
}

RsRepresentatives rs_representatives(i64 e, i64 p) {
  RsRepresentatives out{RepMorphism(e, p, "r"), std::nullopt};
  if (e % 2 == 1) out.s = RepMorphism(e, p, "s");
  for (i64 i = 1; i < e; ++i) {
    const KappaRepresentative K = kappa_representative(e, p, i);
    out.r = out.r * K.norm.pow(i);
    if (out.s && i >= (e + 1) / 2) out.s = *out.s * K.norm;
  }
  return out;
}

json UnitCertificate::to_json() const {
  json det = json::array(), units = json::array();
  std::map<std::string, bool> per_q;
  for (const auto& c : report.checks) {
    if (c.name.rfind("Det", 0) == 0) det.push_back(c.to_json());
    if (c.name.find("unit mod q") != std::string::npos) {
      const std::string q = c.params.at("q").get<std::string>();
      auto it = per_q.find(q);
      per_q[q] = (it == per_q.end() ? true : it->second) && c.pass;
    }
  }
  for (const auto& [q, ok] : per_q) units.push_back({{"pass", ok}, {"q", q}});
  return {{"det_checks", det},
          {"e", std::to_string(report.e)},
          {"p", std::to_string(report.p)},
          {"pass", report.pass()},
          {"selector", std::to_string(report.selector)},
          {"u_r", cyclocert::to_json(u_r.coeffs())},
          {"u_s", cyclocert::to_json(u_s.coeffs())},
          {"u_t", cyclocert::to_json(u_t.coeffs())},
          {"unit_mod_q", units}};
}

UnitCertificate unit_certificates(i64 e, i64 p, i64 selector) {
  const auto F = CycField::make(e);
  const residue::PrimeAboveP P = residue::split_prime(F, p, selector);
  UnitCertificate U{GroupRingElem::swan_unit(e, p), GroupRingElem(e, sums::gauss_power_coeffs(P)), GroupRingElem(e), {}};
  const bool odd = e % 2 == 1;
  if (odd) U.u_s = GroupRingElem(e, sums::jacobi_coeffs(P));
  Report& R = U.report;
  R = swan_unit_certificate(e, p);
  R.selector = selector;
  for (i64 d : divisors(e)) {
    const i64 ep = e / d;
    const residue::PrimeAboveP Q = residue::contract(P, ep);
    const i64 s = P.f / Q.f;
    json pr = params_of(e, p);
    pr["selector"] = std::to_string(selector);
    pr["d"] = std::to_string(d);
    if (odd) {
      // c_s(chi^d) = -(-J_{e'})^{f/f_{e'}}
      const CycInt J = sums::jacobi_sum(Q, 1, 1);
      const CycInt cs = (-(-J).pow(s)).embed(F);
      const CycInt lhs = det_at_character(U.u_s, d);
      R.add("Det u_s", pr, cs.to_string(), lhs.to_string(), lhs == cs);
    }
    // c_r(chi^d) = (-1)^e (-G_{e'})^{e f/f_{e'}}, with (-G_{e'})^{e'} = (-1)^{e'} sum m'_i zeta_{e'}^i.
    CycInt Gp(Q.field, sums::gauss_power_coeffs(Q));
    if (ep % 2 == 1) Gp = -Gp;
    CycInt cr = Gp.pow(d * s).embed(F);
    if (e % 2 == 1) cr = -cr;
    const CycInt lhs = det_at_character(U.u_r, d);
    R.add("Det u_r", pr, cr.to_string(), lhs.to_string(), lhs == cr);
  }
  add_units_mod_q(R, "u_r", U.u_r, params_of(e, p));
  if (odd) add_units_mod_q(R, "u_s", U.u_s, params_of(e, p));
  return U;
}

}  // namespace cyclocert::homrep
