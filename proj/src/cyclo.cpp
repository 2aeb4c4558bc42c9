#include "cyclocert/cyclo.hpp"

#include <sstream>
#include <stdexcept>

namespace cyclocert::cyclo {

namespace {

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division a / b of integer polynomials with b monic.
ZPoly divexact_monic(ZPoly a, const ZPoly& b) {
  trim(a);
  const size_t db = b.size() - 1;
  if (a.size() < b.size()) {
    if (a.empty()) return {};
    throw std::logic_error("divexact_monic: not divisible");
  }
  ZPoly q(a.size() - db);
  for (size_t k = a.size(); k-- > db;) {
    mpz_class c = a[k];
    q[k - db] = c;
    if (c != 0)
      for (size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  for (const auto& r : a)
    if (r != 0) throw std::logic_error("divexact_monic: nonzero remainder");
  return q;
}

}  // namespace

ZPoly cyclotomic_polynomial(i64 e) {
  if (e < 1) throw std::invalid_argument("cyclotomic_polynomial: e must be positive");
  ZPoly num(static_cast<size_t>(e) + 1);
  num[0] = -1;
  num[static_cast<size_t>(e)] = 1;
  for (i64 d : divisors(e))
    if (d < e) num = divexact_monic(num, cyclotomic_polynomial(d));
  return num;
}

std::shared_ptr<const CycField> CycField::make(i64 e) {
  ZPoly phi = cyclotomic_polynomial(e);
  return std::shared_ptr<const CycField>(new CycField(e, std::move(phi)));
}

CycInt::CycInt(FieldPtr field) : field_(std::move(field)), coeffs_(static_cast<size_t>(field_->e())) {}

CycInt::CycInt(FieldPtr field, std::vector<mpz_class> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (static_cast<i64>(coeffs_.size()) != field_->e())
    throw std::invalid_argument("CycInt: coefficient vector must have length e");
}

CycInt CycInt::constant(FieldPtr field, const mpz_class& c) {
  CycInt x(std::move(field));
  x.coeffs_[0] = c;
  return x;
}

CycInt CycInt::zeta(FieldPtr field, i64 k) {
  CycInt x(std::move(field));
  x.coeffs_[static_cast<size_t>(mod(k, x.e()))] = 1;
  return x;
}

void CycInt::check_same(const CycInt& o) const {
  if (!field_ || !o.field_ || field_->e() != o.field_->e())
    throw std::invalid_argument("CycInt: mismatched fields");
}

CycInt CycInt::canonical_form() const {
  const ZPoly& phi = field_->phi();
  const size_t deg = phi.size() - 1;
  std::vector<mpz_class> a = coeffs_;
  for (size_t k = a.size(); k-- > deg;) {
    if (a[k] == 0) continue;
    mpz_class c = a[k];
    for (size_t j = 0; j <= deg; ++j) a[k - deg + j] -= c * phi[j];
  }
  return CycInt(field_, std::move(a));
}

std::vector<mpz_class> CycInt::reduced() const {
  auto c = canonical_form().coeffs_;
  c.resize(static_cast<size_t>(field_->degree()));
  return c;
}

bool CycInt::is_zero() const {
  for (const auto& c : canonical_form().coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycInt::operator==(const CycInt& o) const {
  check_same(o);
  return (*this - o).is_zero();
}

bool CycInt::same_coeffs(const CycInt& o) const {
  check_same(o);
  return coeffs_ == o.coeffs_;
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt r = *this;
  r += o;
  return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
  CycInt r = *this;
  r -= o;
  return r;
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  check_same(o);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  check_same(o);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycInt CycInt::operator*(const CycInt& o) const {
  check_same(o);
  const size_t e = coeffs_.size();
  CycInt r(field_);
  for (size_t i = 0; i < e; ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < e; ++j) {
      if (o.coeffs_[j] == 0) continue;
      size_t k = i + j;
      if (k >= e) k -= e;
      mpz_addmul(r.coeffs_[k].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
    }
  }
  return r;
}

CycInt CycInt::operator*(const mpz_class& c) const {
  CycInt r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

CycInt CycInt::pow(i64 k) const {
  if (k < 0) throw std::invalid_argument("CycInt::pow: negative exponent");
  CycInt r = constant(field_, 1), b = *this;
  while (k > 0) {
    if (k & 1) r = (r * b).canonical_form();
    k >>= 1;
    if (k > 0) b = (b * b).canonical_form();
  }
  return r;
}

CycInt CycInt::galois(i64 a) const {
  const i64 e = field_->e();
  if (gcd(a, e) != 1) throw std::invalid_argument("galois: a must be coprime to e");
  CycInt r(field_);
  for (i64 i = 0; i < e; ++i) r.coeffs_[static_cast<size_t>(mod(a * i, e))] += coeffs_[static_cast<size_t>(i)];
  return r;
}

mpz_class CycInt::absolute_norm() const {
  CycInt prod = constant(field_, 1);
  for (i64 a : units_mod(field_->e())) prod = (prod * galois(a)).canonical_form();
  return prod.to_integer();
}

bool CycInt::is_integer() const {
  auto c = canonical_form().coeffs_;
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

mpz_class CycInt::to_integer() const {
  auto c = canonical_form().coeffs_;
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) throw std::domain_error("CycInt::to_integer: not a rational integer");
  return c[0];
}

CycInt CycInt::embed(const FieldPtr& big) const {
  const i64 E = big->e(), e = field_->e();
  if (E % e != 0) throw std::invalid_argument("embed: e must divide target index");
  CycInt r(big);
  for (i64 i = 0; i < e; ++i) r.coeffs_[static_cast<size_t>(i * (E / e))] = coeffs_[static_cast<size_t>(i)];
  return r;
}

CycInt CycInt::divexact(const CycInt& d) const {
  check_same(d);
  // x / d = x * prod_{a != 1} sigma_a(d) / N(d).
  CycInt num = *this;
  for (i64 a : units_mod(e()))
    if (a != 1 % e()) num = (num * d.galois(a)).canonical_form();
  mpz_class n = d.absolute_norm();
  if (n == 0) throw std::domain_error("divexact: division by zero");
  CycInt q = num.canonical_form();
  for (auto& c : q.coeffs_) {
    if (!mpz_divisible_p(c.get_mpz_t(), n.get_mpz_t())) throw std::domain_error("divexact: not divisible");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), n.get_mpz_t());
  }
  return q;
}

std::string CycInt::to_string() const {
  auto c = reduced();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    mpz_class a = abs(c[i]);
    if (c[i] < 0) os << "-";
    else if (!first) os << "+";
    if (i == 0 || a != 1) os << a.get_str();
    if (i >= 1) os << "ζ";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) return "0";
  return os.str();
}

GaloisAlgElem GaloisAlgElem::sigma(i64 e, i64 a, const mpq_class& c) {
  GaloisAlgElem x(e);
  x.add_term(a, c);
  return x;
}

mpq_class GaloisAlgElem::coeff(i64 a) const {
  auto it = coeffs_.find(mod(a, e_));
  return it == coeffs_.end() ? mpq_class(0) : it->second;
}

void GaloisAlgElem::add_term(i64 a, const mpq_class& c) {
  a = mod(a, e_);
  if (gcd(a, e_) != 1 && e_ != 1) throw std::invalid_argument("GaloisAlgElem: key not a unit");
  mpq_class& slot = coeffs_[a];
  slot += c;
  if (slot == 0) coeffs_.erase(a);
}

GaloisAlgElem GaloisAlgElem::operator+(const GaloisAlgElem& o) const {
  if (e_ != o.e_) throw std::invalid_argument("GaloisAlgElem: mismatched e");
  GaloisAlgElem r = *this;
  for (const auto& [a, c] : o.coeffs_) r.add_term(a, c);
  return r;
}

GaloisAlgElem GaloisAlgElem::operator-(const GaloisAlgElem& o) const { return *this + o * mpq_class(-1); }

GaloisAlgElem GaloisAlgElem::operator*(const GaloisAlgElem& o) const {
  if (e_ != o.e_) throw std::invalid_argument("GaloisAlgElem: mismatched e");
  GaloisAlgElem r(e_);
  for (const auto& [a, c] : coeffs_)
    for (const auto& [b, d] : o.coeffs_) r.add_term(mulmod(a, b, e_), c * d);
  return r;
}

GaloisAlgElem GaloisAlgElem::operator*(const mpq_class& c) const {
  GaloisAlgElem r(e_);
  for (const auto& [a, x] : coeffs_) r.add_term(a, x * c);
  return r;
}

bool GaloisAlgElem::operator==(const GaloisAlgElem& o) const { return e_ == o.e_ && coeffs_ == o.coeffs_; }

bool GaloisAlgElem::is_integral() const {
  for (const auto& [a, c] : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

mpq_class GaloisAlgElem::weight() const {
  mpq_class w = 0;
  for (const auto& [a, c] : coeffs_) w += c;
  return w;
}

std::string GaloisAlgElem::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : coeffs_) {
    if (!first) os << " + ";
    os << "(" << c.get_str() << ")σ" << a;
    first = false;
  }
  return os.str();
}

GaloisAlgElem stickelberger_element(i64 ep) {
  if (ep < 1) throw std::invalid_argument("stickelberger_element: e' must be positive");
  GaloisAlgElem t(ep);
  for (i64 j = 1; j < ep; ++j)
    if (gcd(j, ep) == 1) t.add_term(inverse_mod(j, ep), mpq_class(j, ep));
  return t;
}

GaloisAlgElem relative_norm_element(i64 e, i64 ep) {
  if (ep < 1 || e % ep != 0) throw std::invalid_argument("relative_norm_element: e' must divide e");
  GaloisAlgElem n(e);
  for (i64 a : units_mod(e))
    if (mod(a, ep) == mod(1, ep)) n.add_term(a, 1);
  return n;
}

GaloisAlgElem h_element(i64 ep) {
  if (ep < 1 || ep % 2 == 0) throw std::invalid_argument("h_element: e' must be odd");
  GaloisAlgElem h(ep);
  for (i64 b = (ep + 1) / 2; b <= ep - 1; ++b)
    if (gcd(b, ep) == 1) h.add_term(inverse_mod(b, ep), 1);
  return h;
}

GaloisAlgElem h_ed_element(i64 e, i64 d) {
  if (d < 1 || e % d != 0) throw std::invalid_argument("h_ed_element: d must divide e");
  GaloisAlgElem h(e);
  for (i64 a : units_mod(e)) {
    i64 r = mod(a * d, e);
    if (r >= (e + 1) / 2 && r <= e - 1) h.add_term(inverse_mod(a, e), 1);
  }
  return h;
}

GaloisAlgElem lift_times_norm(const GaloisAlgElem& x, i64 e) {
  const i64 ep = x.e();
  if (e % ep != 0) throw std::invalid_argument("lift_times_norm: level must divide e");
  const GaloisAlgElem n = relative_norm_element(e, ep);
  GaloisAlgElem lo(e), hi(e);
  for (const auto& [b, c] : x.coeffs()) {
    i64 lmin = -1, lmax = -1;
    for (i64 a : units_mod(e)) {
      if (mod(a, ep) != mod(b, ep)) continue;
      if (lmin < 0) lmin = a;
      lmax = a;
    }
    if (lmin < 0) throw std::logic_error("lift_times_norm: residue has no unit lift");
    lo = lo + GaloisAlgElem::sigma(e, lmin, c) * n;
    hi = hi + GaloisAlgElem::sigma(e, lmax, c) * n;
  }
  if (lo != hi) throw std::logic_error("lift_times_norm: result depends on the lift");
  return lo;
}

GaloisAlgElem two_minus_sigma2(i64 e) {
  if (e % 2 == 0) throw std::invalid_argument("two_minus_sigma2: e must be odd");
  return GaloisAlgElem::sigma(e, 1, 2) - GaloisAlgElem::sigma(e, 2, 1);
}

}  // namespace cyclocert::cyclo
