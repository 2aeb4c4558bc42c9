// Exact arithmetic in Z[zeta_e], the Galois action, and the rational group
// algebra of Gal(Q(zeta_e)/Q).
#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cyclocert/arith.hpp"

namespace cyclocert::cyclo {

/// Integer polynomial, low degree first.
using ZPoly = std::vector<mpz_class>;

/// The e-th cyclotomic polynomial by recursive exact division of x^e - 1.
ZPoly cyclotomic_polynomial(i64 e);

class CycField {
 public:
  static std::shared_ptr<const CycField> make(i64 e);

  i64 e() const { return e_; }
  i64 degree() const { return static_cast<i64>(phi_.size()) - 1; }
  const ZPoly& phi() const { return phi_; }

 private:
  CycField(i64 e, ZPoly phi) : e_(e), phi_(std::move(phi)) {}
  i64 e_;
  ZPoly phi_;
};

using FieldPtr = std::shared_ptr<const CycField>;

/// Element of Z[zeta_e] over the redundant basis zeta^0..zeta^{e-1}.
class CycInt {
 public:
  CycInt() = default;
  explicit CycInt(FieldPtr field);
  CycInt(FieldPtr field, std::vector<mpz_class> coeffs);

  static CycInt constant(FieldPtr field, const mpz_class& c);
  /// zeta^k for any integer k.
  static CycInt zeta(FieldPtr field, i64 k);

  const FieldPtr& field() const { return field_; }
  i64 e() const { return field_->e(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& operator[](i64 i) const { return coeffs_[static_cast<size_t>(i)]; }

  /// Representative with coeffs[i] = 0 for i >= phi(e).
  CycInt canonical_form() const;
  /// First phi(e) coefficients of canonical_form().
  std::vector<mpz_class> reduced() const;

  bool is_zero() const;
  /// Value equality (modulo Phi_e).
  bool operator==(const CycInt& o) const;
  bool operator!=(const CycInt& o) const { return !(*this == o); }
  /// Coefficient-wise equality in the redundant basis.
  bool same_coeffs(const CycInt& o) const;

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator-() const;
  CycInt operator*(const CycInt& o) const;
  CycInt operator*(const mpz_class& c) const;
  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  CycInt pow(i64 k) const;

  /// sigma_a: zeta -> zeta^a, gcd(a, e) = 1.
  CycInt galois(i64 a) const;
  /// Product of all Galois conjugates; a rational integer.
  mpz_class absolute_norm() const;
  /// Rational integer value if the element lies in Z, otherwise throws.
  mpz_class to_integer() const;
  bool is_integer() const;
  /// Embed into Z[zeta_E] for e | E via zeta_e -> zeta_E^{E/e}.
  CycInt embed(const FieldPtr& big) const;
  /// Exact quotient by another element; throws if not divisible in Z[zeta_e].
  CycInt divexact(const CycInt& d) const;

  /// Canonical form rendered like "2+3ζ-ζ^2"; "0" for zero.
  std::string to_string() const;

 private:
  void check_same(const CycInt& o) const;
  FieldPtr field_;
  std::vector<mpz_class> coeffs_;
};

/// Element sum_a c_a sigma_a of Q[Gal(Q(zeta_e)/Q)], keys in (Z/eZ)^x.
class GaloisAlgElem {
 public:
  explicit GaloisAlgElem(i64 e = 1) : e_(e) {}

  static GaloisAlgElem sigma(i64 e, i64 a, const mpq_class& c = 1);

  i64 e() const { return e_; }
  const std::map<i64, mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(i64 a) const;
  void add_term(i64 a, const mpq_class& c);

  GaloisAlgElem operator+(const GaloisAlgElem& o) const;
  GaloisAlgElem operator-(const GaloisAlgElem& o) const;
  GaloisAlgElem operator*(const GaloisAlgElem& o) const;
  GaloisAlgElem operator*(const mpq_class& c) const;
  bool operator==(const GaloisAlgElem& o) const;
  bool operator!=(const GaloisAlgElem& o) const { return !(*this == o); }

  bool is_integral() const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Sum of coefficients (augmentation).
  mpq_class weight() const;
  std::string to_string() const;

 private:
  i64 e_;
  std::map<i64, mpq_class> coeffs_;
};

/// Theta_{e'} = (1/e') sum_{j coprime} j sigma_j^{-1}.
GaloisAlgElem stickelberger_element(i64 ep);
/// N_{e,e'} = sum of sigma_alpha over alpha = 1 mod e'.
GaloisAlgElem relative_norm_element(i64 e, i64 ep);
/// H_{e'} = sum of sigma_b^{-1} over units b in [(e'+1)/2, e'-1]; e' odd.
GaloisAlgElem h_element(i64 ep);
/// H_{e,d} = sum of sigma_alpha^{-1} over alpha with alpha*d mod e in [(e+1)/2, e-1].
GaloisAlgElem h_ed_element(i64 e, i64 d);
/// Replace each sigma_{e',b} by sigma_beta * N_{e,e'} for a lift beta of b.
/// Computed with the smallest and the largest lift; throws std::logic_error if they differ.
GaloisAlgElem lift_times_norm(const GaloisAlgElem& x, i64 e);
/// (2 - sigma_2) at level e (requires e odd).
GaloisAlgElem two_minus_sigma2(i64 e);

}  // namespace cyclocert::cyclo
