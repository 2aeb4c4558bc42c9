// The group ring Z[Delta] of a cyclic group of order e, the Det map, the
// torsion descriptors T/S/R, the counts n(Lambda, i, h), the representative
// morphisms v, v_i, N(v_i), r, s, and the unit certificates for u_t, u_r, u_s.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclocert/cyclo.hpp"
#include "cyclocert/report.hpp"
#include "cyclocert/residue.hpp"
#include "cyclocert/stickelberger.hpp"

namespace cyclocert::homrep {

using stickelberger::CosetSpace;
using stickelberger::ExponentVector;

/// sum_i coeffs[i] delta^i in Z[Delta], Delta = <delta> of order e.
class GroupRingElem {
 public:
  explicit GroupRingElem(i64 e);
  GroupRingElem(i64 e, std::vector<mpz_class> coeffs);

  static GroupRingElem delta(i64 e, i64 k);
  /// Tr_Delta = sum of all delta^i.
  static GroupRingElem trace(i64 e);
  /// u_t = 1 + delta + ... + delta^{p-1}.
  static GroupRingElem swan_unit(i64 e, i64 p);

  i64 e() const { return e_; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class augmentation() const;

  GroupRingElem operator+(const GroupRingElem& o) const;
  GroupRingElem operator-(const GroupRingElem& o) const;
  GroupRingElem operator*(const GroupRingElem& o) const;
  bool operator==(const GroupRingElem& o) const = default;

  /// Coefficients mod q as a polynomial over F_q (trimmed).
  residue::PolyFp reduce_mod(i64 q) const;
  /// Invertibility in F_q[x]/(x^e - 1): gcd with x^e - 1 is 1.
  bool is_unit_mod(i64 q) const;

 private:
  i64 e_;
  std::vector<mpz_class> coeffs_;
};

/// Det_{chi^h}(u) = sum_i coeffs[i] zeta^{h i} in Z[zeta_e].
cyclo::CycInt det_at_character(const GroupRingElem& u, i64 h);

/// Element of Q(zeta_e)[Delta] with coefficients num[j] / den. Houses the
/// idempotents eps_i, which only make sense away from the primes dividing e.
class LocalGroupRingElem {
 public:
  LocalGroupRingElem(cyclo::FieldPtr F, std::vector<cyclo::CycInt> num, mpz_class den);
  static LocalGroupRingElem from(const cyclo::FieldPtr& F, const GroupRingElem& u);
  /// eps_i = (1/e) sum_j zeta^{ij} delta^{-j}.
  static LocalGroupRingElem idempotent(const cyclo::FieldPtr& F, i64 i);
  /// x_i = 1 + (p - 1) eps_i.
  static LocalGroupRingElem kappa_generator(const cyclo::FieldPtr& F, i64 p, i64 i);

  bool has_denominator() const { return den_ != 1; }
  LocalGroupRingElem operator+(const LocalGroupRingElem& o) const;
  LocalGroupRingElem operator*(const LocalGroupRingElem& o) const;
  bool operator==(const LocalGroupRingElem& o) const;
  /// Det_{chi^h}; throws std::domain_error if the value is not integral.
  cyclo::CycInt det(i64 h) const;

 private:
  cyclo::FieldPtr field_;
  std::vector<cyclo::CycInt> num_;
  mpz_class den_;
};

/// Direct sum of kappa(chi^i)^{mult}, as sorted (i, mult) pairs.
struct TorsionDescriptor {
  i64 e = 1;
  std::vector<std::pair<i64, i64>> parts;

  bool operator==(const TorsionDescriptor& o) const = default;
  /// Total multiplicity (the kappa-dimension).
  i64 length() const;
  json to_json() const;
};

struct TorsionDescriptors {
  TorsionDescriptor T, S, R;
};

TorsionDescriptor torsion_T(i64 e);
/// Throws std::invalid_argument for even e.
TorsionDescriptor torsion_S(i64 e);
TorsionDescriptor torsion_R(i64 e);
/// S throws for even e.
TorsionDescriptors torsion_descriptors(i64 e, i64 p);
/// kappa[Delta] = sum over 0 <= i < e of kappa(chi^i).
TorsionDescriptor group_algebra_descriptor(i64 e);
/// Drops one copy of kappa(chi^0), the line spanned by Tr_Delta.
TorsionDescriptor quotient_by_trace(const TorsionDescriptor& t);
/// The same module described with chi^a in place of chi (a a unit mod e).
TorsionDescriptor relabel(const TorsionDescriptor& t, i64 a);

/// #{alpha in Lambda : alpha i = h mod e}. Lambda must be a sorted coset of <p>.
i64 n_count(i64 e, i64 p, const std::vector<i64>& lambda, i64 i, i64 h);
/// 0 unless gcd(i,e) = gcd(h,e) = d; then f/f_{e'} if h' in i' Lambda' mod e', else 0.
i64 n_closed_form(i64 e, i64 p, const std::vector<i64>& lambda, i64 i, i64 h);

/// Values of an Omega_Q-equivariant morphism on characters of Delta whose
/// component at P^{sigma_Lambda} is p^{exps[Lambda]} and 1 away from p. Only
/// the values at chi^d, d | e, are stored.
class RepMorphism {
 public:
  RepMorphism(i64 e, i64 p, std::string name);

  const std::string& name() const { return name_; }
  i64 e() const { return cosets_.e(); }
  i64 p() const { return cosets_.p(); }
  const CosetSpace& cosets() const { return cosets_; }

  void set(i64 d, ExponentVector v);
  const ExponentVector& at_divisor(i64 d) const;
  /// Value at chi^h: sigma_{h''} applied to the value at chi^d, d = gcd(h, e),
  /// h = d h', h'' a unit lift of h' mod e/d.
  ExponentVector at(i64 h) const;

  RepMorphism operator*(const RepMorphism& o) const;
  RepMorphism pow(i64 k) const;
  json to_json() const;

 private:
  std::string name_;
  CosetSpace cosets_;
  std::vector<i64> divisors_;
  std::vector<ExponentVector> values_;
};

/// v: p^{1 - delta_{h,e}} at every prime above p.
RepMorphism swan_representative(i64 e, i64 p);
/// C_h = (1 - zeta^{ph}) / (1 - zeta^h) = 1 + zeta^h + ... + zeta^{(p-1)h}, h != e.
cyclo::CycInt cyclotomic_unit(i64 e, i64 p, i64 h);
/// Certifies Det_{chi^h}(u_t) for 1 <= h <= e, (1 - zeta^h) C_h = 1 - zeta^{ph},
/// N(C_h) = +-1 with an explicit inverse, c_v, and u_t a unit mod every q | e.
Report swan_unit_certificate(i64 e, i64 p);

struct KappaRepresentative {
  i64 i = 0;
  /// v_i(chi^h) at the primes above p, for 0 <= h < e (not Omega_Q-equivariant).
  std::vector<ExponentVector> v;
  /// N(v_i) built from the counts n(Lambda, i, d).
  RepMorphism norm;
};

KappaRepresentative kappa_representative(i64 e, i64 p, i64 i);
/// N(v_i)(chi^h) by the literal norm product prod_k v_i(chi^{hk})_{q^{sigma_k}}^{sigma_k^{-1}}.
ExponentVector norm_by_definition(const KappaRepresentative& k, const CosetSpace& C, i64 h);

struct RsRepresentatives {
  RepMorphism r;
  std::optional<RepMorphism> s;
};

/// r = prod N(v_i)^i over 1 <= i < e; s = prod N(v_i) over (e+1)/2 <= i < e (odd e only).
RsRepresentatives rs_representatives(i64 e, i64 p);

struct UnitCertificate {
  GroupRingElem u_t, u_r, u_s;
  Report report;
  json to_json() const;
};

/// u_t, u_r (from m) and u_s (from n, e odd): the Det identities at every
/// chi^d against level-e' Jacobi sums and Gauss-sum powers, and invertibility
/// modulo every prime q | e.
UnitCertificate unit_certificates(i64 e, i64 p, i64 selector);

}  // namespace cyclocert::homrep
