// Gauss and Jacobi sums over residue fields, the coefficient vectors m and n,
// and the Davenport-Hasse relations.
#pragma once

#include <optional>
#include <vector>

#include "cyclocert/cyclo.hpp"
#include "cyclocert/residue.hpp"

namespace cyclocert::sums {

/// Element of Z[zeta_e, xi_p] stored as an e x (p-1) matrix over zeta^i xi^j,
/// zeta redundant (cyclic), xi reduced modulo Phi_p.
class ExtendedCycInt {
 public:
  ExtendedCycInt(cyclo::FieldPtr field, i64 p);
  static ExtendedCycInt from_cycint(const cyclo::CycInt& x, i64 p);

  const cyclo::FieldPtr& field() const { return field_; }
  i64 e() const { return field_->e(); }
  i64 p() const { return p_; }
  const mpz_class& at(i64 i, i64 j) const { return data_[static_cast<size_t>(i * (p_ - 1) + j)]; }

  /// Adds c * zeta^i * xi^j for arbitrary integers i, j.
  void add_term(i64 i, i64 j, const mpz_class& c);

  ExtendedCycInt operator+(const ExtendedCycInt& o) const;
  ExtendedCycInt operator-(const ExtendedCycInt& o) const;
  ExtendedCycInt operator-() const;
  ExtendedCycInt operator*(const ExtendedCycInt& o) const;
  ExtendedCycInt pow(i64 k) const;
  bool is_zero() const;
  bool operator==(const ExtendedCycInt& o) const { return (*this - o).is_zero(); }

  /// zeta -> zeta^a (gcd(a, e) = 1), xi fixed.
  ExtendedCycInt galois_zeta(i64 a) const;
  /// xi -> xi^b (b not divisible by p), zeta fixed.
  ExtendedCycInt galois_xi(i64 b) const;
  /// The value as an element of Z[zeta_e] if it has no xi component.
  std::optional<cyclo::CycInt> zeta_part() const;

 private:
  void check_same(const ExtendedCycInt& o) const;
  cyclo::FieldPtr field_;
  i64 p_;
  std::vector<mpz_class> data_;
};

/// sum over kappa of zeta_level^{exps[x]} xi^{traces[x]}, skipping exps[x] < 0.
ExtendedCycInt character_gauss_sum(const cyclo::FieldPtr& level, i64 p, const std::vector<i64>& exps,
                                   const std::vector<i64>& traces);

/// Exponents of theta^t = (./P)^{-t} in zeta_e, -1 at zero, indexed like SymbolTable.
std::vector<i64> character_exponents(const residue::SymbolTable& T, i64 e, i64 t);

/// G(theta^t), theta = (./P)^{-1}, by direct summation over kappa.
ExtendedCycInt gauss_sum(const residue::PrimeAboveP& P, i64 t);
/// G(theta^d) for d | e, written over zeta_{e'} = zeta^d, e' = e/d.
ExtendedCycInt gauss_sum_at_level(const residue::PrimeAboveP& P, i64 d);

/// J(theta^s, theta^t) = sum_x theta^s(x) theta^t(1-x) in Z[zeta_e].
cyclo::CycInt jacobi_sum(const residue::PrimeAboveP& P, i64 s, i64 t);
/// n_i = #{x : theta(x) theta(1-x) = zeta^i}.
std::vector<mpz_class> jacobi_coeffs(const residue::PrimeAboveP& P);

/// Index in Q.kappa of the residual relative norm of each element of P.kappa
/// (-1 at zero), Q = contract(P, e').
std::vector<i64> relative_norm_table(const residue::PrimeAboveP& P, const residue::PrimeAboveP& Q);

/// m-vector by orbit-compressed tuple counting: m_i = c_{i,0} - c_{i,1} where
/// c_{i,j} counts e-tuples in (kappa^x)^e with character sum i and trace sum j.
std::vector<mpz_class> gauss_power_counts(const residue::PrimeAboveP& P);
/// m-vector by the multinomial sum over compositions (dynamic programming over
/// the elements of kappa^x).
std::vector<mpz_class> gauss_power_multinomial(const residue::PrimeAboveP& P);
/// m-vector by interpolating the brute-forced G(theta^d)^e at every d | e.
std::vector<mpz_class> gauss_power_interpolation(const residue::PrimeAboveP& P);
/// Canonical m-vector. Computed by tuple counting; for e <= 5 and p^f <= 200
/// the multinomial and interpolation paths are also run and must agree.
std::vector<mpz_class> gauss_power_coeffs(const residue::PrimeAboveP& P);

struct SumCoeffs {
  i64 e = 0, p = 0, selector = 0, f = 0;
  std::vector<mpz_class> m, n;
};
SumCoeffs sum_coeffs(const residue::PrimeAboveP& P);

/// Sum_i c_i zeta^{i d} as an element of Z[zeta_{e/d}].
cyclo::CycInt evaluate_at_power(const std::vector<mpz_class>& c, const cyclo::FieldPtr& level, i64 d);

/// (-1)^{f/f'-1} J_{e'}^{f/f'} against the lifted Jacobi sum over kappa.
bool davenport_hasse_jacobi(const residue::PrimeAboveP& P, i64 ep);
/// -G(lifted character) = (-G_{e'})^{f/f'} in Z[zeta_{e'}, xi_p].
bool davenport_hasse_gauss(const residue::PrimeAboveP& P, i64 ep);
/// J(theta, theta) G(theta^2) = G(theta)^2.
bool jacobi_gauss_relation(const residue::PrimeAboveP& P);

}  // namespace cyclocert::sums
