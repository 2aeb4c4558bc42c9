// Primes of Z[zeta_e] above p not dividing e, their residue fields, the
// trace to F_p, and the e-th power residue symbol.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cyclocert/arith.hpp"
#include "cyclocert/cyclo.hpp"

namespace cyclocert::residue {

/// Polynomial over F_p, low degree first, no trailing zeros (zero = empty).
using PolyFp = std::vector<i64>;

namespace polyfp {
void trim(PolyFp& a);
PolyFp add(const PolyFp& a, const PolyFp& b, i64 p);
PolyFp sub(const PolyFp& a, const PolyFp& b, i64 p);
PolyFp mul(const PolyFp& a, const PolyFp& b, i64 p);
/// Quotient and remainder; b nonzero.
std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b, i64 p);
PolyFp rem(const PolyFp& a, const PolyFp& b, i64 p);
/// Monic gcd.
PolyFp gcd(PolyFp a, PolyFp b, i64 p);
PolyFp make_monic(const PolyFp& a, i64 p);
/// a^k mod m.
PolyFp powmod(const PolyFp& a, mpz_class k, const PolyFp& m, i64 p);
i64 degree(const PolyFp& a);
/// Reduce an integer polynomial mod p.
PolyFp from_z(const cyclo::ZPoly& a, i64 p);
}  // namespace polyfp

/// Monic irreducible factors of Phi_e over F_p (p prime, p not dividing e),
/// by distinct-degree then equal-degree factorization, sorted by the
/// symmetric-range coefficient lists (low degree first).
std::vector<PolyFp> factor_cyclotomic_mod_p(i64 e, i64 p, std::uint64_t seed = 0x5eed);

/// Element of F_p[x]/(g), coefficients reduced mod p, length f.
struct FqElem {
  std::vector<i64> coeffs;
  bool operator==(const FqElem& o) const = default;
};

class ResidueField {
 public:
  ResidueField(i64 p, PolyFp modulus);

  i64 p() const { return p_; }
  i64 f() const { return f_; }
  /// Number of elements p^f.
  i64 size() const { return q_; }
  const PolyFp& modulus() const { return g_; }

  FqElem zero() const;
  FqElem one() const;
  FqElem from_int(i64 c) const;
  /// The class of x.
  FqElem gen() const;
  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem pow(const FqElem& a, mpz_class k) const;
  FqElem inv(const FqElem& a) const;
  bool is_zero(const FqElem& a) const;
  /// Tr(x) = sum_{t<f} x^{p^t}, an element of F_p.
  i64 trace(const FqElem& a) const;
  /// Bijection with [0, p^f): index = sum c_i p^i.
  i64 index(const FqElem& a) const;
  FqElem from_index(i64 idx) const;
  /// Evaluate an F_p polynomial at an element.
  FqElem eval(const PolyFp& poly, const FqElem& a) const;

 private:
  i64 p_, f_, q_;
  PolyFp g_;
};

/// A prime (p, g(zeta)) of Z[zeta_e] above p, p not dividing e.
struct PrimeAboveP {
  cyclo::FieldPtr field;
  i64 p = 0;
  i64 f = 0;
  PolyFp g;
  i64 selector = 0;
  i64 num_selectors = 0;
  std::shared_ptr<const ResidueField> kappa;
  FqElem zeta_image;
  /// All factors of Phi_e mod p in canonical order.
  std::shared_ptr<const std::vector<PolyFp>> factors;

  i64 e() const { return field->e(); }
};

PrimeAboveP split_prime(const cyclo::FieldPtr& field, i64 p, i64 selector);
std::vector<PrimeAboveP> split_all(const cyclo::FieldPtr& field, i64 p);
/// Selector of sigma_a(P): the factor whose root in kappa is zeta_image^{a^{-1}}.
i64 selector_of_conjugate(const PrimeAboveP& P, i64 a);
/// Coset of <p> in (Z/eZ)^x attached to P's selector: the a with sigma_a(P0) = P,
/// where P0 is the selector-0 prime. Returns all such a, ascending.
std::vector<i64> conjugating_residues(const PrimeAboveP& P0, const PrimeAboveP& P);

/// Contraction of P to Z[zeta_{e'}] (zeta_{e'} = zeta^{e/e'}), e' | e.
PrimeAboveP contract(const PrimeAboveP& P, i64 ep);
/// Image in P.kappa of an element of Q.kappa, where Q = contract(P, e'):
/// the root of Q.g maps to zeta_image^{e/e'}.
FqElem embed_contracted(const PrimeAboveP& P, const PrimeAboveP& Q, const FqElem& y);

i64 field_trace(const PrimeAboveP& P, const FqElem& x);

/// k in Z/e'Z with x^{(p^f-1)/e'} = zeta_image^{k e/e'}; nullopt for x = 0.
/// Literal exponentiation in kappa.
std::optional<i64> power_residue_symbol(const PrimeAboveP& P, const FqElem& x, i64 ep);

/// Tabulated symbol (level e), trace, and 1-x over all of kappa, indexed by
/// ResidueField::index.
class SymbolTable {
 public:
  explicit SymbolTable(const PrimeAboveP& P);

  i64 size() const { return static_cast<i64>(symbol_.size()); }
  /// Level-e symbol of element idx, -1 for zero.
  i64 symbol(i64 idx) const { return symbol_[static_cast<size_t>(idx)]; }
  i64 trace(i64 idx) const { return trace_[static_cast<size_t>(idx)]; }
  /// Index of 1 - x.
  i64 one_minus(i64 idx) const { return one_minus_[static_cast<size_t>(idx)]; }
  /// Index of the element g^k for the fixed generator g of kappa^x.
  i64 exp(i64 k) const { return exp_[static_cast<size_t>(mod(k, size() - 1))]; }
  /// Discrete log base the fixed generator, -1 for zero.
  i64 log(i64 idx) const { return log_[static_cast<size_t>(idx)]; }

 private:
  std::vector<i64> symbol_, trace_, one_minus_, exp_, log_;
};

/// Checks symbol_e(x)^d = symbol_{e'}(Nbar x) over P_{e'} for all x in kappa^x,
/// where e' = e/d and Nbar x = x^{sum_t p^{t f_{e'}}}.
bool lifted_symbol_check(const PrimeAboveP& P, i64 d);

}  // namespace cyclocert::residue
