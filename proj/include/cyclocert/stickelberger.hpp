// Ideal lattices in Z[zeta_e], valuations at primes above p, and exponent
// vectors over the cosets of <p> in (Z/eZ)^x.
#pragma once

#include <map>
#include <vector>

#include "cyclocert/cyclo.hpp"
#include "cyclocert/report.hpp"
#include "cyclocert/residue.hpp"

namespace cyclocert::stickelberger {

/// The cosets of <p mod e> in (Z/eZ)^x, each sorted ascending, ordered by
/// their least element. For e = 1 there is the single coset {0}.
class CosetSpace {
 public:
  CosetSpace(i64 e, i64 p);

  i64 e() const { return e_; }
  i64 p() const { return p_; }
  i64 f() const { return f_; }
  i64 size() const { return static_cast<i64>(cosets_.size()); }
  const std::vector<i64>& coset(i64 k) const { return cosets_[static_cast<size_t>(k)]; }
  i64 representative(i64 k) const { return coset(k).front(); }
  /// Index of the coset containing the unit a (any integer representative).
  i64 index_of(i64 a) const;
  /// Index of a * Lambda_k.
  i64 translate(i64 k, i64 a) const { return index_of(a * representative(k)); }
  /// True if the sorted list is one of the cosets.
  bool is_coset(const std::vector<i64>& lambda) const;

 private:
  i64 e_, p_, f_;
  std::vector<std::vector<i64>> cosets_;
  std::vector<i64> where_;
};

/// prod_Lambda (P^{sigma_Lambda})^{exps[Lambda]} for a fixed base prime P,
/// indexed like CosetSpace(e, p).
struct ExponentVector {
  i64 e = 1, p = 0, f = 1;
  std::vector<mpz_class> exps;

  bool operator==(const ExponentVector& o) const = default;
  mpz_class weight() const;
  /// Absolute norm p^{f * weight}.
  mpz_class norm() const;
  bool is_trivial() const;
  /// Keys are the least elements of the cosets, as decimal strings.
  json to_json(const CosetSpace& C) const;
};

ExponentVector zero_exponents(const CosetSpace& C);
/// Exponents of P^X: the entry at Lambda is sum_{a in Lambda} X_a. Throws if
/// an entry is not an integer.
ExponentVector exponents_of(const cyclo::GaloisAlgElem& X, const CosetSpace& C);
/// Lifts exponents of P_{e'} at level e' to level e: P_{e'}^{sigma_{Lambda'}} O
/// is the product of the P^{sigma_Lambda} with Lambda mod e' = Lambda'. Throws
/// std::logic_error unless every Lambda' has the same positive number of preimages.
ExponentVector fold(const ExponentVector& low, const CosetSpace& low_space, const CosetSpace& high_space);

/// Full-rank sublattice of the reduced power basis 1, zeta, ..., zeta^{n-1},
/// n = phi(e), kept in row Hermite normal form: row k has zeros before column
/// k, a positive pivot at k, and entries in [0, pivot) above each pivot.
class IdealLattice {
 public:
  /// Ideal generated by gens (and the integer extra if nonzero).
  static IdealLattice from_generators(const cyclo::FieldPtr& F, const std::vector<cyclo::CycInt>& gens,
                                      const mpz_class& extra = 0);
  static IdealLattice unit(const cyclo::FieldPtr& F);
  /// (p, g(zeta)).
  static IdealLattice prime(const residue::PrimeAboveP& P);

  const cyclo::FieldPtr& field() const { return field_; }
  i64 rank() const { return static_cast<i64>(rows_.size()); }
  const std::vector<std::vector<mpz_class>>& rows() const { return rows_; }
  /// Index in Z[zeta_e], the product of the pivots.
  mpz_class norm() const;

  bool contains(const cyclo::CycInt& x) const;
  bool contains_coords(std::vector<mpz_class> x) const;
  bool zeta_stable() const;

  IdealLattice operator*(const IdealLattice& o) const;
  IdealLattice pow(i64 k) const;
  IdealLattice galois(i64 a) const;
  bool operator==(const IdealLattice& o) const { return rows_ == o.rows_; }

 private:
  IdealLattice(cyclo::FieldPtr F, std::vector<std::vector<mpz_class>> rows)
      : field_(std::move(F)), rows_(std::move(rows)) {}
  /// HNF of span(vectors) where D is a positive integer in that span.
  static IdealLattice from_vectors(const cyclo::FieldPtr& F, const std::vector<std::vector<mpz_class>>& vectors,
                                   const mpz_class& D);
  cyclo::FieldPtr field_;
  std::vector<std::vector<mpz_class>> rows_;
};

/// Powers of one prime ideal, built on demand.
class PrimeLadder {
 public:
  PrimeLadder(IdealLattice prime, i64 p, i64 f);
  const IdealLattice& power(i64 k);
  /// Largest k with x in P^k; x nonzero.
  i64 valuation(const cyclo::CycInt& x);

 private:
  std::vector<IdealLattice> powers_;
  i64 p_, f_;
};

i64 valuation(const cyclo::CycInt& x, const residue::PrimeAboveP& P);

/// Valuations at every conjugate sigma_Lambda(P) of a base prime.
class Factorizer {
 public:
  explicit Factorizer(const residue::PrimeAboveP& P);
  const CosetSpace& cosets() const { return cosets_; }
  ExponentVector factor(const cyclo::CycInt& x);
  /// |N(x)| = p^{f * weight(factor(x))}, i.e. x is supported only above p.
  bool supported_above_p(const cyclo::CycInt& x);

 private:
  residue::PrimeAboveP P_;
  CosetSpace cosets_;
  std::vector<PrimeLadder> ladders_;
};

/// (J) against P^{(2-sigma_2) Theta} and (G^e) against P^{e Theta}, with norm checks.
Report verify_stickelberger(const residue::PrimeAboveP& P);

/// Content theorems for r, s and N(v_i) at every chi^d, d | e (e odd).
Report verify_contents(i64 e, i64 p, i64 selector);

}  // namespace cyclocert::stickelberger
