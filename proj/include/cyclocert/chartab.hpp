// Small finite groups given by a multiplication table, their exact character
// tables over Z[zeta_N], Frobenius-Schur indicators, induction/restriction,
// and the structural scans used for the binary tetrahedral group.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cyclocert/cyclo.hpp"
#include "cyclocert/report.hpp"

namespace cyclocert::chartab {

using Encoding = std::vector<i64>;
/// Sorted list of element indices.
using Subset = std::vector<int>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  using MulFn = std::function<Encoding(const Encoding&, const Encoding&)>;

  /// Closure of gens under mul. Elements are sorted by encoding with the
  /// identity moved to index 0. Throws if the closure exceeds max_order.
  static GroupPtr generate(std::string name, const std::vector<Encoding>& gens, const Encoding& identity,
                           const MulFn& mul, i64 max_order = 10000);
  /// Subgroup on the given parent indices (must be closed); remembers the embedding.
  static GroupPtr subgroup(const GroupPtr& parent, const Subset& elements, std::string name = "");

  const std::string& name() const { return name_; }
  i64 order() const { return static_cast<i64>(elements_.size()); }
  i64 exponent() const { return exponent_; }
  int identity() const { return 0; }
  const Encoding& encoding(int g) const { return elements_[static_cast<size_t>(g)]; }
  /// Throws std::out_of_range if the encoding is not an element.
  int index_of(const Encoding& x) const;

  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * elements_.size() + static_cast<size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<size_t>(a)]; }
  int pow(int a, i64 k) const;
  i64 element_order(int a) const { return orders_[static_cast<size_t>(a)]; }

  /// The generators passed to generate(), as indices (empty for subgroups).
  const std::vector<int>& generators() const { return generators_; }

  /// Classes sorted by (size, least element index); the identity class is first.
  const std::vector<Subset>& classes() const { return classes_; }
  i64 class_count() const { return static_cast<i64>(classes_.size()); }
  int class_of(int g) const { return class_of_[static_cast<size_t>(g)]; }
  i64 class_size(int k) const { return static_cast<i64>(classes_[static_cast<size_t>(k)].size()); }
  int class_rep(int k) const { return classes_[static_cast<size_t>(k)][0]; }

  const GroupPtr& parent() const { return parent_; }
  /// Parent index of element g (identity map for a group without parent).
  int to_parent(int g) const { return parent_ ? embedding_[static_cast<size_t>(g)] : g; }

  /// Associativity, identity, inverses and conjugation stability of classes.
  bool verify_axioms() const;
  json to_json() const;

 private:
  FiniteGroup() = default;
  void finish();

  std::string name_;
  std::vector<Encoding> elements_;
  std::vector<int> table_, inverse_, class_of_, generators_, embedding_;
  std::vector<i64> orders_;
  std::vector<Subset> classes_;
  i64 exponent_ = 1;
  GroupPtr parent_;
};

/// Z/n as 1x1 matrices zeta_n^k (encoding {k}).
GroupPtr build_cyclic(i64 n);
/// H_{4n} as monomial 2x2 matrices over mu_{2n}: sigma = diag(zeta, zeta^{-1}),
/// tau = [[0, -1], [1, 0]]. Encoding {s, a, b}: s = 0 is diag(zeta^a, zeta^b),
/// s = 1 is [[0, zeta^a], [zeta^b, 0]]. generators() = {sigma, tau}.
/// Verifies the defining relations on the table; throws for n < 2.
GroupPtr build_quaternion(i64 n);
/// SL_2(F_3) by enumeration of the 24 matrices (encoding {a, b, c, d}).
/// generators() = {alpha, beta} with alpha^3 = beta^3 = (alpha beta)^2.
/// Throws std::logic_error if any structural assertion fails.
GroupPtr build_binary_tetrahedral();
/// Parses "cyclic:n", "quaternion:n" or "binary-tetrahedral".
GroupPtr build_group(const std::string& spec);

/// Subgroup generated by the given elements.
Subset generated(const FiniteGroup& G, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& G, const Subset& S);
bool is_normal(const FiniteGroup& G, const Subset& S);
bool is_abelian(const FiniteGroup& G, const Subset& S);
bool is_cyclic(const FiniteGroup& G, const Subset& S);
Subset center(const FiniteGroup& G);
Subset commutator_subgroup(const FiniteGroup& G);
Subset whole(const FiniteGroup& G);
/// Every subgroup, by joining cyclic subgroups; sorted by (size, elements).
std::vector<Subset> all_subgroups(const FiniteGroup& G);
/// <sigma, tau> with tau^2 = sigma^m, tau^4 = 1, tau^{-1} sigma tau = sigma^{-1}, |S| = 4m, m >= 2.
bool is_generalized_quaternion(const FiniteGroup& G, const Subset& S);

/// Class function with one value per class of its group, in Z[zeta_M] for some M.
class ClassFunction {
 public:
  ClassFunction(GroupPtr G, std::vector<cyclo::CycInt> values);

  const GroupPtr& group() const { return group_; }
  const std::vector<cyclo::CycInt>& values() const { return values_; }
  const cyclo::CycInt& at_class(int k) const { return values_[static_cast<size_t>(k)]; }
  const cyclo::CycInt& operator()(int g) const { return at_class(group_->class_of(g)); }
  /// Value at the identity as an integer.
  mpz_class degree() const;
  bool is_real() const;
  ClassFunction conj() const;

  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction operator*(const mpz_class& c) const;
  bool operator==(const ClassFunction& o) const;
  bool operator!=(const ClassFunction& o) const { return !(*this == o); }

  json to_json() const;

 private:
  GroupPtr group_;
  std::vector<cyclo::CycInt> values_;
};

/// (chi, psi)_G; throws std::domain_error unless it is rational.
mpq_class inner_product(const ClassFunction& a, const ClassFunction& b);
/// (1/|G|) sum_g chi(g^2); throws unless it is an integer.
i64 frobenius_schur(const ClassFunction& chi);
/// Irreducible characters by the class-algebra eigenvector method modulo a
/// prime l = 1 mod exponent, lifted to Z[zeta_N]. Rows sorted by degree, then
/// trivial first, then value lists. Throws std::length_error above max_order.
std::vector<ClassFunction> character_table(const GroupPtr& G, i64 max_order = 200);
/// Row and column orthogonality and sum of squared degrees, exactly.
Report check_table(const std::vector<ClassFunction>& table);

/// chi on a subgroup H (H->parent() == G) induced to G.
ClassFunction induce(const ClassFunction& chi, const GroupPtr& G);
/// chi on G restricted to H (H->parent() == chi.group()).
ClassFunction restrict_to(const ClassFunction& chi, const GroupPtr& H);
/// Multiplicities of the irreducibles; throws std::domain_error if chi is not
/// an integral combination of the table.
std::vector<i64> decompose(const ClassFunction& chi, const std::vector<ClassFunction>& table);

/// Names for the rows: psi_1..psi_4, phi for H_8; chi_1..chi_7 for the binary
/// tetrahedral group (chi_5 the real degree-2 row, chi_7 = conj chi_6);
/// X_1.. otherwise.
std::vector<std::string> labels(const std::vector<ClassFunction>& table);

struct OddOrderGeneration {
  /// Subgroup generated by the elements of odd order.
  Subset odd_part;
  bool generated = false;
  /// Proper normal subgroups of 2-power index, from the subgroup scan.
  std::vector<Subset> two_power_index_normal;
  /// generated == two_power_index_normal.empty()
  bool consistent = false;
};
OddOrderGeneration odd_order_generation(const FiniteGroup& G);

/// For H_{4n} (n >= 2): every abelian subgroup and every degree-2 irreducible
/// falls under one of the two restriction branches (inside <sigma> with
/// Res = rho + conj rho, or cyclic of order 4 containing tau^2 with
/// Res = Ind rho from <tau^2>).
Report check_quaternion_abelian_restrictions(const GroupPtr& G);

/// Table, indicators, symplectic rows, odd-order generation, and for the binary
/// tetrahedral group the structural assertions and the induction from H_8.
Report character_report(const GroupPtr& G);
json table_to_json(const std::vector<ClassFunction>& table);

}  // namespace cyclocert::chartab
