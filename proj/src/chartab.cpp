#include "cyclocert/chartab.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace cyclocert::chartab {

using cyclo::CycField;
using cyclo::CycInt;
using cyclo::FieldPtr;

// ---------------------------------------------------------------------------
// FiniteGroup

GroupPtr FiniteGroup::generate(std::string name, const std::vector<Encoding>& gens, const Encoding& identity,
                               const MulFn& mul, i64 max_order) {
  std::set<Encoding> seen{identity};
  std::vector<Encoding> frontier{identity};
  while (!frontier.empty()) {
    std::vector<Encoding> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Encoding y = mul(x, g);
        if (seen.insert(y).second) {
          if (static_cast<i64>(seen.size()) > max_order) throw std::length_error("FiniteGroup: closure exceeds bound");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  G->name_ = std::move(name);
  G->elements_.push_back(identity);
  for (const auto& x : seen)
    if (x != identity) G->elements_.push_back(x);
  const size_t n = G->elements_.size();
  std::map<Encoding, int> index;
  for (size_t i = 0; i < n; ++i) index[G->elements_[i]] = static_cast<int>(i);
  G->table_.resize(n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      auto it = index.find(mul(G->elements_[a], G->elements_[b]));
      if (it == index.end()) throw std::logic_error("FiniteGroup: product escapes the closure");
      G->table_[a * n + b] = it->second;
    }
  for (const auto& g : gens) G->generators_.push_back(index.at(g));
  G->finish();
  return G;
}

GroupPtr FiniteGroup::subgroup(const GroupPtr& parent, const Subset& elements, std::string name) {
  if (!is_subgroup(*parent, elements)) throw std::invalid_argument("FiniteGroup::subgroup: not a subgroup");
  auto H = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  H->name_ = name.empty() ? parent->name() + "/sub" + std::to_string(elements.size()) : std::move(name);
  H->parent_ = parent;
  H->embedding_ = elements;  // sorted, identity (index 0) first
  const size_t n = elements.size();
  for (int g : elements) H->elements_.push_back(parent->encoding(g));
  H->table_.resize(n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      const int c = parent->mul(elements[a], elements[b]);
      H->table_[a * n + b] = static_cast<int>(std::lower_bound(elements.begin(), elements.end(), c) - elements.begin());
    }
  H->finish();
  return H;
}

void FiniteGroup::finish() {
  const int n = static_cast<int>(elements_.size());
  inverse_.assign(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == 0) {
        inverse_[static_cast<size_t>(a)] = b;
        break;
      }
  orders_.assign(static_cast<size_t>(n), 0);
  exponent_ = 1;
  for (int a = 0; a < n; ++a) {
    i64 k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    orders_[static_cast<size_t>(a)] = k;
    exponent_ = std::lcm(exponent_, k);
  }
  class_of_.assign(static_cast<size_t>(n), -1);
  std::vector<Subset> cls;
  for (int a = 0; a < n; ++a) {
    if (class_of_[static_cast<size_t>(a)] >= 0) continue;
    std::set<int> c;
    for (int x = 0; x < n; ++x) c.insert(mul(mul(x, a), inv(x)));
    for (int y : c) class_of_[static_cast<size_t>(y)] = 0;
    cls.emplace_back(c.begin(), c.end());
  }
  std::sort(cls.begin(), cls.end(), [](const Subset& a, const Subset& b) {
    return a.size() != b.size() ? a.size() < b.size() : a[0] < b[0];
  });
  classes_ = std::move(cls);
  for (size_t k = 0; k < classes_.size(); ++k)
    for (int y : classes_[k]) class_of_[static_cast<size_t>(y)] = static_cast<int>(k);
}

int FiniteGroup::index_of(const Encoding& x) const {
  for (size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == x) return static_cast<int>(i);
  throw std::out_of_range("FiniteGroup::index_of: not an element");
}

int FiniteGroup::pow(int a, i64 k) const {
  k = mod(k, element_order(a));
  int r = 0;
  for (i64 i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

bool FiniteGroup::verify_axioms() const {
  const int n = static_cast<int>(order());
  for (int a = 0; a < n; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) return false;
    if (inv(a) < 0 || mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) return false;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      if (class_of(mul(mul(x, a), inv(x))) != class_of(a)) return false;
  return true;
}

json FiniteGroup::to_json() const {
  json cls = json::array();
  for (int k = 0; k < class_count(); ++k) {
    json c = json::object();
    c["order"] = std::to_string(element_order(class_rep(k)));
    c["representative"] = cyclocert::to_json(encoding(class_rep(k)));
    c["size"] = std::to_string(class_size(k));
    cls.push_back(c);
  }
  json j = json::object();
  j["classes"] = cls;
  j["exponent"] = std::to_string(exponent_);
  j["name"] = name_;
  j["order"] = std::to_string(order());
  return j;
}

// ---------------------------------------------------------------------------
// Concrete groups

GroupPtr build_cyclic(i64 n) {
  if (n < 1) throw std::invalid_argument("build_cyclic: n must be positive");
  auto mul = [n](const Encoding& a, const Encoding& b) { return Encoding{mod(a[0] + b[0], n)}; };
  return FiniteGroup::generate("cyclic:" + std::to_string(n), {{mod(1, n)}}, {0}, mul);
}

GroupPtr build_quaternion(i64 n) {
  if (n < 2) throw std::invalid_argument("build_quaternion: n must be at least 2");
  const i64 m = 2 * n;
  auto mul = [m](const Encoding& x, const Encoding& y) {
    const i64 s1 = x[0], a1 = x[1], b1 = x[2], s2 = y[0], a2 = y[1], b2 = y[2];
    if (s1 == 0) return Encoding{s2, mod(a1 + a2, m), mod(b1 + b2, m)};
    if (s2 == 0) return Encoding{1, mod(a1 + b2, m), mod(b1 + a2, m)};
    return Encoding{0, mod(a1 + b2, m), mod(b1 + a2, m)};
  };
  auto G = FiniteGroup::generate("quaternion:" + std::to_string(n), {{0, 1, m - 1}, {1, n, 0}}, {0, 0, 0}, mul);
  const int sigma = G->generators()[0], tau = G->generators()[1];
  const int tau2 = G->mul(tau, tau);
  if (G->order() != 4 * n || G->pow(sigma, n) != tau2 || G->pow(tau, 4) != 0 ||
      G->mul(G->mul(G->inv(tau), sigma), tau) != G->inv(sigma))
    throw std::logic_error("build_quaternion: defining relations fail");
  return G;
}

GroupPtr build_binary_tetrahedral() {
  auto mul = [](const Encoding& x, const Encoding& y) {
    return Encoding{mod(x[0] * y[0] + x[1] * y[2], 3), mod(x[0] * y[1] + x[1] * y[3], 3),
                    mod(x[2] * y[0] + x[3] * y[2], 3), mod(x[2] * y[1] + x[3] * y[3], 3)};
  };
  std::vector<Encoding> sl2;
  for (i64 a = 0; a < 3; ++a)
    for (i64 b = 0; b < 3; ++b)
      for (i64 c = 0; c < 3; ++c)
        for (i64 d = 0; d < 3; ++d)
          if (mod(a * d - b * c, 3) == 1) sl2.push_back({a, b, c, d});
  // alpha = -[[1,1],[0,1]], beta = -[[1,0],[1,1]]
  const Encoding alpha{2, 2, 0, 2}, beta{2, 0, 2, 2};
  auto G = FiniteGroup::generate("binary-tetrahedral", {alpha, beta}, {1, 0, 0, 1}, mul);

  auto fail = [](const char* what) { throw std::logic_error(std::string("build_binary_tetrahedral: ") + what); };
  if (G->order() != 24 || static_cast<i64>(sl2.size()) != 24) fail("order is not 24");
  for (const auto& x : sl2) G->index_of(x);
  const int a = G->generators()[0], b = G->generators()[1];
  const int z = G->pow(a, 3);
  if (z == 0 || G->pow(b, 3) != z || G->pow(G->mul(a, b), 2) != z) fail("alpha^3 = beta^3 = (alpha beta)^2 fails");
  const Subset Z = center(*G);
  if (Z.size() != 2 || Z[1] != z) fail("center is not <alpha^3> of order 2");
  const Subset D = commutator_subgroup(*G);
  if (D.size() != 8 || !is_generalized_quaternion(*G, D)) fail("commutator subgroup is not H_8");
  // G/Z has order 12 and derived subgroup DZ/Z of order 4: this singles out A_4.
  Subset DZ = generated(*G, [&] {
    std::vector<int> g(D.begin(), D.end());
    g.push_back(z);
    return g;
  }());
  if (G->order() / static_cast<i64>(Z.size()) != 12 || DZ.size() / Z.size() != 4) fail("G/Z is not A_4");
  for (const auto& S : all_subgroups(*G))
    if (2 * static_cast<i64>(S.size()) == G->order()) fail("subgroup of index 2 found");
  return G;
}

GroupPtr build_group(const std::string& spec) {
  if (spec == "binary-tetrahedral") return build_binary_tetrahedral();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown group spec: " + spec);
  const std::string kind = spec.substr(0, colon);
  i64 n = 0;
  try {
    size_t used = 0;
    n = std::stoll(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad group parameter: " + spec);
  }
  if (kind == "cyclic") return build_cyclic(n);
  if (kind == "quaternion") return build_quaternion(n);
  throw std::invalid_argument("unknown group spec: " + spec);
}

// ---------------------------------------------------------------------------
// Subgroups

Subset generated(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(static_cast<size_t>(G.order()), 0);
  std::vector<int> frontier{0};
  in[0] = 1;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int g : gens) {
        const int y = G.mul(x, g);
        if (!in[static_cast<size_t>(y)]) {
          in[static_cast<size_t>(y)] = 1;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  Subset S;
  for (int i = 0; i < static_cast<int>(G.order()); ++i)
    if (in[static_cast<size_t>(i)]) S.push_back(i);
  return S;
}

bool is_subgroup(const FiniteGroup& G, const Subset& S) {
  if (S.empty() || S[0] != 0 || !std::is_sorted(S.begin(), S.end())) return false;
  for (int a : S)
    for (int b : S)
      if (!std::binary_search(S.begin(), S.end(), G.mul(a, G.inv(b)))) return false;
  return true;
}

bool is_normal(const FiniteGroup& G, const Subset& S) {
  for (int x = 0; x < static_cast<int>(G.order()); ++x)
    for (int s : S)
      if (!std::binary_search(S.begin(), S.end(), G.mul(G.mul(x, s), G.inv(x)))) return false;
  return true;
}

bool is_abelian(const FiniteGroup& G, const Subset& S) {
  for (int a : S)
    for (int b : S)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& G, const Subset& S) {
  return std::any_of(S.begin(), S.end(), [&](int a) { return G.element_order(a) == static_cast<i64>(S.size()); });
}

Subset center(const FiniteGroup& G) {
  Subset Z;
  const Subset all = whole(G);
  for (int a : all)
    if (std::all_of(all.begin(), all.end(), [&](int x) { return G.mul(a, x) == G.mul(x, a); })) Z.push_back(a);
  return Z;
}

Subset commutator_subgroup(const FiniteGroup& G) {
  std::set<int> comms;
  for (int a = 0; a < static_cast<int>(G.order()); ++a)
    for (int b = 0; b < static_cast<int>(G.order()); ++b) comms.insert(G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)));
  return generated(G, std::vector<int>(comms.begin(), comms.end()));
}

Subset whole(const FiniteGroup& G) {
  Subset S(static_cast<size_t>(G.order()));
  std::iota(S.begin(), S.end(), 0);
  return S;
}

std::vector<Subset> all_subgroups(const FiniteGroup& G) {
  std::map<Subset, std::vector<int>> found;  // subgroup -> generators
  std::vector<Subset> queue;
  for (int g = 0; g < static_cast<int>(G.order()); ++g) {
    Subset S = generated(G, {g});
    if (found.emplace(S, std::vector<int>{g}).second) queue.push_back(S);
  }
  for (size_t q = 0; q < queue.size(); ++q) {
    const Subset S = queue[q];
    const std::vector<int> gens = found.at(S);
    for (int g = 0; g < static_cast<int>(G.order()); ++g) {
      if (std::binary_search(S.begin(), S.end(), g)) continue;
      std::vector<int> more = gens;
      more.push_back(g);
      Subset T = generated(G, more);
      if (found.emplace(T, more).second) queue.push_back(T);
    }
  }
  std::vector<Subset> out;
  for (const auto& [S, g] : found) out.push_back(S);
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

bool is_generalized_quaternion(const FiniteGroup& G, const Subset& S) {
  if (S.size() % 4 != 0 || S.size() < 8) return false;
  const i64 m = static_cast<i64>(S.size()) / 4;
  for (int sigma : S) {
    if (G.element_order(sigma) != 2 * m) continue;
    const Subset C = generated(G, {sigma});
    for (int tau : S) {
      if (std::binary_search(C.begin(), C.end(), tau)) continue;
      if (G.mul(tau, tau) == G.pow(sigma, m) && G.pow(tau, 4) == 0 &&
          G.mul(G.mul(G.inv(tau), sigma), tau) == G.inv(sigma))
        return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Class functions

namespace {

CycInt conjugate(const CycInt& x) { return x.e() <= 2 ? x : x.galois(x.e() - 1); }

std::pair<CycInt, CycInt> common(const CycInt& a, const CycInt& b) {
  if (a.e() == b.e()) return {a, b};
  const FieldPtr F = CycField::make(std::lcm(a.e(), b.e()));
  return {a.embed(F), b.embed(F)};
}

CycInt add(const CycInt& a, const CycInt& b) {
  auto [x, y] = common(a, b);
  return x + y;
}

/// x / n for an integer n, exact on the canonical form.
CycInt divide(const CycInt& x, const mpz_class& n) {
  CycInt c = x.canonical_form();
  std::vector<mpz_class> q = c.coeffs();
  for (auto& v : q) {
    if (!mpz_divisible_p(v.get_mpz_t(), n.get_mpz_t())) throw std::domain_error("class function value not divisible");
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  }
  return CycInt(c.field(), std::move(q));
}

}  // namespace

ClassFunction::ClassFunction(GroupPtr G, std::vector<CycInt> values) : group_(std::move(G)), values_(std::move(values)) {
  if (static_cast<i64>(values_.size()) != group_->class_count())
    throw std::invalid_argument("ClassFunction: one value per class required");
}

mpz_class ClassFunction::degree() const { return values_[0].to_integer(); }

bool ClassFunction::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](const CycInt& v) { return v == conjugate(v); });
}

ClassFunction ClassFunction::conj() const {
  std::vector<CycInt> v;
  for (const auto& x : values_) v.push_back(conjugate(x));
  return ClassFunction(group_, std::move(v));
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  if (group_ != o.group_) throw std::invalid_argument("ClassFunction: different groups");
  std::vector<CycInt> v;
  for (size_t k = 0; k < values_.size(); ++k) {
    auto [a, b] = common(values_[k], o.values_[k]);
    v.push_back((a + b).canonical_form());
  }
  return ClassFunction(group_, std::move(v));
}

ClassFunction ClassFunction::operator*(const mpz_class& c) const {
  std::vector<CycInt> v;
  for (const auto& x : values_) v.push_back(x * c);
  return ClassFunction(group_, std::move(v));
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const { return *this + o * mpz_class(-1); }

bool ClassFunction::operator==(const ClassFunction& o) const {
  if (group_ != o.group_) return false;
  for (size_t k = 0; k < values_.size(); ++k) {
    auto [a, b] = common(values_[k], o.values_[k]);
    if (a != b) return false;
  }
  return true;
}

json ClassFunction::to_json() const {
  json v = json::array();
  for (const auto& x : values_) v.push_back(x.to_string());
  json j = json::object();
  j["field"] = std::to_string(values_.empty() ? 1 : values_[0].e());
  j["values"] = v;
  return j;
}

mpq_class inner_product(const ClassFunction& a, const ClassFunction& b) {
  const FiniteGroup& G = *a.group();
  if (a.group() != b.group()) throw std::invalid_argument("inner_product: different groups");
  std::optional<CycInt> S;
  for (int k = 0; k < G.class_count(); ++k) {
    auto [x, y] = common(a.at_class(k), conjugate(b.at_class(k)));
    CycInt t = x * y * mpz_class(G.class_size(k));
    S = S ? add(*S, t) : t;
  }
  if (!S->is_integer()) throw std::domain_error("inner_product: value is not rational");
  mpq_class q(S->to_integer(), G.order());
  q.canonicalize();
  return q;
}

i64 frobenius_schur(const ClassFunction& chi) {
  const FiniteGroup& G = *chi.group();
  CycInt S = CycInt(chi.at_class(0).field());
  for (int k = 0; k < G.class_count(); ++k) {
    const int g = G.class_rep(k);
    S += chi(G.mul(g, g)) * mpz_class(G.class_size(k));
  }
  if (!S.is_integer()) throw std::domain_error("frobenius_schur: not an integer");
  const mpz_class s = S.to_integer();
  if (s % G.order() != 0) throw std::domain_error("frobenius_schur: not divisible by |G|");
  return mpz_class(s / G.order()).get_si();
}

// ---------------------------------------------------------------------------
// Character table over F_l, lifted to Z[zeta_N]

namespace {

using Row = std::vector<i64>;

i64 primitive_root(i64 l) {
  const auto qs = prime_factors(l - 1);
  for (i64 g = 2;; ++g)
    if (std::all_of(qs.begin(), qs.end(), [&](i64 q) { return powmod(g, (l - 1) / q, l) != 1; })) return g;
}

/// Reduced row echelon form in place; returns the pivot columns and drops zero rows.
std::vector<size_t> rref(std::vector<Row>& M, i64 l) {
  std::vector<size_t> piv;
  size_t r = 0;
  const size_t cols = M.empty() ? 0 : M[0].size();
  for (size_t c = 0; c < cols && r < M.size(); ++c) {
    size_t p = r;
    while (p < M.size() && M[p][c] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[r], M[p]);
    const i64 inv = inverse_mod(M[r][c], l);
    for (auto& x : M[r]) x = mulmod(x, inv, l);
    for (size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0) continue;
      const i64 f = M[i][c];
      for (size_t k = 0; k < cols; ++k) M[i][k] = mod(M[i][k] - mulmod(f, M[r][k], l), l);
    }
    piv.push_back(c);
    ++r;
  }
  M.resize(r);
  return piv;
}

/// Null space of a square matrix (as row vectors).
std::vector<Row> kernel(std::vector<Row> M, i64 l) {
  const size_t n = M.size();
  const auto piv = rref(M, l);
  std::vector<char> is_piv(n, 0);
  for (size_t c : piv) is_piv[c] = 1;
  std::vector<Row> out;
  for (size_t fcol = 0; fcol < n; ++fcol) {
    if (is_piv[fcol]) continue;
    Row v(n, 0);
    v[fcol] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = mod(-M[i][fcol], l);
    out.push_back(std::move(v));
  }
  return out;
}

/// Characteristic polynomial (low degree first) via Hessenberg reduction.
std::vector<i64> charpoly(std::vector<Row> H, i64 l) {
  const size_t n = H.size();
  for (size_t m = 1; m + 1 < n; ++m) {
    size_t p = m;
    while (p < n && H[p][m - 1] == 0) ++p;
    if (p == n) continue;
    if (p != m) {
      std::swap(H[p], H[m]);
      for (size_t i = 0; i < n; ++i) std::swap(H[i][p], H[i][m]);
    }
    const i64 inv = inverse_mod(H[m][m - 1], l);
    for (size_t i = m + 1; i < n; ++i) {
      const i64 u = mulmod(H[i][m - 1], inv, l);
      if (u == 0) continue;
      for (size_t j = 0; j < n; ++j) H[i][j] = mod(H[i][j] - mulmod(u, H[m][j], l), l);
      for (size_t j = 0; j < n; ++j) H[j][m] = mod(H[j][m] + mulmod(u, H[j][i], l), l);
    }
  }
  std::vector<std::vector<i64>> P{{1}};
  for (size_t m = 0; m < n; ++m) {
    std::vector<i64> next(m + 2, 0);
    for (size_t k = 0; k <= m; ++k) {
      next[k + 1] = mod(next[k + 1] + P[m][k], l);
      next[k] = mod(next[k] - mulmod(H[m][m], P[m][k], l), l);
    }
    i64 t = 1;
    for (size_t i = m; i-- > 0;) {
      t = mulmod(t, H[i + 1][i], l);
      const i64 c = mulmod(t, H[i][m], l);
      for (size_t k = 0; k < P[i].size(); ++k) next[k] = mod(next[k] - mulmod(c, P[i][k], l), l);
    }
    P.push_back(std::move(next));
  }
  return P[n];
}

/// Splits an A-stable subspace (rows in RREF) into eigenspaces of A.
std::vector<std::vector<Row>> split(const std::vector<Row>& B, const std::vector<size_t>& piv,
                                    const std::vector<Row>& A, i64 l) {
  const size_t k = B.size(), r = A.size();
  std::vector<Row> Ap(k, Row(k, 0));
  for (size_t t = 0; t < k; ++t) {
    Row v(r, 0);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j)
        if (A[i][j] != 0 && B[t][j] != 0) v[i] = mod(v[i] + mulmod(A[i][j], B[t][j], l), l);
    for (size_t s = 0; s < k; ++s) Ap[s][t] = v[piv[s]];
    for (size_t i = 0; i < r; ++i) {
      i64 w = 0;
      for (size_t s = 0; s < k; ++s) w = mod(w + mulmod(Ap[s][t], B[s][i], l), l);
      if (w != v[i]) throw std::logic_error("character_table: subspace is not stable");
    }
  }
  const auto cp = charpoly(Ap, l);
  std::vector<std::vector<Row>> out;
  size_t total = 0;
  for (i64 lam = 0; lam < l; ++lam) {
    i64 val = 0;
    for (size_t i = cp.size(); i-- > 0;) val = mod(mulmod(val, lam, l) + cp[i], l);
    if (val != 0) continue;
    std::vector<Row> M = Ap;
    for (size_t i = 0; i < k; ++i) M[i][i] = mod(M[i][i] - lam, l);
    std::vector<Row> space;
    for (const auto& c : kernel(M, l)) {
      Row w(r, 0);
      for (size_t s = 0; s < k; ++s)
        if (c[s] != 0)
          for (size_t i = 0; i < r; ++i) w[i] = mod(w[i] + mulmod(c[s], B[s][i], l), l);
      space.push_back(std::move(w));
    }
    total += space.size();
    out.push_back(std::move(space));
  }
  if (total != k) throw std::logic_error("character_table: class matrix not diagonalizable");
  return out;
}

}  // namespace

std::vector<ClassFunction> character_table(const GroupPtr& Gp, i64 max_order) {
  const FiniteGroup& G = *Gp;
  const i64 n = G.order(), N = G.exponent();
  if (n > max_order) throw std::length_error("character_table: group order exceeds bound");
  const int r = static_cast<int>(G.class_count());

  i64 l = N + 1;
  while (l <= n || !is_prime(l)) l += N;
  const i64 z = powmod(primitive_root(l), (l - 1) / N, l);

  // Class matrices A_j[i][k] = #{x in C_i : x^{-1} g_k in C_j}; A_j omega = omega_j omega.
  auto class_matrix = [&](int j) {
    std::vector<Row> A(static_cast<size_t>(r), Row(static_cast<size_t>(r), 0));
    for (int k = 0; k < r; ++k) {
      const int gk = G.class_rep(k);
      for (int x = 0; x < static_cast<int>(n); ++x)
        if (G.class_of(G.mul(G.inv(x), gk)) == j) ++A[static_cast<size_t>(G.class_of(x))][static_cast<size_t>(k)];
    }
    return A;
  };

  std::vector<std::vector<Row>> spaces;
  {
    std::vector<Row> I(static_cast<size_t>(r), Row(static_cast<size_t>(r), 0));
    for (int i = 0; i < r; ++i) I[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    spaces.push_back(I);
  }
  for (int j = 1; j < r; ++j) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; })) break;
    const auto A = class_matrix(j);
    std::vector<std::vector<Row>> next;
    for (auto& S : spaces) {
      if (S.size() == 1) {
        next.push_back(std::move(S));
        continue;
      }
      auto piv = rref(S, l);
      for (auto& part : split(S, piv, A, l)) {
        rref(part, l);
        next.push_back(std::move(part));
      }
    }
    spaces = std::move(next);
  }

  // Power map on classes.
  std::vector<std::vector<int>> power(static_cast<size_t>(r));
  for (int k = 0; k < r; ++k)
    for (i64 t = 0; t < N; ++t) power[static_cast<size_t>(k)].push_back(G.class_of(G.pow(G.class_rep(k), t)));

  const FieldPtr F = CycField::make(N);
  const i64 Ninv = inverse_mod(N % l, l);
  std::vector<ClassFunction> rows;
  i64 degree_squares = 0;
  for (const auto& S : spaces) {
    if (S.size() != 1) throw std::logic_error("character_table: eigenspace of dimension > 1");
    Row w = S[0];
    if (w[0] == 0) throw std::logic_error("character_table: central character vanishes at the identity");
    const i64 w0inv = inverse_mod(w[0], l);
    for (auto& x : w) x = mulmod(x, w0inv, l);
    i64 s = 0;
    for (int i = 0; i < r; ++i) {
      const int ib = G.class_of(G.inv(G.class_rep(i)));
      s = mod(s + mulmod(mulmod(w[static_cast<size_t>(i)], w[static_cast<size_t>(ib)], l), inverse_mod(G.class_size(i), l), l), l);
    }
    const i64 d2 = mulmod(n % l, inverse_mod(s, l), l);
    i64 d = 0;
    for (i64 t = 1; t * t <= n; ++t)
      if (mulmod(t, t, l) == d2) d = t;
    if (d == 0) throw std::logic_error("character_table: no degree found");
    degree_squares += d * d;
    Row chi(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i)
      chi[static_cast<size_t>(i)] = mulmod(mulmod(d, w[static_cast<size_t>(i)], l), inverse_mod(G.class_size(i), l), l);
    std::vector<CycInt> values;
    for (int i = 0; i < r; ++i) {
      std::vector<mpz_class> mult(static_cast<size_t>(N));
      i64 total = 0;
      for (i64 a = 0; a < N; ++a) {
        i64 acc = 0;
        for (i64 t = 0; t < N; ++t)
          acc = mod(acc + mulmod(chi[static_cast<size_t>(power[static_cast<size_t>(i)][static_cast<size_t>(t)])],
                                 powmod(z, mod(-a * t, N), l), l),
                    l);
        const i64 m = mulmod(acc, Ninv, l);
        if (m > d) throw std::logic_error("character_table: eigenvalue multiplicity out of range");
        mult[static_cast<size_t>(a)] = m;
        total += m;
      }
      if (total != d) throw std::logic_error("character_table: multiplicities do not sum to the degree");
      values.push_back(CycInt(F, std::move(mult)).canonical_form());
    }
    rows.emplace_back(Gp, std::move(values));
  }
  if (degree_squares != n) throw std::logic_error("character_table: sum of squared degrees differs from |G|");

  struct Key {
    mpz_class degree;
    bool nontrivial;
    std::vector<std::vector<mpz_class>> values;
  };
  std::vector<std::pair<Key, size_t>> keyed;
  for (size_t t = 0; t < rows.size(); ++t) {
    Key k{rows[t].degree(), false, {}};
    for (const auto& v : rows[t].values()) {
      k.values.push_back(v.reduced());
      if (v != CycInt::constant(F, 1)) k.nontrivial = true;
    }
    keyed.emplace_back(std::move(k), t);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.degree, a.first.nontrivial, a.first.values) <
           std::tie(b.first.degree, b.first.nontrivial, b.first.values);
  });
  std::vector<ClassFunction> sorted_rows;
  for (const auto& [k, t] : keyed) sorted_rows.push_back(rows[t]);
  return sorted_rows;
}

Report check_table(const std::vector<ClassFunction>& table) {
  Report R;
  if (table.empty()) return R;
  const FiniteGroup& G = *table[0].group();
  const int r = static_cast<int>(G.class_count());
  json params = json::object();
  params["group"] = G.name();
  mpz_class squares = 0;
  for (const auto& chi : table) squares += chi.degree() * chi.degree();
  R.add("sum of squared degrees", params, to_json(mpz_class(G.order())), to_json(squares), squares == G.order());
  R.add("number of rows = number of classes", params, std::to_string(r), std::to_string(table.size()),
        static_cast<int>(table.size()) == r);

  bool rows_ok = true;
  for (size_t a = 0; a < table.size(); ++a)
    for (size_t b = 0; b < table.size(); ++b)
      if (inner_product(table[a], table[b]) != (a == b ? 1 : 0)) rows_ok = false;
  R.add("row orthogonality", params, true, rows_ok, rows_ok);

  // sum_chi chi(g_i) conj chi(g_j) = delta_ij |C_G(g_i)|
  bool cols_ok = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      std::optional<CycInt> S;
      for (const auto& chi : table) {
        auto [x, y] = common(chi.at_class(i), conjugate(chi.at_class(j)));
        CycInt t = x * y;
        S = S ? add(*S, t) : t;
      }
      const mpz_class expect = i == j ? mpz_class(G.order() / G.class_size(i)) : mpz_class(0);
      if (!S->is_integer() || S->to_integer() != expect) cols_ok = false;
    }
  R.add("column orthogonality", params, true, cols_ok, cols_ok);
  return R;
}

// ---------------------------------------------------------------------------
// Induction, restriction, decomposition

ClassFunction induce(const ClassFunction& chi, const GroupPtr& G) {
  const GroupPtr& H = chi.group();
  if (H->parent() != G) throw std::invalid_argument("induce: not a subgroup of the target group");
  const FieldPtr F = chi.at_class(0).field();
  std::vector<CycInt> sums(static_cast<size_t>(G->class_count()), CycInt(F));
  for (int h = 0; h < static_cast<int>(H->order()); ++h) sums[static_cast<size_t>(G->class_of(H->to_parent(h)))] += chi(h);
  std::vector<CycInt> values;
  for (int k = 0; k < G->class_count(); ++k)
    values.push_back(divide(sums[static_cast<size_t>(k)] * mpz_class(G->order()), mpz_class(H->order() * G->class_size(k))));
  return ClassFunction(G, std::move(values));
}

ClassFunction restrict_to(const ClassFunction& chi, const GroupPtr& H) {
  if (H->parent() != chi.group()) throw std::invalid_argument("restrict_to: not a subgroup of the source group");
  std::vector<CycInt> values;
  for (int k = 0; k < H->class_count(); ++k) values.push_back(chi(H->to_parent(H->class_rep(k))));
  return ClassFunction(H, std::move(values));
}

std::vector<i64> decompose(const ClassFunction& chi, const std::vector<ClassFunction>& table) {
  std::vector<i64> m;
  std::optional<ClassFunction> sum;
  for (const auto& row : table) {
    const mpq_class c = inner_product(chi, row);
    if (c.get_den() != 1) throw std::domain_error("decompose: non-integral multiplicity");
    m.push_back(c.get_num().get_si());
    ClassFunction term = row * c.get_num();
    sum = sum ? *sum + term : term;
  }
  if (!sum || *sum != chi) throw std::domain_error("decompose: not a combination of the table");
  return m;
}

std::vector<std::string> labels(const std::vector<ClassFunction>& table) {
  std::vector<std::string> out(table.size());
  const std::string& name = table.empty() ? std::string() : table[0].group()->name();
  if (name == "quaternion:2" && table.size() == 5) {
    for (size_t t = 0; t < 4; ++t) out[t] = "psi_" + std::to_string(t + 1);
    out[4] = "phi";
    return out;
  }
  if (name == "binary-tetrahedral" && table.size() == 7) {
    std::vector<size_t> linear, two;
    for (size_t t = 0; t < table.size(); ++t) {
      if (table[t].degree() == 3) out[t] = "chi_4";
      if (table[t].degree() == 1) linear.push_back(t);
      if (table[t].degree() == 2) two.push_back(t);
    }
    if (linear.size() != 3 || two.size() != 3) throw std::logic_error("labels: unexpected degree census");
    for (size_t t = 0; t < 3; ++t) out[linear[t]] = "chi_" + std::to_string(t + 1);
    std::vector<size_t> nonreal;
    for (size_t t : two) {
      if (table[t].is_real()) out[t] = "chi_5";
      else nonreal.push_back(t);
    }
    if (nonreal.size() != 2 || table[nonreal[0]].conj() != table[nonreal[1]])
      throw std::logic_error("labels: degree-2 rows are not one real and a conjugate pair");
    out[nonreal[0]] = "chi_6";
    out[nonreal[1]] = "chi_7";
    return out;
  }
  for (size_t t = 0; t < table.size(); ++t) out[t] = "X_" + std::to_string(t + 1);
  return out;
}

OddOrderGeneration odd_order_generation(const FiniteGroup& G) {
  OddOrderGeneration r;
  std::vector<int> odd;
  for (int g = 0; g < static_cast<int>(G.order()); ++g)
    if (G.element_order(g) % 2 == 1) odd.push_back(g);
  r.odd_part = generated(G, odd);
  r.generated = static_cast<i64>(r.odd_part.size()) == G.order();
  for (const auto& S : all_subgroups(G)) {
    const i64 index = G.order() / static_cast<i64>(S.size());
    if (index > 1 && (index & (index - 1)) == 0 && is_normal(G, S)) r.two_power_index_normal.push_back(S);
  }
  r.consistent = r.generated == r.two_power_index_normal.empty();
  return r;
}

Report check_quaternion_abelian_restrictions(const GroupPtr& Gp) {
  const FiniteGroup& G = *Gp;
  if (G.generators().size() != 2) throw std::invalid_argument("check_quaternion_abelian_restrictions: expects build_quaternion output");
  const int sigma = G.generators()[0], tau = G.generators()[1];
  const int z = G.mul(tau, tau);
  const Subset cyc = generated(G, {sigma});
  const auto table = character_table(Gp);
  Report R;
  for (const auto& A : all_subgroups(G)) {
    if (!is_abelian(G, A)) continue;
    const GroupPtr HA = FiniteGroup::subgroup(Gp, A);
    const auto tabA = character_table(HA);
    const bool inside = std::includes(cyc.begin(), cyc.end(), A.begin(), A.end());
    const bool order4 = A.size() == 4 && is_cyclic(G, A) && std::binary_search(A.begin(), A.end(), z);
    std::optional<GroupPtr> Zsub;
    std::vector<ClassFunction> tabZ;
    if (order4) {
      const int zi = static_cast<int>(std::lower_bound(A.begin(), A.end(), z) - A.begin());
      Zsub = FiniteGroup::subgroup(HA, {0, zi});
      tabZ = character_table(*Zsub);
    }
    for (size_t t = 0; t < table.size(); ++t) {
      if (table[t].degree() != 2) continue;
      const ClassFunction res = restrict_to(table[t], HA);
      bool first = false, second = false;
      if (inside)
        for (const auto& rho : tabA)
          if (res == rho + rho.conj()) first = true;
      if (order4)
        for (const auto& rho : tabZ)
          if (res == induce(rho, HA)) second = true;
      json params = json::object();
      params["group"] = G.name();
      params["subgroup"] = to_json(std::vector<i64>(A.begin(), A.end()));
      params["row"] = std::to_string(t);
      json actual = json::object();
      actual["inside <sigma>"] = first;
      actual["cyclic of order 4 over <tau^2>"] = second;
      R.add("abelian restriction branch", params, "one branch holds", actual, first || second);
    }
  }
  return R;
}

// ---------------------------------------------------------------------------
// Reports

json table_to_json(const std::vector<ClassFunction>& table) {
  json rows = json::array();
  const auto names = labels(table);
  for (size_t t = 0; t < table.size(); ++t) {
    json row = table[t].to_json();
    row["degree"] = table[t].degree().get_str();
    row["frobenius_schur"] = std::to_string(frobenius_schur(table[t]));
    row["label"] = names[t];
    row["real"] = table[t].is_real();
    rows.push_back(row);
  }
  json j = json::object();
  j["characters"] = rows;
  j["group"] = table.empty() ? json() : table[0].group()->to_json();
  return j;
}

Report character_report(const GroupPtr& Gp) {
  const FiniteGroup& G = *Gp;
  Report R;
  json params = json::object();
  params["group"] = G.name();
  R.add("group axioms", params, true, G.verify_axioms(), G.verify_axioms());

  const auto table = character_table(Gp);
  R.merge(check_table(table));
  const auto names = labels(table);

  std::vector<std::string> degrees, symplectic;
  bool indicators_ok = true;
  for (size_t t = 0; t < table.size(); ++t) {
    degrees.push_back(table[t].degree().get_str());
    const i64 fs = frobenius_schur(table[t]);
    // 0 exactly for the non-real rows
    if (fs < -1 || fs > 1 || (fs == 0) != !table[t].is_real()) indicators_ok = false;
    if (fs == -1) symplectic.push_back(names[t]);
  }
  R.add("indicator in {-1, 0, 1}, 0 iff non-real", params, true, indicators_ok, indicators_ok);

  // Expected symplectic rows by family.
  std::vector<std::string> expected_symp;
  const bool quaternion = G.name().rfind("quaternion:", 0) == 0;
  const bool bt = G.name() == "binary-tetrahedral";
  if (bt) expected_symp = {"chi_5"};
  if (quaternion) {
    const int z = G.mul(G.generators()[1], G.generators()[1]);
    for (size_t t = 0; t < table.size(); ++t)
      if (table[t].degree() == 2 && table[t](z) == CycInt::constant(table[t](z).field(), -2)) expected_symp.push_back(names[t]);
  }
  R.add("symplectic characters", params, expected_symp, symplectic, expected_symp == symplectic);

  const auto odd = odd_order_generation(G);
  bool expect_gen = true;
  if (quaternion) expect_gen = false;
  if (G.name().rfind("cyclic:", 0) == 0) expect_gen = G.order() % 2 == 1;
  R.add("generated by odd-order elements", params, expect_gen, odd.generated, odd.generated == expect_gen);
  R.add("2-power-index normal subgroup scan agrees", params, true, odd.consistent, odd.consistent);

  if (bt) {
    std::vector<std::string> expect_deg{"1", "1", "1", "2", "2", "2", "3"};
    R.add("degrees", params, expect_deg, degrees, degrees == expect_deg);
    i64 real_rows = std::count_if(table.begin(), table.end(), [](const ClassFunction& c) { return c.is_real(); });
    R.add("real-valued irreducibles", params, "3", std::to_string(real_rows), real_rows == 3);

    const Subset Z = center(G);
    R.add("center order", params, "2", std::to_string(Z.size()), Z.size() == 2);
    i64 order2 = 0;
    for (const auto& S : all_subgroups(G)) {
      if (S.size() == 2) ++order2;
    }
    R.add("subgroups of order 2", params, "1", std::to_string(order2), order2 == 1);
    const Subset D = commutator_subgroup(G);
    const bool q8 = D.size() == 8 && is_generalized_quaternion(G, D);
    R.add("commutator subgroup is H_8", params, true, q8, q8);
    i64 index2 = 0;
    for (const auto& S : all_subgroups(G))
      if (2 * static_cast<i64>(S.size()) == G.order()) ++index2;
    R.add("subgroups of index 2", params, "0", std::to_string(index2), index2 == 0);

    const GroupPtr H8 = FiniteGroup::subgroup(Gp, D, "quaternion:2");
    const auto t8 = character_table(H8);
    const auto n8 = labels(t8);
    auto row = [&](const std::vector<std::string>& nm, const std::string& label) {
      return static_cast<size_t>(std::find(nm.begin(), nm.end(), label) - nm.begin());
    };
    const int zH = static_cast<int>(std::lower_bound(D.begin(), D.end(), Z[1]) - D.begin());
    const CycInt phi_z = t8[row(n8, "phi")](zH);
    R.add("phi(z)", params, "-2", phi_z.to_string(), phi_z == CycInt::constant(phi_z.field(), -2));
    R.add("FS(phi) on H_8", params, "-1", std::to_string(frobenius_schur(t8[row(n8, "phi")])),
          frobenius_schur(t8[row(n8, "phi")]) == -1);

    auto expect_ind = [&](const std::string& src, const std::vector<std::string>& parts) {
      std::vector<i64> m(table.size(), 0);
      for (const auto& p : parts) m[row(names, p)] = 1;
      const auto got = decompose(induce(t8[row(n8, src)], Gp), table);
      json pr = params;
      pr["induced"] = src;
      R.add("Ind from H_8", pr, to_json(m), to_json(got), got == m);
    };
    expect_ind("psi_1", {"chi_1", "chi_2", "chi_3"});
    for (const char* psi : {"psi_2", "psi_3", "psi_4"}) expect_ind(psi, {"chi_4"});
    expect_ind("phi", {"chi_5", "chi_6", "chi_7"});

    const ClassFunction ind_phi = induce(t8[row(n8, "phi")], Gp);
    CycInt sq(ind_phi.at_class(0).field());
    for (int g = 0; g < static_cast<int>(G.order()); ++g) sq += ind_phi(G.mul(g, g));
    R.add("sum of Ind phi(g^2)", params, "-24", sq.to_string(), sq == CycInt::constant(sq.field(), -24));
  }
  if (G.name() == "quaternion:2") {
    std::vector<std::string> expect_deg{"1", "1", "1", "1", "2"};
    R.add("degrees", params, expect_deg, degrees, degrees == expect_deg);
  }
  return R;
}

}  // namespace cyclocert::chartab
