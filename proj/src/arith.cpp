#include "cyclocert/arith.hpp"

#include <stdexcept>

namespace cyclocert {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

i64 powmod(i64 a, i64 k, i64 m) {
  if (k < 0) return powmod(inverse_mod(a, m), -k, m);
  i64 r = 1 % m;
  i64 b = mod(a, m);
  while (k > 0) {
    if (k & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    k >>= 1;
  }
  return r;
}

i64 gcd(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 inverse_mod(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1 && m != 1) throw std::domain_error("inverse_mod: not invertible");
  return mod(old_s, m);
}

i64 multiplicative_order(i64 a, i64 m) {
  if (m == 1) return 1;
  if (gcd(a, m) != 1) throw std::domain_error("multiplicative_order: not a unit");
  i64 x = mod(a, m), k = 1;
  while (x != 1) {
    x = mulmod(x, a, m);
    ++k;
  }
  return k;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<i64> units_mod(i64 n) {
  if (n == 1) return {0};
  std::vector<i64> out;
  for (i64 a = 1; a < n; ++a)
    if (gcd(a, n) == 1) out.push_back(a);
  return out;
}

i64 euler_phi(i64 n) { return static_cast<i64>(units_mod(n).size()); }

i64 lift_coprime(i64 r, i64 m, i64 n) {
  if (n % m != 0) throw std::invalid_argument("lift_coprime: m must divide n");
  for (i64 a = mod(r, m); a < n; a += m)
    if (gcd(a, n) == 1 || n == 1) return a;
  throw std::domain_error("lift_coprime: residue not coprime to modulus");
}

i64 ipow(i64 b, i64 k) {
  i64 r = 1;
  for (i64 i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) throw std::overflow_error("ipow overflow");
  }
  return r;
}

}  // namespace cyclocert
