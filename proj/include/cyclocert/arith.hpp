// Small-integer number theory shared by all modules.
#pragma once

#include <cstdint>
#include <vector>

namespace cyclocert {

using i64 = std::int64_t;

/// Least nonnegative residue of a modulo m (m > 0).
i64 mod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 k, i64 m);
/// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
i64 inverse_mod(i64 a, i64 m);
/// Order of a in (Z/mZ)^x; throws if gcd(a, m) != 1.
i64 multiplicative_order(i64 a, i64 m);
i64 gcd(i64 a, i64 b);
bool is_prime(i64 n);
/// Positive divisors in ascending order.
std::vector<i64> divisors(i64 n);
/// Distinct prime factors in ascending order.
std::vector<i64> prime_factors(i64 n);
/// Residues in [0, n) coprime to n, ascending. For n = 1 this is {0}.
std::vector<i64> units_mod(i64 n);
i64 euler_phi(i64 n);
/// Smallest a in [0, n) with a = r mod m and gcd(a, n) = 1, where m | n and gcd(r, m) = 1.
i64 lift_coprime(i64 r, i64 m, i64 n);
/// Integer power with overflow check (throws std::overflow_error).
i64 ipow(i64 b, i64 k);

}  // namespace cyclocert
