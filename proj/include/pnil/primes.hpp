#pragma once

#include <cstdint>
#include <vector>

namespace pnil {

using Prime = std::uint64_t;

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors of n in ascending order.
inline std::vector<Prime> prime_divisors(std::uint64_t n) {
  std::vector<Prime> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Largest power of p dividing n.
constexpr std::uint64_t p_part(std::uint64_t n, Prime p) {
  std::uint64_t r = 1;
  while (n != 0 && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

constexpr std::uint64_t p_prime_part(std::uint64_t n, Prime p) { return n / p_part(n, p); }

/// True for 1, p, p^2, ...
constexpr bool is_p_power(std::uint64_t n, Prime p) { return n != 0 && p_part(n, p) == n; }

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace pnil
