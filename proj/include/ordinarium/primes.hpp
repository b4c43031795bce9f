#pragma once

#include <cstdint>
#include <vector>

#include "ordinarium/error.hpp"

namespace ordinarium {

/// Primes <= limit, ascending (sieve of Eratosthenes).
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  require(limit >= 2, "primes_up_to needs a limit >= 2");
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

/// Primes in [lo, hi], ascending.
inline std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  require(lo <= hi, "empty prime range");
  if (hi < 2) return {};
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_up_to(hi))
    if (p >= lo) out.push_back(p);
  return out;
}

/// Multiplicative order of a mod n (gcd(a, n) = 1).
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  require(n >= 2 && a % n != 0, "order of a non-unit");
  std::uint64_t x = a % n;
  std::uint64_t k = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * a) % n);
    ++k;
    require(k <= n, "order of a non-unit");
  }
  return k;
}

}  // namespace ordinarium
