#pragma once

// Deterministic synthetic weight-2 coefficient data: for each prime the
// first small integral element (in a seeded order) that passes the Ramanujan
// check at every real embedding.

#include <random>

#include "ordinarium/modforms.hpp"

namespace synthetic {

using namespace ordinarium;

inline mf::NewformData form(const Field& k, u64 level, u64 pmax, std::uint64_t seed, std::map<u64, NFElement> eps = {}) {
  std::mt19937_64 rng(seed);
  std::map<u64, NFElement> ap;
  for (u64 p : primes_up_to(pmax)) {
    if (level % p == 0) continue;
    const long bound = std::max<long>(1, static_cast<long>(std::sqrt(static_cast<double>(p))) / 2);
    for (int attempt = 0;; ++attempt) {
      std::vector<Rational> c;
      for (int i = 0; i < k->degree(); ++i) c.emplace_back(static_cast<long>(rng() % static_cast<u64>(2 * bound + 1)) - bound);
      if (attempt > 50) c.assign(static_cast<std::size_t>(k->degree()), Rational(0));
      NFElement a(k, c);
      try {
        mf::NewformData probe(level, 2, k, {{p, a}});
        ap.emplace(p, a);
        break;
      } catch (const DataError&) {
      }
    }
  }
  return mf::NewformData(level, 2, k, std::move(ap), std::move(eps));
}

}  // namespace synthetic
