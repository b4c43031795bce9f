// Frobenius data and Cartier-Manin ranks for y^2 = f_t(x), p = 7, t = 1,
// at the first few good primes.
#include <iostream>

#include "ordinarium/hypell.hpp"

int main() {
  using namespace ordinarium;
  const IntPoly f = build_family_poly(7, BigInt(1));
  std::cout << "f_1(x) = " << f.to_string() << "\n";
  for (u64 ell : primes_between(3, 31)) {
    const OrdinaryVerdict v = verdict(HypCurve::family(7, Rational(1), ell));
    std::cout << "ell = " << ell << ": " << to_string(v.status);
    if (v.frobenius) {
      const RealWeilPoly rw = real_weil(*v.frobenius);
      std::cout << ", P(X) = " << v.frobenius->charpoly.to_string("X") << ", h(Y) = " << rw.h.to_string("Y")
                << ", N = " << rw.norm.get_str() << ", Hasse-Witt rank " << *v.hw_rank;
    }
    std::cout << "\n";
  }
}
