#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "ordinarium/poly.hpp"

namespace ordinarium {

inline QPoly squarefree_part(const QPoly& p) {
  require(!p.is_zero(), "squarefree part of the zero polynomial");
  if (p.degree() == 0) return QPoly::constant(Rational(1));
  return monic(divmod(p, gcd(p, p.derivative())).first);
}

/// Sturm sequence of a squarefree polynomial.
class SturmChain {
 public:
  explicit SturmChain(const QPoly& p) {
    chain_.push_back(p);
    if (p.degree() <= 0) return;
    chain_.push_back(p.derivative());
    while (chain_.back().degree() > 0) {
      QPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  std::size_t variations_at(const Rational& x) const {
    return count_variations([&](const QPoly& q) { return sgn(q.eval(x)); });
  }
  std::size_t variations_at_infinity(bool positive) const {
    return count_variations([&](const QPoly& q) {
      if (q.is_zero()) return 0;
      int s = sgn(q.lead());
      return (positive || q.degree() % 2 == 0) ? s : -s;
    });
  }

  /// Number of distinct real roots in the half-open interval (a, b].
  std::size_t roots_in(const Rational& a, const Rational& b) const {
    return variations_at(a) - variations_at(b);
  }
  std::size_t real_roots() const {
    return variations_at_infinity(false) - variations_at_infinity(true);
  }

 private:
  template <class SignFn>
  std::size_t count_variations(SignFn sign) const {
    std::size_t v = 0;
    int prev = 0;
    for (const auto& q : chain_) {
      int s = sign(q);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }
  std::vector<QPoly> chain_;
};

struct RealRootCount {
  std::size_t distinct = 0;  // distinct complex roots (degree of the squarefree part)
  std::size_t real = 0;      // distinct real roots
  std::size_t within = 0;    // distinct real roots y with y^2 <= bound_sq
};

/// Counts the real roots of p lying in [-sqrt(bound_sq), sqrt(bound_sq)]
/// exactly: roots on the boundary are split off with a gcd against
/// Y^2 - bound_sq, and the rest are separated from the irrational endpoints
/// by dyadic refinement of the square root.
inline RealRootCount real_roots_within(const QPoly& p, const Rational& bound_sq) {
  require(sgn(bound_sq) > 0, "root bound must be positive");
  const QPoly sf = squarefree_part(p);
  RealRootCount out;
  out.distinct = static_cast<std::size_t>(sf.degree());
  const SturmChain full(sf);
  out.real = full.real_roots();

  const QPoly edge_poly({-bound_sq, Rational(0), Rational(1)});
  const QPoly boundary = gcd(sf, edge_poly);
  const QPoly core = divmod(sf, boundary).first;
  const SturmChain chain(core);

  // sqrt(n/d) = sqrt(n*d)/d, bracketed by s/(d*2^k) <= . < (s+1)/(d*2^k).
  const BigInt n = bound_sq.get_num();
  const BigInt d = bound_sq.get_den();
  for (unsigned k = 0;; ++k) {
    BigInt scale = BigInt(1) << k;
    BigInt s;
    BigInt radicand = n * d * scale * scale;
    mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
    Rational lo(s, d * scale);
    Rational hi(BigInt(s + 1), d * scale);
    lo.canonicalize();
    hi.canonicalize();
    // Both windows [lo, hi] and [-hi, -lo] must be root-free.
    const bool clear_pos = chain.roots_in(lo, hi) == 0 && sgn(core.eval(lo)) != 0;
    const bool clear_neg = chain.roots_in(Rational(-hi), Rational(-lo)) == 0 && sgn(core.eval(-hi)) != 0;
    if (clear_pos && clear_neg) {
      out.within = chain.roots_in(Rational(-hi), hi) + static_cast<std::size_t>(boundary.degree());
      return out;
    }
  }
}

/// True iff every complex root of p is real and lies in
/// [-sqrt(bound_sq), sqrt(bound_sq)].
inline bool all_roots_real_within(const QPoly& p, const Rational& bound_sq) {
  const RealRootCount c = real_roots_within(p, bound_sq);
  return c.real == c.distinct && c.within == c.distinct;
}

/// Isolating intervals (a, b] for the real roots of a squarefree p, ascending.
inline std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& sf) {
  std::vector<std::pair<Rational, Rational>> out;
  if (sf.degree() <= 0) return out;
  // Cauchy bound: every root has |x| < 1 + max |c_i / lead|.
  Rational bound = 0;
  for (int i = 0; i < sf.degree(); ++i) {
    Rational r = abs(sf.coeff(static_cast<std::size_t>(i)) / sf.lead());
    if (r > bound) bound = r;
  }
  bound += 1;
  const SturmChain chain(sf);
  std::vector<std::pair<Rational, Rational>> todo{{Rational(-bound), bound}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    const std::size_t n = chain.roots_in(a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(a, b);
      continue;
    }
    Rational mid = (a + b) / 2;
    todo.emplace_back(a, mid);
    todo.emplace_back(mid, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sign of g at the unique root of the squarefree sf in (a, b].
inline int sign_at_root(const QPoly& sf, Rational a, Rational b, const QPoly& g) {
  if (g.degree() <= 0) return g.is_zero() ? 0 : sgn(g.coeff(0));
  const QPoly common = gcd(sf, g);
  if (common.degree() > 0 && SturmChain(common).roots_in(a, b) > 0) return 0;
  const SturmChain sf_chain(sf);
  const SturmChain g_chain(squarefree_part(g));
  for (;;) {
    if (g_chain.roots_in(a, b) == 0) return sgn(g.eval(b));
    Rational mid = (a + b) / 2;
    if (sf_chain.roots_in(a, mid) == 1) {
      b = mid;
    } else {
      a = mid;
    }
  }
}

}  // namespace ordinarium
