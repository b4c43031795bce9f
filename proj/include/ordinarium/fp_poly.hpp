#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ordinarium/poly.hpp"

namespace ordinarium {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1U) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return r;
}

/// Inverse modulo a prime.
inline u64 inv_mod(u64 a, u64 p) {
  require(a % p != 0, "inverse of zero mod p");
  return pow_mod(a, p - 2, p);
}

/// Reduces an arbitrary-precision integer (or the numerator/denominator of a
/// rational with denominator prime to p) into [0, p).
inline u64 reduce_mod(const BigInt& v, u64 p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}
inline u64 reduce_mod(const Rational& v, u64 p) {
  const u64 den = reduce_mod(v.get_den(), p);
  require(den != 0, "denominator divisible by the modulus");
  return mul_mod(reduce_mod(v.get_num(), p), inv_mod(den, p), p);
}

/// Polynomial over the prime field F_p, p < 2^32.  Coefficients reduced,
/// trailing zeros trimmed.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
  }
  static FpPoly constant(u64 p, u64 v) { return FpPoly(p, {v}); }
  static FpPoly x(u64 p) { return FpPoly(p, {0, 1}); }
  static FpPoly monomial(u64 p, u64 v, std::size_t deg) {
    std::vector<u64> c(deg + 1, 0);
    c[deg] = v;
    return FpPoly(p, std::move(c));
  }

  u64 modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<u64>& coeffs() const { return c_; }
  u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  u64 lead() const { return c_.empty() ? 0 : c_.back(); }

  u64 eval(u64 x) const {
    u64 acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mul_mod(acc, x, p_) + *it) % p_;
    return acc;
  }

  FpPoly derivative() const {
    std::vector<u64> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(mul_mod(c_[i], i % p_, p_));
    return FpPoly(p_, std::move(d));
  }

  FpPoly monic() const {
    if (c_.empty() || c_.back() == 1) return *this;
    return scaled(inv_mod(c_.back(), p_));
  }
  FpPoly scaled(u64 s) const {
    std::vector<u64> c = c_;
    for (auto& v : c) v = mul_mod(v, s, p_);
    return FpPoly(p_, std::move(c));
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    const u64 p = a.p_ ? a.p_ : b.p_;
    std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = (c[i] + b.c_[i]) % p;
    return FpPoly(p, std::move(c));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    const u64 p = a.p_ ? a.p_ : b.p_;
    std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = (c[i] + p - b.c_[i]) % p;
    return FpPoly(p, std::move(c));
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_ ? a.p_ : b.p_, {});
    const u64 p = a.p_;
    std::vector<u64> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + a.c_[i] * b.c_[j]) % p;
    }
    return FpPoly(p, std::move(c));
  }
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  std::string to_string() const { return IntPoly(to_bigints()).to_string(); }
  std::vector<BigInt> to_bigints() const {
    std::vector<BigInt> v;
    for (u64 c : c_) v.emplace_back(static_cast<unsigned long>(c));
    return v;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  u64 p_ = 0;
  std::vector<u64> c_;
};

inline std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  require(!b.is_zero(), "division by the zero polynomial");
  const u64 p = b.modulus();
  if (a.degree() < b.degree()) return {FpPoly(p, {}), a};
  std::vector<u64> r = a.coeffs();
  const int db = b.degree();
  std::vector<u64> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const u64 inv = inv_mod(b.lead(), p);
  for (int i = a.degree(); i >= db; --i) {
    const u64 f = mul_mod(r[static_cast<std::size_t>(i)], inv, p);
    if (f == 0) continue;
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) {
      u64& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = (slot + p - mul_mod(f, b.coeff(static_cast<std::size_t>(j)), p)) % p;
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

inline FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
inline FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

inline FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m, e given as an arbitrary-precision integer.
inline FpPoly pow_mod(const FpPoly& base, const BigInt& e, const FpPoly& m) {
  FpPoly r = FpPoly::constant(m.modulus(), 1) % m;
  FpPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % m;
  }
  return r;
}
inline FpPoly pow_mod(const FpPoly& base, u64 e, const FpPoly& m) {
  return pow_mod(base, BigInt(static_cast<unsigned long>(e)), m);
}

/// Coefficient-wise reduction of an integer polynomial.
inline FpPoly poly_mod_p(const IntPoly& f, u64 prime) {
  require(is_prime(prime), "modulus " + std::to_string(prime) + " is not prime");
  std::vector<u64> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(reduce_mod(v, prime));
  return FpPoly(prime, std::move(c));
}

namespace detail {

// f(x) = g(x^p)  ->  g(x), valid over F_p.
inline FpPoly pth_root(const FpPoly& f) {
  const u64 p = f.modulus();
  std::vector<u64> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
  return FpPoly(p, std::move(c));
}

}  // namespace detail

/// Squarefree decomposition of a monic polynomial: pairs (g, m) with g
/// squarefree, pairwise coprime, and f = prod g^m.
inline std::vector<std::pair<FpPoly, int>> squarefree_decomposition(const FpPoly& f_in) {
  const FpPoly f = f_in.monic();
  const u64 p = f.modulus();
  std::vector<std::pair<FpPoly, int>> out;
  if (f.degree() <= 0) return out;
  const FpPoly df = f.derivative();
  FpPoly c = f;
  if (!df.is_zero()) {
    c = gcd(f, df);
    FpPoly w = f / c;
    int i = 1;
    while (!w.is_one()) {
      FpPoly y = gcd(w, c);
      FpPoly z = w / y;
      if (z.degree() > 0) out.emplace_back(z, i);
      ++i;
      w = y;
      c = c / y;
    }
  }
  if (c.degree() > 0) {
    for (auto& [g, m] : squarefree_decomposition(detail::pth_root(c)))
      out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

/// Distinct-degree split of a monic squarefree polynomial: pairs (h, d)
/// where h is the product of all irreducible factors of degree d.
inline std::vector<std::pair<FpPoly, int>> distinct_degree_factorization(FpPoly g) {
  const u64 p = g.modulus();
  std::vector<std::pair<FpPoly, int>> out;
  const FpPoly x = FpPoly::x(p);
  FpPoly h = x % g;
  int d = 1;
  while (g.degree() >= 2 * d) {
    h = pow_mod(h, p, g);
    FpPoly common = gcd(g, h - x);
    if (common.degree() > 0) {
      out.emplace_back(common, d);
      g = g / common;
      h = h % g;
    }
    ++d;
  }
  if (g.degree() > 0) out.emplace_back(g, g.degree());
  return out;
}

/// Splits a product of distinct monic irreducibles of common degree d into
/// its factors (Cantor-Zassenhaus; trace map in characteristic 2).  The
/// random source is seeded deterministically.
inline std::vector<FpPoly> equal_degree_factorization(const FpPoly& f, int d) {
  const u64 p = f.modulus();
  if (f.degree() == d) return {f.monic()};
  std::mt19937_64 rng(0x6f7264696e617269ULL ^ (static_cast<u64>(f.degree()) << 32) ^ p);
  std::uniform_int_distribution<u64> coef(0, p - 1);
  const BigInt q_d = pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
  for (;;) {
    std::vector<u64> c(static_cast<std::size_t>(f.degree()));
    for (auto& v : c) v = coef(rng);
    const FpPoly a(p, std::move(c));
    if (a.degree() <= 0) continue;
    FpPoly b;
    if (p == 2) {
      FpPoly term = a % f;
      b = term;
      for (int i = 1; i < d; ++i) {
        term = (term * term) % f;
        b = b + term;
      }
    } else {
      b = pow_mod(a, BigInt((q_d - 1) / 2), f) - FpPoly::constant(p, 1);
    }
    FpPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto left = equal_degree_factorization(g, d);
      auto right = equal_degree_factorization(f / g, d);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

struct Factor {
  FpPoly poly;
  int multiplicity;
};

/// Complete factorization into monic irreducibles, sorted by (degree,
/// coefficients) for determinism.
inline std::vector<Factor> factor(const FpPoly& f) {
  require(!f.is_zero(), "factorization of the zero polynomial");
  std::vector<Factor> out;
  for (const auto& [sq, m] : squarefree_decomposition(f))
    for (const auto& [h, d] : distinct_degree_factorization(sq))
      for (auto& g : equal_degree_factorization(h, d)) out.push_back({std::move(g), m});
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    if (a.poly.coeffs() != b.poly.coeffs()) return a.poly.coeffs() < b.poly.coeffs();
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

struct DegreeMult {
  int degree;
  int multiplicity;
  friend bool operator==(const DegreeMult&, const DegreeMult&) = default;
  friend auto operator<=>(const DegreeMult&, const DegreeMult&) = default;
};

/// Degrees (with multiplicities) of the irreducible factors of f, sorted
/// descending.  Squarefree decomposition followed by distinct-degree
/// splitting; no equal-degree splitting is needed.
inline std::vector<DegreeMult> factor_degree_pattern(const FpPoly& f) {
  require(!f.is_zero(), "degree pattern of the zero polynomial");
  std::vector<DegreeMult> out;
  for (const auto& [sq, m] : squarefree_decomposition(f))
    for (const auto& [h, d] : distinct_degree_factorization(sq))
      for (int k = 0; k < h.degree() / d; ++k) out.push_back({d, m});
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline bool is_squarefree(const FpPoly& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

inline bool is_irreducible(const FpPoly& f) {
  if (f.degree() <= 0) return false;
  const auto pat = factor_degree_pattern(f);
  return pat.size() == 1 && pat[0].multiplicity == 1;
}

}  // namespace ordinarium
