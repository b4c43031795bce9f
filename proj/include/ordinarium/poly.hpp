#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ordinarium/error.hpp"

namespace ordinarium {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial, coefficient i multiplies x^i.  The zero
/// polynomial has no coefficients and degree -1; otherwise the leading
/// coefficient is nonzero.
template <class T>
class Poly {
 public:
  using value_type = T;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly from_ints(std::initializer_list<long> ints) {
    std::vector<T> c;
    c.reserve(ints.size());
    for (long v : ints) c.emplace_back(v);
    return Poly(std::move(c));
  }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly monomial(const T& v, std::size_t deg) {
    std::vector<T> c(deg + 1, T(0));
    c[deg] = v;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& lead() const {
    require(!c_.empty(), "leading coefficient of the zero polynomial");
    return c_.back();
  }

  T eval(const T& x) const {
    T acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Poly(std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  friend Poly operator*(const T& s, const Poly& p) {
    std::vector<T> c = p.c_;
    for (auto& v : c) v *= s;
    return Poly(std::move(c));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(unsigned e) const {
    Poly result = constant(T(1));
    Poly base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  /// Human-readable form, highest degree first: "x^3 - x^2 - 2*x + 1".
  std::string to_string(const char* var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const T& v = c_[static_cast<std::size_t>(i)];
      if (sgn(v) == 0) continue;
      T mag = abs(v);
      if (first) {
        if (sgn(v) < 0) os << "-";
      } else {
        os << (sgn(v) < 0 ? " - " : " + ");
      }
      first = false;
      const bool unit = (mag == 1);
      if (i == 0) {
        os << mag;
      } else {
        if (!unit) os << mag << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

  /// Ascending coefficients separated by spaces (CSV cell format).
  std::string to_coeff_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i];
    return c_.empty() ? "0" : os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = Poly<BigInt>;
using QPoly = Poly<Rational>;

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r(pow(base.get_num(), e), pow(base.get_den(), e));
  r.canonicalize();
  return r;
}

inline BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& v : p.coeffs()) g = gcd(g, v);
  return g;
}

inline IntPoly exact_div(const IntPoly& p, const BigInt& d) {
  std::vector<BigInt> c = p.coeffs();
  for (auto& v : c) {
    require(mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0, "inexact polynomial division");
    v = exact_div(v, d);
  }
  return IntPoly(std::move(c));
}

inline QPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return QPoly(std::move(c));
}

/// Integer polynomial n(x) and positive d with p = n / d.
inline std::pair<IntPoly, BigInt> clear_denominators(const QPoly& p) {
  BigInt d = 1;
  for (const auto& v : p.coeffs()) d = lcm(d, v.get_den());
  std::vector<BigInt> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(exact_div(v.get_num() * d, v.get_den()));
  return {IntPoly(std::move(c)), d};
}

/// Returns (q, r) with a = q*b + r and deg r < deg b.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  require(!b.is_zero(), "division by the zero polynomial");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational& lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = r[static_cast<std::size_t>(i)] / lb;
    if (sgn(f) == 0) continue;
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  return Rational(1 / p.lead()) * p;
}

inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  require(!b.is_zero(), "pseudo-division by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  int e = a.degree() - b.degree() + 1;
  IntPoly r = a;
  const BigInt& lb = b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    IntPoly s = IntPoly::monomial(r.lead(), static_cast<std::size_t>(r.degree() - b.degree()));
    r = lb * r - s * b;
    --e;
  }
  return pow(lb, static_cast<unsigned long>(e)) * r;
}

/// Resultant via the subresultant PRS (Cohen, Algorithm 3.3.7).
/// Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a.
inline BigInt resultant(IntPoly a, IntPoly b) {
  require(!a.is_zero() && !b.is_zero(), "resultant of the zero polynomial");
  int da = a.degree();
  int db = b.degree();
  if (da == 0) return pow(a.lead(), static_cast<unsigned long>(db));
  if (db == 0) return pow(b.lead(), static_cast<unsigned long>(da));

  const BigInt ca = content(a);
  const BigInt cb = content(b);
  a = exact_div(a, ca);
  b = exact_div(b, cb);
  BigInt g = 1;
  BigInt h = 1;
  int s = 1;
  const BigInt t = pow(ca, static_cast<unsigned long>(db)) * pow(cb, static_cast<unsigned long>(da));
  if (da < db) {
    std::swap(a, b);
    if ((da & 1) && (db & 1)) s = -1;
  }
  for (;;) {
    da = a.degree();
    db = b.degree();
    const int delta = da - db;
    if ((da & 1) && (db & 1)) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = exact_div(r, BigInt(g * pow(h, static_cast<unsigned long>(delta))));
    g = a.lead();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(pow(g, static_cast<unsigned long>(delta)), pow(h, static_cast<unsigned long>(delta - 1)));
    }
    if (b.degree() == 0) {
      const auto n = static_cast<unsigned long>(a.degree());
      h = exact_div(pow(b.lead(), n), pow(h, n - 1));
      return BigInt(s * t * h);
    }
  }
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f).  Degree-1 polynomials have
/// discriminant 1.
inline BigInt discriminant(const IntPoly& f) {
  require(f.degree() >= 1, "discriminant needs a nonconstant polynomial");
  const int n = f.degree();
  if (n == 1) return 1;
  BigInt r = exact_div(resultant(f, f.derivative()), f.lead());
  return (n * (n - 1) / 2) % 2 ? BigInt(-r) : r;
}

}  // namespace ordinarium
