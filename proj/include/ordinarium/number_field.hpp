#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordinarium/fp_poly.hpp"
#include "ordinarium/poly.hpp"
#include "ordinarium/primes.hpp"

namespace ordinarium {

/// Number field Q[x]/(f) for a monic squarefree integer polynomial f.
/// Irreducibility is the caller's responsibility; irreducibility_witness()
/// spot-checks it.  Arithmetic statements about primes are certified only at
/// primes not dividing poly_disc (the ring of integers is modelled by Z[theta]).
class NumberField {
 public:
  explicit NumberField(IntPoly defining_poly) : f_(std::move(defining_poly)) {
    require(f_.degree() >= 1, "defining polynomial must be nonconstant");
    require(f_.lead() == 1, "defining polynomial must be monic: " + f_.to_string());
    disc_ = discriminant(f_);
    require(disc_ != 0, "defining polynomial is not squarefree: " + f_.to_string());
  }

  static std::shared_ptr<const NumberField> make(IntPoly defining_poly) {
    return std::make_shared<const NumberField>(std::move(defining_poly));
  }
  static std::shared_ptr<const NumberField> make(std::initializer_list<long> coeffs) {
    return make(IntPoly::from_ints(coeffs));
  }

  const IntPoly& defining_poly() const { return f_; }
  int degree() const { return f_.degree(); }
  const BigInt& poly_disc() const { return disc_; }

  /// True iff p does not divide poly_disc, i.e. Dedekind's criterion applies.
  bool certified_at(std::uint64_t p) const { return reduce_mod(disc_, p) != 0; }

  /// Least prime <= bound modulo which f stays irreducible, if any.
  std::optional<std::uint64_t> irreducibility_witness(std::uint64_t bound = 1000) const {
    if (degree() == 1) return 2;
    for (std::uint64_t p : primes_up_to(bound)) {
      if (!certified_at(p)) continue;
      if (is_irreducible(poly_mod_p(f_, p))) return p;
    }
    return std::nullopt;
  }

 private:
  IntPoly f_;
  BigInt disc_;
};

using Field = std::shared_ptr<const NumberField>;

/// Polynomial through the points (xs[i], ys[i]) (Newton divided differences).
inline QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  require(xs.size() == ys.size() && !xs.empty(), "interpolation needs matching nonempty data");
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  QPoly acc = QPoly::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;)
    acc = acc * QPoly({Rational(-xs[i]), Rational(1)}) + QPoly::constant(dd[i]);
  return acc;
}

/// Element of a number field in the power basis 1, theta, ..., theta^(n-1).
class NFElement {
 public:
  NFElement(Field field, std::vector<Rational> coords) : field_(std::move(field)), coords_(std::move(coords)) {
    require(field_ != nullptr, "element without a field");
    const auto n = static_cast<std::size_t>(field_->degree());
    require(coords_.size() <= n, "too many coordinates for a degree-" + std::to_string(n) + " field");
    coords_.resize(n, Rational(0));
  }

  static NFElement from_poly(Field field, const QPoly& a) {
    const QPoly r = divmod(a, to_rational(field->defining_poly())).second;
    std::vector<Rational> c = r.coeffs();
    return NFElement(std::move(field), std::move(c));
  }
  static NFElement rational(Field field, const Rational& r) { return NFElement(std::move(field), {r}); }
  static NFElement generator(Field field) {
    if (field->degree() == 1) return rational(field, Rational(-field->defining_poly()[0]));
    return NFElement(std::move(field), {Rational(0), Rational(1)});
  }

  const Field& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  QPoly as_poly() const { return QPoly(coords_); }
  bool is_zero() const { return as_poly().is_zero(); }

  friend NFElement operator+(const NFElement& a, const NFElement& b) {
    a.same_field(b);
    return from_poly(a.field_, a.as_poly() + b.as_poly());
  }
  friend NFElement operator-(const NFElement& a, const NFElement& b) {
    a.same_field(b);
    return from_poly(a.field_, a.as_poly() - b.as_poly());
  }
  friend NFElement operator*(const NFElement& a, const NFElement& b) {
    a.same_field(b);
    return from_poly(a.field_, a.as_poly() * b.as_poly());
  }
  friend bool operator==(const NFElement& a, const NFElement& b) {
    return (a.field_ == b.field_ || a.field_->defining_poly() == b.field_->defining_poly()) && a.coords_ == b.coords_;
  }

  /// N_{K/Q}(a) = Res(f, A) for the coordinate polynomial A (f monic).
  Rational norm() const {
    const QPoly a = as_poly();
    if (a.is_zero()) return 0;
    auto [num, den] = clear_denominators(a);
    Rational r(resultant(field_->defining_poly(), num),
               pow(den, static_cast<unsigned long>(field_->degree())));
    r.canonicalize();
    return r;
  }

  /// Characteristic polynomial of multiplication by a: prod (Y - sigma(a)).
  QPoly charpoly() const {
    const int n = field_->degree();
    std::vector<Rational> xs;
    std::vector<Rational> ys;
    for (int i = 0; i <= n; ++i) {
      xs.emplace_back(i);
      ys.push_back((rational(field_, Rational(i)) - *this).norm());
    }
    return interpolate(xs, ys);
  }

  std::string to_string() const { return as_poly().to_string("t"); }

 private:
  void same_field(const NFElement& o) const {
    require(field_ == o.field_ || field_->defining_poly() == o.field_->defining_poly(),
            "elements of different fields");
  }
  Field field_;
  std::vector<Rational> coords_;
};

/// Minimal polynomial of -(zeta_p + zeta_p^-1) for an odd prime p.  With
/// y = z + 1/z, z^k + z^-k = D_k(y) where D_0 = 2, D_1 = y,
/// D_{k+1} = y D_k - D_{k-1}, and Phi_p(z) / z^m = 1 + sum_{k=1}^m D_k(y)
/// for m = (p-1)/2.  The result is (-1)^m times that polynomial at -x.
inline IntPoly real_cyclotomic_minpoly(std::uint64_t p) {
  require(p >= 3 && is_prime(p), "real_cyclotomic_minpoly needs an odd prime, got " + std::to_string(p));
  const std::uint64_t m = (p - 1) / 2;
  const IntPoly y = IntPoly::x();
  IntPoly prev = IntPoly::constant(2);
  IntPoly cur = y;
  IntPoly psi = IntPoly::constant(1) + cur;
  for (std::uint64_t k = 2; k <= m; ++k) {
    IntPoly next = y * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
    psi += cur;
  }
  std::vector<BigInt> c = psi.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool flip = ((i + m) % 2) == 1;
    if (flip) c[i] = -c[i];
  }
  return IntPoly(std::move(c));
}

}  // namespace ordinarium
