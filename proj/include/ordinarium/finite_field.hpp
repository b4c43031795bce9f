#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ordinarium/error.hpp"
#include "ordinarium/fp_poly.hpp"

namespace ordinarium {

/// F_q = F_ell[z]/(m(z)), q = ell^k, with m the least monic irreducible of
/// degree k (coefficients read as base-ell digits, constant term least
/// significant).  Elements are encoded as integers in [0, q) by the same
/// digit rule.  Multiplication and the quadratic character go through
/// discrete-log tables built from the least primitive element.
class ExtensionField {
 public:
  static constexpr int kMaxDegree = 16;

  ExtensionField(u64 ell, int degree) : ell_(ell), k_(degree) {
    require(ell >= 3 && is_prime(ell), "extension fields need an odd prime characteristic");
    require(degree >= 1 && degree <= kMaxDegree, "extension degree out of range");
    q_ = 1;
    for (int i = 0; i < degree; ++i) {
      require(q_ <= (u64{1} << 32) / ell, "field too large");
      q_ *= ell;
    }
    find_modulus();
    build_tables();
  }

  u64 characteristic() const { return ell_; }
  int degree() const { return k_; }
  u64 size() const { return q_; }
  const FpPoly& modulus() const { return modulus_; }

  u64 mul(u64 a, u64 b) const {
    if (a == 0 || b == 0) return 0;
    u64 e = static_cast<u64>(log_[a]) + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  /// a + c for c in the prime field (only the constant digit changes).
  u64 add_prime(u64 a, u64 c) const {
    const u64 d0 = a % ell_;
    return a - d0 + (d0 + c) % ell_;
  }

  /// Quadratic character: 0 at 0, 1 on squares, -1 otherwise.
  int chi(u64 a) const {
    if (a == 0) return 0;
    return (log_[a] % 2 == 0) ? 1 : -1;
  }

  /// f(a) for f with prime-field coefficients (Horner).
  u64 eval(const FpPoly& f, u64 a) const {
    if (f.is_zero()) return 0;
    const auto& c = f.coeffs();
    u64 acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = add_prime(mul(acc, a), c[i]);
    return acc;
  }

 private:
  using Digits = std::array<u64, kMaxDegree>;

  Digits digits(u64 a) const {
    Digits d{};
    for (int i = 0; i < k_; ++i) {
      d[static_cast<std::size_t>(i)] = a % ell_;
      a /= ell_;
    }
    return d;
  }
  u64 encode(const Digits& d) const {
    u64 a = 0;
    for (int i = k_; i-- > 0;) a = a * ell_ + d[static_cast<std::size_t>(i)];
    return a;
  }

  // Product of two elements as digit vectors, reduced by the modulus.
  Digits mul_digits(const Digits& a, const Digits& b) const {
    std::array<u64, 2 * kMaxDegree> prod{};
    for (int i = 0; i < k_; ++i) {
      if (a[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < k_; ++j)
        prod[static_cast<std::size_t>(i + j)] =
            (prod[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % ell_;
    }
    // m is monic: z^k = -(m_0 + ... + m_{k-1} z^{k-1}).
    for (int i = 2 * k_ - 2; i >= k_; --i) {
      const u64 top = prod[static_cast<std::size_t>(i)];
      if (top == 0) continue;
      prod[static_cast<std::size_t>(i)] = 0;
      for (int j = 0; j < k_; ++j) {
        u64& slot = prod[static_cast<std::size_t>(i - k_ + j)];
        slot = (slot + (ell_ - top) * modulus_.coeff(static_cast<std::size_t>(j))) % ell_;
      }
    }
    Digits out{};
    for (int i = 0; i < k_; ++i) out[static_cast<std::size_t>(i)] = prod[static_cast<std::size_t>(i)];
    return out;
  }

  Digits pow_digits(Digits base, u64 e) const {
    Digits r{};
    r[0] = 1;
    while (e) {
      if (e & 1U) r = mul_digits(r, base);
      base = mul_digits(base, base);
      e >>= 1U;
    }
    return r;
  }

  void find_modulus() {
    for (u64 code = 0; code < q_; ++code) {
      std::vector<u64> c(static_cast<std::size_t>(k_) + 1, 0);
      u64 x = code;
      for (int i = 0; i < k_; ++i) {
        c[static_cast<std::size_t>(i)] = x % ell_;
        x /= ell_;
      }
      c[static_cast<std::size_t>(k_)] = 1;
      FpPoly m(ell_, std::move(c));
      if (is_irreducible(m)) {
        modulus_ = std::move(m);
        return;
      }
    }
    throw Error("no irreducible polynomial found");  // unreachable
  }

  void build_tables() {
    const u64 order = q_ - 1;
    std::vector<u64> prime_factors;
    u64 r = order;
    for (u64 d = 2; d * d <= r; ++d) {
      if (r % d) continue;
      prime_factors.push_back(d);
      while (r % d == 0) r /= d;
    }
    if (r > 1) prime_factors.push_back(r);

    Digits one{};
    one[0] = 1;
    Digits gen{};
    bool found = false;
    for (u64 cand = 2; cand < q_ && !found; ++cand) {
      gen = digits(cand);
      found = true;
      for (u64 pf : prime_factors)
        if (pow_digits(gen, order / pf) == one) {
          found = false;
          break;
        }
    }
    require(found, "no primitive element found");

    exp_.assign(static_cast<std::size_t>(order), 0);
    log_.assign(static_cast<std::size_t>(q_), 0);
    Digits cur = one;
    for (u64 e = 0; e < order; ++e) {
      const u64 a = encode(cur);
      exp_[e] = static_cast<std::uint32_t>(a);
      log_[a] = static_cast<std::uint32_t>(e);
      cur = mul_digits(cur, gen);
    }
    if (!(cur == one)) throw OracleMismatch("generator order check failed");
  }

  u64 ell_;
  int k_;
  u64 q_ = 1;
  FpPoly modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace ordinarium
