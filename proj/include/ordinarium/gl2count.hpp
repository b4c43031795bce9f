#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordinarium/error.hpp"
#include "ordinarium/fp_poly.hpp"
#include "ordinarium/poly.hpp"

namespace ordinarium::gl2 {

/// 2x2 matrix [[a, b], [c, d]] over F_ell with nonzero determinant.
struct GL2Elt {
  u64 a = 1, b = 0, c = 0, d = 1;
  u64 ell = 3;

  u64 det() const { return (mul_mod(a, d, ell) + ell - mul_mod(b, c, ell)) % ell; }
  u64 trace() const { return (a + d) % ell; }
  bool is_scalar() const { return b == 0 && c == 0 && a == d; }

  friend GL2Elt operator*(const GL2Elt& x, const GL2Elt& y) {
    const u64 l = x.ell;
    return {(mul_mod(x.a, y.a, l) + mul_mod(x.b, y.c, l)) % l, (mul_mod(x.a, y.b, l) + mul_mod(x.b, y.d, l)) % l,
            (mul_mod(x.c, y.a, l) + mul_mod(x.d, y.c, l)) % l, (mul_mod(x.c, y.b, l) + mul_mod(x.d, y.d, l)) % l, l};
  }
  GL2Elt inverse() const {
    const u64 di = inv_mod(det(), ell);
    return {mul_mod(d, di, ell), mul_mod((ell - b) % ell, di, ell), mul_mod((ell - c) % ell, di, ell), mul_mod(a, di, ell), ell};
  }
  GL2Elt scaled(u64 s) const {
    return {mul_mod(a, s, ell), mul_mod(b, s, ell), mul_mod(c, s, ell), mul_mod(d, s, ell), ell};
  }
  friend bool operator==(const GL2Elt&, const GL2Elt&) = default;
};

inline void require_odd_prime(u64 ell) {
  require(ell >= 3 && is_prime(ell), "modulus must be an odd prime, got " + std::to_string(ell));
}

/// Legendre symbol (a | ell) by Euler's criterion; 0 when ell | a.
inline int legendre(std::int64_t a, u64 ell) {
  const auto l = static_cast<std::int64_t>(ell);
  const u64 r = static_cast<u64>(((a % l) + l) % l);
  if (r == 0) return 0;
  return pow_mod(r, (ell - 1) / 2, ell) == 1 ? 1 : -1;
}

/// All of GL_2(F_ell), lexicographic in (a, b, c, d).
inline std::vector<GL2Elt> enumerate_gl2(u64 ell) {
  require_odd_prime(ell);
  std::vector<GL2Elt> out;
  out.reserve(static_cast<std::size_t>((ell * ell - 1) * (ell * ell - ell)));
  for (u64 a = 0; a < ell; ++a)
    for (u64 b = 0; b < ell; ++b)
      for (u64 c = 0; c < ell; ++c)
        for (u64 d = 0; d < ell; ++d) {
          GL2Elt m{a, b, c, d, ell};
          if (m.det() != 0) out.push_back(m);
        }
  return out;
}

inline u64 gl2_order(u64 ell) { return (ell * ell - 1) * (ell * ell - ell); }

/// #{N in GL_2(F_ell) : tr N = t, det N = det} = ell^2 + ell * (t^2 - 4 det | ell).
inline u64 count_trace_det(u64 ell, u64 t, u64 det) {
  require_odd_prime(ell);
  require(det % ell != 0, "determinant must be nonzero mod " + std::to_string(ell));
  const auto disc = static_cast<std::int64_t>(mul_mod(t % ell, t % ell, ell)) - 4 * static_cast<std::int64_t>(det % ell);
  const auto l = static_cast<std::int64_t>(ell);
  return static_cast<u64>(l * l + l * legendre(disc, ell));
}

inline constexpr u64 kTraceDetBudget = 13;

/// Exhaustive count of the same set; the independent check for count_trace_det.
inline u64 enumerate_trace_det(u64 ell, u64 t, u64 det) {
  require_odd_prime(ell);
  require(ell <= kTraceDetBudget, "enumerate_trace_det budget is ell <= 13, got " + std::to_string(ell));
  require(det % ell != 0, "determinant must be nonzero mod " + std::to_string(ell));
  u64 n = 0;
  for (u64 a = 0; a < ell; ++a)
    for (u64 b = 0; b < ell; ++b)
      for (u64 c = 0; c < ell; ++c)
        for (u64 d = 0; d < ell; ++d) {
          const GL2Elt m{a, b, c, d, ell};
          if (m.det() == det % ell && m.trace() == t % ell) ++n;
        }
  return n;
}

/// Element of prod_{i <= g'} prod_{j <= d} GL_2(F_ell), stored row-major in i.
struct MatTuple {
  int gp = 1;
  int d = 1;
  std::vector<GL2Elt> mats;

  MatTuple(int gprime, int dd, std::vector<GL2Elt> m) : gp(gprime), d(dd), mats(std::move(m)) {
    require(gp >= 1 && d >= 1 && mats.size() == static_cast<std::size_t>(gp * d), "MatTuple shape does not match its matrices");
    for (const auto& x : mats) require(x.ell == mats[0].ell && x.det() != 0, "MatTuple entries must be invertible over one field");
  }
  u64 ell() const { return mats[0].ell; }
  /// 1-based (i, j) as in M_{ij}.
  const GL2Elt& at(int i, int j) const { return mats[static_cast<std::size_t>((i - 1) * d + (j - 1))]; }
};

inline bool in_mu_n(u64 x, u64 n, u64 ell) { return x % ell != 0 && pow_mod(x, n, ell) == 1; }

/// M_{ij} = M_{ij'} for all j, j' and every determinant equal.
inline bool a_membership(const MatTuple& m) {
  const u64 det0 = m.mats[0].det();
  for (int i = 1; i <= m.gp; ++i)
    for (int j = 1; j <= m.d; ++j)
      if (!(m.at(i, j) == m.at(i, 1)) || m.at(i, j).det() != det0) return false;
  return true;
}

/// M_{i1}^{-1} M_{ij} is a scalar in mu_n for every i, j, and
/// det(M_{i1})^n is the same for every i.
inline bool b_membership(const MatTuple& m, u64 n) {
  const u64 ell = m.ell();
  const u64 det_n = pow_mod(m.at(1, 1).det(), n, ell);
  for (int i = 1; i <= m.gp; ++i) {
    const GL2Elt inv = m.at(i, 1).inverse();
    for (int j = 1; j <= m.d; ++j) {
      const GL2Elt q = inv * m.at(i, j);
      if (!q.is_scalar() || !in_mu_n(q.a, n, ell)) return false;
    }
    if (pow_mod(m.at(i, 1).det(), n, ell) != det_n) return false;
  }
  return true;
}

/// (prod tr M_{ij})^2 = c * prod det M_{ij} in F_ell.
inline bool c_condition(const MatTuple& m, std::int64_t c) {
  const u64 ell = m.ell();
  u64 tr = 1;
  u64 det = 1;
  for (const auto& x : m.mats) {
    tr = mul_mod(tr, x.trace(), ell);
    det = mul_mod(det, x.det(), ell);
  }
  const auto l = static_cast<std::int64_t>(ell);
  const u64 cbar = static_cast<u64>(((c % l) + l) % l);
  return mul_mod(tr, tr, ell) == mul_mod(cbar, det, ell);
}

/// |A_ell(g')| = (ell - 1)(ell^3 - ell)^g'.
inline BigInt size_A_closed(u64 ell, int gp) {
  require_odd_prime(ell);
  require(gp >= 1, "g' must be positive");
  const BigInt l(static_cast<unsigned long>(ell));
  return BigInt(l - 1) * pow(BigInt(l * l * l - l), static_cast<unsigned long>(gp));
}

struct SizeA {
  BigInt closed;
  std::optional<u64> brute;  // absent when beyond the enumeration budget
};

/// |A_ell(g', d)|: closed form always; brute force over all g'*d-tuples when
/// ell <= 5 and g'*d <= 3.
inline SizeA size_A(u64 ell, int gp, int d) {
  require(gp >= 1 && d >= 1, "g' and d must be positive");
  SizeA r{size_A_closed(ell, gp), std::nullopt};
  if (ell > 5 || gp * d > 3) return r;
  const auto group = enumerate_gl2(ell);
  const std::size_t k = static_cast<std::size_t>(gp * d);
  std::vector<std::size_t> idx(k, 0);
  u64 count = 0;
  std::vector<GL2Elt> mats(k);
  for (;;) {
    for (std::size_t s = 0; s < k; ++s) mats[s] = group[idx[s]];
    if (a_membership(MatTuple(gp, d, mats))) ++count;
    std::size_t s = 0;
    while (s < k && ++idx[s] == group.size()) idx[s++] = 0;
    if (s == k) break;
  }
  r.brute = count;
  return r;
}

inline constexpr u64 kTupleBudget = 100000000;

namespace detail {

inline std::vector<u64> mu_n(u64 n, u64 ell) {
  std::vector<u64> out;
  for (u64 x = 1; x < ell; ++x)
    if (pow_mod(x, n, ell) == 1) out.push_back(x);
  return out;
}

// Calls fn(indices) for every g'-tuple of indices into `group` whose
// determinants share the same n-th power.
template <class Fn>
void for_each_det_power_tuple(const std::vector<GL2Elt>& group, int gp, u64 n, u64 ell, Fn fn) {
  std::vector<u64> det_n(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) det_n[i] = pow_mod(group[i].det(), n, ell);
  const std::size_t k = static_cast<std::size_t>(gp);
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t s = 1; s < k && ok; ++s) ok = det_n[idx[s]] == det_n[idx[0]];
    if (ok) fn(idx);
    std::size_t s = 0;
    while (s < k && ++idx[s] == group.size()) idx[s++] = 0;
    if (s == k) break;
  }
}

}  // namespace detail

/// |C_ell(g', d, n, c)|, enumerated over B_ell(g', d, n) through the
/// parametrization M_{ij} = zeta_{ij} M_{i1}, zeta_{ij} in mu_n, zeta_{i1} = 1.
/// Every enumerated tuple is re-checked with b_membership (C within B).
inline u64 size_C(u64 ell, int gp, int d, u64 n, std::int64_t c) {
  require_odd_prime(ell);
  require(gp >= 1 && gp <= 2 && d >= 1 && d <= 2 && n >= 1 && n <= 4, "size_C supports g' <= 2, d <= 2, n <= 4");
  const auto mu = detail::mu_n(n, ell);
  double work = static_cast<double>(gl2_order(ell));
  work = std::pow(work, gp) * std::pow(static_cast<double>(mu.size()), gp * (d - 1));
  require(work <= static_cast<double>(kTupleBudget),
          "size_C enumeration budget is 1e8 tuples; (ell, g', d, n) = (" + std::to_string(ell) + ", " + std::to_string(gp) + ", " +
              std::to_string(d) + ", " + std::to_string(n) + ") needs " + std::to_string(static_cast<u64>(work)));
  const auto group = enumerate_gl2(ell);
  const std::size_t zk = static_cast<std::size_t>(gp * (d - 1));
  u64 count = 0;
  std::vector<GL2Elt> mats(static_cast<std::size_t>(gp * d));
  detail::for_each_det_power_tuple(group, gp, n, ell, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> z(zk, 0);
    for (;;) {
      for (int i = 0; i < gp; ++i) {
        const GL2Elt& base = group[idx[static_cast<std::size_t>(i)]];
        mats[static_cast<std::size_t>(i * d)] = base;
        for (int j = 1; j < d; ++j)
          mats[static_cast<std::size_t>(i * d + j)] = base.scaled(mu[z[static_cast<std::size_t>(i * (d - 1) + j - 1)]]);
      }
      const MatTuple t(gp, d, mats);
      if (!b_membership(t, n)) throw OracleMismatch("B-parametrization produced a tuple outside B");
      if (c_condition(t, c)) ++count;
      std::size_t s = 0;
      while (s < zk && ++z[s] == mu.size()) z[s++] = 0;
      if (s == zk) break;
    }
  });
  return count;
}

/// |A_{ell,n}(g')|: g'-tuples whose determinants share the same n-th power.
inline u64 size_A_n(u64 ell, int gp, u64 n) {
  require(gp >= 1 && gp <= 2, "size_A_n supports g' <= 2");
  const auto group = enumerate_gl2(ell);
  u64 count = 0;
  detail::for_each_det_power_tuple(group, gp, n, ell, [&](const std::vector<std::size_t>&) { ++count; });
  return count;
}

/// |D_ell(g', d, n, c)|: g'-tuples with equal n-th powers of determinants and
/// (prod tr N_i)^(2d) = c * prod det(N_i)^d; c is taken mod ell.
inline u64 size_D(u64 ell, int gp, int d, u64 n, std::int64_t c) {
  require(gp >= 1 && gp <= 2 && d >= 1, "size_D supports g' <= 2");
  const auto group = enumerate_gl2(ell);
  const auto l = static_cast<std::int64_t>(ell);
  const u64 cbar = static_cast<u64>(((c % l) + l) % l);
  u64 count = 0;
  detail::for_each_det_power_tuple(group, gp, n, ell, [&](const std::vector<std::size_t>& idx) {
    u64 tr = 1;
    u64 det = 1;
    for (std::size_t i : idx) {
      tr = mul_mod(tr, group[i].trace(), ell);
      det = mul_mod(det, group[i].det(), ell);
    }
    if (pow_mod(tr, 2 * static_cast<u64>(d), ell) == mul_mod(cbar, pow_mod(det, static_cast<u64>(d), ell), ell)) ++count;
  });
  return count;
}

struct RatioRow {
  u64 ell = 0;
  int gp = 1, d = 1;
  u64 n = 1;
  std::int64_t c = 0;
  u64 size_c = 0;
  BigInt size_a;
  double ratio = 0.0;
  double ell_ratio = 0.0;
};

struct RatioParams {
  int gp = 1;
  int d = 1;
  u64 n = 1;
  std::int64_t c = 0;
};

struct RatioReport {
  std::vector<RatioRow> rows;
  double kappa = 0.0;  // max ell * |C| / |A| over the list
  double bound = 0.0;
  bool pass = false;
};

/// Tabulates |C|/|A| across ells and checks ell * |C|/|A| <= bound for all.
inline RatioReport ratio_bound_check(const RatioParams& prm, const std::vector<u64>& ells, double bound = 4.0) {
  require(!ells.empty(), "ratio_bound_check needs at least one ell");
  RatioReport rep;
  rep.bound = bound;
  for (u64 ell : ells) {
    RatioRow row;
    row.ell = ell;
    row.gp = prm.gp;
    row.d = prm.d;
    row.n = prm.n;
    row.c = prm.c;
    row.size_c = size_C(ell, prm.gp, prm.d, prm.n, prm.c);
    row.size_a = size_A_closed(ell, prm.gp);
    row.ratio = static_cast<double>(row.size_c) / row.size_a.get_d();
    row.ell_ratio = static_cast<double>(ell) * row.ratio;
    rep.kappa = std::max(rep.kappa, row.ell_ratio);
    rep.rows.push_back(std::move(row));
  }
  rep.pass = rep.kappa <= bound;
  return rep;
}

/// Least t in F_ell^x with t^n != 1.
inline std::optional<u64> find_valid_t(u64 ell, u64 n) {
  for (u64 t = 2; t < ell; ++t)
    if (pow_mod(t, n, ell) != 1) return t;
  return std::nullopt;
}

struct CentralizerResult {
  std::vector<GL2Elt> commutants;
  bool only_scalars = false;  // exactly the ell - 1 scalar matrices
};

/// All M in GL_2(F_ell) commuting with diag(1, t^n) and [[1, n], [0, 1]].
inline CentralizerResult centralizer_check(u64 ell, u64 n, u64 t) {
  require_odd_prime(ell);
  require(n >= 1, "n must be positive");
  require(ell > n + 1, "need ell > n + 1, but ell = " + std::to_string(ell) + " and n + 1 = " + std::to_string(n + 1));
  require(t % ell != 0, "t must be a unit mod ell");
  require(pow_mod(t, n, ell) != 1, "need t^n != 1 in F_ell");
  const GL2Elt diag{1, 0, 0, pow_mod(t, n, ell), ell};
  const GL2Elt unip{1, n % ell, 0, 1, ell};
  CentralizerResult r;
  for (const auto& m : enumerate_gl2(ell))
    if (m * diag == diag * m && m * unip == unip * m) r.commutants.push_back(m);
  bool scalars = r.commutants.size() == ell - 1;
  for (const auto& m : r.commutants) scalars = scalars && m.is_scalar();
  r.only_scalars = scalars;
  return r;
}

}  // namespace ordinarium::gl2
