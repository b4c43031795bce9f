#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ordinarium/density.hpp"
#include "ordinarium/error.hpp"
#include "ordinarium/finite_field.hpp"
#include "ordinarium/fp_poly.hpp"
#include "ordinarium/number_field.hpp"
#include "ordinarium/parallel.hpp"
#include "ordinarium/poly.hpp"
#include "ordinarium/primes.hpp"
#include "ordinarium/splitting.hpp"
#include "ordinarium/sturm.hpp"

namespace ordinarium {

/// f_t(x) = x * g(x^2 - 2) + t with g the minimal polynomial of
/// zeta_p + zeta_p^{-1}.  Degree p, so y^2 = f_t has genus (p - 1)/2.
inline IntPoly build_family_poly(u64 p, const BigInt& t) {
  require(is_prime(p), std::to_string(p) + " is not prime");
  require(p != 2 && p != 5, "the family is only defined for p != 2, 5");
  const IntPoly g = real_cyclotomic_minpoly(p);
  const IntPoly inner({BigInt(-2), BigInt(0), BigInt(1)});
  return IntPoly::x() * g.compose(inner) + IntPoly::constant(t);
}

/// f_t mod ell for rational t; ell must not divide the denominator of t.
inline FpPoly family_poly_mod(u64 p, const Rational& t, u64 ell) {
  require(reduce_mod(BigInt(t.get_den()), ell) != 0,
          "t = " + t.get_str() + " has a denominator divisible by " + std::to_string(ell));
  const FpPoly f0 = poly_mod_p(build_family_poly(p, BigInt(0)), ell);
  return f0 + FpPoly::constant(ell, reduce_mod(t, ell));
}

/// y^2 = f(x) over F_ell with deg f = 2g + 1.
struct HypCurve {
  FpPoly f;
  int genus = 1;
  std::string source = "custom";

  u64 ell() const { return f.modulus(); }
  bool good_reduction() const { return ell() != 2 && is_squarefree(f); }

  static HypCurve custom(FpPoly f, std::string source = "custom") {
    require(f.modulus() != 0, "curve polynomial has no base field");
    require(f.degree() >= 3 && f.degree() % 2 == 1, "curve polynomial must have odd degree >= 3, got " + std::to_string(f.degree()));
    HypCurve c;
    c.genus = (f.degree() - 1) / 2;
    c.f = std::move(f);
    c.source = std::move(source);
    return c;
  }

  /// Reduction of an integer model; the leading coefficient must survive.
  static HypCurve reduce(const IntPoly& f, u64 ell, std::string source = "custom") {
    require(reduce_mod(f.lead(), ell) != 0, "leading coefficient vanishes mod " + std::to_string(ell));
    return custom(poly_mod_p(f, ell), std::move(source));
  }

  static HypCurve family(u64 p, const Rational& t, u64 ell) {
    return custom(family_poly_mod(p, t, ell), "family(p=" + std::to_string(p) + ",t=" + t.get_str() + ")");
  }
};

inline constexpr u64 kPointBudget = 4000000;

/// #C(F_{ell^i}) on the projective model (one point at infinity).
inline BigInt count_points(const HypCurve& c, int i, u64 budget = kPointBudget) {
  require(i >= 1, "extension degree must be positive");
  require(c.ell() != 2, "point counting needs odd characteristic");
  u64 q = 1;
  for (int k = 0; k < i; ++k) {
    if (q > budget / c.ell()) throw BudgetError("point count over F_" + std::to_string(c.ell()) + "^" + std::to_string(i) +
                                                " exceeds the budget ell^i <= " + std::to_string(budget));
    q *= c.ell();
  }
  const ExtensionField fq(c.ell(), i);
  std::int64_t sum = 0;
  for (u64 x = 0; x < q; ++x) sum += fq.chi(fq.eval(c.f, x));
  return BigInt(static_cast<unsigned long>(q + 1)) + BigInt(static_cast<long>(sum));
}

/// Frobenius data of a genus-g curve over F_ell.
struct FrobeniusData {
  u64 ell = 0;
  int genus = 0;
  std::vector<BigInt> counts;  // N_1 .. N_g
  std::vector<BigInt> lpoly;   // a_0 .. a_{2g}
  IntPoly charpoly;            // X^{2g} L(1/X)
  BigInt middle;               // coefficient of X^g
};

/// Monic h of degree g with X^g h(X + ell/X) = charpoly, and N = (-1)^g h(0).
struct RealWeilPoly {
  IntPoly h;
  BigInt norm;
};

/// X^g h(X + ell/X) for h of degree g.
inline IntPoly weil_expand(const IntPoly& h, u64 ell) {
  const int g = h.degree();
  const BigInt l(static_cast<unsigned long>(ell));
  // X^g (X + l/X)^k = X^{g-k} (X^2 + l)^k
  const IntPoly quad({l, BigInt(0), BigInt(1)});
  IntPoly out;
  for (int k = 0; k <= g; ++k)
    out = out + IntPoly::monomial(h.coeff(static_cast<std::size_t>(k)), static_cast<std::size_t>(g - k)) * quad.pow(static_cast<unsigned>(k));
  return out;
}

inline RealWeilPoly real_weil(const IntPoly& charpoly, u64 ell, int g) {
  require(g >= 1 && charpoly.degree() == 2 * g && charpoly.lead() == 1, "charpoly must be monic of degree 2g");
  const BigInt l(static_cast<unsigned long>(ell));
  std::vector<BigInt> h(static_cast<std::size_t>(g) + 1);
  // Coefficient of X^{g+m} in the expansion is sum over k = m, m+2, ... of
  // h_k * C(k, (k-m)/2) * l^{(k-m)/2}; unit diagonal, so solve downward.
  for (int m = g; m >= 0; --m) {
    BigInt v = charpoly.coeff(static_cast<std::size_t>(g + m));
    for (int k = m + 2; k <= g; k += 2) {
      const auto j = static_cast<unsigned long>((k - m) / 2);
      BigInt binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), j);
      v -= h[static_cast<std::size_t>(k)] * binom * pow(l, j);
    }
    h[static_cast<std::size_t>(m)] = v;
  }
  RealWeilPoly r{IntPoly(h), BigInt(0)};
  if (!(weil_expand(r.h, ell) == charpoly))
    throw DataError("non-totally-real charpoly: " + charpoly.to_string("X") + " is not X^g h(X + " + std::to_string(ell) + "/X)");
  r.norm = (g % 2 == 0 ? BigInt(1) : BigInt(-1)) * r.h.coeff(0);
  return r;
}

inline RealWeilPoly real_weil(const FrobeniusData& fd) { return real_weil(fd.charpoly, fd.ell, fd.genus); }

/// N_1 .. N_n implied by an L-polynomial (Newton's identities run forward).
inline std::vector<BigInt> counts_from_lpoly(const std::vector<BigInt>& lpoly, u64 ell, int n) {
  const int g2 = static_cast<int>(lpoly.size()) - 1;
  std::vector<BigInt> e(static_cast<std::size_t>(std::max(n, g2)) + 1, BigInt(0));
  for (int i = 0; i <= g2; ++i) e[static_cast<std::size_t>(i)] = (i % 2 == 0 ? 1 : -1) * lpoly[static_cast<std::size_t>(i)];
  std::vector<BigInt> s(static_cast<std::size_t>(n) + 1, BigInt(0));
  std::vector<BigInt> out;
  const BigInt l(static_cast<unsigned long>(ell));
  for (int i = 1; i <= n; ++i) {
    BigInt v = (i % 2 == 1 ? 1 : -1) * BigInt(i) * e[static_cast<std::size_t>(i)];
    for (int j = 1; j < i; ++j) v += (j % 2 == 1 ? 1 : -1) * e[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(i - j)];
    s[static_cast<std::size_t>(i)] = v;
    out.push_back(pow(l, static_cast<unsigned long>(i)) + 1 - v);
  }
  return out;
}

inline FrobeniusData l_polynomial(const std::vector<BigInt>& counts, u64 ell, int g) {
  require(g >= 1, "genus must be positive");
  require(counts.size() == static_cast<std::size_t>(g), "need exactly g = " + std::to_string(g) + " point counts");
  require(is_prime(ell), std::to_string(ell) + " is not prime");
  const BigInt l(static_cast<unsigned long>(ell));

  std::vector<BigInt> s(static_cast<std::size_t>(g) + 1);
  for (int i = 1; i <= g; ++i)
    s[static_cast<std::size_t>(i)] = pow(l, static_cast<unsigned long>(i)) + 1 - counts[static_cast<std::size_t>(i - 1)];

  // Elementary symmetric functions of the reciprocal roots.
  std::vector<BigInt> e(static_cast<std::size_t>(g) + 1);
  e[0] = 1;
  for (int i = 1; i <= g; ++i) {
    BigInt acc = 0;
    for (int j = 1; j <= i; ++j)
      acc += (j % 2 == 1 ? 1 : -1) * e[static_cast<std::size_t>(i - j)] * s[static_cast<std::size_t>(j)];
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(i)))
      throw DataError("inconsistent counts: Newton step " + std::to_string(i) + " is not integral");
    e[static_cast<std::size_t>(i)] = acc / i;
  }

  FrobeniusData fd;
  fd.ell = ell;
  fd.genus = g;
  fd.counts = counts;
  fd.lpoly.assign(static_cast<std::size_t>(2 * g) + 1, BigInt(0));
  for (int i = 0; i <= g; ++i) fd.lpoly[static_cast<std::size_t>(i)] = (i % 2 == 0 ? 1 : -1) * e[static_cast<std::size_t>(i)];
  for (int i = 0; i < g; ++i)
    fd.lpoly[static_cast<std::size_t>(2 * g - i)] = pow(l, static_cast<unsigned long>(g - i)) * fd.lpoly[static_cast<std::size_t>(i)];

  std::vector<BigInt> cp(static_cast<std::size_t>(2 * g) + 1);
  for (int k = 0; k <= 2 * g; ++k) cp[static_cast<std::size_t>(k)] = fd.lpoly[static_cast<std::size_t>(2 * g - k)];
  fd.charpoly = IntPoly(cp);
  fd.middle = fd.lpoly[static_cast<std::size_t>(g)];

  if (counts_from_lpoly(fd.lpoly, ell, g) != counts) throw OracleMismatch("L-polynomial does not reproduce its input counts");
  const RealWeilPoly rw = real_weil(fd);
  if (!all_roots_real_within(to_rational(rw.h), Rational(BigInt(4) * l)))
    throw DataError("inconsistent counts: Frobenius eigenvalues violate the Weil bound at " + std::to_string(ell));
  return fd;
}

inline FrobeniusData frobenius_data(const HypCurve& c, u64 budget = kPointBudget) {
  require(c.good_reduction(), "Frobenius data needs good reduction");
  std::vector<BigInt> counts;
  for (int i = 1; i <= c.genus; ++i) counts.push_back(count_points(c, i, budget));
  return l_polynomial(counts, c.ell(), c.genus);
}

namespace detail {

struct U64Mod {
  using Int = u64;
  u64 m;
  Int from_signed(std::int64_t v) const {
    const auto mm = static_cast<std::int64_t>(m);
    std::int64_t r = v % mm;
    if (r < 0) r += mm;
    return static_cast<u64>(r);
  }
  Int add(Int a, Int b) const {
    const u64 s = a + b;
    return s >= m ? s - m : s;
  }
  Int mul(Int a, Int b) const { return mul_mod(a, b, m); }
  Int inv(Int a) const {
    __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(a), s0 = 0, s1 = 1;
    while (r1 != 0) {
      const __int128 q = r0 / r1;
      __int128 t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    if (r0 != 1) throw OracleMismatch("non-unit in l-adic recurrence");
    if (s0 < 0) s0 += static_cast<__int128>(m);
    return static_cast<u64>(s0);
  }
  bool divisible(Int a, u64 pe) const { return a % pe == 0; }
  Int div(Int a, u64 pe) const { return a / pe; }
  u64 mod_small(Int a, u64 ell) const { return a % ell; }
};

struct BigMod {
  using Int = BigInt;
  BigInt m;
  Int from_signed(std::int64_t v) const {
    BigInt r(static_cast<long>(v));
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  Int add(const Int& a, const Int& b) const {
    BigInt s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  Int mul(const Int& a, const Int& b) const {
    BigInt r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  Int inv(const Int& a) const {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw OracleMismatch("non-unit in l-adic recurrence");
    return r;
  }
  bool divisible(const Int& a, u64 pe) const { return mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(pe)) != 0; }
  Int div(const Int& a, u64 pe) const { return a / BigInt(static_cast<unsigned long>(pe)); }
  u64 mod_small(const Int& a, u64 ell) const { return static_cast<u64>(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(ell))); }
};

// h = ft^k by the recurrence m*ft_0*h_m = sum_j ((k+1)j - m) ft_j h_{m-j},
// run over Z/ell^s so the divisions by multiples of ell stay exact.
template <class Ring>
std::vector<u64> power_series_mod(const Ring& r, const std::vector<u64>& ft, u64 k, std::size_t count, u64 ell) {
  using Int = typename Ring::Int;
  const std::size_t deg = ft.size() - 1;
  std::vector<Int> fr;
  for (u64 v : ft) fr.push_back(r.from_signed(static_cast<std::int64_t>(v)));
  std::vector<Int> h(count, r.from_signed(0));
  Int h0 = r.from_signed(1);
  for (u64 i = 0; i < k; ++i) h0 = r.mul(h0, fr[0]);
  h[0] = h0;
  const Int inv0 = r.inv(fr[0]);
  for (std::size_t m = 1; m < count; ++m) {
    Int acc = r.from_signed(0);
    const std::size_t top = std::min(m, deg);
    for (std::size_t j = 1; j <= top; ++j) {
      const auto coef = static_cast<std::int64_t>((k + 1) * j) - static_cast<std::int64_t>(m);
      if (coef == 0) continue;
      acc = r.add(acc, r.mul(r.mul(r.from_signed(coef), fr[j]), h[m - j]));
    }
    u64 u = m;
    u64 pe = 1;
    while (u % ell == 0) {
      u /= ell;
      pe *= ell;
    }
    if (pe > 1) {
      if (!r.divisible(acc, pe)) throw OracleMismatch("l-adic power recurrence lost divisibility");
      acc = r.div(acc, pe);
    }
    h[m] = r.mul(r.mul(acc, inv0), r.inv(r.from_signed(static_cast<std::int64_t>(u))));
  }
  std::vector<u64> out(count);
  for (std::size_t m = 0; m < count; ++m) out[m] = r.mod_small(h[m], ell);
  return out;
}

}  // namespace detail

/// Coefficients 0..max_index of f^k over F_ell, without forming f^k.
inline std::vector<u64> power_coefficients(const FpPoly& f, u64 k, std::size_t max_index) {
  const u64 ell = f.modulus();
  require(!f.is_zero(), "power of the zero polynomial");
  std::vector<u64> out(max_index + 1, 0);
  std::size_t v = 0;
  while (f.coeff(v) == 0) ++v;
  if (k == 0) {
    out[0] = 1;
    return out;
  }
  const std::size_t shift = v * static_cast<std::size_t>(k);
  if (shift > max_index) return out;
  const std::vector<u64> ft(f.coeffs().begin() + static_cast<std::ptrdiff_t>(v), f.coeffs().end());
  const std::size_t count = max_index - shift + 1;

  // Precision ell^s with s = 1 + v_ell((count-1)!).
  u64 loss = 0;
  for (u64 q = (count - 1) / ell; q > 0; q /= ell) loss += q;
  const u64 s = loss + 1;
  BigInt modulus = pow(BigInt(static_cast<unsigned long>(ell)), static_cast<unsigned long>(s));
  std::vector<u64> h;
  if (modulus < (BigInt(1) << 62)) {
    h = detail::power_series_mod(detail::U64Mod{modulus.get_ui()}, ft, k, count, ell);
  } else {
    h = detail::power_series_mod(detail::BigMod{modulus}, ft, k, count, ell);
  }
  for (std::size_t i = 0; i < count; ++i) out[shift + i] = h[i];
  return out;
}

inline int rank_mod_p(std::vector<std::vector<u64>> m, u64 p) {
  int rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    const auto& pr = m[static_cast<std::size_t>(rank)];
    const u64 inv = inv_mod(pr[c] % p, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] % p == 0) continue;
      const u64 factor = mul_mod(m[r][c] % p, inv, p);
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = (m[r][k] + p - mul_mod(factor, pr[k] % p, p)) % p;
    }
    ++rank;
  }
  return rank;
}

/// Cartier-Manin matrix: entry (i, j) is the coefficient of x^{i*ell - j} in
/// f^{(ell-1)/2}, 1 <= i, j <= g.
struct HasseWitt {
  u64 ell = 0;
  std::vector<std::vector<u64>> matrix;
  int rank = 0;
  bool invertible() const { return rank == static_cast<int>(matrix.size()); }
};

inline HasseWitt hasse_witt(const HypCurve& c) {
  require(c.good_reduction(), "Hasse-Witt matrix needs odd ell and good reduction");
  const u64 ell = c.ell();
  const auto g = static_cast<std::size_t>(c.genus);
  const std::vector<u64> coeffs = power_coefficients(c.f, (ell - 1) / 2, g * ell - 1);
  HasseWitt hw;
  hw.ell = ell;
  hw.matrix.assign(g, std::vector<u64>(g, 0));
  for (std::size_t i = 1; i <= g; ++i)
    for (std::size_t j = 1; j <= g; ++j) hw.matrix[i - 1][j - 1] = coeffs[i * ell - j];
  hw.rank = rank_mod_p(hw.matrix, ell);
  return hw;
}

enum class Status { ordinary, non_ordinary, bad_reduction };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::ordinary: return "ordinary";
    case Status::non_ordinary: return "non-ordinary";
    case Status::bad_reduction: return "bad-reduction";
  }
  return "?";
}

struct OrdinaryVerdict {
  u64 ell = 0;
  Status status = Status::bad_reduction;
  std::optional<u64> middle_mod;
  std::optional<int> hw_rank;
  std::optional<FrobeniusData> frobenius;
};

struct VerdictOptions {
  u64 point_budget = kPointBudget;
  bool with_points = true;  // false: Hasse-Witt only
};

inline OrdinaryVerdict verdict(const HypCurve& c, const VerdictOptions& opt = {}) {
  OrdinaryVerdict v;
  v.ell = c.ell();
  if (!c.good_reduction()) return v;
  const HasseWitt hw = hasse_witt(c);
  v.hw_rank = hw.rank;
  const bool hw_ordinary = hw.invertible();
  v.status = hw_ordinary ? Status::ordinary : Status::non_ordinary;

  bool affordable = opt.with_points;
  u64 q = 1;
  for (int i = 0; i < c.genus && affordable; ++i) {
    if (q > opt.point_budget / c.ell()) affordable = false;
    q *= c.ell();
  }
  if (affordable) {
    v.frobenius = frobenius_data(c, opt.point_budget);
    v.middle_mod = reduce_mod(v.frobenius->middle, c.ell());
    const bool mid_ordinary = *v.middle_mod != 0;
    if (mid_ordinary != hw_ordinary)
      throw OracleMismatch("ordinariness criteria disagree at ell = " + std::to_string(c.ell()) + " for " + c.source);
    v.status = mid_ordinary ? Status::ordinary : Status::non_ordinary;
  }
  return v;
}

/// a_p = p + 1 - #E(F_p) for y^2 = f(x), deg f = 3, over good odd p <= xmax.
struct TraceEntry {
  u64 p = 0;
  BigInt ap;
};

inline std::vector<TraceEntry> elliptic_traces(const IntPoly& f, u64 xmax, unsigned threads = 1) {
  require(f.degree() == 3, "elliptic_traces needs a cubic");
  const auto primes = primes_between(3, xmax);
  struct Slot {
    bool good = false;
    BigInt ap;
  };
  const auto slots = parallel_map(primes, [&](u64 p) {
    Slot s;
    if (reduce_mod(f.lead(), p) == 0) return s;
    const HypCurve c = HypCurve::reduce(f, p);
    if (!c.good_reduction()) return s;
    s.good = true;
    s.ap = BigInt(static_cast<unsigned long>(p + 1)) - count_points(c, 1);
    return s;
  }, threads);
  std::vector<TraceEntry> out;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (slots[i].good) out.push_back({primes[i], slots[i].ap});
  return out;
}

// ---------------------------------------------------------------------------
// Scans over the family.

enum class ScanMode { dichotomy, split, density };

inline const char* to_string(ScanMode m) {
  switch (m) {
    case ScanMode::dichotomy: return "dichotomy";
    case ScanMode::split: return "split";
    case ScanMode::density: return "density";
  }
  return "?";
}

inline ScanMode parse_scan_mode(const std::string& s) {
  if (s == "dichotomy") return ScanMode::dichotomy;
  if (s == "split") return ScanMode::split;
  if (s == "density") return ScanMode::density;
  throw PreconditionError("unknown scan mode '" + s + "' (dichotomy, split, density)");
}

struct ScanConfig {
  u64 p = 7;
  Rational t = 1;
  u64 lmax = 60;
  u64 point_budget = kPointBudget;
  unsigned threads = 1;
};

struct ScanRow {
  u64 ell = 0;
  OrdinaryVerdict verdict;
  std::optional<BigInt> norm;
  std::optional<BigInt> c;
  std::string outcome;  // PASS, EXCEPTION, SKIP, UNRESOLVED, EXCLUDED
  std::string note;
};

struct ScanReport {
  ScanMode mode = ScanMode::dichotomy;
  ScanConfig config;
  int genus = 0;
  std::vector<ScanRow> rows;
  u64 checked = 0;
  u64 passed = 0;
  u64 skipped_bad = 0;
  u64 unresolved = 0;
  u64 excluded = 0;
  std::vector<ScanRow> exceptions;
  std::map<BigInt, u64> c_values;  // non-ordinary rows only
  DensityReport density;

  bool pass() const { return exceptions.empty(); }
};

namespace detail {

inline OrdinaryVerdict family_verdict(const ScanConfig& cfg, u64 ell, bool with_points) {
  if (ell == 2 || reduce_mod(BigInt(cfg.t.get_den()), ell) == 0) {
    OrdinaryVerdict v;
    v.ell = ell;
    return v;
  }
  return verdict(HypCurve::family(cfg.p, cfg.t, ell), {cfg.point_budget, with_points});
}

inline std::optional<BigInt> norm_of(const OrdinaryVerdict& v, std::string& note) {
  if (!v.frobenius) return std::nullopt;
  try {
    return real_weil(*v.frobenius).norm;
  } catch (const DataError& e) {
    note = e.what();
    return std::nullopt;
  }
}

}  // namespace detail

/// Family scans over primes ell <= lmax.  dichotomy: ell >= 5 inert in
/// Q(zeta_p + zeta_p^{-1}); split: ell >= 3 splitting into two primes of equal
/// degree there; density: every ell >= 3, Hasse-Witt only.
inline ScanReport family_scan(ScanMode mode, const ScanConfig& cfg) {
  require(is_prime(cfg.p) && cfg.p != 2 && cfg.p != 5, "family parameter p must be an odd prime other than 5");
  if (mode == ScanMode::density) require(cfg.lmax >= 50, "density scans need ell_max >= 50");
  require(cfg.lmax >= 3, "ell_max must be at least 3");

  const Field k = NumberField::make(real_cyclotomic_minpoly(cfg.p));
  ScanReport rep;
  rep.mode = mode;
  rep.config = cfg;
  rep.genus = static_cast<int>((cfg.p - 1) / 2);
  rep.density.label = "ordinary";
  rep.density.x = cfg.lmax;

  std::vector<u64> ells;
  for (u64 ell : primes_between(3, cfg.lmax)) {
    if (mode == ScanMode::dichotomy && (ell < 5 || is_inert(*k, ell) != Answer::yes)) continue;
    if (mode == ScanMode::split && splits_two_equal(*k, ell) != Answer::yes) continue;
    ells.push_back(ell);
  }
  const bool with_points = mode != ScanMode::density;
  const auto verdicts = parallel_map(ells, [&](u64 ell) { return detail::family_verdict(cfg, ell, with_points); }, cfg.threads);

  for (std::size_t i = 0; i < ells.size(); ++i) {
    ScanRow row;
    row.ell = ells[i];
    row.verdict = verdicts[i];
    const OrdinaryVerdict& v = row.verdict;
    if (v.status == Status::bad_reduction) {
      row.outcome = "SKIP";
      ++rep.skipped_bad;
      rep.rows.push_back(std::move(row));
      continue;
    }
    ++rep.checked;
    rep.density.add(v.status == Status::ordinary);
    row.norm = detail::norm_of(v, row.note);
    if (v.frobenius && !row.norm) {
      row.outcome = "EXCLUDED";
      ++rep.excluded;
      rep.rows.push_back(std::move(row));
      continue;
    }
    if (v.status == Status::ordinary) {
      row.outcome = "PASS";
    } else if (mode == ScanMode::density) {
      row.outcome = "PASS";
    } else if (!v.frobenius) {
      row.outcome = "UNRESOLVED";
      row.note = "no L-polynomial within the point-count budget";
      ++rep.unresolved;
    } else if (mode == ScanMode::dichotomy) {
      const IntPoly target = IntPoly({BigInt(static_cast<unsigned long>(row.ell)), BigInt(0), BigInt(1)}).pow(static_cast<unsigned>(rep.genus));
      row.outcome = v.frobenius->charpoly == target ? "PASS" : "EXCEPTION";
      if (row.outcome == "PASS") row.note = "charpoly = (X^2 + ell)^g";
    } else {
      const BigInt lg = pow(BigInt(static_cast<unsigned long>(row.ell)), static_cast<unsigned long>(rep.genus));
      const BigInt n2 = *row.norm * *row.norm;
      const BigInt cap = BigInt(1) << (2 * rep.genus);
      if (mpz_divisible_p(n2.get_mpz_t(), lg.get_mpz_t()) && n2 / lg <= cap) {
        row.c = n2 / lg;
        ++rep.c_values[*row.c];
        row.outcome = "PASS";
      } else {
        row.outcome = "EXCEPTION";
        row.note = "N^2 is not c * ell^g with 0 <= c <= 2^{2g}";
      }
    }
    if (row.outcome == "PASS") ++rep.passed;
    if (row.outcome == "EXCEPTION") rep.exceptions.push_back(row);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline ScanReport inert_dichotomy_scan(u64 p, const Rational& t, u64 lmax, u64 budget = kPointBudget, unsigned threads = 1) {
  return family_scan(ScanMode::dichotomy, {p, t, lmax, budget, threads});
}
inline ScanReport split_constraint_scan(u64 p, const Rational& t, u64 lmax, u64 budget = kPointBudget, unsigned threads = 1) {
  return family_scan(ScanMode::split, {p, t, lmax, budget, threads});
}
inline DensityReport density_scan(u64 p, const Rational& t, u64 lmax, unsigned threads = 1) {
  return family_scan(ScanMode::density, {p, t, lmax, kPointBudget, threads}).density;
}

}  // namespace ordinarium
