#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordinarium/density.hpp"
#include "ordinarium/error.hpp"
#include "ordinarium/fp_poly.hpp"
#include "ordinarium/hypell.hpp"
#include "ordinarium/number_field.hpp"
#include "ordinarium/primes.hpp"
#include "ordinarium/splitting.hpp"
#include "ordinarium/sturm.hpp"

namespace ordinarium::mf {

/// Weight-2 newform coefficient data over K_f = Q[x]/(field_poly).
class NewformData {
 public:
  NewformData(u64 level, int weight, Field field, std::map<u64, NFElement> ap, std::map<u64, NFElement> eps = {},
              std::optional<bool> is_cm = std::nullopt)
      : level_(level), field_(std::move(field)), ap_(std::move(ap)), eps_(std::move(eps)), is_cm_(is_cm) {
    require(level_ >= 1, "level must be positive");
    if (weight != 2) throw DataError("only weight 2 is supported, got weight " + std::to_string(weight));
    require(field_ != nullptr, "newform data without a coefficient field");
    for (const auto& [p, a] : ap_) validate_ap(p, a);
    for (const auto& [p, e] : eps_) validate_eps(p, e);
  }

  u64 level() const { return level_; }
  int weight() const { return 2; }
  const Field& field() const { return field_; }
  int degree() const { return field_->degree(); }
  const std::map<u64, NFElement>& ap() const { return ap_; }
  const std::map<u64, NFElement>& eps() const { return eps_; }
  std::optional<bool> is_cm() const { return is_cm_; }

  bool has_ap(u64 p) const { return ap_.count(p) != 0; }
  const NFElement& ap(u64 p) const {
    auto it = ap_.find(p);
    require(it != ap_.end(), "no data for a_" + std::to_string(p));
    return it->second;
  }
  /// epsilon(p), trivial when absent.
  NFElement epsilon(u64 p) const {
    auto it = eps_.find(p);
    return it == eps_.end() ? NFElement::rational(field_, 1) : it->second;
  }

 private:
  void validate_coords(u64 p, const NFElement& a, const char* what) const {
    require(a.field() == field_ || a.field()->defining_poly() == field_->defining_poly(), "coefficient in the wrong field");
    for (const auto& c : a.coords())
      if (!mpz_divisible_p(field_->poly_disc().get_mpz_t(), c.get_den().get_mpz_t()))
        throw DataError(std::string(what) + "_" + std::to_string(p) + " has a denominator not dividing the polynomial discriminant");
  }

  // |iota(a_p)| <= 2 sqrt(p) at every real embedding: the sign of
  // 4p - A(x)^2 at each isolated real root of the defining polynomial.
  void validate_ap(u64 p, const NFElement& a) const {
    require(is_prime(p), "a_n keys must be primes, got " + std::to_string(p));
    validate_coords(p, a, "a");
    const QPoly f = to_rational(field_->defining_poly());
    const QPoly A = a.as_poly();
    const QPoly g = QPoly::constant(Rational(4 * static_cast<long>(p))) - A * A;
    for (const auto& [lo, hi] : isolate_real_roots(monic(f)))
      if (sign_at_root(monic(f), lo, hi, g) < 0)
        throw DataError("a_" + std::to_string(p) + " = " + a.to_string() + " violates the Ramanujan bound at a real embedding");
  }

  void validate_eps(u64 p, const NFElement& e) const {
    require(is_prime(p), "nebentypus keys must be primes, got " + std::to_string(p));
    validate_coords(p, e, "eps");
    const Rational n = e.norm();
    if (n != 1 && n != -1) throw DataError("eps(" + std::to_string(p) + ") has norm " + n.get_str() + ", not a unit");
    // A root of unity in a degree-n field has order m with phi(m) <= n.
    const int limit = 2 * degree() * degree() + 2;
    NFElement x = e;
    const NFElement one = NFElement::rational(field_, 1);
    for (int m = 1; m <= limit; ++m) {
      if (x == one) return;
      x = x * e;
    }
    throw DataError("eps(" + std::to_string(p) + ") is not a root of unity");
  }

  u64 level_;
  Field field_;
  std::map<u64, NFElement> ap_;
  std::map<u64, NFElement> eps_;
  std::optional<bool> is_cm_;
};

/// "num/den", "num" or a JSON integer.
inline Rational parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(BigInt(j.dump()));
  if (!j.is_string()) throw DataError("rational must be a \"num/den\" string or an integer, got " + j.dump());
  Rational r;
  if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0) throw DataError("malformed rational '" + j.get<std::string>() + "'");
  r.canonicalize();
  return r;
}

inline std::string rational_json(const Rational& r) { return r.get_den() == 1 ? r.get_num().get_str() : r.get_str(); }

inline NewformData from_json(const nlohmann::json& j) {
  try {
    const auto level = j.at("level").get<u64>();
    const int weight = j.at("weight").get<int>();
    std::vector<BigInt> poly;
    for (const auto& c : j.at("field_poly")) poly.push_back(parse_rational(c).get_num());
    const Field k = NumberField::make(IntPoly(poly));
    auto read_map = [&](const char* key) {
      std::map<u64, NFElement> m;
      if (!j.contains(key)) return m;
      for (const auto& [ks, v] : j.at(key).items()) {
        std::vector<Rational> coords;
        for (const auto& c : v) coords.push_back(parse_rational(c));
        m.emplace(std::stoull(ks), NFElement(k, coords));
      }
      return m;
    };
    std::optional<bool> cm;
    if (j.contains("cm")) cm = j.at("cm").get<bool>();
    return NewformData(level, weight, k, read_map("ap"), read_map("eps"), cm);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("newform JSON: ") + e.what());
  }
}

inline nlohmann::json to_json(const NewformData& f) {
  nlohmann::json j;
  j["level"] = f.level();
  j["weight"] = 2;
  auto poly = nlohmann::json::array();
  for (const auto& c : f.field()->defining_poly().coeffs()) poly.push_back(c.get_si());
  j["field_poly"] = poly;
  auto write_map = [](const std::map<u64, NFElement>& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [p, a] : m) {
      auto arr = nlohmann::json::array();
      for (const auto& c : a.coords()) arr.push_back(rational_json(c));
      out[std::to_string(p)] = arr;
    }
    return out;
  };
  if (!f.eps().empty()) j["eps"] = write_map(f.eps());
  j["ap"] = write_map(f.ap());
  if (f.is_cm()) j["cm"] = *f.is_cm();
  return j;
}

inline NewformData load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  return from_json(j);
}

/// Rational newform data from the a_p table of y^2 = f(x) (f a cubic).
inline NewformData from_elliptic_curve(const IntPoly& f, u64 level, u64 xmax, std::optional<bool> cm = std::nullopt,
                                      unsigned threads = 1) {
  const Field q = NumberField::make({0, 1});
  std::map<u64, NFElement> ap;
  for (const auto& e : elliptic_traces(f, xmax, threads))
    if (level % e.p != 0) ap.emplace(e.p, NFElement::rational(q, Rational(e.ap)));
  return NewformData(level, 2, q, std::move(ap), {}, cm);
}

inline Rational integral_norm(const NFElement& a) {
  const Rational n = a.norm();
  if (n.get_den() != 1) throw DataError("a_p is not integral (norm " + n.get_str() + ")");
  return n;
}

/// p does not divide N_{K_f/Q}(a_p).
inline bool is_p_ordinary(const NewformData& f, u64 p) {
  require(is_prime(p), std::to_string(p) + " is not prime");
  require(f.level() % p != 0, "bad prime: " + std::to_string(p) + " divides the level " + std::to_string(f.level()));
  require(f.has_ap(p), "no data for a_" + std::to_string(p));
  return reduce_mod(integral_norm(f.ap(p)).get_num(), p) != 0;
}

struct LambdaVerdict {
  FpPoly factor;  // g_i, the residue polynomial of lambda_i
  bool ordinary = false;
};

struct LambdaProfile {
  bool certified = false;
  std::vector<LambdaVerdict> lambdas;
  bool all_ordinary() const {
    for (const auto& l : lambdas)
      if (!l.ordinary) return false;
    return certified;
  }
};

/// One verdict per prime lambda | p: a_p nonzero in F_p[x]/(g_i).
inline LambdaProfile lambda_ordinary_profile(const NewformData& f, u64 p) {
  require(is_prime(p), std::to_string(p) + " is not prime");
  require(f.level() % p != 0, "bad prime: " + std::to_string(p) + " divides the level " + std::to_string(f.level()));
  require(f.has_ap(p), "no data for a_" + std::to_string(p));
  LambdaProfile prof;
  if (!f.field()->certified_at(p)) return prof;
  prof.certified = true;
  std::vector<u64> coords;
  for (const auto& c : f.ap(p).coords()) coords.push_back(reduce_mod(c, p));
  const FpPoly a(p, coords);
  for (const auto& fac : factor(poly_mod_p(f.field()->defining_poly(), p)))
    prof.lambdas.push_back({fac.poly, !(a % fac.poly).is_zero()});
  if (prof.all_ordinary() != is_p_ordinary(f, p))
    throw OracleMismatch("lambda profile and norm criterion disagree at p = " + std::to_string(p));
  return prof;
}

struct CoefficientFieldWitnesses {
  int degree = 0;
  std::optional<u64> guarantee_q;  // degree is q or 2q for this prime q
  std::optional<SearchResult> inert;
  std::optional<SearchResult> split_two_equal;
};

inline CoefficientFieldWitnesses coefficient_field_witnesses(const Field& k, u64 bound = 10000) {
  CoefficientFieldWitnesses r;
  r.degree = k->degree();
  const auto n = static_cast<u64>(r.degree);
  if (is_prime(n)) {
    r.guarantee_q = n;
  } else if (n % 2 == 0 && is_prime(n / 2)) {
    r.guarantee_q = n / 2;
  }
  if (n > 1) {
    r.inert = search_prime(SearchCondition({{k, Predicate::inert, {}}}), 2, bound);
    if (n % 2 == 0) r.split_two_equal = search_prime(SearchCondition({{k, Predicate::split_two_equal, {}}}), 2, bound);
  }
  return r;
}

struct EichlerShimura {
  IntPoly charpoly;  // degree 2g
  BigInt middle;     // a_{p,g}, coefficient of X^g
};

/// prod over embeddings of X^2 - sigma(a_p) X + sigma(eps(p)) p, by
/// interpolating norms at 2g + 1 integer points.
inline EichlerShimura eichler_shimura_charpoly(const NewformData& f, u64 p) {
  require(f.level() % p != 0, "bad prime: " + std::to_string(p) + " divides the level " + std::to_string(f.level()));
  const NFElement a = f.ap(p);
  const NFElement ep = f.epsilon(p) * NFElement::rational(f.field(), Rational(static_cast<long>(p)));
  const int g = f.degree();
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (int i = 0; i <= 2 * g; ++i) {
    const Rational x(i);
    const NFElement v = NFElement::rational(f.field(), x * x) - NFElement::rational(f.field(), x) * a + ep;
    xs.push_back(x);
    ys.push_back(v.norm());
  }
  const QPoly P = interpolate(xs, ys);
  std::vector<BigInt> c;
  for (const auto& v : P.coeffs()) {
    if (v.get_den() != 1) throw DataError("Eichler-Shimura expansion at p = " + std::to_string(p) + " is not integral");
    c.push_back(v.get_num());
  }
  EichlerShimura es{IntPoly(c), BigInt(0)};
  es.middle = es.charpoly.coeff(static_cast<std::size_t>(g));
  return es;
}

struct OrdinaryDensity {
  DensityReport report;
  u64 gaps = 0;  // good primes <= X without a_p
};

inline OrdinaryDensity ordinary_density(const NewformData& f, u64 x) {
  OrdinaryDensity d;
  d.report.label = "p-ordinary";
  d.report.x = x;
  if (x < 2) return d;
  for (u64 p : primes_up_to(x)) {
    if (f.level() % p == 0) continue;
    if (!f.has_ap(p)) {
      ++d.gaps;
      continue;
    }
    d.report.add(is_p_ordinary(f, p));
  }
  return d;
}

}  // namespace ordinarium::mf
