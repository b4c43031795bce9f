#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ordinarium/density.hpp"
#include "ordinarium/fp_poly.hpp"
#include "ordinarium/number_field.hpp"
#include "ordinarium/parallel.hpp"
#include "ordinarium/primes.hpp"

namespace ordinarium {

/// A partition, canonically sorted descending.
using Partition = std::vector<int>;

inline Partition canonical(Partition p) {
  std::sort(p.rbegin(), p.rend());
  return p;
}

inline std::string partition_string(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

struct SplitPart {
  int inertia = 1;
  int ram = 1;
  friend bool operator==(const SplitPart&, const SplitPart&) = default;
};

/// Primes above p, one part per prime: residue degree and ramification
/// index.  Uncertified types (p | poly_disc) carry the mod-p factorization
/// multiplicities in `ram`, which need not be the true ramification.
struct SplittingType {
  std::vector<SplitPart> parts;
  bool certified = false;

  /// Inertia degrees, sorted descending.
  Partition inertia_partition() const {
    Partition out;
    for (const auto& part : parts) out.push_back(part.inertia);
    return canonical(out);
  }

  /// "(1)(1) certified", "(2) certified", "(1^2) uncertified".
  std::string to_string() const {
    std::ostringstream os;
    for (const auto& part : parts) {
      os << "(" << part.inertia;
      if (part.ram != 1) os << "^" << part.ram;
      os << ")";
    }
    os << (certified ? " certified" : " uncertified");
    return os.str();
  }
};

inline SplittingType splitting_type(const NumberField& k, std::uint64_t p) {
  require(is_prime(p), std::to_string(p) + " is not prime");
  SplittingType t;
  t.certified = k.certified_at(p);
  for (const auto& dm : factor_degree_pattern(poly_mod_p(k.defining_poly(), p)))
    t.parts.push_back({dm.degree, dm.multiplicity});
  return t;
}

/// Three-valued answer: uncertified primes never collapse to a boolean.
enum class Answer { no, yes, uncertified };

inline const char* to_string(Answer a) {
  switch (a) {
    case Answer::no: return "no";
    case Answer::yes: return "yes";
    case Answer::uncertified: return "uncertified";
  }
  return "?";
}

namespace detail {
template <class Pred>
Answer certified_answer(const NumberField& k, std::uint64_t p, Pred pred) {
  const SplittingType t = splitting_type(k, p);
  if (!t.certified) return Answer::uncertified;
  return pred(t) ? Answer::yes : Answer::no;
}
}  // namespace detail

inline Answer is_inert(const NumberField& k, std::uint64_t p) {
  return detail::certified_answer(k, p, [&](const SplittingType& t) {
    return t.parts.size() == 1 && t.parts[0].inertia == k.degree();
  });
}

inline Answer splits_two_equal(const NumberField& k, std::uint64_t p) {
  return detail::certified_answer(k, p, [&](const SplittingType& t) {
    return t.parts.size() == 2 && t.parts[0].inertia == t.parts[1].inertia && 2 * t.parts[0].inertia == k.degree();
  });
}

inline Answer has_degree_one(const NumberField& f, std::uint64_t p) {
  return detail::certified_answer(f, p, [](const SplittingType& t) {
    return std::any_of(t.parts.begin(), t.parts.end(), [](const SplitPart& s) { return s.inertia == 1 && s.ram == 1; });
  });
}

inline Answer is_completely_split(const NumberField& k, std::uint64_t p) {
  return detail::certified_answer(k, p, [&](const SplittingType& t) {
    return static_cast<int>(t.parts.size()) == k.degree();
  });
}

inline Answer has_partition(const NumberField& k, std::uint64_t p, const Partition& want) {
  return detail::certified_answer(k, p, [&](const SplittingType& t) { return t.inertia_partition() == canonical(want); });
}

enum class Predicate { inert, split_two_equal, has_degree_one, completely_split, partition };

inline const char* to_string(Predicate p) {
  switch (p) {
    case Predicate::inert: return "inert";
    case Predicate::split_two_equal: return "split-two-equal";
    case Predicate::has_degree_one: return "has-degree-one";
    case Predicate::completely_split: return "completely-split";
    case Predicate::partition: return "partition";
  }
  return "?";
}

inline Predicate parse_predicate(const std::string& s) {
  if (s == "inert") return Predicate::inert;
  if (s == "split-two-equal") return Predicate::split_two_equal;
  if (s == "has-degree-one") return Predicate::has_degree_one;
  if (s == "completely-split" || s == "split") return Predicate::completely_split;
  if (s == "partition") return Predicate::partition;
  throw PreconditionError("unknown splitting predicate '" + s + "'");
}

struct Clause {
  Field field;
  Predicate predicate = Predicate::inert;
  Partition partition;  // only for Predicate::partition

  Answer evaluate(std::uint64_t p) const {
    switch (predicate) {
      case Predicate::inert: return is_inert(*field, p);
      case Predicate::split_two_equal: return splits_two_equal(*field, p);
      case Predicate::has_degree_one: return has_degree_one(*field, p);
      case Predicate::completely_split: return is_completely_split(*field, p);
      case Predicate::partition: return has_partition(*field, p, partition);
    }
    return Answer::uncertified;
  }
};

/// Conjunction of clauses over (possibly different) fields.
class SearchCondition {
 public:
  explicit SearchCondition(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    require(!clauses_.empty(), "a search condition needs at least one clause");
    for (const auto& c : clauses_) {
      require(c.field != nullptr, "clause without a field");
      const int n = c.field->degree();
      if (n == 1)
        require(c.predicate != Predicate::inert && c.predicate != Predicate::split_two_equal,
                std::string("'") + to_string(c.predicate) + "' is degenerate on a degree-1 field (only the trivial pattern)");
      if (c.predicate == Predicate::partition) {
        require(!c.partition.empty() && std::all_of(c.partition.begin(), c.partition.end(), [](int v) { return v > 0; }) &&
                    std::accumulate(c.partition.begin(), c.partition.end(), 0) == n,
                "custom partition must be a partition of the field degree " + std::to_string(n));
      }
    }
  }

  const std::vector<Clause>& clauses() const { return clauses_; }

  /// yes iff every clause holds; uncertified if any clause is uncertified.
  Answer evaluate(std::uint64_t p) const {
    bool all = true;
    for (const auto& c : clauses_) {
      const Answer a = c.evaluate(p);
      if (a == Answer::uncertified) return Answer::uncertified;
      if (a == Answer::no) all = false;
    }
    return all ? Answer::yes : Answer::no;
  }

 private:
  std::vector<Clause> clauses_;
};

struct SearchResult {
  std::optional<std::uint64_t> witness;
  std::uint64_t skipped_uncertified = 0;
  std::uint64_t bound = 0;

  std::string to_string() const {
    if (witness) return std::to_string(*witness);
    return "not found below " + std::to_string(bound);
  }
};

/// Least prime in [lo, hi] satisfying every clause; primes where some clause
/// is uncertified are skipped and tallied.
inline SearchResult search_prime(const SearchCondition& cond, std::uint64_t lo, std::uint64_t hi) {
  require(lo >= 2, "search range must start at 2 or above");
  require(lo <= hi, "empty search range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  SearchResult r;
  r.bound = hi;
  for (std::uint64_t p : primes_between(lo, hi)) {
    const Answer a = cond.evaluate(p);
    if (a == Answer::uncertified) {
      ++r.skipped_uncertified;
    } else if (a == Answer::yes) {
      r.witness = p;
      return r;
    }
  }
  return r;
}

/// hits / certified_total over primes <= x.
inline DensityReport joint_density_estimate(const SearchCondition& cond, std::uint64_t x, unsigned threads = 1) {
  require(x >= 100, "joint_density_estimate needs X >= 100");
  const auto primes = primes_up_to(x);
  const auto answers = parallel_map(primes, [&](std::uint64_t p) { return cond.evaluate(p); }, threads);
  DensityReport r;
  r.label = "joint";
  r.x = x;
  for (Answer a : answers)
    if (a != Answer::uncertified) r.add(a == Answer::yes);
  return r;
}

/// A prime splitting completely in the quadratic field F and inert in K of
/// odd prime degree.  Such primes always exist; the scan reports only
/// "not found below bound" when it runs out.
inline SearchResult quadratic_inert_witness(const Field& f, const Field& k, std::uint64_t bound = 100000) {
  require(f->degree() == 2, "quadratic_inert_witness needs a quadratic F, got degree " + std::to_string(f->degree()));
  const auto q = static_cast<std::uint64_t>(k->degree());
  require(q % 2 == 1 && is_prime(q), "quadratic_inert_witness needs K of odd prime degree, got " + std::to_string(q));
  const SearchCondition cond({{f, Predicate::completely_split, {}}, {k, Predicate::inert, {}}});
  return search_prime(cond, 2, bound);
}

struct HypothesisWitnesses {
  std::optional<std::uint64_t> inert;            // lies under a degree-1 prime of F, inert in K
  std::optional<std::uint64_t> split_two_equal;  // same, two primes of equal degree in K
  std::uint64_t bound = 0;
};

/// Least primes below `bound` lying under a degree-1 prime of F that are
/// inert in K, respectively split into two primes of equal degree in K.
inline HypothesisWitnesses splitting_witnesses(const Field& f, const Field& k, std::uint64_t bound = 10000) {
  HypothesisWitnesses w;
  w.bound = bound;
  for (std::uint64_t p : primes_up_to(bound)) {
    if (w.inert && w.split_two_equal) break;
    if (has_degree_one(*f, p) != Answer::yes) continue;
    if (!w.inert && k->degree() > 1 && is_inert(*k, p) == Answer::yes) w.inert = p;
    if (!w.split_two_equal && k->degree() % 2 == 0 && splits_two_equal(*k, p) == Answer::yes) w.split_two_equal = p;
  }
  return w;
}

}  // namespace ordinarium
