#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ordinarium/error.hpp"
#include "ordinarium/number_field.hpp"
#include "ordinarium/parallel.hpp"
#include "ordinarium/primes.hpp"
#include "ordinarium/splitting.hpp"

namespace ordinarium {

/// Permutation of {0..n-1}; printed in 1-based cycle notation.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<int> seen(img_.size(), 0);
    for (int v : img_) {
      require(v >= 0 && static_cast<std::size_t>(v) < img_.size() && !seen[static_cast<std::size_t>(v)],
              "images do not form a permutation");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  static Perm identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return Perm(std::move(v));
  }

  /// 1-based cycles, e.g. {{1,3,5},{2,4,6}}.
  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        require(c[i] >= 1 && c[i] <= n, "cycle entry out of range");
        v[static_cast<std::size_t>(c[i] - 1)] = c[(i + 1) % c.size()] - 1;
      }
    }
    return Perm(std::move(v));
  }

  /// Parses "(1,2,3)(4,5)"; "()" is the identity.
  static Perm parse(int n, const std::string& text) {
    std::vector<std::vector<int>> cycles;
    std::vector<int> cur;
    std::string num;
    auto flush = [&] {
      if (!num.empty()) cur.push_back(std::stoi(num));
      num.clear();
    };
    for (char ch : text) {
      if (ch == '(') {
        cur.clear();
      } else if (ch == ')') {
        flush();
        if (!cur.empty()) cycles.push_back(cur);
        cur.clear();
      } else if (ch == ',' || ch == ' ') {
        flush();
      } else if (ch >= '0' && ch <= '9') {
        num.push_back(ch);
      } else {
        throw PreconditionError("bad character in cycle notation: " + text);
      }
    }
    return from_cycles(n, cycles);
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return img_; }

  /// (a * b)(x) = a(b(x)).
  friend Perm operator*(const Perm& a, const Perm& b) {
    std::vector<int> v(b.img_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.img_[static_cast<std::size_t>(b.img_[i])];
    Perm r;
    r.img_ = std::move(v);
    return r;
  }
  Perm inverse() const {
    std::vector<int> v(img_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
    Perm r;
    r.img_ = std::move(v);
    return r;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.img_ <=> b.img_; }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t s = 0; s < img_.size(); ++s) {
      if (seen[s]) continue;
      std::vector<int> c;
      for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(img_[x])) {
        seen[x] = 1;
        c.push_back(static_cast<int>(x) + 1);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (const auto& c : cycles()) {
      if (c.size() == 1) continue;
      os << "(";
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
      os << ")";
    }
    const std::string s = os.str();
    return s.empty() ? "()" : s;
  }

 private:
  std::vector<int> img_;
};

/// Cycle lengths including fixed points, sorted descending.
inline Partition cycle_type(const Perm& p) {
  Partition out;
  for (const auto& c : p.cycles()) out.push_back(static_cast<int>(c.size()));
  return canonical(out);
}

/// Finite permutation group with its elements materialized (sorted).
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> generators) : n_(degree), gens_(std::move(generators)) {
    for (const auto& g : gens_) require(g.degree() == n_, "generator degree mismatch");
    std::set<Perm> seen{Perm::identity(n_)};
    std::deque<Perm> queue{Perm::identity(n_)};
    while (!queue.empty()) {
      Perm x = std::move(queue.front());
      queue.pop_front();
      for (const auto& g : gens_) {
        Perm y = g * x;
        if (seen.insert(y).second) queue.push_back(std::move(y));
      }
    }
    elements_.assign(seen.begin(), seen.end());
  }

  static PermGroup symmetric(int n) {
    if (n <= 1) return PermGroup(n, {});
    std::vector<int> cyc(static_cast<std::size_t>(n));
    std::iota(cyc.begin(), cyc.end(), 1);
    return PermGroup(n, {Perm::from_cycles(n, {{1, 2}}), Perm::from_cycles(n, {cyc})});
  }

  int degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

  /// Orbit of the first point covers everything.
  bool is_transitive() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const auto& g : gens_) {
        const int y = g(x);
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          stack.push_back(y);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

  /// First element (in sorted order) of the given cycle type.
  std::optional<Perm> find_cycle_type(const Partition& type) const {
    require(std::accumulate(type.begin(), type.end(), 0) == n_, "cycle type must be a partition of " + std::to_string(n_));
    const Partition want = canonical(type);
    for (const auto& e : elements_)
      if (cycle_type(e) == want) return e;
    return std::nullopt;
  }

 private:
  int n_;
  std::vector<Perm> gens_;
  std::vector<Perm> elements_;
};

/// Full subgroup lattice of S_n for n <= 6, built by closing the cyclic
/// subgroups under pairwise joins.  Subgroups are stored as bitsets over the
/// sorted element list of S_n and deduplicated by their element sets.
class SymmetricSubgroups {
 public:
  static constexpr int kMaxDegree = 6;

  explicit SymmetricSubgroups(int n) : n_(n) {
    require(n >= 1 && n <= kMaxDegree, "subgroup lattice supported for S_1..S_6 only");
    elements_ = PermGroup::symmetric(n).elements();
    const std::size_t order = elements_.size();
    words_ = (order + 63) / 64;
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < order; ++i) index[code(elements_[i])] = i;
    table_.resize(order * order);
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) table_[i * order + j] = static_cast<std::uint16_t>(index.at(code(elements_[i] * elements_[j])));
    identity_ = index.at(code(Perm::identity(n)));
    build();
  }

  int degree() const { return n_; }
  std::size_t count() const { return subgroups_.size(); }

  /// Subgroup k as a PermGroup generated by its recorded generators.
  PermGroup group(std::size_t k) const {
    std::vector<Perm> gens;
    for (std::size_t g : gens_[k]) gens.push_back(elements_[g]);
    return PermGroup(n_, std::move(gens));
  }
  std::size_t order(std::size_t k) const {
    std::size_t c = 0;
    for (auto w : subgroups_[k]) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  /// Number of conjugacy classes among the subgroups selected by `keep`.
  template <class Keep>
  std::size_t conjugacy_classes(Keep keep) const {
    std::set<Bits> canon;
    for (std::size_t k = 0; k < subgroups_.size(); ++k) {
      if (!keep(k)) continue;
      Bits best;
      bool first = true;
      for (std::size_t c = 0; c < elements_.size(); ++c) {
        const std::size_t cinv = inverse_of(c);
        Bits conj(words_, 0);
        for_each_bit(subgroups_[k], [&](std::size_t h) {
          const std::size_t x = mul(mul(c, h), cinv);
          conj[x / 64] |= (std::uint64_t{1} << (x % 64));
        });
        if (first || conj < best) best = std::move(conj);
        first = false;
      }
      canon.insert(std::move(best));
    }
    return canon.size();
  }

 private:
  using Bits = std::vector<std::uint64_t>;

  std::uint64_t code(const Perm& p) const {
    std::uint64_t c = 0;
    for (int v : p.images()) c = c * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(v);
    return c;
  }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * elements_.size() + b]; }
  std::size_t inverse_of(std::size_t a) const {
    for (std::size_t b = 0; b < elements_.size(); ++b)
      if (mul(a, b) == identity_) return b;
    return identity_;
  }
  static bool test(const Bits& s, std::size_t i) { return (s[i / 64] >> (i % 64)) & 1U; }
  template <class Fn>
  static void for_each_bit(const Bits& s, Fn fn) {
    for (std::size_t w = 0; w < s.size(); ++w)
      for (std::uint64_t x = s[w]; x; x &= x - 1) fn(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
  }

  // Group generated by `gens`, as a bitset.
  Bits closure(const std::vector<std::size_t>& gens) const {
    Bits s(words_, 0);
    std::vector<std::size_t> queue{identity_};
    s[identity_ / 64] |= std::uint64_t{1} << (identity_ % 64);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t g : gens) {
        const std::size_t y = mul(g, queue[head]);
        if (!test(s, y)) {
          s[y / 64] |= std::uint64_t{1} << (y % 64);
          queue.push_back(y);
        }
      }
    }
    return s;
  }

  void build() {
    std::map<Bits, std::size_t> seen;
    std::vector<std::size_t> cyclic;
    for (std::size_t g = 0; g < elements_.size(); ++g) {
      Bits s = closure({g});
      if (seen.emplace(s, subgroups_.size()).second) {
        cyclic.push_back(subgroups_.size());
        subgroups_.push_back(std::move(s));
        gens_.push_back(g == identity_ ? std::vector<std::size_t>{} : std::vector<std::size_t>{g});
      }
    }
    std::vector<std::size_t> frontier = cyclic;
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t h : frontier) {
        for (std::size_t c : cyclic) {
          if (gens_[c].empty() || test(subgroups_[h], gens_[c][0])) continue;
          std::vector<std::size_t> gens = gens_[h];
          gens.push_back(gens_[c][0]);
          Bits s = closure(gens);
          if (seen.emplace(s, subgroups_.size()).second) {
            next.push_back(subgroups_.size());
            subgroups_.push_back(std::move(s));
            gens_.push_back(std::move(gens));
          }
        }
      }
      frontier = std::move(next);
    }
  }

  int n_;
  std::vector<Perm> elements_;
  std::size_t words_ = 0;
  std::vector<std::uint16_t> table_;
  std::size_t identity_ = 0;
  std::vector<Bits> subgroups_;
  std::vector<std::vector<std::size_t>> gens_;
};

struct TransitiveEntry {
  std::vector<Perm> generators;
  std::size_t order = 0;
  std::optional<Perm> witness;  // element of cycle type (q, q)
};

struct Transitive2qReport {
  int q = 0;
  std::size_t total_subgroups = 0;
  std::size_t transitive_classes = 0;  // up to conjugacy in S_2q
  std::vector<TransitiveEntry> transitive;
  bool all_pass = false;
};

/// Every transitive subgroup of S_2q contains a product of two disjoint
/// q-cycles; checked over the full subgroup lattice for q in {2, 3}.
inline Transitive2qReport verify_transitive_2q(int q) {
  require(q == 2 || q == 3, "verify_transitive_2q supports q in {2, 3} (2q <= 6), got q = " + std::to_string(q));
  const SymmetricSubgroups lattice(2 * q);
  Transitive2qReport r;
  r.q = q;
  r.total_subgroups = lattice.count();
  std::vector<char> is_transitive(lattice.count(), 0);
  r.all_pass = true;
  for (std::size_t k = 0; k < lattice.count(); ++k) {
    const PermGroup g = lattice.group(k);
    if (!g.is_transitive()) continue;
    is_transitive[k] = 1;
    TransitiveEntry e;
    e.generators = g.generators();
    e.order = g.order();
    e.witness = g.find_cycle_type({q, q});
    if (!e.witness) r.all_pass = false;
    r.transitive.push_back(std::move(e));
  }
  r.transitive_classes = lattice.conjugacy_classes([&](std::size_t k) { return is_transitive[k] != 0; });
  return r;
}

struct FrequencyTable {
  std::map<Partition, std::uint64_t, std::greater<>> counts;
  std::uint64_t certified = 0;
  std::uint64_t skipped = 0;

  double frequency(const Partition& p) const {
    if (certified == 0) return 0.0;
    auto it = counts.find(canonical(p));
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(certified);
  }
};

/// Observed splitting-type frequencies of certified primes <= x in K.
inline FrequencyTable chebotarev_frequency(const NumberField& k, std::uint64_t x, unsigned threads = 1) {
  require(x >= 100, "chebotarev_frequency needs X >= 100");
  const auto primes = primes_up_to(x);
  const auto types = parallel_map(primes, [&](std::uint64_t p) { return splitting_type(k, p); }, threads);
  FrequencyTable t;
  for (const auto& st : types) {
    if (!st.certified) {
      ++t.skipped;
      continue;
    }
    ++t.counts[st.inertia_partition()];
    ++t.certified;
  }
  return t;
}

}  // namespace ordinarium
