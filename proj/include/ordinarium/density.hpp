#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "ordinarium/error.hpp"
#include "ordinarium/primes.hpp"

namespace ordinarium {

/// Global tolerances for density comparisons.
inline constexpr double kApproxTolerance = 0.05;
inline constexpr double kAtLeastSlack = 0.03;
inline constexpr std::uint64_t kMinSample = 200;

enum class Relation { at_least, approx, positive };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::at_least: return ">=";
    case Relation::approx: return "~";
    case Relation::positive: return ">0";
  }
  return "?";
}

struct PredictedBound {
  double value = 0.0;
  Relation relation = Relation::positive;
};

struct DensityReport {
  std::string label;
  std::uint64_t x = 0;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  std::optional<PredictedBound> predicted;

  /// hits / total, undefined for an empty sample.
  std::optional<double> fraction() const {
    if (total == 0) return std::nullopt;
    return static_cast<double>(hits) / static_cast<double>(total);
  }

  void add(bool hit) {
    ++total;
    if (hit) ++hits;
  }

  /// Combines reports over disjoint prime ranges.
  DensityReport merged(const DensityReport& o) const {
    DensityReport r = *this;
    r.x = std::max(x, o.x);
    r.hits += o.hits;
    r.total += o.total;
    return r;
  }
};

enum class Outcome { pass, fail, insufficient };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "PASS";
    case Outcome::fail: return "FAIL";
    case Outcome::insufficient: return "INSUFFICIENT";
  }
  return "?";
}

struct Comparison {
  Outcome outcome = Outcome::insufficient;
  double slack = 0.0;  // signed distance to the failure threshold; >= 0 on PASS
};

/// ~ v passes within kApproxTolerance, >= v passes down to v - kAtLeastSlack,
/// >0 passes on any hit.  Samples smaller than kMinSample are insufficient.
inline Comparison compare(const DensityReport& report, const PredictedBound& bound) {
  if (report.total < kMinSample) return {Outcome::insufficient, 0.0};
  const double f = *report.fraction();
  double slack = 0.0;
  switch (bound.relation) {
    case Relation::approx: slack = kApproxTolerance - std::abs(f - bound.value); break;
    case Relation::at_least: slack = f - (bound.value - kAtLeastSlack); break;
    case Relation::positive: slack = f; break;
  }
  const bool ok = bound.relation == Relation::positive ? f > 0.0 : slack >= 0.0;
  return {ok ? Outcome::pass : Outcome::fail, slack};
}

struct PrimeCountingSanity {
  std::uint64_t x = 0;
  std::uint64_t pi = 0;
  double ratio = 0.0;  // pi(x) / (x / log x)
  bool in_range = false;
};

inline PrimeCountingSanity prime_counting_sanity(std::uint64_t x) {
  require(x >= 1000, "prime_counting_sanity needs X >= 1000, got " + std::to_string(x));
  PrimeCountingSanity s;
  s.x = x;
  s.pi = primes_up_to(x).size();
  const double xd = static_cast<double>(x);
  s.ratio = static_cast<double>(s.pi) / (xd / std::log(xd));
  s.in_range = s.ratio >= 0.9 && s.ratio <= 1.25;
  return s;
}

}  // namespace ordinarium
