#include <gtest/gtest.h>

#include "ordinarium/gl2count.hpp"

using namespace ordinarium;
using namespace ordinarium::gl2;

namespace {
GL2Elt mat(u64 a, u64 b, u64 c, u64 d, u64 ell) { return {a, b, c, d, ell}; }
}  // namespace

TEST(TraceDet, Examples) {
  EXPECT_EQ(count_trace_det(3, 0, 1), 6u);
  EXPECT_EQ(count_trace_det(5, 2, 1), 25u);
  EXPECT_EQ(count_trace_det(3, 1, 1), 9u);
  EXPECT_THROW(count_trace_det(3, 1, 0), PreconditionError);
  EXPECT_THROW(count_trace_det(9, 1, 1), PreconditionError);
}

TEST(TraceDet, FormulaMatchesEnumeration) {
  for (u64 ell : {3, 5, 7, 11}) {
    u64 total = 0;
    for (u64 t = 0; t < ell; ++t)
      for (u64 d = 1; d < ell; ++d) {
        const u64 n = enumerate_trace_det(ell, t, d);
        EXPECT_EQ(n, count_trace_det(ell, t, d)) << ell << " " << t << " " << d;
        total += n;
      }
    EXPECT_EQ(total, gl2_order(ell));
    EXPECT_EQ(enumerate_gl2(ell).size(), gl2_order(ell));
  }
  EXPECT_THROW(enumerate_trace_det(17, 1, 1), PreconditionError);
}

TEST(SizeA, Examples) {
  const auto a321 = size_A(3, 2, 1);
  EXPECT_EQ(a321.closed, 1152);
  EXPECT_EQ(a321.brute, std::optional<u64>(1152));
  EXPECT_EQ(size_A(3, 1, 1).brute, std::optional<u64>(48));
  EXPECT_EQ(size_A(5, 1, 2).closed, 480);
  EXPECT_EQ(size_A(5, 1, 2).brute, std::optional<u64>(480));
  EXPECT_FALSE(size_A(7, 1, 1).brute);
  EXPECT_EQ(size_A(7, 1, 1).closed, BigInt(gl2_order(7)));
}

TEST(SizeA, BruteAgreesWithClosedFormEverywhere) {
  for (u64 ell : {3, 5})
    for (int gp = 1; gp <= 3; ++gp)
      for (int d = 1; gp * d <= 3; ++d) {
        if (ell == 5 && gp * d == 3) continue;  // 480^3 tuples
        const auto r = size_A(ell, gp, d);
        ASSERT_TRUE(r.brute);
        EXPECT_EQ(BigInt(static_cast<unsigned long>(*r.brute)), r.closed) << ell << " " << gp << " " << d;
      }
}

TEST(SizeC, TraceZeroCensus) {
  // det 1 contributes 6, det 2 contributes 9 + 3 = 12.
  EXPECT_EQ(count_trace_det(3, 0, 1) + count_trace_det(3, 0, 2), 18u);
  EXPECT_EQ(size_C(3, 1, 1, 1, 0), 18u);
}

TEST(SizeC, CollapsesToTraceDetCensus) {
  for (u64 ell : {3, 5, 7}) {
    for (std::int64_t c : {0, 1, 2, 3}) {
      u64 expect = 0;
      for (u64 t = 0; t < ell; ++t)
        for (u64 d = 1; d < ell; ++d)
          if (mul_mod(t, t, ell) == mul_mod(static_cast<u64>(c) % ell, d, ell)) expect += count_trace_det(ell, t, d);
      EXPECT_EQ(size_C(ell, 1, 1, 1, c), expect) << ell << " c=" << c;
    }
  }
}

TEST(SizeC, BruteForceOverAllPairs) {
  // g' = 1, d = 2: every pair (M1, M2) tested against b_membership directly.
  const u64 ell = 5;
  const auto group = enumerate_gl2(ell);
  for (u64 n : {1, 2, 4}) {
    for (std::int64_t c : {0, 1}) {
      u64 brute = 0;
      for (const auto& x : group)
        for (const auto& y : group) {
          const MatTuple t(1, 2, {x, y});
          if (b_membership(t, n) && c_condition(t, c)) ++brute;
        }
      EXPECT_EQ(size_C(ell, 1, 2, n, c), brute) << "n=" << n << " c=" << c;
    }
  }
}

TEST(SizeC, BudgetIsEnforced) {
  EXPECT_THROW(size_C(11, 2, 1, 1, 0), PreconditionError);
  EXPECT_THROW(size_C(3, 3, 1, 1, 0), PreconditionError);
}

// ell^{g'} |C| <= |D| |mu_n|^{g'(d-1)} style bound: |C| is at most |D| times
// the number of scalar choices.
TEST(SizeD, DominatesC) {
  for (u64 ell : {3, 5, 7}) {
    for (u64 n : {1, 2}) {
      for (std::int64_t c : {0, 1, 2}) {
        u64 mu = 0;
        for (u64 x = 1; x < ell; ++x) mu += pow_mod(x, n, ell) == 1;
        const u64 cc = size_C(ell, 1, 2, n, c);
        const u64 dd = size_D(ell, 1, 2, n, c);
        EXPECT_LE(cc, dd * mu) << ell << " " << n << " " << c;
        EXPECT_LE(dd, size_A_n(ell, 1, n));
      }
    }
  }
  EXPECT_EQ(size_A_n(3, 2, 1), 1152u);      // equal determinants
  EXPECT_EQ(size_A_n(3, 2, 2), 48u * 48u);  // every square is 1 in F_3
  EXPECT_EQ(size_A_n(5, 1, 2), gl2_order(5));
}

TEST(RatioBound, SmallEll) {
  const auto r = ratio_bound_check({1, 1, 1, 1}, {3, 5, 7});
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.kappa, 4.0);
  for (const auto& row : r.rows) {
    const double ell = static_cast<double>(row.ell);
    // Analytic upper bound 2(ell^2 + ell)(ell - 1) on |C|.
    EXPECT_LE(static_cast<double>(row.size_c), 2 * (ell * ell + ell) * (ell - 1));
  }
  EXPECT_TRUE(ratio_bound_check({1, 1, 1, 0}, {3, 5, 7}).pass);
  EXPECT_THROW(ratio_bound_check({1, 1, 1, 1}, {}), PreconditionError);
}

TEST(Centralizer, Examples) {
  const auto a = centralizer_check(5, 1, 2);
  EXPECT_EQ(a.commutants.size(), 4u);
  EXPECT_TRUE(a.only_scalars);
  const auto b = centralizer_check(7, 2, 3);
  EXPECT_EQ(b.commutants.size(), 6u);
  EXPECT_TRUE(b.only_scalars);
  try {
    centralizer_check(5, 4, 2);
    FAIL() << "expected rejection";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("ell > n + 1"), std::string::npos);
  }
  EXPECT_THROW(centralizer_check(7, 3, 2), PreconditionError);  // 2^3 = 1 in F_7
  EXPECT_EQ(find_valid_t(7, 3), std::optional<u64>(3));
}

TEST(BMembership, Examples) {
  const u64 ell = 7;
  const GL2Elt id = mat(1, 0, 0, 1, ell);
  EXPECT_TRUE(b_membership(MatTuple(2, 2, {id, id, id, id}), 3));
  const GL2Elt m = mat(2, 1, 3, 4, ell);
  // 2 has order 3 mod 7.
  EXPECT_TRUE(b_membership(MatTuple(1, 2, {m, m.scaled(2)}), 3));
  EXPECT_FALSE(b_membership(MatTuple(1, 2, {m, m.scaled(2)}), 2));
  EXPECT_FALSE(b_membership(MatTuple(1, 2, {m, m * mat(1, 1, 0, 1, ell)}), 3));
  EXPECT_TRUE(a_membership(MatTuple(2, 1, {m, m})));
  EXPECT_FALSE(a_membership(MatTuple(1, 2, {m, m.scaled(2)})));
}
