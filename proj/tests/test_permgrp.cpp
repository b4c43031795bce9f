#include <gtest/gtest.h>

#include <set>

#include "ordinarium/permgrp.hpp"

using namespace ordinarium;

namespace {
std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}
}  // namespace

TEST(Perm, ParseAndCycleType) {
  EXPECT_EQ(cycle_type(Perm::identity(4)), (Partition{1, 1, 1, 1}));
  EXPECT_EQ(cycle_type(Perm::parse(4, "(1,2,3,4)")), (Partition{4}));
  EXPECT_EQ(cycle_type(Perm::parse(6, "(1,3,5)(2,4,6)")), (Partition{3, 3}));
  EXPECT_EQ(Perm::parse(6, "(1,3,5)(2,4,6)").to_string(), "(1,3,5)(2,4,6)");
  EXPECT_THROW(Perm::parse(4, "(1,5)"), PreconditionError);
  EXPECT_THROW(Perm::parse(4, "(1,2,1)"), PreconditionError);
}

TEST(Perm, GroupLaws) {
  const Perm a = Perm::parse(5, "(1,2,3)");
  const Perm b = Perm::parse(5, "(3,4,5)");
  EXPECT_EQ(a * a.inverse(), Perm::identity(5));
  EXPECT_EQ((a * b) * a, a * (b * a));
  EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
}

TEST(PermGroup, Transitivity) {
  EXPECT_TRUE(PermGroup(4, {Perm::parse(4, "(1,2,3,4)")}).is_transitive());
  EXPECT_FALSE(PermGroup(4, {Perm::parse(4, "(1,2)")}).is_transitive());
  EXPECT_TRUE(PermGroup::symmetric(6).is_transitive());
  EXPECT_EQ(PermGroup::symmetric(6).order(), 720u);
}

TEST(PermGroup, FindCycleType) {
  const PermGroup c4(4, {Perm::parse(4, "(1,2,3,4)")});
  EXPECT_EQ(c4.find_cycle_type({2, 2})->to_string(), "(1,3)(2,4)");
  const PermGroup c6(6, {Perm::parse(6, "(1,2,3,4,5,6)")});
  EXPECT_EQ(c6.find_cycle_type({3, 3})->to_string(), "(1,3,5)(2,4,6)");
  const PermGroup a3(3, {Perm::parse(3, "(1,2,3)")});
  EXPECT_FALSE(a3.find_cycle_type({2, 1}));
}

// None from find_cycle_type means no element has the type.
TEST(PermGroup, FindCycleTypeIsComplete) {
  const SymmetricSubgroups lattice(4);
  const std::vector<Partition> types = {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  for (std::size_t k = 0; k < lattice.count(); ++k) {
    const PermGroup g = lattice.group(k);
    std::set<Partition> seen;
    for (const auto& e : g.elements()) seen.insert(cycle_type(e));
    for (const auto& t : types) {
      const auto w = g.find_cycle_type(t);
      EXPECT_EQ(w.has_value(), seen.count(t) == 1);
      if (w) {
        EXPECT_EQ(cycle_type(*w), t);
      }
    }
  }
}

TEST(SymmetricSubgroups, KnownCounts) {
  const SymmetricSubgroups s4(4);
  EXPECT_EQ(s4.count(), 30u);
  EXPECT_EQ(s4.conjugacy_classes([](std::size_t) { return true; }), 11u);
  const SymmetricSubgroups s6(6);
  EXPECT_EQ(s6.count(), 1455u);
  EXPECT_EQ(s6.conjugacy_classes([](std::size_t) { return true; }), 56u);
  EXPECT_THROW(SymmetricSubgroups(7), PreconditionError);
}

TEST(SymmetricSubgroups, LagrangeAndOrbitStabilizer) {
  for (int n : {4, 5, 6}) {
    const SymmetricSubgroups lattice(n);
    std::set<std::vector<Perm>> distinct;
    for (std::size_t k = 0; k < lattice.count(); ++k) {
      const PermGroup g = lattice.group(k);
      EXPECT_EQ(g.order(), lattice.order(k));
      EXPECT_EQ(factorial(n) % g.order(), 0u);
      if (g.is_transitive()) {
        EXPECT_EQ(g.order() % static_cast<std::size_t>(n), 0u);
      }
      // Closed under products.
      const std::set<Perm> elems(g.elements().begin(), g.elements().end());
      for (const auto& a : g.generators())
        for (const auto& b : g.elements()) ASSERT_TRUE(elems.count(a * b));
      std::vector<Perm> sorted(elems.begin(), elems.end());
      EXPECT_TRUE(distinct.insert(sorted).second);
    }
  }
}

TEST(VerifyTransitive2q, SmallCases) {
  const auto r2 = verify_transitive_2q(2);
  EXPECT_TRUE(r2.all_pass);
  EXPECT_EQ(r2.transitive_classes, 5u);
  const auto r3 = verify_transitive_2q(3);
  EXPECT_TRUE(r3.all_pass);
  EXPECT_EQ(r3.transitive_classes, 16u);
  for (const auto& e : r3.transitive) EXPECT_EQ(cycle_type(*e.witness), (Partition{3, 3}));
  EXPECT_THROW(verify_transitive_2q(5), PreconditionError);
}

TEST(Chebotarev, Frequencies) {
  const auto qi = chebotarev_frequency(*NumberField::make({1, 0, 1}), 10000);
  EXPECT_NEAR(qi.frequency({1, 1}), 0.5, 0.03);
  EXPECT_NEAR(qi.frequency({2}), 0.5, 0.03);
  EXPECT_EQ(qi.skipped, 1u);

  const auto cyc = chebotarev_frequency(*NumberField::make({1, -2, -1, 1}), 10000);
  EXPECT_NEAR(cyc.frequency({1, 1, 1}), 1.0 / 3, 0.03);
  EXPECT_NEAR(cyc.frequency({3}), 2.0 / 3, 0.03);
  // Observed types are exactly those of the cyclic group of order 3.
  EXPECT_EQ(cyc.counts.size(), 2u);

  const auto s3 = chebotarev_frequency(*NumberField::make({-1, -1, 0, 1}), 10000, 3);
  EXPECT_NEAR(s3.frequency({1, 1, 1}), 1.0 / 6, 0.03);
  EXPECT_NEAR(s3.frequency({2, 1}), 0.5, 0.03);
  EXPECT_NEAR(s3.frequency({3}), 1.0 / 3, 0.03);
  std::uint64_t sum = 0;
  for (const auto& [part, n] : s3.counts) sum += n;
  EXPECT_EQ(sum, s3.certified);
}
