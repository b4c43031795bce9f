#include <gtest/gtest.h>

#include "ordinarium/density.hpp"

using namespace ordinarium;

namespace {
DensityReport report(std::uint64_t hits, std::uint64_t total) {
  DensityReport r;
  r.hits = hits;
  r.total = total;
  return r;
}
}  // namespace

TEST(Compare, Examples) {
  EXPECT_EQ(compare(report(270, 1000), {0.25, Relation::approx}).outcome, Outcome::pass);
  EXPECT_EQ(compare(report(440, 1000), {0.5, Relation::at_least}).outcome, Outcome::fail);
  EXPECT_EQ(compare(report(2, 1000), {0.0, Relation::positive}).outcome, Outcome::pass);
  EXPECT_EQ(compare(report(0, 1000), {0.0, Relation::positive}).outcome, Outcome::fail);
  EXPECT_EQ(compare(report(100, 199), {0.5, Relation::approx}).outcome, Outcome::insufficient);
}

TEST(Compare, ToleranceEdges) {
  EXPECT_EQ(compare(report(470, 1000), {0.5, Relation::at_least}).outcome, Outcome::pass);
  EXPECT_EQ(compare(report(469, 1000), {0.5, Relation::at_least}).outcome, Outcome::fail);
  EXPECT_EQ(compare(report(549, 1000), {0.5, Relation::approx}).outcome, Outcome::pass);
  EXPECT_EQ(compare(report(551, 1000), {0.5, Relation::approx}).outcome, Outcome::fail);
  EXPECT_GT(compare(report(500, 1000), {0.5, Relation::approx}).slack, 0.049);
}

TEST(DensityReport, EmptyAndMerge) {
  EXPECT_FALSE(DensityReport().fraction());
  auto a = report(3, 10);
  a.x = 100;
  auto b = report(7, 30);
  b.x = 500;
  const auto m = a.merged(b);
  EXPECT_EQ(m.hits, 10u);
  EXPECT_EQ(m.total, 40u);
  EXPECT_EQ(m.x, 500u);
  EXPECT_DOUBLE_EQ(*m.fraction(), 0.25);
}

TEST(PrimeCounting, Sanity) {
  const auto s = prime_counting_sanity(10000);
  EXPECT_EQ(s.pi, 1229u);
  EXPECT_NEAR(s.ratio, 1.132, 0.001);
  EXPECT_TRUE(s.in_range);
  EXPECT_EQ(prime_counting_sanity(1000).pi, 168u);
  EXPECT_THROW(prime_counting_sanity(10), PreconditionError);
}
