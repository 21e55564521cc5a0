#include <gtest/gtest.h>

#include <cmath>

#include "apexforge/error.hpp"
#include "apexforge/gf.hpp"
#include "apexforge/schedule.hpp"
#include "oracles.hpp"

using namespace apexforge;
using namespace apexforge::schedule;

TEST(D, Examples) {
  EXPECT_EQ(D(1, 5), 5u);
  for (std::uint64_t r = 1; r <= 6; ++r) EXPECT_EQ(D(r, 0), 0u);
  EXPECT_EQ(D(2, 3), 2u);
  EXPECT_EQ(D(2, 13), 4u);  // C(5,2) = 10 <= 13 < C(6,2) = 15
  EXPECT_EQ(D(1, 13), 13u);
}

TEST(D, MatchesLinearScan) {
  for (std::uint64_t r = 1; r <= 8; ++r)
    for (std::uint64_t t = 0; t <= 300; ++t) EXPECT_EQ(D(r, t), oracle::D_naive(r, t)) << r << "," << t;
  EXPECT_EQ(D(3, 1'000'000'000), oracle::D_naive(3, 1'000'000'000));
}

TEST(ProductBound, Examples) {
  const auto b = product_bound_check(2, 3);
  EXPECT_EQ(b.product, BigInt(6));
  EXPECT_TRUE(b.holds);
  // r = 1: D(1, t) = t against t^{1 + log 1} 1! = t, equality.
  const auto one = product_bound_check(1, 17);
  EXPECT_EQ(one.product, BigInt(17));
  EXPECT_EQ(one.bound, BigInt(17));
  EXPECT_TRUE(one.holds);
}

TEST(ProductBound, HoldsOnDeskRange) {
  for (std::uint64_t r = 1; r <= 8; ++r)
    for (std::uint64_t t = 1; t <= 200; ++t) {
      const auto b = product_bound_check(r, t);
      EXPECT_TRUE(b.holds) << "r=" << r << " t=" << t;
      BigInt prod = 1;
      for (std::uint64_t i = 1; i <= r; ++i) prod *= oracle::D_naive(i, t);
      EXPECT_EQ(b.product, prod);
    }
}

TEST(ProductBound, NaturalLogBoundIsSmaller) {
  const auto two = product_bound_check(5, 50, LogBase::two);
  const auto e = product_bound_check(5, 50, LogBase::natural);
  EXPECT_LT(e.bound, two.bound);
  EXPECT_EQ(e.product, two.product);
}

TEST(TuranSchedule, DeskPattern) {
  const auto s = turan_schedule(2, {2}, {{1}, {2}});
  EXPECT_EQ(s.S, 2u);
  EXPECT_EQ(s.beta_cubed, 7u);
  EXPECT_EQ(s.s, 2u);
  EXPECT_EQ(s.t, 4u);
  EXPECT_EQ(s.r, 9u);
  EXPECT_EQ(s.l, 12u);
  EXPECT_EQ(s.N, 15u);
  EXPECT_EQ(s.m, (std::vector<std::uint64_t>{2, 3, 4, 12}));
  EXPECT_TRUE(turan_binomial_chain_holds(s));
  EXPECT_EQ(big_binomial(s.t + 4, 3), BigInt(56));
  const auto rep = lem12_precondition_check(s.N, 3, s.r, s.t, s.l, s.s);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.conditions.size(), 3u);
  // beta^3 = 7 bracketed within 1e-30.
  EXPECT_LT(s.beta.lo * s.beta.lo * s.beta.lo, BigRational(7));
  EXPECT_GT(s.beta.hi * s.beta.hi * s.beta.hi, BigRational(7));
  EXPECT_LE(s.beta.hi - s.beta.lo, BigRational(1, BigInt("1000000000000000000000000000000")));
}

TEST(TuranSchedule, Invariants) {
  for (unsigned d = 2; d <= 4; ++d)
    for (std::uint64_t s1 = 1; s1 <= 3; ++s1) {
      std::vector<std::uint64_t> parts(d - 1, s1);
      std::vector<std::vector<std::uint64_t>> edges;
      for (std::uint64_t v = 1; v <= s1; ++v) edges.push_back(std::vector<std::uint64_t>(d - 1, v));
      const auto s = turan_schedule(d, parts, edges);
      EXPECT_EQ(s.beta_cubed, d * d + 4 * d - 5);
      EXPECT_EQ(s.N, s.S + s.r + s.t);
      EXPECT_EQ(s.m.size(), s.t);
      for (std::uint64_t j = 0; j < s.t; ++j) EXPECT_EQ(s.m[j], D(s.t - j, s.l));
      BigInt prod = 1;
      for (auto mj : s.m) prod *= mj;
      EXPECT_LE(prod, product_bound_check(s.t, s.l).bound);
      EXPECT_GT(s.s_d_threshold, BigInt(0));
    }
}

TEST(TuranSchedule, RejectsBadPatterns) {
  EXPECT_THROW(turan_schedule(2, {2}, {}), InvalidInput);
  EXPECT_THROW(turan_schedule(1, {}, {{}}), InvalidInput);
  EXPECT_THROW(turan_schedule(2, {2}, {{3}}), InvalidInput);
  EXPECT_THROW(turan_schedule(3, {2, 2}, {{1}}), InvalidInput);
}

TEST(IndependentIntersectionPreconditions, Boundaries) {
  const auto s = turan_schedule(2, {2}, {{1}, {2}});
  EXPECT_FALSE(lem12_precondition_check(s.N, 2, s.r, s.t, s.l, s.s).holds);
  const auto l_edge = static_cast<std::uint64_t>(big_binomial(s.t + 1 + 3, 3));
  EXPECT_FALSE(lem12_precondition_check(s.N, 3, s.r, s.t, l_edge, s.s).holds);
  EXPECT_TRUE(lem12_precondition_check(s.N, 3, s.r, s.t, l_edge - 1, s.s).holds);
}

TEST(ZarankiewiczSchedule, Examples) {
  const auto z = zarankiewicz_schedule(4, 3);
  EXPECT_EQ(z.r, 2u);
  EXPECT_EQ(z.t, 2u);
  EXPECT_TRUE(z.feasibility.holds);
  for (std::uint64_t S = 1; S <= 20; ++S)
    for (std::uint64_t m = 1; m <= 5; ++m) {
      const auto zz = zarankiewicz_schedule(S, m);
      EXPECT_GE(zz.r * zz.r, S);
      EXPECT_LT((zz.r - 1) * (zz.r - 1), S);
      const BigInt avail = big_binomial(zz.r + m + 1, m) - 1;
      EXPECT_LE(2 * BigInt(S) * zz.t, avail);
      EXPECT_GT(2 * BigInt(S) * (zz.t + 1), avail);
    }
}

TEST(ZarankiewiczFeasibility, Examples) {
  const auto ok = lem14_feasible({2, 1, 469}, 3, 2, 3, 2);
  EXPECT_EQ(ok.threshold, BigInt(9) * 4 * 13);
  EXPECT_TRUE(ok.report.holds);
  EXPECT_FALSE(lem14_feasible({2, 1, 468}, 3, 2, 3, 2).report.holds);
  EXPECT_FALSE(lem14_feasible({2, 1, 10'000}, 1'000, 2, 3, 2).report.holds);
}

TEST(ZarankiewiczDegrees, MatchesFormula) {
  // log_7(3^1 * 3^1) = log_7 9, floor 1.
  EXPECT_EQ(zarankiewicz_degrees(2, 7, {3, 3}, {1, 1}), (std::vector<std::uint64_t>{D(2, 2), D(1, 2)}));
  for (std::uint64_t p : {2u, 3u, 5u, 7u})
    for (std::uint64_t n = 2; n <= 30; n += 7) {
      const auto deg = zarankiewicz_degrees(3, p, {n, n}, {2, 1});
      std::uint64_t k = 0, pw = p;
      while (pw <= n * n * n) ++k, pw *= p;
      ASSERT_EQ(deg.size(), 3u);
      for (std::uint64_t j = 0; j < 3; ++j) EXPECT_EQ(deg[j], D(3 - j, k + 1));
    }
}

TEST(SelectPrime, Examples) {
  EXPECT_EQ(select_prime(1'000'000, 10, 2), 313u);
  EXPECT_EQ(select_prime(5, 1, 2), 2u);
  EXPECT_THROW(select_prime(3, 1, 2), InvalidInput);
  EXPECT_THROW(select_prime(10, 0, 2), InvalidInput);
}

TEST(SelectPrime, BertrandWindow) {
  for (std::uint64_t n = 1000; n <= 10'000'000; n = n * 3 + 7)
    for (std::uint64_t C = 1; C <= 20; ++C)
      for (unsigned S = 1; S <= 4; ++S) {
        const auto p = select_prime(n, C, S);
        EXPECT_TRUE(gf::is_prime(p));
        BigInt lo = C, hi = C;
        for (unsigned i = 0; i < S; ++i) lo *= p, hi *= 2 * p;
        EXPECT_LE(lo, BigInt(n));
        EXPECT_LE(BigInt(n), hi);
      }
}

TEST(ScheduleJson, Fields) {
  const auto j = to_json(turan_schedule(2, {2}, {{1}, {2}}));
  EXPECT_EQ(j.at("t"), 4);
  EXPECT_EQ(j.at("N"), 15);
  EXPECT_EQ(j.at("beta").at("cube"), 7);
  EXPECT_EQ(j.at("beta").at("lo").get<std::string>().substr(0, 6), "1.9129");
  EXPECT_EQ(log_base_from_string(to_string(LogBase::natural)), LogBase::natural);
  EXPECT_THROW(log_base_from_string("10"), InvalidInput);
}
