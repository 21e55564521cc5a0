#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "apexforge/error.hpp"
#include "apexforge/regseq.hpp"
#include "oracles.hpp"

using namespace apexforge;
using geometry::PointSet;
using gf::Element;
using gf::Field;
using poly::HomogPoly;

namespace {

HomogPoly mono(const Field& F, std::vector<unsigned> e, std::uint32_t c = 1) {
  return HomogPoly::monomial(F, e, Element{c});
}

PointSet points(const Field& F, std::size_t N, const std::vector<std::vector<std::uint32_t>>& coords) {
  PointSet X;
  X.ambient_dim = N;
  X.field = F;
  for (const auto& c : coords) {
    std::vector<Element> v;
    for (auto x : c) v.push_back({x});
    X.points.push_back(geometry::canonicalize(v, F));
  }
  return X;
}

std::vector<std::uint32_t> veronese_row(const geometry::ProjPoint& pt, unsigned m, const Field& F) {
  std::vector<std::uint32_t> row;
  for (auto c : poly::monomial_values(F, pt.coords(), m)) row.push_back(c.value);
  return row;
}

std::size_t hilbert_naive(const PointSet& X, const std::vector<std::size_t>& subset, unsigned m) {
  std::vector<std::vector<std::uint32_t>> rows;
  for (auto i : subset) rows.push_back(veronese_row(X.points[i], m, X.field));
  return oracle::rank_mod_p(rows, X.field.characteristic());
}

// (1, t, ..., t^m) on the rational normal curve in P^m.
PointSet normal_curve(const Field& F, unsigned m, std::size_t count) {
  std::vector<std::vector<std::uint32_t>> coords;
  for (std::uint32_t t = 0; t < count; ++t) {
    std::vector<std::uint32_t> c;
    std::uint64_t pw = 1;
    for (unsigned i = 0; i <= m; ++i, pw = pw * t % F.characteristic()) c.push_back(static_cast<std::uint32_t>(pw));
    coords.push_back(c);
  }
  return points(F, m, coords);
}

std::vector<HomogPoly> random_forms(const Field& F, std::size_t N, std::size_t r, unsigned max_deg,
                                    std::mt19937_64& g, Rng& rng) {
  std::vector<HomogPoly> f;
  for (std::size_t j = 0; j < r; ++j) f.push_back(poly::sample_uniform(F, N + 1, 1 + g() % max_deg, rng));
  return f;
}

}  // namespace

TEST(HilbertPoints, Examples) {
  const auto F = Field::prime(7);
  const auto one = points(F, 2, {{1, 2, 3}});
  for (unsigned m = 0; m <= 3; ++m) EXPECT_EQ(regseq::hilbert_function_points(one, m), 1u);
  const auto basis = points(F, 3, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  EXPECT_EQ(regseq::hilbert_function_points(basis, 1), 4u);
  const auto line = points(F, 2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  EXPECT_EQ(regseq::hilbert_function_points(line, 1), 2u);
  EXPECT_EQ(regseq::hilbert_function_points(line, 2), 3u);
}

TEST(HilbertPoints, MatchesVeroneseRankAndIsMonotone) {
  const auto F = Field::prime(5);
  const auto all = geometry::enumerate_projective(2, F);
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet X;
    X.ambient_dim = 2;
    X.field = F;
    std::set<std::size_t> pick;
    const std::size_t n = 1 + g() % 8;
    while (pick.size() < n) pick.insert(g() % all.size());
    for (auto i : pick) X.points.push_back(all.points[i]);
    std::vector<std::size_t> idx(X.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t prev = 0;
    for (unsigned m = 0; m <= 4; ++m) {
      const auto h = regseq::hilbert_function_points(X, m);
      EXPECT_EQ(h, hilbert_naive(X, idx, m));
      EXPECT_GE(h, prev);
      EXPECT_LE(h, X.size());
      prev = h;
    }
    // Points impose independent conditions in degree >= |X| - 1.
    EXPECT_EQ(regseq::hilbert_function_points(X, static_cast<unsigned>(X.size() - 1)), X.size());
  }
}

TEST(Independence, Examples) {
  const auto F = Field::prime(7);
  for (unsigned m = 1; m <= 3; ++m) {
    const auto C = normal_curve(F, m, m + 1);
    EXPECT_TRUE(regseq::is_swise_independent(C, m + 1, m).verdict);
  }
  const auto line = points(F, 2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  const auto rep = regseq::is_swise_independent(line, 3, 1);
  EXPECT_FALSE(rep.verdict);
  EXPECT_EQ(rep.witness, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(regseq::is_swise_independent(line, 1, 1).verdict);
}

TEST(Independence, MatchesSubsetEnumeration) {
  const auto F = Field::prime(3);
  const auto all = geometry::enumerate_projective(2, F);
  std::mt19937_64 g(77);
  for (int trial = 0; trial < 60; ++trial) {
    PointSet X;
    X.ambient_dim = 2;
    X.field = F;
    std::set<std::size_t> pick;
    const std::size_t n = 2 + g() % 6;
    while (pick.size() < n) pick.insert(g() % all.size());
    for (auto i : pick) X.points.push_back(all.points[i]);
    const std::size_t s = 1 + g() % std::min<std::size_t>(n, 4);
    const unsigned m = 1 + g() % 2;
    // Lexicographically least offending s-subset, by enumeration.
    std::vector<std::size_t> expect;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + s, true);
    do {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask[i]) sub.push_back(i);
      if (hilbert_naive(X, sub, m) < s && (expect.empty() || sub < expect)) expect = sub;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    const auto rep = regseq::is_swise_independent(X, s, m);
    EXPECT_EQ(rep.verdict, expect.empty());
    if (!rep.verdict) EXPECT_EQ(rep.witness, expect);
  }
}

TEST(MinimallyDependent, Examples) {
  const auto F = Field::prime(7);
  EXPECT_TRUE(regseq::minimally_dependent(points(F, 2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), 1));
  EXPECT_FALSE(regseq::minimally_dependent(points(F, 2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}}), 1));
  // Four points on the conic (1, t, t^2): linearly dependent, any three independent.
  EXPECT_TRUE(regseq::minimally_dependent(normal_curve(F, 2, 4), 1));
}

TEST(CiHilbert, Examples) {
  const std::vector<unsigned> two_two{2, 2};
  const std::vector<std::int64_t> expect{1, 3, 4, 4, 4, 4, 4};
  for (unsigned l = 0; l <= 6; ++l) EXPECT_EQ(regseq::ci_hilbert_coeff(2, two_two, l), expect[l]);
  for (std::size_t N = 0; N <= 4; ++N)
    for (unsigned l = 0; l <= 5; ++l)
      EXPECT_EQ(regseq::ci_hilbert_coeff(N, std::vector<unsigned>{}, l),
                static_cast<std::int64_t>(binomial(N + l, l)));
  for (unsigned l = 1; l <= 5; ++l) EXPECT_EQ(regseq::ci_hilbert_coeff(1, std::vector<unsigned>{1, 1}, l), 0);
}

TEST(CiHilbert, MatchesSeriesExpansion) {
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t N = g() % 5;
    std::vector<unsigned> deg(g() % 4);
    for (auto& m : deg) m = 1 + g() % 3;
    const auto series = oracle::ci_series_naive(N, deg, 12);
    for (unsigned l = 0; l <= 12; ++l) EXPECT_EQ(regseq::ci_hilbert_coeff(N, deg, l), series[l]);
  }
}

TEST(HilbertQuotient, Examples) {
  const auto F = Field::prime(5);
  EXPECT_EQ(regseq::hilbert_function_quotient(3, std::vector<HomogPoly>{mono(F, {1, 0, 0})}, 2), 3);
  const std::vector<HomogPoly> bad{mono(F, {2, 0, 0}), mono(F, {1, 1, 0})};
  EXPECT_EQ(regseq::hilbert_function_quotient(3, bad, 3), 5);
  EXPECT_EQ(regseq::hilbert_function_quotient(3, std::vector<HomogPoly>{}, 4), 15);
}

TEST(HilbertQuotient, MatchesNaiveSpan) {
  std::mt19937_64 g(8);
  for (const auto& F : {Field::prime(3), Field::prime(5)}) {
    Rng rng(8, F.order());
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t N = 1 + g() % 3;
      const auto f = random_forms(F, N, 1 + g() % 3, 3, g, rng);
      for (unsigned l = 0; l <= 6; ++l)
        EXPECT_EQ(regseq::hilbert_function_quotient(N + 1, f, l), oracle::quotient_dim_naive(N + 1, f, l));
    }
  }
}

TEST(Regularity, KnownCases) {
  const auto F = Field::prime(5);
  for (std::size_t N = 1; N <= 4; ++N)
    for (std::size_t r = 0; r <= N; ++r) {
      std::vector<HomogPoly> xs;
      for (std::size_t i = 0; i <= r; ++i) xs.push_back(HomogPoly::variable(F, N + 1, i));
      EXPECT_TRUE(regseq::is_regular_hilbert(N + 1, xs).verdict);
      EXPECT_TRUE(regseq::is_regular_koszul(N + 1, xs).verdict);
    }

  const std::vector<HomogPoly> bad{mono(F, {2, 0, 0}), mono(F, {1, 1, 0})};
  const auto h = regseq::is_regular_hilbert(3, bad);
  EXPECT_FALSE(h.verdict);
  EXPECT_EQ(h.witness_degree, 3u);
  const auto k = regseq::is_regular_koszul(3, bad);
  EXPECT_FALSE(k.verdict);
  EXPECT_EQ(k.witness_degree, 3u);
  ASSERT_TRUE(k.syzygy.has_value());
  ASSERT_EQ(k.syzygy->size(), 2u);
  // The syzygy is a nonzero multiple of (x1, -x0).
  const auto& a = (*k.syzygy)[0];
  const auto& b = (*k.syzygy)[1];
  ASSERT_FALSE(a.is_zero());
  const Element c = a.coeff(a.basis().index(std::vector<unsigned>{0, 1, 0}));
  EXPECT_EQ(a, mono(F, {0, 1, 0}).scaled(c));
  EXPECT_EQ(b, mono(F, {1, 0, 0}).scaled(F.neg(c)));
  EXPECT_TRUE(regseq::revalidate_witness(3, bad, k));

  const std::vector<HomogPoly> twice{mono(F, {1, 0, 0}), mono(F, {1, 0, 0})};
  EXPECT_FALSE(regseq::is_regular_hilbert(3, twice).verdict);
  EXPECT_FALSE(regseq::is_regular_koszul(3, twice).verdict);

  // N + 2 forms in N + 1 variables are never regular.
  std::vector<HomogPoly> too_many;
  for (std::size_t i = 0; i < 3; ++i) too_many.push_back(HomogPoly::variable(F, 3, i));
  too_many.push_back(mono(F, {1, 1, 0}));
  EXPECT_FALSE(regseq::is_regular_hilbert(3, too_many).verdict);
  EXPECT_FALSE(regseq::is_regular_koszul(3, too_many).verdict);

  const std::vector<HomogPoly> with_zero{mono(F, {1, 0, 0}), HomogPoly(F, 3, 2)};
  const auto z = regseq::is_regular_hilbert(3, with_zero);
  EXPECT_FALSE(z.verdict);
  EXPECT_EQ(z.witness_degree, 2u);
}

TEST(Regularity, KoszulStrandForSingleForm) {
  const auto F = Field::prime(7);
  Rng rng(4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = poly::sample_uniform(F, 3, 2, rng);
    if (f.is_zero()) continue;
    for (unsigned l = 0; l <= 5; ++l) EXPECT_TRUE(regseq::koszul_graded_check(3, std::vector<HomogPoly>{f}, l).exact);
  }
}

TEST(Regularity, HilbertAndKoszulAgree) {
  std::mt19937_64 g(2024);
  for (const auto& F : {Field::prime(3), Field::prime(5)}) {
    Rng rng(2024, F.order());
    int regular = 0, nonregular = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t N = 1 + g() % 3;
      const std::size_t r = 1 + g() % std::min<std::size_t>(3, N + 1);
      const auto f = random_forms(F, N, r, 2, g, rng);
      const auto h = regseq::is_regular_hilbert(N + 1, f);
      const auto k = regseq::is_regular_koszul(N + 1, f);
      ASSERT_EQ(h.verdict, k.verdict) << "N=" << N << " r=" << r;
      EXPECT_EQ(h.cutoff, regseq::default_cutoff(N, h.degrees));
      if (k.verdict) {
        ++regular;
      } else {
        ++nonregular;
        EXPECT_TRUE(regseq::revalidate_witness(N + 1, f, k));
      }
    }
    EXPECT_GT(regular, 0);
    EXPECT_GT(nonregular, 0);
  }
}

TEST(Regularity, RegularMeansCompleteIntersectionSeries) {
  const auto F = Field::prime(5);
  Rng rng(6, 6);
  std::mt19937_64 g(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t N = 2 + g() % 2;
    const auto f = random_forms(F, N, 2, 2, g, rng);
    const auto c = regseq::is_regular_hilbert(N + 1, f);
    std::vector<unsigned> deg;
    for (const auto& fi : f) deg.push_back(fi.degree());
    bool same = true;
    for (unsigned l = 0; l <= c.cutoff; ++l)
      same &= regseq::hilbert_function_quotient(N + 1, f, l) == regseq::ci_hilbert_coeff(N, deg, l);
    EXPECT_EQ(c.verdict, same);
  }
}

TEST(NonregularDimBound, Examples) {
  EXPECT_EQ(regseq::nonregular_dim_bound(2, 2, std::vector<unsigned>{1}), BigInt(0));
  EXPECT_EQ(regseq::nonregular_dim_bound(3, 3, std::vector<unsigned>{1, 1}), BigInt(5));
}

TEST(PsiUpper, Examples) {
  using K = regseq::PsiBound::Kind;
  EXPECT_EQ(regseq::psi_upper(15, 4, 3).kind, K::empty);
  const auto b = regseq::psi_upper(10, 5, 3);
  EXPECT_EQ(b.kind, K::bound);
  EXPECT_EQ(b.value, BigRational(164, 7));
  EXPECT_EQ(regseq::psi_upper(10, 3, 3).kind, K::empty);
}

TEST(RegularityJson, CarriesVerdictAndMethod) {
  const auto F = Field::prime(5);
  const std::vector<HomogPoly> bad{mono(F, {2, 0, 0}), mono(F, {1, 1, 0})};
  const auto j = regseq::to_json(regseq::is_regular_koszul(3, bad));
  EXPECT_EQ(j.at("verdict"), false);
  EXPECT_EQ(j.at("method"), "koszul");
  EXPECT_EQ(j.at("witness_degree"), 3);
}
