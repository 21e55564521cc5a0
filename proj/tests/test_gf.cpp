#include <gtest/gtest.h>

#include <random>
#include <tuple>

#include "apexforge/error.hpp"
#include "apexforge/gf.hpp"
#include "oracles.hpp"

using apexforge::InvalidInput;
using apexforge::gf::Element;
using apexforge::gf::Field;

TEST(GfPrime, SmallProducts) {
  const auto F = Field::prime(7);
  EXPECT_EQ(F.mul({3}, {5}).value, 1u);
  for (std::uint32_t a = 0; a < 7; ++a) EXPECT_EQ(F.mul({a}, F.one()).value, a);
}

TEST(GfPrime, Inverses) {
  const auto F = Field::prime(7);
  EXPECT_EQ(F.inv({3}).value, 5u);
  EXPECT_EQ(F.inv({1}).value, 1u);
  EXPECT_THROW(F.inv({0}), InvalidInput);
  EXPECT_EQ(apexforge::gf::inv_mod(3, 7), 5u);
}

TEST(GfExtension, Gf4Reduction) {
  const Field F(2, 2, {1, 1, 1});
  // x is encoded as 2, x + 1 as 3.
  EXPECT_EQ(F.mul({2}, {2}).value, 3u);
}

TEST(GfExtension, Gf9InverseExhaustive) {
  const auto F = Field::extension(3, 2);
  for (std::uint32_t a = 1; a < 9; ++a) EXPECT_EQ(F.mul({a}, F.inv({a})).value, 1u) << a;
}

TEST(GfExtension, IrreducibleChoices) {
  EXPECT_EQ(apexforge::gf::find_irreducible(2, 2), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(apexforge::gf::find_irreducible(3, 2), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(apexforge::gf::find_irreducible(5, 1), (std::vector<std::uint32_t>{0, 1}));
}

TEST(GfExtension, IrreducibleAgreesWithRootCount) {
  // A monic quadratic or cubic is irreducible iff it has no root.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t c0 = 0; c0 < p; ++c0)
      for (std::uint32_t c1 = 0; c1 < p; ++c1)
        for (std::uint32_t c2 = 0; c2 < p; ++c2) {
          const std::vector<std::uint32_t> cubic{c0, c1, c2, 1};
          bool root = false;
          for (std::uint32_t x = 0; x < p; ++x)
            root |= (c0 + c1 * x + c2 * x * x + x * x * x) % p == 0;
          EXPECT_EQ(apexforge::gf::is_irreducible(cubic, p), !root);
        }
  }
}

TEST(GfPrimality, Examples) {
  EXPECT_TRUE(apexforge::gf::is_prime(313));
  EXPECT_FALSE(apexforge::gf::is_prime(1));
  EXPECT_FALSE(apexforge::gf::is_prime(49));
  EXPECT_TRUE(apexforge::gf::is_prime(2));
}

TEST(GfErrors, RejectsBadFields) {
  EXPECT_THROW(Field::prime(4), InvalidInput);
  EXPECT_THROW(Field(2, 2, {1, 0, 1}), InvalidInput);  // x^2 + 1 = (x+1)^2
  const auto F = Field::prime(5);
  EXPECT_THROW(apexforge::gf::mul({7}, {1}, F), InvalidInput);
  EXPECT_THROW(apexforge::gf::inv({0}, F), InvalidInput);
}

class GfAxioms : public ::testing::TestWithParam<std::tuple<std::uint32_t, unsigned>> {};

TEST_P(GfAxioms, FieldLawsAndNaiveProduct) {
  const auto [p, e] = GetParam();
  const auto F = Field::extension(p, e);
  std::mt19937_64 rng(p * 31 + e);
  const std::uint32_t q = F.order();
  for (int trial = 0; trial < 300; ++trial) {
    const Element a{static_cast<std::uint32_t>(rng() % q)};
    const Element b{static_cast<std::uint32_t>(rng() % q)};
    const Element c{static_cast<std::uint32_t>(rng() % q)};
    EXPECT_EQ(F.add(a, b), F.add(b, a));
    EXPECT_EQ(F.mul(a, b), F.mul(b, a));
    EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
    EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
    EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
    EXPECT_EQ(F.sub(a, b), F.add(a, F.neg(b)));
    if (a != F.zero()) EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
    if (e > 1) {
      const auto want = oracle::poly_mulmod(F.residues(a), F.residues(b), F.modulus(), p);
      EXPECT_EQ(F.residues(F.mul(a, b)), want);
    } else {
      EXPECT_EQ(F.mul(a, b).value, std::uint64_t{a.value} * b.value % p);
    }
  }
  // Frobenius a^q = a, and the multiplicative group has order q - 1.
  for (const auto a : F.elements()) {
    EXPECT_EQ(F.pow(a, q), a);
    if (a != F.zero()) EXPECT_EQ(F.pow(a, q - 1), F.one());
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, GfAxioms,
                         ::testing::Values(std::make_tuple(2u, 1u), std::make_tuple(7u, 1u),
                                           std::make_tuple(2u, 3u), std::make_tuple(3u, 2u),
                                           std::make_tuple(5u, 2u), std::make_tuple(2u, 4u)));
