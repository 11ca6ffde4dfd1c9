#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mlat;
using fixtures::rv;

TEST(Linalg, IdentityTimesMatrix) {
  IntMatrix M = fixtures::hex_M1();
  EXPECT_EQ(IntMatrix::identity(3) * M, M);
  EXPECT_EQ(M * IntMatrix::identity(3), M);
}

TEST(Linalg, HexagonalGeneratorSquared) {
  IntMatrix M = fixtures::hex_M1();
  EXPECT_EQ(M * M, (IntMatrix{{0, -1, 0}, {1, -1, 0}, {0, 0, 1}}));
  EXPECT_EQ(M * M * M, (IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
}

TEST(Linalg, OneByOneProduct) {
  EXPECT_EQ(IntMatrix{{2}} * IntMatrix{{3}}, IntMatrix{{6}});
}

TEST(Linalg, ProductDimensionMismatch) {
  IntMatrix a(2, 3), b(2, 3);
  try {
    (void)(a * b);
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Linalg, Determinants) {
  EXPECT_EQ(det(IntMatrix::identity(4)), 1);
  EXPECT_EQ(det(fixtures::hex_V()), 1);
  EXPECT_EQ(det(IntMatrix{{2, 0}, {0, 3}}), 6);
  EXPECT_EQ(det(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(det(IntMatrix{{0, 0, 1}, {0, 2, 0}, {3, 0, 0}}), -6);
}

TEST(Linalg, UnimodularInverse) {
  EXPECT_EQ(unimodular_inverse(IntMatrix::identity(3)), IntMatrix::identity(3));
  IntMatrix Vi = unimodular_inverse(fixtures::hex_V());
  EXPECT_EQ(Vi, (IntMatrix{{1, -1, -2}, {0, 1, 2}, {0, 1, 3}}));
  EXPECT_EQ(fixtures::hex_V() * Vi, IntMatrix::identity(3));
}

TEST(Linalg, InverseRejectsNonUnimodular) {
  try {
    unimodular_inverse(IntMatrix{{2, 0}, {0, 1}});
    FAIL() << "expected NotUnimodular";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnimodular);
  }
}

TEST(Linalg, RationalsStayReduced) {
  Rat x = Rat(4) / Rat(-6);
  EXPECT_EQ(x.str(), "-2/3");
  EXPECT_EQ(boost::multiprecision::denominator(x), 3);
}

TEST(Linalg, FloorAndFrac) {
  EXPECT_EQ(floor(Rat(-1, 3)), -1);
  EXPECT_EQ(floor(Rat(7, 2)), 3);
  EXPECT_EQ(frac(Rat(-1, 3)), Rat(2, 3));
  EXPECT_EQ(floor_div(Int(-7), Int(2)), -4);
  EXPECT_EQ(floor_div(Int(7), Int(-2)), -4);
}

TEST(Linalg, RatReduce) {
  EXPECT_EQ(rat_reduce(rv({"-1/3", "1/3", "1/2"})), rv({"2/3", "1/3", "1/2"}));
  EXPECT_EQ(rat_reduce(rv({"3", "-2", "0"})), rv({"0", "0", "0"}));
  EXPECT_EQ(rat_reduce(rv({"5/6"})), rv({"5/6"}));
  for (const Rat& x : rat_reduce(rv({"-7/5", "11/4", "-1"}))) {
    EXPECT_GE(x, 0);
    EXPECT_LT(x, 1);
  }
}

TEST(Linalg, Transpose) {
  IntMatrix a{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(transpose(a), (IntMatrix{{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(transpose(transpose(a)), a);
}

TEST(Linalg, BigIntegersDoNotOverflow) {
  IntMatrix a{{Int(1) << 70, 1}, {0, 1}};
  IntMatrix sq = a * a;
  EXPECT_EQ(sq(0, 0), Int(1) << 140);
}

TEST(Linalg, IntegralChecks) {
  EXPECT_TRUE(is_integral(to_rat(IntMatrix{{1, -2}})));
  RatMatrix r(1, 1);
  r(0, 0) = Rat(1, 2);
  EXPECT_FALSE(is_integral(r));
}
