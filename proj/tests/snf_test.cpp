#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mlat;

namespace {

bool divisibility_chain(const SnfDecomposition& s) {
  for (std::size_t i = 0; i + 1 < s.rank; ++i)
    if (s.D(i + 1, i + 1) % s.D(i, i) != 0)
      return false;
  return true;
}

bool diagonal_only(const IntMatrix& D) {
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (i != j && D(i, j) != 0)
        return false;
  return true;
}

void expect_valid(const IntMatrix& L, const SnfDecomposition& s) {
  EXPECT_EQ(s.U * s.D * s.V, L);
  EXPECT_TRUE(is_unimodular(s.U));
  EXPECT_TRUE(is_unimodular(s.V));
  EXPECT_EQ(s.V * s.V_inv, IntMatrix::identity(L.cols()));
  EXPECT_TRUE(diagonal_only(s.D));
  EXPECT_TRUE(divisibility_chain(s));
  for (std::size_t i = 0; i < s.rank; ++i)
    EXPECT_GT(s.D(i, i), 0);
  for (std::size_t i = s.rank; i < std::min(L.rows(), L.cols()); ++i)
    EXPECT_EQ(s.D(i, i), 0);
}

} // namespace

TEST(Snf, HexagonalMasterMatrix) {
  IntMatrix L = fixtures::hex_L();
  SnfDecomposition s = smith_decompose(L);
  expect_valid(L, s);
  EXPECT_EQ(s.rank, 3u);
  IntMatrix D(6, 3);
  D(0, 0) = 1;
  D(1, 1) = 1;
  D(2, 2) = 6;
  EXPECT_EQ(s.D, D);
}

TEST(Snf, ReferenceDecompositionReconstructs) {
  IntMatrix D(6, 3);
  D(0, 0) = 1;
  D(1, 1) = 1;
  D(2, 2) = 6;
  EXPECT_EQ(fixtures::hex_U() * D * fixtures::hex_V(), fixtures::hex_L());
  EXPECT_TRUE(is_unimodular(fixtures::hex_U()));
}

TEST(Snf, Identity) {
  SnfDecomposition s = smith_decompose(IntMatrix::identity(4));
  EXPECT_EQ(s.D, IntMatrix::identity(4));
  EXPECT_EQ(s.rank, 4u);
  expect_valid(IntMatrix::identity(4), s);
}

TEST(Snf, ZeroMatrix) {
  IntMatrix Z(3, 2);
  SnfDecomposition s = smith_decompose(Z);
  EXPECT_EQ(s.rank, 0u);
  EXPECT_TRUE(s.D.is_zero());
  expect_valid(Z, s);
  EXPECT_TRUE(elementary_divisors_oracle(Z).empty());
}

TEST(Snf, DiagonalNeedsChainFix) {
  IntMatrix L{{4, 0}, {0, 6}};
  SnfDecomposition s = smith_decompose(L);
  expect_valid(L, s);
  EXPECT_EQ(s.invariant_factors(), (IntVector{2, 12}));
  EXPECT_EQ(elementary_divisors_oracle(L), (IntVector{2, 12}));
}

TEST(Snf, InvariantFactorsOfHexagonal) {
  EXPECT_EQ(smith_decompose(fixtures::hex_L()).invariant_factors(), (IntVector{1, 1, 6}));
  EXPECT_EQ(elementary_divisors_oracle(fixtures::hex_L()), (IntVector{1, 1, 6}));
}

TEST(Snf, NegativeOneByOne) {
  IntMatrix L{{-5}};
  SnfDecomposition s = smith_decompose(L);
  expect_valid(L, s);
  EXPECT_EQ(s.D(0, 0), 5);
}

TEST(Snf, PivotStrategiesAgreeOnD) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> e(-10, 10), dim(1, 6);
  for (int t = 0; t < 200; ++t) {
    IntMatrix L(dim(rng), dim(rng));
    for (std::size_t i = 0; i < L.rows(); ++i)
      for (std::size_t j = 0; j < L.cols(); ++j)
        L(i, j) = e(rng);
    SnfDecomposition a = smith_decompose(L, PivotStrategy::MinAbs);
    SnfDecomposition b = smith_decompose(L, PivotStrategy::FirstNonzero);
    expect_valid(L, a);
    expect_valid(L, b);
    EXPECT_EQ(a.D, b.D);
  }
}

TEST(Snf, RandomFourByFourMatchesOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(-10, 10);
  for (int t = 0; t < 100; ++t) {
    IntMatrix L(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        L(i, j) = e(rng);
    EXPECT_EQ(smith_decompose(L).invariant_factors(), elementary_divisors_oracle(L));
  }
}

TEST(Snf, OracleRefusesLargeInput) {
  try {
    elementary_divisors_oracle(IntMatrix(9, 9));
    FAIL() << "expected SizeLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimit);
  }
}

TEST(Snf, KernelBasis) {
  EXPECT_TRUE(kernel_mod_basis(IntMatrix::identity(2)).empty());
  auto k = kernel_mod_basis(IntMatrix{{1, -1}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(k[0] == (IntVector{1, 1}) || k[0] == (IntVector{-1, -1}));
}

TEST(Snf, KernelOfRankTwo) {
  IntMatrix L{{1, 2, 3, 4}, {2, 4, 7, 9}};
  auto k = kernel_mod_basis(L);
  ASSERT_EQ(k.size(), 2u);
  for (const IntVector& v : k)
    EXPECT_EQ(L * v, (IntVector{0, 0}));
  // the kernel is saturated: together with the first r columns of V^-1 it
  // forms a unimodular basis
  SnfDecomposition s = smith_decompose(L);
  EXPECT_TRUE(is_unimodular(s.V_inv));
}
