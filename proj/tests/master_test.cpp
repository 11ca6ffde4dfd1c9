#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mlat;
using fixtures::rv;

namespace {

SnfDecomposition reference_decomposition() {
  IntMatrix D(6, 3);
  D(0, 0) = 1;
  D(1, 1) = 1;
  D(2, 2) = 6;
  IntMatrix V = fixtures::hex_V();
  return {fixtures::hex_U(), D, V, unimodular_inverse(V), 3};
}

RatVector hex_X(int i) { return {Rat(0), Rat(0), Rat(i, 6)}; }

} // namespace

TEST(Master, HexagonalSystem) {
  MasterSystem sys = build_system(fixtures::hexagonal());
  EXPECT_EQ(sys.rank(), 3u);
  EXPECT_EQ(sys.snf.invariant_factors(), (IntVector{1, 1, 6}));
  EXPECT_EQ(sys.snf.D.rows(), 6u);
}

TEST(Master, IdentitySystem) {
  MasterSystem sys = build_system(fixtures::identity_presentation(2, 2));
  EXPECT_TRUE(sys.L.is_zero());
  EXPECT_EQ(sys.rank(), 0u);
  auto fams = solve_master(sys);
  ASSERT_EQ(fams.size(), 1u);
  EXPECT_TRUE(fams[0].P0.is_zero());
  EXPECT_EQ(fams[0].free_dirs.size(), 4u);
  RatVector t = rv({"1/4", "1/3", "1/2", "3/5"});
  EXPECT_EQ(evaluate_family(fams[0], t), unflatten(t, 2, 2));
}

TEST(Master, InconsistentPermutationsRejected) {
  try {
    build_system(fixtures::swap_toy());
    FAIL() << "expected Homomorphism";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Homomorphism);
  }
}

TEST(Master, SwapSystem) {
  MasterSystem sys = fixtures::swap_system();
  EXPECT_EQ(sys.snf.D, IntMatrix{{2}});
  EXPECT_EQ(sys.rank(), 1u);
  auto fams = solve_master(sys);
  ASSERT_EQ(fams.size(), 2u);
  EXPECT_EQ(flatten(fams[0].P0), rv({"0"}));
  EXPECT_EQ(flatten(fams[1].P0), rv({"1/2"}));
}

TEST(Master, HexagonalFamilies) {
  MasterSystem sys = build_system(fixtures::hexagonal());
  auto fams = solve_master(sys);
  ASSERT_EQ(fams.size(), 6u);
  EXPECT_TRUE(fams[0].P0.is_zero());
  fams.erase(fams.begin());
  EXPECT_EQ(fixtures::p0_set(fams), fixtures::hex_P());
  for (const SolutionFamily& f : fams)
    EXPECT_TRUE(f.free_dirs.empty());
}

TEST(Master, ReferenceDecompositionLabels) {
  MasterSystem sys = build_system(fixtures::hexagonal(), reference_decomposition());
  auto fams = solve_master(sys);
  ASSERT_EQ(fams.size(), 6u);
  const RatVector want[] = {rv({"0", "0", "0"}),       rv({"2/3", "1/3", "1/2"}),
                            rv({"1/3", "2/3", "0"}),   rv({"0", "0", "1/2"}),
                            rv({"2/3", "1/3", "0"}),   rv({"1/3", "2/3", "1/2"})};
  for (int i = 0; i < 6; ++i)
    EXPECT_EQ(flatten(fams[i].P0), want[i]) << "family " << i;
}

TEST(Master, TranslationsInDiagonalBasis) {
  for (bool ref : {false, true}) {
    MasterSystem sys = ref ? build_system(fixtures::hexagonal(), reference_decomposition())
                             : build_system(fixtures::hexagonal());
    for (int i = 0; i <= 5; ++i) {
      Translations tr = compute_translations(sys, hex_X(i));
      EXPECT_EQ(tr.S, (IntVector{0, 0, i, 0, 0, 0}));
    }
  }
}

TEST(Master, ReferenceTranslationIsThirdColumnOfU) {
  MasterSystem sys = build_system(fixtures::hexagonal(), reference_decomposition());
  Translations tr = compute_translations(sys, hex_X(1));
  IntVector flat;
  for (const IntMatrix& T : tr.T)
    for (const Int& x : flatten(T))
      flat.push_back(x);
  EXPECT_EQ(flat, (IntVector{1, 0, -1, 1, 0, 0}));
}

TEST(Master, ZeroTranslations) {
  MasterSystem sys = build_system(fixtures::hexagonal());
  Translations tr = compute_translations(sys, RatVector(3, Rat(0)));
  EXPECT_EQ(tr.S, IntVector(6, Int(0)));
  for (const IntMatrix& T : tr.T)
    EXPECT_TRUE(T.is_zero());
}

TEST(Master, NonSolutionRejected) {
  MasterSystem sys = build_system(fixtures::hexagonal());
  try {
    compute_translations(sys, {Rat(0), Rat(0), Rat(1, 7)});
    FAIL() << "expected NotASolution";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASolution);
  }
}

// vec(T) at the reduced P0 equals U S plus L times the integer cell shift.
TEST(Master, ResidualMatchesUS) {
  for (bool ref : {false, true}) {
    MasterSystem sys = ref ? build_system(fixtures::hexagonal(), reference_decomposition())
                             : build_system(fixtures::hexagonal());
    for (const SolutionFamily& f : solve_master(sys)) {
      IntVector flat;
      for (const IntMatrix& T : f.T)
        for (const Int& x : flatten(T))
          flat.push_back(x);
      IntVector want = sys.snf.U * f.S;
      IntVector corr = sys.L * f.cell_shift;
      for (std::size_t i = 0; i < want.size(); ++i)
        want[i] += corr[i];
      EXPECT_EQ(flat, want);
    }
  }
}

TEST(Master, ResidualCheck) {
  GroupPresentation p = fixtures::hexagonal();
  RatMatrix P1 = unflatten(rv({"2/3", "1/3", "1/2"}), 3, 1);
  auto T = residual_check(p, P1);
  ASSERT_EQ(T.size(), 2u);
  EXPECT_EQ(T[0], (IntMatrix{{-1}, {-1}, {-1}}));
  EXPECT_EQ(T[1], (IntMatrix{{-1}, {0}, {0}}));
  for (const IntMatrix& t : residual_check(p, RatMatrix(3, 1)))
    EXPECT_TRUE(t.is_zero());
}

TEST(Master, ResidualCheckRejects) {
  try {
    residual_check(fixtures::hexagonal(), unflatten(rv({"1/2", "0", "0"}), 3, 1));
    FAIL() << "expected NotInvariant";
  } catch (const NotInvariantError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvariant);
    EXPECT_EQ(e.generator, 0u);
  }
}

TEST(Master, Degeneracy) {
  GroupPresentation p = fixtures::hexagonal();
  auto fam = [](RatVector v) {
    SolutionFamily f;
    f.P0 = unflatten(v, 3, 1);
    return f;
  };
  EXPECT_TRUE(is_degenerate(fam(rv({"0", "0", "1/2"})), p));
  EXPECT_FALSE(is_degenerate(fam(rv({"2/3", "1/3", "1/2"})), p));
  EXPECT_TRUE(is_degenerate(fam(rv({"0", "0", "0"})), p));
  EXPECT_FALSE(shifts_pairwise_distinct(unflatten(rv({"0", "0", "0"}), 3, 1)));
  EXPECT_TRUE(shifts_pairwise_distinct(unflatten(rv({"0", "0", "1/2"}), 3, 1)));
}

TEST(Master, FamilyFlags) {
  auto fams = solve_master(build_system(fixtures::hexagonal()));
  for (const SolutionFamily& f : fams) {
    bool p3 = flatten(f.P0) == rv({"0", "0", "1/2"});
    bool zero = f.P0.is_zero();
    EXPECT_EQ(f.degenerate, p3 || zero);
    EXPECT_EQ(f.faithful, !zero);
  }
}

TEST(Master, ClosureCheck) {
  MasterSystem sys = build_system(fixtures::hexagonal());
  auto fams = solve_master(sys);
  for (const SolutionFamily& f : fams)
    EXPECT_TRUE(closure_check(sys, f));
  SolutionFamily bad = fams[1];
  bad.T[0](0, 0) += 1;
  EXPECT_FALSE(closure_check(sys, bad));

  MasterSystem id = build_system(fixtures::identity_presentation(2, 1));
  for (const SolutionFamily& f : solve_master(id))
    EXPECT_TRUE(closure_check(id, f));
}

TEST(Master, FreeParametersStayInvariant) {
  MasterSystem sys = build_system(fixtures::cycle3());
  auto fams = solve_master(sys);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(0, 11);
  for (const SolutionFamily& f : fams) {
    EXPECT_EQ(evaluate_family(f, RatVector(f.free_dirs.size(), Rat(0))), f.P0);
    for (int t = 0; t < 10; ++t) {
      RatVector par;
      for (std::size_t j = 0; j < f.free_dirs.size(); ++j)
        par.emplace_back(num(rng), 12);
      EXPECT_NO_THROW(residual_check(sys.presentation, evaluate_family(f, par)));
    }
  }
  EXPECT_THROW(evaluate_family(fams[0], RatVector(fams[0].free_dirs.size(), Rat(1))), Error);
}
