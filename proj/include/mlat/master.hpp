// The master equation M P = P A + T, solved for every integer T at once.
//
// Stacking the equations of all K generators gives L * vec(P) = vec(T) with
// L of size nNK x nN. With L = U D V in Smith form and X = V vec(P), the
// system decouples into D(i,i) X_i = 0 mod 1. Each choice of
// X_i = k_i / D(i,i) (i < r) gives one solution family; the remaining nN - r
// coordinates of X are free, and vec(P) = V^{-1} X.

#ifndef MLAT_MASTER_HPP_
#define MLAT_MASTER_HPP_

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "repr.hpp"
#include "snf.hpp"

namespace mlat {

struct MasterSystem {
  GroupPresentation presentation;
  IntMatrix L;
  SnfDecomposition snf;
  IntMatrix V_inv;

  std::size_t n() const noexcept { return presentation.n; }
  std::size_t N() const noexcept { return presentation.N; }
  std::size_t K() const noexcept { return presentation.K(); }
  std::size_t rank() const noexcept { return snf.rank; }
};

// Uses a caller-provided decomposition of the master matrix; it must
// reconstruct L exactly with unimodular U and V.
inline MasterSystem build_system(const GroupPresentation& p,
                                 SnfDecomposition snf) {
  IntMatrix L = build_master_matrix(p);
  if (!(snf.U * snf.D * snf.V == L))
    fail(ErrorKind::PreconditionFailed, "decomposition does not reconstruct L");
  if (!(snf.V * snf.V_inv == IntMatrix::identity(L.cols())))
    fail(ErrorKind::PreconditionFailed, "V_inv is not the inverse of V");
  IntMatrix V_inv = snf.V_inv;
  return MasterSystem{p, std::move(L), std::move(snf), std::move(V_inv)};
}

inline MasterSystem build_system(const GroupPresentation& p,
                                 std::size_t closure_cap = kDefaultClosureCap,
                                 PivotStrategy strategy = PivotStrategy::MinAbs) {
  p.validate();
  if (!check_homomorphism(p, closure_cap))
    fail(ErrorKind::Homomorphism,
         "the permutations do not define a representation of the generated group "
         "(one matrix M is reached with two different shift actions)");
  return build_system(p, smith_decompose(build_master_matrix(p), strategy));
}

struct SolutionFamily {
  IntVector class_index;              // k_1 .. k_r, 0 <= k_i < D(i,i)
  RatMatrix P0;                       // n x N, entries in [0,1)
  std::vector<IntVector> free_dirs;   // columns r..nN-1 of V^{-1}
  IntVector S;                        // D X, length nNK
  std::vector<IntMatrix> T;           // M P0 - P0 A per generator
  IntVector cell_shift;               // vec(P0) - V^{-1} X, integer
  bool degenerate = false;
  bool faithful = true;
};

struct Translations {
  IntVector S;
  std::vector<IntMatrix> T;
};

// S = D X and vec(T) = U S; the T's are those of the unreduced lift
// vec(P) = V^{-1} X. Throws NotASolution when D X is not an admissible
// integer vector.
inline Translations compute_translations(const MasterSystem& sys,
                                         const RatVector& X) {
  const IntMatrix& D = sys.snf.D;
  if (X.size() != D.cols())
    fail(ErrorKind::DimensionMismatch, "X must have length nN");
  IntVector S(D.rows());
  for (std::size_t i = 0; i < D.rows(); ++i) {
    Rat s = i < D.cols() ? Rat(D(i, i)) * X[i] : Rat(0);
    if (!is_integer(s))
      fail(ErrorKind::NotASolution,
           "D X has a non-integer component " + std::to_string(i + 1));
    if (i >= sys.rank() && s != 0)
      fail(ErrorKind::NotASolution, "D X is nonzero beyond the rank");
    S[i] = boost::multiprecision::numerator(s);
  }
  IntVector Tflat = sys.snf.U * S;
  const std::size_t n = sys.n(), N = sys.N(), block = n * N;
  std::vector<IntMatrix> T;
  for (std::size_t k = 0; k < sys.K(); ++k)
    T.push_back(unflatten(IntVector(Tflat.begin() + k * block,
                                    Tflat.begin() + (k + 1) * block),
                          n, N));
  return {std::move(S), std::move(T)};
}

// T^(k) = M^(k) P - P A^(k) for every generator, or NotInvariantError at
// the first non-integer entry.
inline std::vector<IntMatrix> residual_check(const GroupPresentation& p,
                                             const RatMatrix& P) {
  if (P.rows() != p.n || P.cols() != p.N)
    fail(ErrorKind::DimensionMismatch, "P must be n x N");
  std::vector<IntMatrix> T;
  for (std::size_t k = 0; k < p.K(); ++k) {
    const Generator& g = p.generators[k];
    RatMatrix R = to_rat(g.M) * P - P * to_rat(action_matrix(g.sigma));
    for (std::size_t i = 0; i < R.rows(); ++i)
      for (std::size_t a = 0; a < R.cols(); ++a)
        if (!is_integer(R(i, a)))
          throw NotInvariantError(k, i, a, R(i, a).str());
    T.push_back(to_int(R));
  }
  return T;
}

inline std::vector<RatVector> reduced_columns(const RatMatrix& P) {
  std::vector<RatVector> cols;
  for (std::size_t a = 0; a < P.cols(); ++a)
    cols.push_back(rat_reduce(P.column(a)));
  return cols;
}

// True iff {0, p_1, ..., p_N} mod Z^n is closed under addition and
// negation, i.e. the point set is a single Bravais lattice.
inline bool is_lattice_shift_set(const RatMatrix& P) {
  std::set<RatVector> pts{RatVector(P.rows(), Rat(0))};
  for (auto& c : reduced_columns(P))
    pts.insert(std::move(c));
  for (const RatVector& a : pts) {
    RatVector neg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      neg[i] = -a[i];
    if (!pts.count(rat_reduce(neg)))
      return false;
    for (const RatVector& b : pts) {
      RatVector sum(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        sum[i] = a[i] + b[i];
      if (!pts.count(rat_reduce(sum)))
        return false;
    }
  }
  return true;
}

// No two of p_0 = 0, p_1, ..., p_N coincide mod Z^n.
inline bool shifts_pairwise_distinct(const RatMatrix& P) {
  std::set<RatVector> pts{RatVector(P.rows(), Rat(0))};
  for (auto& c : reduced_columns(P))
    if (!pts.insert(std::move(c)).second)
      return false;
  return true;
}

inline bool is_degenerate(const SolutionFamily& f, const GroupPresentation& p) {
  if (f.P0.rows() != p.n || f.P0.cols() != p.N)
    fail(ErrorKind::DimensionMismatch, "family does not match presentation");
  return is_lattice_shift_set(f.P0);
}

inline std::vector<SolutionFamily> solve_master(const MasterSystem& sys) {
  const std::size_t n = sys.n(), N = sys.N(), m = n * N, r = sys.rank();
  const IntVector d = sys.snf.invariant_factors();

  std::vector<IntVector> free_dirs;
  for (std::size_t j = r; j < m; ++j)
    free_dirs.push_back(sys.V_inv.column(j));

  std::vector<SolutionFamily> out;
  IntVector k(r, Int(0));
  for (;;) {
    RatVector X(m, Rat(0));
    for (std::size_t i = 0; i < r; ++i)
      X[i] = Rat(k[i], d[i]);
    RatVector lift = to_rat(sys.V_inv) * X;
    RatVector reduced = rat_reduce(lift);

    SolutionFamily f;
    f.class_index = k;
    f.P0 = unflatten(reduced, n, N);
    f.free_dirs = free_dirs;
    f.S = compute_translations(sys, X).S;
    f.T = residual_check(sys.presentation, f.P0);
    f.cell_shift.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      f.cell_shift[i] = boost::multiprecision::numerator(Rat(reduced[i] - lift[i]));
    f.degenerate = is_lattice_shift_set(f.P0);
    f.faithful = shifts_pairwise_distinct(f.P0);
    out.push_back(std::move(f));

    // odometer, last index fastest: lexicographic order of class_index
    std::size_t i = r;
    for (; i > 0; --i) {
      if (++k[i - 1] < d[i - 1])
        break;
      k[i - 1] = 0;
    }
    if (i == 0)
      break;
  }
  return out;
}

// Free parameters t_j in [0,1) along the family's free directions.
inline RatMatrix evaluate_family(const SolutionFamily& f, const RatVector& t) {
  if (t.size() != f.free_dirs.size())
    fail(ErrorKind::DimensionMismatch, "expected one parameter per free direction");
  RatVector v = flatten(f.P0);
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < 0 || t[j] >= 1)
      fail(ErrorKind::InvalidArgument, "free parameters must lie in [0,1)");
    for (std::size_t a = 0; a < v.size(); ++a)
      v[a] += t[j] * Rat(f.free_dirs[j][a]);
  }
  return unflatten(rat_reduce(std::move(v)), f.P0.rows(), f.P0.cols());
}

// Checks the family's triples (M, A, T) against the group law: products
// (M H, A_M A_H, T_M A_H + M T_H) and inverses
// (M^-1, A^-1, -M^-1 T A^-1) must again satisfy the master equation at P0.
inline bool closure_check(const MasterSystem& sys, const SolutionFamily& f) {
  const GroupPresentation& p = sys.presentation;
  if (f.T.size() != p.K())
    return false;
  const RatMatrix& P = f.P0;
  struct Triple {
    RatMatrix M, A, T;
  };
  std::vector<Triple> gens;
  for (std::size_t k = 0; k < p.K(); ++k)
    gens.push_back({to_rat(p.generators[k].M),
                    to_rat(action_matrix(p.generators[k].sigma)),
                    to_rat(f.T[k])});
  auto holds = [&P](const Triple& g) {
    return is_integral(g.T) && g.M * P - P * g.A == g.T;
  };
  for (const Triple& g : gens)
    if (!holds(g))
      return false;
  for (const Triple& a : gens)
    for (const Triple& b : gens)
      if (!holds({a.M * b.M, a.A * b.A, a.T * b.A + a.M * b.T}))
        return false;
  for (std::size_t k = 0; k < p.K(); ++k) {
    RatMatrix Minv = to_rat(unimodular_inverse(p.generators[k].M));
    RatMatrix Ainv = to_rat(unimodular_inverse(action_matrix(p.generators[k].sigma)));
    if (!holds({Minv, Ainv, -(Minv * gens[k].T * Ainv)}))
      return false;
  }
  return true;
}

} // namespace mlat

#endif
