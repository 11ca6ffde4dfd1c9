// Arithmetic equivalence of solution families.
//
// Two solutions of presentations whose generators are conjugate under
// (H, B), with H in GL(n,Z) and B a permutation, are equivalent when
//
//   S' = U'^{-1} W_K^{-1} U S + D' Z
//
// has an integer solution Z. W is the flattened map T -> H T B^{-1} read
// backwards: W_K^{-1} applies vec(T) -> vec(H^{-1} T B) to each of the K
// generator blocks, B being the action matrix of the permutation. Within one
// presentation the candidates are the centralizers of the M's and of the
// A's; the centralizer in GL(n,Z) is searched only up to a coefficient
// bound, and the report says whether that search is known to be complete.

#ifndef MLAT_EQUIV_HPP_
#define MLAT_EQUIV_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "master.hpp"
#include "repr.hpp"
#include "snf.hpp"

namespace mlat {

namespace impl {

// Row-style Hermite reduction of a set of integer vectors: returns a basis
// of the same Z-module in echelon form with positive pivots and entries
// above each pivot reduced into (-p/2, p/2].
inline std::vector<IntVector> hermite_rows(std::vector<IntVector> rows) {
  if (rows.empty())
    return rows;
  const std::size_t width = rows.front().size();
  std::size_t top = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  for (std::size_t c = 0; c < width && top < rows.size(); ++c) {
    for (;;) {
      // smallest nonzero |entry| in column c at or below `top`
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 &&
            (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
          best = i;
      if (best == rows.size())
        break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0)
          continue;
        Int q = rows[i][c] / rows[top][c];
        for (std::size_t j = 0; j < width; ++j)
          rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0)
          clean = false;
      }
      if (clean) {
        if (rows[top][c] < 0)
          for (auto& x : rows[top])
            x = -x;
        pivots.emplace_back(top, c);
        ++top;
        break;
      }
    }
  }
  rows.resize(top);
  for (auto [pr, pc] : pivots) {
    const Int& p = rows[pr][pc];
    for (std::size_t i = 0; i < pr; ++i) {
      Int q = floor_div(2 * rows[i][pc] + p - 1, 2 * p);  // nearest, ties down
      if (q != 0)
        for (std::size_t j = 0; j < width; ++j)
          rows[i][j] -= q * rows[pr][j];
    }
  }
  return rows;
}

} // namespace impl

// Z-basis of {H : M H = H M for every M}, in Hermite-reduced form.
inline std::vector<IntMatrix> commutant_basis(const std::vector<IntMatrix>& Ms) {
  if (Ms.empty())
    fail(ErrorKind::InvalidArgument, "commutant of an empty matrix list");
  const std::size_t n = Ms.front().rows();
  const IntMatrix I = IntMatrix::identity(n);
  std::vector<IntMatrix> blocks;
  for (const IntMatrix& M : Ms) {
    if (!M.is_square() || M.rows() != n)
      fail(ErrorKind::DimensionMismatch, "commutant needs equal square matrices");
    // vec(M H) - vec(H M)
    blocks.push_back(kron_flatten(M, I) - kron_flatten(I, M));
  }
  std::vector<IntMatrix> basis;
  for (const IntVector& v : impl::hermite_rows(kernel_mod_basis(vstack(blocks))))
    basis.push_back(unflatten(v, n, n));
  return basis;
}

struct CentralizerSet {
  std::vector<IntMatrix> module_basis;
  std::vector<IntMatrix> elements;  // sorted
  bool exhaustive = false;
  std::size_t bound = 0;
};

constexpr std::size_t kDefaultSearchBound = 2;
constexpr std::size_t kMaxCentralizerCandidates = 1'000'000;

namespace impl {

inline bool candidate_count_fits(std::size_t dim, std::size_t bound) {
  double count = 1;
  for (std::size_t i = 0; i < dim; ++i)
    count *= double(2 * bound + 1);
  return count <= double(kMaxCentralizerCandidates);
}

inline std::vector<IntMatrix> unimodular_combinations(
    const std::vector<IntMatrix>& basis, std::size_t bound) {
  std::vector<IntMatrix> out;
  if (basis.empty())
    return out;
  const long b = static_cast<long>(bound);
  std::vector<long> c(basis.size(), -b);
  for (;;) {
    IntMatrix H(basis.front().rows(), basis.front().cols());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c[i] != 0)
        H = H + scaled(basis[i], Int(c[i]));
    if (is_unimodular(H))
      out.push_back(std::move(H));
    std::size_t i = 0;
    while (i < c.size() && c[i] == b)
      c[i++] = -b;
    if (i == c.size())
      break;
    ++c[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool closed_group(const std::vector<IntMatrix>& elems) {
  std::set<IntMatrix> s(elems.begin(), elems.end());
  for (const IntMatrix& a : elems) {
    if (!s.count(unimodular_inverse(a)))
      return false;
    for (const IntMatrix& b : elems)
      if (!s.count(a * b))
        return false;
  }
  return true;
}

} // namespace impl

// Unimodular integer combinations of `basis` with coefficients in
// [-bound, bound]. Completeness is claimed only when the elements found form
// a group and the search at twice the bound finds nothing new.
inline CentralizerSet enumerate_unimodular_centralizer(
    const std::vector<IntMatrix>& basis, std::size_t bound) {
  if (bound < 1)
    fail(ErrorKind::InvalidArgument, "search bound must be at least 1");
  if (!impl::candidate_count_fits(basis.size(), bound))
    fail(ErrorKind::SizeLimit, "centralizer search space is too large for bound " +
                                   std::to_string(bound));
  CentralizerSet out;
  out.module_basis = basis;
  out.bound = bound;
  out.elements = impl::unimodular_combinations(basis, bound);
  if (!out.elements.empty() && impl::closed_group(out.elements) &&
      impl::candidate_count_fits(basis.size(), 2 * bound))
    out.exhaustive = impl::unimodular_combinations(basis, 2 * bound) == out.elements;
  return out;
}

struct PermCandidate {
  Permutation tau;
  IntMatrix shift;  // shift_rep(tau)
};

constexpr std::size_t kDefaultPermCap = 8;

// All tau in S_{N+1} whose shift matrix commutes with every generator's.
inline std::vector<PermCandidate> perm_centralizer(const GroupPresentation& p,
                                                   std::size_t cap = kDefaultPermCap) {
  p.validate();
  if (p.N + 1 > cap)
    fail(ErrorKind::CapExceeded, "N+1 = " + std::to_string(p.N + 1) +
                                     " exceeds the permutation search cap " +
                                     std::to_string(cap));
  std::vector<IntMatrix> gens;
  for (const Generator& g : p.generators)
    gens.push_back(shift_rep(g.sigma));
  std::vector<PermCandidate> out;
  std::vector<std::size_t> im(p.N + 1);
  std::iota(im.begin(), im.end(), std::size_t(0));
  do {
    Permutation tau(im);
    IntMatrix R = shift_rep(tau);
    bool commutes = std::all_of(gens.begin(), gens.end(), [&R](const IntMatrix& A) {
      return R * A == A * R;
    });
    if (commutes)
      out.push_back({std::move(tau), std::move(R)});
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

inline IntMatrix block_diagonal(const IntMatrix& W, std::size_t K) {
  const std::size_t m = W.rows();
  IntMatrix out(m * K, m * K);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        out(k * m + i, k * m + j) = W(i, j);
  return out;
}

// K copies of kron_flatten(H, A_B^{-1}) on the diagonal, where A_B is the
// action matrix belonging to the shift matrix B.
inline IntMatrix build_WK(const IntMatrix& H, const IntMatrix& B, std::size_t K) {
  if (!is_unimodular(H) || !is_unimodular(B))
    fail(ErrorKind::NotUnimodular, "H and B must be unimodular");
  return block_diagonal(kron_flatten(H, unimodular_inverse(transpose(B))), K);
}

struct EquivalenceWitness {
  IntMatrix H;
  Permutation B;
  IntMatrix B_shift;
  IntVector Z;
};

namespace impl {

// S'' = U_B^{-1} W_K^{-1} U_A S_A, then solve S_B - S'' = D Z.
inline std::optional<IntVector> solve_witness_z(const IntMatrix& UB_inv,
                                                const IntMatrix& WK_inv,
                                                const IntMatrix& UA,
                                                const IntMatrix& D,
                                                std::size_t rank,
                                                const IntVector& SA,
                                                const IntVector& SB) {
  IntVector moved = UB_inv * (WK_inv * (UA * SA));
  IntVector Z(D.cols(), Int(0));
  for (std::size_t i = 0; i < moved.size(); ++i) {
    Int diff = SB[i] - moved[i];
    if (i < rank) {
      if (diff % D(i, i) != 0)
        return std::nullopt;
      Z[i] = diff / D(i, i);
    } else if (diff != 0) {
      return std::nullopt;
    }
  }
  return Z;
}

} // namespace impl

// Generators are matched in input order: M_B^(k) must equal H^{-1} M_A^(k) H
// and likewise for the action matrices.
inline std::optional<EquivalenceWitness> test_equivalence(
    const MasterSystem& sysA, const IntVector& SA,
    const MasterSystem& sysB, const IntVector& SB,
    const IntMatrix& H, const Permutation& B) {
  const GroupPresentation& pa = sysA.presentation;
  const GroupPresentation& pb = sysB.presentation;
  if (pa.n != pb.n || pa.N != pb.N || pa.K() != pb.K())
    fail(ErrorKind::PreconditionFailed, "presentations differ in n, N or K");
  if (H.rows() != pa.n || B.size() != pa.N + 1)
    fail(ErrorKind::DimensionMismatch, "conjugator has the wrong size");
  if (SA.size() != sysA.L.rows() || SB.size() != sysB.L.rows())
    fail(ErrorKind::DimensionMismatch, "S vectors must have length nNK");
  IntMatrix H_inv = unimodular_inverse(H);
  IntMatrix Bact = action_matrix(B);
  IntMatrix Bact_inv = unimodular_inverse(Bact);
  for (std::size_t k = 0; k < pa.K(); ++k) {
    if (!(H_inv * pa.generators[k].M * H == pb.generators[k].M))
      fail(ErrorKind::PreconditionFailed,
           "generator " + std::to_string(k + 1) + ": M's are not conjugate under H");
    if (!(Bact_inv * action_matrix(pa.generators[k].sigma) * Bact ==
          action_matrix(pb.generators[k].sigma)))
      fail(ErrorKind::PreconditionFailed,
           "generator " + std::to_string(k + 1) + ": A's are not conjugate under B");
  }
  if (!(sysA.snf.D == sysB.snf.D))
    fail(ErrorKind::PreconditionFailed, "Smith forms differ");
  IntMatrix WK_inv = block_diagonal(kron_flatten(H_inv, Bact), pa.K());
  auto Z = impl::solve_witness_z(unimodular_inverse(sysB.snf.U), WK_inv,
                                 sysA.snf.U, sysB.snf.D, sysB.rank(), SA, SB);
  if (!Z)
    return std::nullopt;
  return EquivalenceWitness{H, B, shift_rep(B), std::move(*Z)};
}

// Candidate conjugators for one presentation: the bounded unimodular
// centralizer of the M's and the permutation centralizer of the A's. The
// bound is lowered when the search space would be too large; the result is
// then never marked exhaustive at the requested bound.
struct CandidateSet {
  CentralizerSet centralizer;
  std::vector<PermCandidate> perms;
};

inline CandidateSet conjugator_candidates(const GroupPresentation& p,
                                          std::size_t bound = kDefaultSearchBound,
                                          std::size_t perm_cap = kDefaultPermCap) {
  std::vector<IntMatrix> Ms;
  for (const Generator& g : p.generators)
    Ms.push_back(g.M);
  std::vector<IntMatrix> basis = commutant_basis(Ms);
  std::size_t b = std::max<std::size_t>(bound, 1);
  while (b > 1 && !impl::candidate_count_fits(basis.size(), b))
    --b;
  return {enumerate_unimodular_centralizer(basis, b), perm_centralizer(p, perm_cap)};
}

namespace impl {

// Precomputed W_K^{-1} and U^{-1} for repeated tests within one system.
class WitnessSearch {
public:
  WitnessSearch(const MasterSystem& sys, const CandidateSet& cands)
    : sys_(sys), U_inv_(unimodular_inverse(sys.snf.U)) {
    // identity first, so a pure relabelling B is reported when one works
    std::vector<IntMatrix> Hs = cands.centralizer.elements;
    std::stable_partition(Hs.begin(), Hs.end(), [](const IntMatrix& H) {
      return H == IntMatrix::identity(H.rows());
    });
    for (const IntMatrix& H : Hs)
      for (const PermCandidate& pc : cands.perms)
        entries_.push_back({H, &pc,
                            block_diagonal(kron_flatten(unimodular_inverse(H),
                                                        action_matrix(pc.tau)),
                                           sys.K())});
  }

  std::optional<EquivalenceWitness> find(const IntVector& SA,
                                         const IntVector& SB) const {
    for (const Entry& e : entries_) {
      auto Z = solve_witness_z(U_inv_, e.WK_inv, sys_.snf.U, sys_.snf.D,
                               sys_.rank(), SA, SB);
      if (Z)
        return EquivalenceWitness{e.H, e.perm->tau, e.perm->shift, std::move(*Z)};
    }
    return std::nullopt;
  }

private:
  struct Entry {
    IntMatrix H;
    const PermCandidate* perm;
    IntMatrix WK_inv;
  };
  const MasterSystem& sys_;
  IntMatrix U_inv_;
  std::vector<Entry> entries_;
};

} // namespace impl

// First witness among the candidates for S_A ~ S_B within one system. H = I
// is tried first, then the centralizer in sorted order; B varies fastest.
inline std::optional<EquivalenceWitness> find_witness(const MasterSystem& sys,
                                                      const IntVector& SA,
                                                      const IntVector& SB,
                                                      const CandidateSet& cands) {
  return impl::WitnessSearch(sys, cands).find(SA, SB);
}

struct ClassReport {
  std::vector<std::vector<std::size_t>> classes;  // indices into the input
  std::map<std::pair<std::size_t, std::size_t>, EquivalenceWitness> witnesses;
  CentralizerSet centralizer;
  std::vector<PermCandidate> perms;
  bool caveat = true;  // search not certified exhaustive
};

// Partitions `families` (all from `sys`) into equivalence classes using
// every centralizer candidate pair (H, B). Classes are ordered by their
// smallest member.
inline ClassReport classify(const MasterSystem& sys,
                            const std::vector<SolutionFamily>& families,
                            std::size_t bound = kDefaultSearchBound,
                            std::size_t perm_cap = kDefaultPermCap) {
  CandidateSet cands = conjugator_candidates(sys.presentation, bound, perm_cap);
  ClassReport rep;
  rep.caveat = !cands.centralizer.exhaustive || cands.centralizer.bound != bound;

  const std::size_t count = families.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t(0));
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };

  {
    impl::WitnessSearch search(sys, cands);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) {
        auto w = search.find(families[i].S, families[j].S);
        if (!w)
          continue;
        rep.witnesses.emplace(std::make_pair(i, j), std::move(*w));
        std::size_t a = find(i), b = find(j);
        if (a != b)
          parent[std::max(a, b)] = std::min(a, b);
      }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < count; ++i)
    groups[find(i)].push_back(i);
  for (auto& [root, members] : groups)
    rep.classes.push_back(std::move(members));
  rep.centralizer = std::move(cands.centralizer);
  rep.perms = std::move(cands.perms);
  return rep;
}

} // namespace mlat

#endif
