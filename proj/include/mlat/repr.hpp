// Permutation action on shift vectors, index flattening, and the stacked
// master matrix.
//
// Matrix conventions used throughout mlat:
//
//  * P is the n x N matrix whose column alpha holds the components of the
//    shift vector p_alpha (alpha = 1..N; p_0 = 0 is implicit).
//  * shift_rep(sigma) is the N x N matrix R with R(alpha, beta) the
//    coefficient of p_beta in p_sigma(alpha) - p_sigma(0).
//  * action_matrix(sigma) = R^T, so that the permuted shifts are the columns
//    of P * action_matrix(sigma). The master equation reads M P = P A + T
//    with A = action_matrix(sigma), and sigma -> A is a homomorphism:
//    action_matrix(s o t) = action_matrix(s) * action_matrix(t).
//  * Flattening: entry P(i, alpha) sits at position i + alpha * n (0-based),
//    i.e. the components of p_1 come first, then p_2, and so on.

#ifndef MLAT_REPR_HPP_
#define MLAT_REPR_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace mlat {

// A bijection of {0, ..., N}; images[a] = sigma(a).
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images)
    : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t v : images_) {
      if (v >= images_.size() || seen[v])
        fail(ErrorKind::InvalidArgument, "sigma is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t size) {
    std::vector<std::size_t> im(size);
    std::iota(im.begin(), im.end(), std::size_t(0));
    return Permutation(std::move(im));
  }

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t a) const { return images_.at(a); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  bool is_identity() const {
    for (std::size_t a = 0; a < images_.size(); ++a)
      if (images_[a] != a)
        return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<std::size_t> inv(images_.size());
    for (std::size_t a = 0; a < images_.size(); ++a)
      inv[images_[a]] = a;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

private:
  std::vector<std::size_t> images_;
};

// (a o b)(x) = a(b(x))
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    fail(ErrorKind::DimensionMismatch, "composing permutations of different size");
  std::vector<std::size_t> im(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    im[x] = a(b(x));
  return Permutation(std::move(im));
}

inline IntMatrix shift_rep(const Permutation& sigma) {
  if (sigma.size() < 2)
    fail(ErrorKind::InvalidArgument, "permutation must act on at least two points");
  const std::size_t N = sigma.size() - 1;
  IntMatrix R(N, N);
  for (std::size_t alpha = 1; alpha <= N; ++alpha) {
    if (sigma(alpha) != 0)
      R(alpha - 1, sigma(alpha) - 1) += 1;
    if (sigma(0) != 0)
      R(alpha - 1, sigma(0) - 1) -= 1;
  }
  return R;
}

inline IntMatrix shift_rep(const Permutation& sigma, std::size_t N) {
  if (sigma.size() != N + 1)
    fail(ErrorKind::DimensionMismatch, "permutation size is not N+1");
  return shift_rep(sigma);
}

inline IntMatrix action_matrix(const Permutation& sigma) {
  return transpose(shift_rep(sigma));
}

struct Generator {
  IntMatrix M;
  Permutation sigma;
};

struct GroupPresentation {
  std::size_t n = 0;
  std::size_t N = 0;
  std::vector<Generator> generators;

  std::size_t K() const noexcept { return generators.size(); }

  // Throws on inconsistent sizes, non-unimodular M, or invalid sigma.
  void validate() const {
    if (n == 0 || N == 0)
      fail(ErrorKind::InvalidArgument, "n and N must be positive");
    if (generators.empty())
      fail(ErrorKind::InvalidArgument, "at least one generator is required");
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const Generator& g = generators[k];
      std::string which = "generator " + std::to_string(k + 1);
      if (g.M.rows() != n || g.M.cols() != n)
        fail(ErrorKind::DimensionMismatch, which + ": M is not n x n");
      if (g.sigma.size() != N + 1)
        fail(ErrorKind::DimensionMismatch, which + ": sigma must have N+1 images");
      if (!is_unimodular(g.M))
        fail(ErrorKind::NotUnimodular, which + ": M is not unimodular");
    }
  }
};

// 1-based index maps.

inline std::size_t flatten_index(std::size_t i, std::size_t alpha, std::size_t n) {
  if (i < 1 || i > n || alpha < 1)
    fail(ErrorKind::InvalidArgument, "flatten_index out of range");
  return i + (alpha - 1) * n;
}

inline std::pair<std::size_t, std::size_t> unflatten_index(std::size_t a,
                                                           std::size_t n) {
  if (a < 1 || n < 1)
    fail(ErrorKind::InvalidArgument, "unflatten_index out of range");
  std::size_t alpha = (a - 1) / n + 1;
  return {a - (alpha - 1) * n, alpha};
}

inline std::size_t flatten_row_index(std::size_t i, std::size_t alpha,
                                     std::size_t k, std::size_t n,
                                     std::size_t N) {
  if (i < 1 || i > n || alpha < 1 || alpha > N || k < 1)
    fail(ErrorKind::InvalidArgument, "flatten_row_index out of range");
  return i + (k - 1) * n * N + (alpha - 1) * n;
}

// Returns (i, alpha, k).
inline std::tuple<std::size_t, std::size_t, std::size_t>
unflatten_row_index(std::size_t J, std::size_t n, std::size_t N) {
  if (J < 1 || n < 1 || N < 1)
    fail(ErrorKind::InvalidArgument, "unflatten_row_index out of range");
  std::size_t k = (J - 1) / (n * N) + 1;
  std::size_t alpha = (J - (k - 1) * n * N - 1) / n + 1;
  std::size_t i = J - (k - 1) * n * N - (alpha - 1) * n;
  return {i, alpha, k};
}

// n x N matrix <-> length nN vector, components of p_1 first.
template <class T>
std::vector<T> flatten(const Matrix<T>& P) {
  std::vector<T> v(P.rows() * P.cols());
  for (std::size_t alpha = 0; alpha < P.cols(); ++alpha)
    for (std::size_t i = 0; i < P.rows(); ++i)
      v[i + alpha * P.rows()] = P(i, alpha);
  return v;
}

template <class T>
Matrix<T> unflatten(const std::vector<T>& v, std::size_t n, std::size_t N) {
  if (v.size() != n * N)
    fail(ErrorKind::DimensionMismatch, "vector length is not n*N");
  Matrix<T> P(n, N);
  for (std::size_t alpha = 0; alpha < N; ++alpha)
    for (std::size_t i = 0; i < n; ++i)
      P(i, alpha) = v[i + alpha * n];
  return P;
}

// The nN x nN matrix of P -> M P A on flattened P:
// entry (i + alpha n, j + beta n) = M(i, j) * A(beta, alpha).
// kron_flatten(M, A) * kron_flatten(H, B) == kron_flatten(M H, B A).
template <class T>
Matrix<T> kron_flatten(const Matrix<T>& M, const Matrix<T>& A) {
  if (!M.is_square() || !A.is_square())
    fail(ErrorKind::DimensionMismatch, "kron_flatten needs square factors");
  const std::size_t n = M.rows(), N = A.rows();
  Matrix<T> L(n * N, n * N);
  for (std::size_t alpha = 0; alpha < N; ++alpha)
    for (std::size_t beta = 0; beta < N; ++beta) {
      if (A(beta, alpha) == 0)
        continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          L(i + alpha * n, j + beta * n) = M(i, j) * A(beta, alpha);
    }
  return L;
}

// Rows of generator k occupy k*nN .. (k+1)*nN - 1, so the flattened
// right-hand side is T^(1), T^(2), ... stacked in generator order.
inline IntMatrix build_master_matrix(const GroupPresentation& p) {
  p.validate();
  const IntMatrix In = IntMatrix::identity(p.n);
  const IntMatrix IN = IntMatrix::identity(p.N);
  std::vector<IntMatrix> blocks;
  blocks.reserve(p.K());
  for (const Generator& g : p.generators)
    blocks.push_back(kron_flatten(g.M, IN) -
                     kron_flatten(In, transpose(shift_rep(g.sigma))));
  return vstack(blocks);
}

struct GroupElement {
  IntMatrix M;
  Permutation sigma;

  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return std::tie(a.M, a.sigma) < std::tie(b.M, b.sigma);
  }
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.M == b.M && a.sigma == b.sigma;
  }
};

constexpr std::size_t kDefaultClosureCap = 10000;

// All products of generators as (M, sigma) pairs, identity included, in
// sorted order. Throws CapExceeded once more than `cap` elements appear.
inline std::vector<GroupElement> group_closure(const GroupPresentation& p,
                                               std::size_t cap = kDefaultClosureCap) {
  p.validate();
  if (cap < 1)
    fail(ErrorKind::InvalidArgument, "closure cap must be at least 1");
  std::vector<GroupElement> found{
      {IntMatrix::identity(p.n), Permutation::identity(p.N + 1)}};
  std::map<GroupElement, bool> seen{{found.front(), true}};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const Generator& g : p.generators) {
      GroupElement next{found[head].M * g.M, compose(found[head].sigma, g.sigma)};
      if (seen.count(next))
        continue;
      if (found.size() >= cap)
        fail(ErrorKind::CapExceeded,
             "group closure exceeds " + std::to_string(cap) +
             " elements (infinite or too large)");
      seen.emplace(next, true);
      found.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

// True iff M^(k) -> sigma^(k) extends to a well-defined map on the
// generated group, i.e. equal M's never carry different shift matrices.
inline bool check_homomorphism(const GroupPresentation& p,
                               std::size_t cap = kDefaultClosureCap) {
  std::map<IntMatrix, IntMatrix> image;
  for (const GroupElement& e : group_closure(p, cap)) {
    IntMatrix A = action_matrix(e.sigma);
    auto [it, inserted] = image.emplace(e.M, A);
    if (!inserted && !(it->second == A))
      return false;
  }
  return true;
}

} // namespace mlat

#endif
