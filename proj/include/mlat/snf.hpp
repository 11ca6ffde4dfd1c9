// Smith normal form over the integers with transformation matrices.
//
// Convention: L = U * D * V with U (l x l) and V (m x m) unimodular and D
// diagonal, nonnegative, with D(i,i) dividing D(i+1,i+1). Only D is unique;
// U and V depend on the pivot strategy.

#ifndef MLAT_SNF_HPP_
#define MLAT_SNF_HPP_

#include <algorithm>
#include <cstddef>
#include <vector>

#include "linalg.hpp"

namespace mlat {

struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix V_inv;  // kept alongside V, V * V_inv = I
  std::size_t rank = 0;

  // D(0,0) ... D(r-1,r-1): the nonzero invariant factors.
  IntVector invariant_factors() const {
    IntVector d(rank);
    for (std::size_t i = 0; i < rank; ++i)
      d[i] = D(i, i);
    return d;
  }
};

enum class PivotStrategy {
  MinAbs,        // smallest nonzero |entry| in the working block
  FirstNonzero,  // first nonzero entry in column-major scan
};

namespace impl {

// Working state for the reduction. Keeps L = U * A * V at every step.
struct SnfWork {
  IntMatrix A, U, V, V_inv;

  void row_swap(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_cols(a, b);
  }
  // row dst += c * row src
  void row_add(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t j = 0; j < A.cols(); ++j)
      A(dst, j) += c * A(src, j);
    for (std::size_t i = 0; i < U.rows(); ++i)
      U(i, src) -= c * U(i, dst);
  }
  void row_neg(std::size_t a) {
    for (std::size_t j = 0; j < A.cols(); ++j)
      A(a, j) = -A(a, j);
    for (std::size_t i = 0; i < U.rows(); ++i)
      U(i, a) = -U(i, a);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_rows(a, b);
    V_inv.swap_cols(a, b);
  }
  // col dst += c * col src
  void col_add(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t i = 0; i < A.rows(); ++i)
      A(i, dst) += c * A(i, src);
    for (std::size_t j = 0; j < V.cols(); ++j)
      V(src, j) -= c * V(dst, j);
    for (std::size_t i = 0; i < V_inv.rows(); ++i)
      V_inv(i, dst) += c * V_inv(i, src);
  }

  bool find_pivot(std::size_t t, PivotStrategy strategy,
                  std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t j = t; j < A.cols(); ++j)
      for (std::size_t i = t; i < A.rows(); ++i) {
        if (A(i, j) == 0)
          continue;
        if (strategy == PivotStrategy::FirstNonzero) {
          pi = i;
          pj = j;
          return true;
        }
        Int v = abs(A(i, j));
        if (!found || v < best) {
          best = v;
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  }

  // Quotient rounded to nearest, so remainders satisfy |r| <= |d| / 2.
  static Int nearest_quotient(const Int& a, const Int& d) {
    Int q = a / d, r = a - q * d;
    if (2 * abs(r) > abs(d))
      q += ((r < 0) == (d < 0)) ? 1 : -1;
    return q;
  }

  // Clears row t and column t outside the pivot and enforces divisibility
  // of the remaining block by the pivot. Whenever a remainder survives, the
  // smallest one becomes the new pivot; this keeps entry growth in check.
  void reduce_at(std::size_t t) {
    for (;;) {
      for (std::size_t i = t + 1; i < A.rows(); ++i)
        if (A(i, t) != 0)
          row_add(i, t, -nearest_quotient(A(i, t), A(t, t)));
      std::size_t best = t;
      for (std::size_t i = t + 1; i < A.rows(); ++i)
        if (A(i, t) != 0 && (best == t || abs(A(i, t)) < abs(A(best, t))))
          best = i;
      if (best != t) {
        row_swap(best, t);
        continue;
      }
      for (std::size_t j = t + 1; j < A.cols(); ++j)
        if (A(t, j) != 0)
          col_add(j, t, -nearest_quotient(A(t, j), A(t, t)));
      for (std::size_t j = t + 1; j < A.cols(); ++j)
        if (A(t, j) != 0 && (best == t || abs(A(t, j)) < abs(A(t, best))))
          best = j;
      if (best != t) {
        col_swap(best, t);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < A.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < A.cols(); ++j)
          if (A(i, j) % A(t, t) != 0) {
            row_add(t, i, Int(1));
            divisible = false;
            break;
          }
      if (divisible)
        break;
    }
    if (A(t, t) < 0)
      row_neg(t);
  }
};

} // namespace impl

inline SnfDecomposition smith_decompose(
    const IntMatrix& L, PivotStrategy strategy = PivotStrategy::MinAbs) {
  const std::size_t l = L.rows(), m = L.cols();
  impl::SnfWork w{L, IntMatrix::identity(l), IntMatrix::identity(m),
                  IntMatrix::identity(m)};
  std::size_t t = 0;
  for (; t < std::min(l, m); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!w.find_pivot(t, strategy, pi, pj))
      break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    w.reduce_at(t);
  }
  return SnfDecomposition{std::move(w.U), std::move(w.A), std::move(w.V),
                          std::move(w.V_inv), t};
}

// Z-basis of {x in Z^m : L x = 0}: the trailing m - r columns of V^{-1}.
inline std::vector<IntVector> kernel_mod_basis(const IntMatrix& L) {
  SnfDecomposition s = smith_decompose(L);
  std::vector<IntVector> basis;
  for (std::size_t j = s.rank; j < L.cols(); ++j)
    basis.push_back(s.V_inv.column(j));
  return basis;
}

namespace impl {

inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j)
        c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

} // namespace impl

constexpr std::size_t kDivisorOracleMaxDim = 8;

// Invariant factors from determinantal divisors: d_k = gcd of all k x k
// minors, factor_k = d_k / d_{k-1}. Exponential in the size; it exists to
// check smith_decompose independently.
inline IntVector elementary_divisors_oracle(const IntMatrix& L) {
  if (L.rows() > kDivisorOracleMaxDim || L.cols() > kDivisorOracleMaxDim)
    fail(ErrorKind::SizeLimit, "divisor oracle is limited to 8x8 matrices");
  IntVector factors;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(L.rows(), L.cols()); ++k) {
    Int g = 0;
    std::vector<std::size_t> rs(k);
    for (std::size_t i = 0; i < k; ++i)
      rs[i] = i;
    do {
      std::vector<std::size_t> cs(k);
      for (std::size_t i = 0; i < k; ++i)
        cs[i] = i;
      do {
        IntMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b)
            sub(a, b) = L(rs[a], cs[b]);
        g = gcd(g, det(sub));
      } while (g != 1 && impl::next_combination(cs, L.cols()));
    } while (g != 1 && impl::next_combination(rs, L.rows()));
    if (g == 0)
      break;
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

} // namespace mlat

#endif
