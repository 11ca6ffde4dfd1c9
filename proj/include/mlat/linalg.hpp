// Exact integer and rational matrices.
//
// Everything here is arbitrary precision: Int is boost's cpp_int and Rat is
// cpp_rational, which keeps fractions in lowest terms with a positive
// denominator. There is no floating point anywhere in mlat.

#ifndef MLAT_LINALG_HPP_
#define MLAT_LINALG_HPP_

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace mlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

// Dense row-major matrix. Values are regular: copyable, comparable, and
// never shared.
template <class T>
class Matrix {
public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      fail(ErrorKind::DimensionMismatch, "matrix data has wrong length");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  // Square matrix with the given diagonal.
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<T>& data() const noexcept { return data_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T& x) { return x == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    return std::tie(a.rows_, a.cols_, a.data_) <
           std::tie(b.rows_, b.cols_, b.data_);
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    fail(ErrorKind::DimensionMismatch,
         "cannot multiply " + std::to_string(a.rows()) + "x" +
         std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
         std::to_string(b.cols()));
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline RatMatrix rat_mat_mul(const RatMatrix& a, const RatMatrix& b) {
  return mat_mul(a, b);
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return mat_mul(a, b);
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size())
    fail(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      y[i] += a(i, j) * x[j];
  return y;
}

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::DimensionMismatch, "matrix sum size mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) += b(i, j);
  return a;
}

template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::DimensionMismatch, "matrix difference size mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) -= b(i, j);
  return a;
}

template <class T>
Matrix<T> operator-(Matrix<T> a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) = -a(i, j);
  return a;
}

template <class T>
Matrix<T> scaled(Matrix<T> a, const T& s) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) *= s;
  return a;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

// Stacks blocks with equal column counts on top of each other.
template <class T>
Matrix<T> vstack(const std::vector<Matrix<T>>& blocks) {
  if (blocks.empty())
    return {};
  std::size_t cols = blocks.front().cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols)
      fail(ErrorKind::DimensionMismatch, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix<T> out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j)
        out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

inline RatMatrix to_rat(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = Rat(a(i, j));
  return r;
}

inline RatVector to_rat(const IntVector& v) {
  return RatVector(v.begin(), v.end());
}

inline bool is_integer(const Rat& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline bool is_integral(const RatMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](const Rat& x) { return is_integer(x); });
}

// Converts an integral rational matrix; throws InvalidArgument otherwise.
inline IntMatrix to_int(const RatMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j)))
        fail(ErrorKind::InvalidArgument, "matrix entry is not an integer");
      r(i, j) = boost::multiprecision::numerator(a(i, j));
    }
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0)
    fail(ErrorKind::InvalidArgument, "division by zero");
  Int q = a / b;  // truncates toward zero
  if (a % b != 0 && ((a < 0) != (b < 0)))
    --q;
  return q;
}

inline Int floor(const Rat& x) {
  return floor_div(boost::multiprecision::numerator(x),
                   boost::multiprecision::denominator(x));
}

// Fractional part, always in [0,1).
inline Rat frac(const Rat& x) { return x - Rat(floor(x)); }

inline RatVector rat_reduce(RatVector v) {
  for (auto& x : v)
    x = frac(x);
  return v;
}

inline RatMatrix rat_reduce(const RatMatrix& m) {
  return RatMatrix(m.rows(), m.cols(), rat_reduce(m.data()));
}

// Fraction-free Gaussian elimination (Bareiss). Every division is exact.
inline Int det(const IntMatrix& a) {
  if (!a.is_square())
    fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0)
    return Int(1);
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0)
        ++p;
      if (p == n)
        return Int(0);
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) {
  if (!a.is_square())
    return false;
  Int d = det(a);
  return d == 1 || d == -1;
}

// Exact inverse of a matrix with determinant +1 or -1.
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!a.is_square())
    fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  if (!is_unimodular(a))
    fail(ErrorKind::NotUnimodular, "matrix is not unimodular (|det| != 1)");
  const std::size_t n = a.rows();
  RatMatrix m = to_rat(a);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (m(p, k) == 0)
      ++p;  // exists because det != 0
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rat piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0)
        continue;
      Rat f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return to_int(inv);
}

inline std::string to_string(const Rat& x) { return x.str(); }
inline std::string to_string(const Int& x) { return x.str(); }

} // namespace mlat

#endif
