/// @file matrix.hpp
/// Dense row-major matrices over Rational, GaussRational or Complex.
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "locaut/error.hpp"
#include "locaut/exact/scalar_traits.hpp"

namespace locaut {

enum class Sigma { Id, Conj };

template <class S>
class Matrix;

// Integer products over a common denominator per row and column; matrix.cpp.
Matrix<Rational> exact_product(const Matrix<Rational>& a, const Matrix<Rational>& b);
Matrix<GaussRational> exact_product(const Matrix<GaussRational>& a, const Matrix<GaussRational>& b);

template <class S>
class Matrix {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Traits::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one();
    return m;
  }

  static Matrix diagonal(const std::vector<S>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Column vector from entries.
  static Matrix column(const std::vector<S>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  /// Matrix unit E_ij.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = Traits::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<S>& data() const { return data_; }

  std::vector<S> column_vector(std::size_t j) const {
    std::vector<S> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<S> row_vector(std::size_t i) const {
    return std::vector<S>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix conj() const {
    Matrix c(*this);
    for (auto& x : c.data_) x = Traits::conj(x);
    return c;
  }

  /// Entrywise application of the field endomorphism sigma.
  Matrix apply_sigma(Sigma s) const { return s == Sigma::Id ? *this : conj(); }

  Matrix adjoint() const { return conj().transpose(); }

  S trace() const {
    S t = Traits::zero();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "product shape mismatch");
    if constexpr (Traits::exact) return exact_product(a, b);
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (Traits::is_zero(aik, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero(double tol = 0.0) const {
    return std::all_of(data_.begin(), data_.end(), [&](const S& x) { return Traits::is_zero(x, tol); });
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using MatQ = Matrix<Rational>;
using MatG = Matrix<GaussRational>;
using MatC = Matrix<Complex>;

template <class To, class From>
Matrix<To> convert_matrix(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = convert_scalar<To, From>(m(i, j));
  return out;
}

/// Largest entrywise modulus of a - b.
template <class S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    m = std::max(m, ScalarTraits<S>::magnitude(a.data()[k] - b.data()[k]));
  }
  return m;
}

/// True when m = c*I for some scalar c (returned through out when non-null).
template <class S>
bool is_scalar_matrix(const Matrix<S>& m, double tol = 0.0, S* out = nullptr) {
  if (!m.is_square() || m.rows() == 0) return false;
  const S c = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const S expect = i == j ? c : ScalarTraits<S>::zero();
      if (!ScalarTraits<S>::is_zero(m(i, j) - expect, tol)) return false;
    }
  if (out) *out = c;
  return true;
}

}  // namespace locaut
