#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "qip/constants.hpp"

namespace qip {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

class regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense complex matrix, row-major. Sized for desk-scale problems
// (a few hundred rows at most); no attempt at sparsity or blocking.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}

  Matrix(std::initializer_list<std::initializer_list<cplx>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged initializer");
      for (const auto& v : row) a_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const cplx aik = (*this)(i, k);
        if (aik == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  Matrix operator*(cplx s) const {
    Matrix r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
  }

  friend Matrix operator*(cplx s, const Matrix& m) { return m * s; }

  cvec apply(const cvec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    cvec r(rows_, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix dagger() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  cplx trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_hermitian(double eps = tol::state) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > eps) return false;
    return true;
  }

  bool is_unitary(double eps = tol::state) const {
    if (rows_ != cols_) return false;
    return ((*this).dagger() * (*this) - identity(rows_)).max_abs() <= eps;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  cvec a_;
};

// Largest composite dimension kron() will produce.
inline constexpr std::size_t kMaxKronDim = std::size_t{1} << 14;

// Tensor product, factor 0 slowest (big-endian composite index).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxKronDim || cols > kMaxKronDim)
    throw regime_error("kron: composite dimension exceeds capacity");
  Matrix r(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

inline cvec kron(const cvec& a, const cvec& b) {
  if (a.size() * b.size() > kMaxKronDim)
    throw regime_error("kron: composite dimension exceeds capacity");
  cvec r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

inline cplx inner(const cvec& a, const cvec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner product shape mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm2(const cvec& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

}  // namespace qip
