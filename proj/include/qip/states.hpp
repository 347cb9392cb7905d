#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qip/eigen.hpp"
#include "qip/matrix.hpp"

// Quantum-state primitives over a labeled tensor product of small factors.
//
// Basis convention for qubit factors:
//   index 0 = |1> = |up> = |e> = (1,0)^T
//   index 1 = |0> = |down> = |g> = (0,1)^T
// Composite indices are big-endian in factor order (factor 0 slowest).

namespace qip {

inline const Matrix& sigma_x() {
  static const Matrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}
inline const Matrix& sigma_y() {
  static const Matrix m{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}};
  return m;
}
inline const Matrix& sigma_z() {
  static const Matrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

inline bool finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

class PureState {
 public:
  PureState(std::vector<std::size_t> dims, cvec amps)
      : dims_(std::move(dims)), amps_(std::move(amps)) {
    std::size_t len = 1;
    for (auto d : dims_) {
      if (d < 1) throw std::invalid_argument("PureState: factor dimension < 1");
      len *= d;
    }
    if (len != amps_.size())
      throw std::invalid_argument("PureState: amplitude length != product of dims");
    for (const auto& a : amps_)
      if (!finite(a)) throw std::invalid_argument("PureState: non-finite amplitude");
    if (std::abs(norm2(amps_) - 1.0) > tol::state)
      throw std::invalid_argument("PureState: not normalized");
  }

  // Single qubit from amplitudes (renormalizes exactly-normalized inputs only
  // up to the state tolerance; anything further off is rejected).
  static PureState qubit(cplx up, cplx down) {
    return PureState({2}, {up, down});
  }

  static PureState up() { return qubit(1.0, 0.0); }
  static PureState down() { return qubit(0.0, 1.0); }
  static PureState plus_x() { return qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)); }
  static PureState minus_x() { return qubit(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)); }

  // Basis state |index> of an n-factor register.
  static PureState basis(std::vector<std::size_t> dims, std::size_t index) {
    std::size_t len = 1;
    for (auto d : dims) len *= d;
    cvec amps(len, cplx{0.0, 0.0});
    amps.at(index) = 1.0;
    return PureState(std::move(dims), std::move(amps));
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const cvec& amps() const { return amps_; }
  std::size_t dim() const { return amps_.size(); }
  std::size_t n_factors() const { return dims_.size(); }

  cplx overlap(const PureState& other) const { return inner(amps_, other.amps_); }

  // Projector |psi><psi| as a matrix.
  Matrix projector() const {
    Matrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) m(i, j) = amps_[i] * std::conj(amps_[j]);
    return m;
  }

 private:
  std::vector<std::size_t> dims_;
  cvec amps_;
};

inline PureState kron(const PureState& a, const PureState& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return PureState(std::move(dims), kron(a.amps(), b.amps()));
}

class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::size_t> dims, Matrix mat)
      : dims_(std::move(dims)), mat_(std::move(mat)) {
    std::size_t len = 1;
    for (auto d : dims_) len *= d;
    if (mat_.rows() != len || mat_.cols() != len)
      throw std::invalid_argument("DensityMatrix: matrix size != product of dims");
    if (!mat_.is_hermitian(tol::state))
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(mat_.trace() - cplx{1.0, 0.0}) > tol::state)
      throw std::invalid_argument("DensityMatrix: trace != 1");
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix(psi.dims(), psi.projector());
  }

  static DensityMatrix maximally_mixed(std::vector<std::size_t> dims) {
    std::size_t len = 1;
    for (auto d : dims) len *= d;
    return DensityMatrix(std::move(dims),
                         Matrix::identity(len) * cplx{1.0 / static_cast<double>(len), 0.0});
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const Matrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.rows(); }

  // Eigenvalues, checked against the positive-semidefiniteness floor.
  std::vector<double> eigenvalues() const {
    auto es = eigendecompose_hermitian(mat_);
    if (!es.values.empty() && es.values.front() < -tol::spectral)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    return es.values;
  }

  double purity() const { return (mat_ * mat_).trace().real(); }

 private:
  std::vector<std::size_t> dims_;
  Matrix mat_;
};

struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;
  double length() const { return std::sqrt(x * x + y * y + z * z); }
};

// Tr{O rho}. The imaginary residue is checked before being discarded.
inline double expectation(const Matrix& observable, const DensityMatrix& rho) {
  if (observable.rows() != rho.dim() || observable.cols() != rho.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  if (!observable.is_hermitian(tol::state * std::max(1.0, observable.max_abs())))
    throw std::invalid_argument("expectation: observable is not Hermitian");
  const cplx t = (observable * rho.mat()).trace();
  if (std::abs(t.imag()) > tol::state * std::max(1.0, observable.max_abs()))
    throw std::invalid_argument("expectation: imaginary residue too large");
  return t.real();
}

inline double expectation(const Matrix& observable, const PureState& psi) {
  return expectation(observable, DensityMatrix::from_pure(psi));
}

// Reduced density matrix over the kept factors (in their original order).
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const auto& dims = rho.dims();
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) throw std::invalid_argument("partial_trace: invalid factor index");
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate factor index");
    kept[k] = true;
  }

  std::vector<std::size_t> keep_sorted;
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i) (kept[i] ? keep_sorted : traced).push_back(i);

  std::size_t dim_keep = 1, dim_tr = 1;
  for (auto i : keep_sorted) dim_keep *= dims[i];
  for (auto i : traced) dim_tr *= dims[i];

  // strides of each factor in the full composite index
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  auto full_index = [&](std::size_t keep_idx, std::size_t tr_idx) {
    std::size_t idx = 0;
    for (std::size_t i = keep_sorted.size(); i-- > 0;) {
      idx += (keep_idx % dims[keep_sorted[i]]) * stride[keep_sorted[i]];
      keep_idx /= dims[keep_sorted[i]];
    }
    for (std::size_t i = traced.size(); i-- > 0;) {
      idx += (tr_idx % dims[traced[i]]) * stride[traced[i]];
      tr_idx /= dims[traced[i]];
    }
    return idx;
  };

  Matrix out(dim_keep, dim_keep);
  for (std::size_t i = 0; i < dim_keep; ++i)
    for (std::size_t j = 0; j < dim_keep; ++j) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < dim_tr; ++t)
        s += rho.mat()(full_index(i, t), full_index(j, t));
      out(i, j) = s;
    }

  std::vector<std::size_t> out_dims;
  for (auto i : keep_sorted) out_dims.push_back(dims[i]);
  return DensityMatrix(std::move(out_dims), std::move(out));
}

inline double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

// -sum p log2 p, in bits.
inline double shannon_entropy(const std::vector<double>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (v < -1e-12) throw std::invalid_argument("shannon_entropy: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("shannon_entropy: probabilities do not sum to 1");
  double s = 0.0;
  for (double v : p) s -= xlog2x(v);
  return s;
}

// von Neumann entropy in bits: -sum lambda log2 lambda over eigenvalues.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lam : rho.eigenvalues()) s -= xlog2x(std::max(lam, 0.0));
  return s;
}

inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  return -xlog2x(p) - xlog2x(1.0 - p);
}

// Entropy of a single-qubit state as a function of its polarization length,
// S = -[(1+m)/2] log2[(1+m)/2] - [(1-m)/2] log2[(1-m)/2].
inline double entropy_from_polarization(double m) {
  if (m < 0.0 || m > 1.0)
    throw std::invalid_argument("entropy_from_polarization: m outside [0,1]");
  return binary_entropy(0.5 * (1.0 + m));
}

// m_k = Tr{sigma_k rho} for a single-qubit density matrix.
inline BlochVector pauli_decompose_1q(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("pauli_decompose_1q: not a single qubit");
  return {expectation(sigma_x(), rho), expectation(sigma_y(), rho),
          expectation(sigma_z(), rho)};
}

// rho = (1/2)[I + m.sigma]
inline DensityMatrix bloch_state(const BlochVector& m) {
  if (m.length() > 1.0 + tol::state)
    throw std::invalid_argument("bloch_state: |m| > 1");
  Matrix rho = (Matrix::identity(2) + sigma_x() * cplx{m.x, 0.0} + sigma_y() * cplx{m.y, 0.0} +
                sigma_z() * cplx{m.z, 0.0}) *
               cplx{0.5, 0.0};
  return DensityMatrix({2}, std::move(rho));
}

inline const std::array<Matrix, 4>& pauli_basis() {
  static const std::array<Matrix, 4> q = {Matrix::identity(2), sigma_x(), sigma_y(), sigma_z()};
  return q;
}

// table[j][k] = <Q_j^(1) Q_k^(2)> for a two-qubit density matrix.
inline std::array<std::array<double, 4>, 4> pauli_decompose_2q(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("pauli_decompose_2q: not two qubits");
  std::array<std::array<double, 4>, 4> table{};
  const auto& q = pauli_basis();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) table[j][k] = expectation(kron(q[j], q[k]), rho);
  return table;
}

// rho = (1/4) sum_jk <Q_j Q_k> Q_j x Q_k
inline DensityMatrix pauli_reconstruct_2q(const std::array<std::array<double, 4>, 4>& table) {
  Matrix m(4, 4);
  const auto& q = pauli_basis();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) m = m + kron(q[j], q[k]) * cplx{0.25 * table[j][k], 0.0};
  return DensityMatrix({2, 2}, std::move(m));
}

// e^{-beta H} / Z via eigendecomposition.
inline DensityMatrix thermal_density_matrix(const Matrix& h,
                                            const std::vector<std::size_t>& dims, double beta) {
  if (beta < 0.0) throw std::invalid_argument("thermal_density_matrix: beta < 0");
  auto es = eigendecompose_hermitian(h);
  const std::size_t n = es.values.size();
  // Shift by the ground energy before exponentiating.
  const double e0 = es.values.front();
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::exp(-beta * (es.values[k] - e0));
    z += w[k];
  }
  Matrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += es.vectors(i, k) * (w[k] / z) * std::conj(es.vectors(j, k));
      rho(i, j) = s;
    }
  // Symmetrize away rounding residue.
  rho = (rho + rho.dagger()) * cplx{0.5, 0.0};
  return DensityMatrix(dims, std::move(rho));
}

}  // namespace qip
