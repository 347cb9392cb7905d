#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qip/states.hpp"

namespace qip {

// Measurement / quantization axis n = (sin t cos p, sin t sin p, cos t).
struct MeasurementAxis {
  double theta = 0.0;  // polar angle, [0, pi]
  double phi = 0.0;    // azimuthal angle, [0, 2 pi)

  double nx() const { return std::sin(theta) * std::cos(phi); }
  double ny() const { return std::sin(theta) * std::sin(phi); }
  double nz() const { return std::cos(theta); }

  static MeasurementAxis z() { return {0.0, 0.0}; }
  static MeasurementAxis x() { return {std::numbers::pi / 2.0, 0.0}; }
};

// A labeled unitary. The constructor enforces unitarity.
struct GateOp {
  std::string label;
  Matrix u;

  GateOp(std::string lbl, Matrix m) : label(std::move(lbl)), u(std::move(m)) {
    if (!u.is_unitary(tol::state)) throw std::invalid_argument("GateOp: matrix is not unitary");
  }

  PureState apply(const PureState& psi) const {
    return PureState(psi.dims(), u.apply(psi.amps()));
  }
};

// O = n.sigma
inline Matrix pauli_axis(const MeasurementAxis& n) {
  return sigma_x() * cplx{n.nx(), 0.0} + sigma_y() * cplx{n.ny(), 0.0} +
         sigma_z() * cplx{n.nz(), 0.0};
}

// Spinor eigenstates of n.sigma with eigenvalues +1 / -1:
//   psi+ = ( cos(t/2) e^{-i p/2}, sin(t/2) e^{+i p/2} )
//   psi- = (-sin(t/2) e^{-i p/2}, cos(t/2) e^{+i p/2} )
inline std::pair<PureState, PureState> spin_eigenstates(double theta, double phi) {
  const cplx ep = std::polar(1.0, phi / 2.0);
  const cplx em = std::polar(1.0, -phi / 2.0);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {PureState::qubit(c * em, s * ep), PureState::qubit(-s * em, c * ep)};
}

// U = exp(i (Theta/2) v.sigma) with cos Theta = n'.n and v = n' x n / |n' x n|.
// Undefined for parallel or antiparallel axes (the cross product vanishes).
inline GateOp axis_change_unitary(const MeasurementAxis& n, const MeasurementAxis& n_prime) {
  const double ax = n_prime.nx(), ay = n_prime.ny(), az = n_prime.nz();
  const double bx = n.nx(), by = n.ny(), bz = n.nz();
  double vx = ay * bz - az * by;
  double vy = az * bx - ax * bz;
  double vz = ax * by - ay * bx;
  const double vlen = std::sqrt(vx * vx + vy * vy + vz * vz);
  if (vlen < 1e-12)
    throw regime_error("axis_change_unitary: axes parallel or antiparallel, rotation degenerate");
  vx /= vlen;
  vy /= vlen;
  vz /= vlen;
  const double cos_big = std::clamp(ax * bx + ay * by + az * bz, -1.0, 1.0);
  const double big = std::acos(cos_big);
  // exp(i a v.sigma) = cos(a) I + i sin(a) v.sigma
  const double a = big / 2.0;
  Matrix u = Matrix::identity(2) * cplx{std::cos(a), 0.0} +
             (sigma_x() * cplx{vx, 0.0} + sigma_y() * cplx{vy, 0.0} + sigma_z() * cplx{vz, 0.0}) *
                 cplx{0.0, std::sin(a)};
  return GateOp("U(axis-change)", std::move(u));
}

// R^y(angle) = exp(-i (angle/2) sigma_y)
inline GateOp rotation_y(double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  return GateOp("Ry(" + std::to_string(angle) + ")", Matrix{{c, -s}, {s, c}});
}

// H = (sigma_z + sigma_x)/sqrt(2)
inline GateOp hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return GateOp("H", Matrix{{r, r}, {r, -r}});
}

// Embed a single-qubit gate on qubit `target` of an n-qubit register.
inline Matrix embed_1q(const Matrix& u, std::size_t target, std::size_t n_qubits) {
  if (target >= n_qubits) throw std::invalid_argument("embed_1q: invalid qubit index");
  Matrix full = (target == 0) ? u : Matrix::identity(2);
  for (std::size_t q = 1; q < n_qubits; ++q)
    full = kron(full, q == target ? u : Matrix::identity(2));
  return full;
}

// CNOT with the given control/target, via the Pauli form
// (I + Z_c)/2 X_t + (I - Z_c)/2 I_t  (control excited flips the target).
inline GateOp cnot(std::size_t control, std::size_t target, std::size_t n_qubits) {
  if (control == target) throw std::invalid_argument("cnot: control == target");
  if (control >= n_qubits || target >= n_qubits)
    throw std::invalid_argument("cnot: invalid qubit index");
  const Matrix proj_e = (Matrix::identity(2) + sigma_z()) * cplx{0.5, 0.0};
  const Matrix proj_g = (Matrix::identity(2) - sigma_z()) * cplx{0.5, 0.0};
  Matrix flip(1, 1), keep(1, 1);
  flip(0, 0) = 1.0;
  keep(0, 0) = 1.0;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    const Matrix& f = (q == control) ? proj_e : (q == target ? sigma_x() : Matrix::identity(2));
    const Matrix& k = (q == control) ? proj_g : Matrix::identity(2);
    flip = kron(flip, f);
    keep = kron(keep, k);
  }
  return GateOp("CNOT(" + std::to_string(control) + "," + std::to_string(target) + ")",
                flip + keep);
}

// The four Bell states with explicit signs:
//   B0 = (|ud> - |du>)/sqrt2        B1 = (|ud> + |du>)/sqrt2
//   B2 = (-|uu> + |dd>)/sqrt2       B3 = (-|uu> - |dd>)/sqrt2
inline PureState bell_state(int k) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case 0: return PureState({2, 2}, {0.0, r, -r, 0.0});
    case 1: return PureState({2, 2}, {0.0, r, r, 0.0});
    case 2: return PureState({2, 2}, {-r, 0.0, 0.0, r});
    case 3: return PureState({2, 2}, {-r, 0.0, 0.0, -r});
    default: throw std::invalid_argument("bell_state: label outside 0..3");
  }
}

// CNOT(0,1) then H on qubit 0: maps the Bell basis onto signed computational
// basis states (B0 -> +|ge>, B1 -> +|ee>, B2 -> -|gg>, B3 -> -|eg>).
inline PureState bell_measurement_map(const PureState& state) {
  if (state.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("bell_measurement_map: expects a two-qubit state");
  const PureState after_cnot = cnot(0, 1, 2).apply(state);
  return PureState({2, 2}, embed_1q(hadamard().u, 0, 2).apply(after_cnot.amps()));
}

inline PureState bell_measurement_inverse(const PureState& state) {
  if (state.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("bell_measurement_inverse: expects a two-qubit state");
  const cvec after_h = embed_1q(hadamard().u, 0, 2).apply(state.amps());
  return cnot(0, 1, 2).apply(PureState({2, 2}, after_h));
}

inline constexpr std::size_t kMaxQftQubits = 10;

// Dense quantum Fourier transform on n qubits:
//   out[k] = (1/sqrt N) sum_j exp(2 pi i k j / N) in[j].
inline Matrix qft(std::size_t n_qubits) {
  if (n_qubits > kMaxQftQubits) throw regime_error("qft: register too large");
  const std::size_t n = std::size_t{1} << n_qubits;
  const double r = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix u(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      u(k, j) = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k * j) /
                                  static_cast<double>(n));
  return u;
}

// Classical discrete Fourier transform of an arbitrary complex sequence,
// same sign/normalization convention as qft(). Used as the oracle the
// unitary is checked against.
inline cvec dft(const cvec& f) {
  const std::size_t n = f.size();
  const double r = 1.0 / std::sqrt(static_cast<double>(n));
  cvec out(n, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      out[k] += std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k * j) /
                                  static_cast<double>(n)) *
                f[j];
  return out;
}

}  // namespace qip
