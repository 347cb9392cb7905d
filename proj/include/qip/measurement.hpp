#pragma once

#include <cmath>
#include <vector>

#include "qip/gates.hpp"
#include "qip/rng.hpp"
#include "qip/states.hpp"

namespace qip {

struct MeasurementOutcome {
  int value;              // +1 or -1
  PureState post_state;   // projected and renormalized
  double probability;     // Born probability of `value`
};

// Projective (QND) measurement of n.sigma on one qubit of a multi-factor
// state. Repeating the measurement on the post state reproduces the value
// with probability 1.
inline MeasurementOutcome measure_axis(const PureState& state, std::size_t qubit,
                                       const MeasurementAxis& n, RngStream& rng) {
  if (qubit >= state.n_factors() || state.dims()[qubit] != 2)
    throw std::invalid_argument("measure_axis: invalid qubit index");

  const Matrix obs = pauli_axis(n);
  const Matrix proj_plus = (Matrix::identity(2) + obs) * cplx{0.5, 0.0};
  const Matrix proj_minus = (Matrix::identity(2) - obs) * cplx{0.5, 0.0};

  std::size_t nq = state.n_factors();
  Matrix full_plus(1, 1);
  full_plus(0, 0) = 1.0;
  for (std::size_t q = 0; q < nq; ++q) {
    if (q == qubit) {
      full_plus = kron(full_plus, proj_plus);
    } else {
      full_plus = kron(full_plus, Matrix::identity(state.dims()[q]));
    }
  }

  cvec projected = full_plus.apply(state.amps());
  double p_plus = norm2(projected);
  p_plus = std::clamp(p_plus, 0.0, 1.0);

  const bool plus = rng.uniform() < p_plus;
  if (!plus) {
    // project onto the -1 branch instead
    cvec amps = state.amps();
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] -= projected[i];
    projected = std::move(amps);
  }
  const double p = plus ? p_plus : 1.0 - p_plus;
  const double nrm = std::sqrt(norm2(projected));
  for (auto& a : projected) a /= nrm;
  return {plus ? +1 : -1, PureState(state.dims(), std::move(projected)), p};
}

// Stern-Gerlach pointer: two real Gaussians of common width sigma centered
// at +d (up) and -d (down), sampled on a uniform grid spanning +-(d + 6 sigma).
class PointerModel {
 public:
  PointerModel(double separation, double width, std::size_t n_points = 2048)
      : d_(separation), sigma_(width) {
    if (width <= 0.0) throw std::invalid_argument("PointerModel: width must be positive");
    if (separation < 0.0) throw std::invalid_argument("PointerModel: separation must be >= 0");
    const double half = d_ + 6.0 * sigma_;
    dx_ = 2.0 * half / static_cast<double>(n_points);
    grid_.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
      grid_[i] = -half + (static_cast<double>(i) + 0.5) * dx_;
  }

  double separation() const { return d_; }
  double width() const { return sigma_; }
  double spacing() const { return dx_; }
  const std::vector<double>& grid() const { return grid_; }

  // Normalized Gaussians: |Phi|^2 has standard deviation sigma.
  double phi_up(double r) const { return gauss(r - d_); }
  double phi_down(double r) const { return gauss(r + d_); }

  // <Phi_up|Phi_down> by Riemann sum on the grid.
  double overlap_numeric() const {
    double s = 0.0;
    for (double r : grid_) s += phi_up(r) * phi_down(r);
    return s * dx_;
  }

  // Analytic Gaussian overlap, exp(-d^2 / 2 sigma^2).
  double overlap_analytic() const { return std::exp(-d_ * d_ / (2.0 * sigma_ * sigma_)); }

  bool contains(double r) const { return r >= grid_.front() - dx_ && r <= grid_.back() + dx_; }

 private:
  double gauss(double x) const {
    const double f = std::pow(2.0 * std::numbers::pi * sigma_ * sigma_, -0.25);
    return f * std::exp(-x * x / (4.0 * sigma_ * sigma_));
  }

  double d_, sigma_, dx_;
  std::vector<double> grid_;
};

namespace detail {
inline void check_spin_amps(cplx alpha, cplx beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol::state)
    throw std::invalid_argument("pointer model: |alpha|^2 + |beta|^2 != 1");
}
}  // namespace detail

// P(R) = |alpha|^2 |Phi_up(R)|^2 + |beta|^2 |Phi_down(R)|^2
inline double pointer_probability(cplx alpha, cplx beta, const PointerModel& pm, double r) {
  detail::check_spin_amps(alpha, beta);
  if (!pm.contains(r)) throw std::invalid_argument("pointer_probability: R outside grid");
  const double up = pm.phi_up(r), down = pm.phi_down(r);
  return std::norm(alpha) * up * up + std::norm(beta) * down * down;
}

// Spin state conditioned on pointer readout R:
//   (alpha Phi_up(R), beta Phi_down(R)) / sqrt(P(R)).
inline PureState conditional_state(cplx alpha, cplx beta, const PointerModel& pm, double r) {
  detail::check_spin_amps(alpha, beta);
  const double p = pointer_probability(alpha, beta, pm, r);
  if (p <= 0.0) throw std::invalid_argument("conditional_state: P(R) = 0, conditioning undefined");
  const double s = 1.0 / std::sqrt(p);
  return PureState::qubit(alpha * pm.phi_up(r) * s, beta * pm.phi_down(r) * s);
}

// Measurement-induced dephasing: diagonal (|alpha|^2, |beta|^2),
// off-diagonal alpha beta* <Phi_up|Phi_down>.
inline DensityMatrix unconditional_rho(cplx alpha, cplx beta, double overlap) {
  detail::check_spin_amps(alpha, beta);
  if (std::abs(overlap) > 1.0 + tol::state)
    throw std::invalid_argument("unconditional_rho: |overlap| > 1");
  Matrix m(2, 2);
  m(0, 0) = std::norm(alpha);
  m(1, 1) = std::norm(beta);
  m(0, 1) = alpha * std::conj(beta) * overlap;
  m(1, 0) = std::conj(m(0, 1));
  return DensityMatrix({2}, std::move(m));
}

// Ensemble average int dR P(R) rho_c(R) on the grid. Must reproduce
// unconditional_rho built from the grid overlap.
inline DensityMatrix reconstruct_unconditional(cplx alpha, cplx beta, const PointerModel& pm) {
  detail::check_spin_amps(alpha, beta);
  Matrix acc(2, 2);
  double mass = 0.0;
  for (double r : pm.grid()) {
    const double p = pointer_probability(alpha, beta, pm, r) * pm.spacing();
    mass += p;
    const PureState cond = conditional_state(alpha, beta, pm, r);
    acc = acc + cond.projector() * cplx{p, 0.0};
  }
  if (std::abs(mass - 1.0) > tol::grid)
    throw regime_error("reconstruct_unconditional: grid mass deficit exceeds tolerance");
  // Renormalize the residual grid error and symmetrize.
  acc = acc * cplx{1.0 / mass, 0.0};
  acc = (acc + acc.dagger()) * cplx{0.5, 0.0};
  return DensityMatrix({2}, std::move(acc));
}

// Draw a pointer readout from P(R) by inverse CDF on the grid.
inline double sample_pointer(cplx alpha, cplx beta, const PointerModel& pm, RngStream& rng) {
  detail::check_spin_amps(alpha, beta);
  const double u = rng.uniform();
  double cdf = 0.0;
  for (double r : pm.grid()) {
    cdf += pointer_probability(alpha, beta, pm, r) * pm.spacing();
    if (u < cdf) return r;
  }
  return pm.grid().back();
}

}  // namespace qip
