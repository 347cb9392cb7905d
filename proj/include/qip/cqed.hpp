#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qip/eigen.hpp"
#include "qip/matrix.hpp"
#include "qip/states.hpp"

namespace qip {

// ---------------------------------------------------------------------------
// LC oscillator quantization (hbar = 1)

struct LCParams {
  double L = 1.0;
  double C = 1.0;
};

struct LCQuantization {
  double omega;    // 1/sqrt(LC)
  double z;        // sqrt(L/C)
  double phi_zpf;  // sqrt(Z/2)
  double q_zpf;    // sqrt(1/(2Z)); phi_zpf * q_zpf = 1/2
};

inline LCQuantization lc_quantize(const LCParams& p) {
  if (p.L <= 0.0 || p.C <= 0.0) throw std::invalid_argument("lc_quantize: L, C must be positive");
  const double z = std::sqrt(p.L / p.C);
  return {1.0 / std::sqrt(p.L * p.C), z, std::sqrt(z / 2.0), std::sqrt(1.0 / (2.0 * z))};
}

// ---------------------------------------------------------------------------
// One-port reactive network: shunt capacitor in parallel with series-LC branches

struct SeriesLC {
  double L;
  double C;  // may be +infinity for a plain inductor branch
};

struct OnePortNetwork {
  double C0 = 0.0;
  std::vector<SeriesLC> branches;
};

// Susceptance convention: Y = j(w C0) + sum_k 1/(j X_k) with X_k = w L_k - 1/(w C_k),
// returned as a complex number whose imaginary part is the coefficient of j.
// Purely reactive, so Re Y = 0 identically.
inline cplx admittance(const OnePortNetwork& net, double omega) {
  if (omega <= 0.0) throw std::invalid_argument("admittance: omega must be positive");
  double b = omega * net.C0;
  for (const auto& br : net.branches) {
    if (br.L <= 0.0 || br.C <= 0.0) throw std::invalid_argument("admittance: bad branch element");
    const double x = omega * br.L - 1.0 / (omega * br.C);
    if (std::abs(x) < 1e-12 * omega * br.L)
      throw regime_error("admittance: evaluation too close to a series-branch pole");
    b -= 1.0 / x;
  }
  return {0.0, b};
}

struct ModeSpec {
  double omega;
  double phi_zpf;
};

struct NetworkMode {
  double omega;  // admittance zero
  double z;      // 2 / (omega * Im Y'(omega))
};

// Locate admittance zeros in [omega_min, omega_max]: a dense scan brackets
// each rising sign change (the falling ones are poles), then bisection
// refines to relative 1e-10. The slope of Im Y at the zero sets the mode
// impedance via Z = 2/(w Y'), which reproduces sqrt(L/C) for a bare LC.
inline std::vector<NetworkMode> find_modes(const OnePortNetwork& net, double omega_min,
                                           double omega_max, std::size_t n_scan = 4000) {
  if (!(omega_min > 0.0) || !(omega_max > omega_min))
    throw std::invalid_argument("find_modes: bad frequency band");
  if (n_scan < 10) throw std::invalid_argument("find_modes: scan too coarse");

  auto b_of = [&](double w) { return admittance(net, w).imag(); };
  auto safe_b = [&](double w, bool* ok) {
    *ok = true;
    try {
      return b_of(w);
    } catch (const regime_error&) {
      *ok = false;
      return 0.0;
    }
  };

  std::vector<NetworkMode> modes;
  double prev_w = omega_min;
  bool prev_ok = false;
  double prev_b = safe_b(prev_w, &prev_ok);
  for (std::size_t i = 1; i <= n_scan; ++i) {
    const double w = omega_min + (omega_max - omega_min) * static_cast<double>(i) /
                                     static_cast<double>(n_scan);
    bool ok = false;
    const double b = safe_b(w, &ok);
    if (prev_ok && ok && prev_b < 0.0 && b >= 0.0) {
      double lo = prev_w, hi = w, blo = prev_b;
      while ((hi - lo) > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double bm = b_of(mid);
        if ((blo < 0.0) == (bm < 0.0)) {
          lo = mid;
          blo = bm;
        } else {
          hi = mid;
        }
      }
      const double wj = 0.5 * (lo + hi);
      const double h = 1e-6 * wj;
      const double slope = (b_of(wj + h) - b_of(wj - h)) / (2.0 * h);
      modes.push_back({wj, 2.0 / (wj * slope)});
    }
    if (ok) {
      prev_w = w;
      prev_b = b;
    }
    prev_ok = ok;
  }
  if (modes.empty()) throw regime_error("find_modes: no admittance zero in the scanned band");
  return modes;
}

// ---------------------------------------------------------------------------
// Harmonic oscillator wavefunctions sampled on a grid

struct SampledWavefunctions {
  std::vector<double> grid;
  std::vector<double> psi0;  // even Gaussian
  std::vector<double> psi1;  // odd first excited state
};

inline SampledWavefunctions oscillator_wavefunctions(double phi_zpf,
                                                     const std::vector<double>& grid) {
  if (phi_zpf <= 0.0) throw std::invalid_argument("oscillator_wavefunctions: phi_zpf > 0");
  if (grid.size() < 64) throw regime_error("oscillator_wavefunctions: grid too coarse");
  if (grid.front() > -8.0 * phi_zpf || grid.back() < 8.0 * phi_zpf)
    throw regime_error("oscillator_wavefunctions: grid must span +-8 phi_zpf");

  SampledWavefunctions out;
  out.grid = grid;
  const double s2 = phi_zpf * phi_zpf;
  const double norm0 = std::pow(2.0 * std::numbers::pi * s2, -0.25);
  out.psi0.reserve(grid.size());
  out.psi1.reserve(grid.size());
  for (double x : grid) {
    const double g = norm0 * std::exp(-x * x / (4.0 * s2));
    out.psi0.push_back(g);
    out.psi1.push_back(x / phi_zpf * g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transmon in the charge basis

struct TransmonParams {
  double E_J;
  double E_C;
  double n_g = 0.0;
  int n_cut = 12;
};

inline Matrix transmon_hamiltonian(const TransmonParams& p, int n_cut) {
  const std::size_t dim = static_cast<std::size_t>(2 * n_cut + 1);
  Matrix h(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double n = static_cast<double>(i) - static_cast<double>(n_cut);
    h(i, i) = 4.0 * p.E_C * (n - p.n_g) * (n - p.n_g);
    if (i + 1 < dim) {
      h(i, i + 1) = -p.E_J / 2.0;
      h(i + 1, i) = -p.E_J / 2.0;
    }
  }
  return h;
}

// Exact spectrum by diagonalizing 4E_C(n - n_g)^2 - (E_J/2)(|n><n+1| + h.c.).
// A cutoff-doubling pass must leave E0..E2 stable to 1e-9 E_C.
inline std::vector<double> transmon_spectrum_exact(const TransmonParams& p,
                                                   std::size_t n_levels) {
  if (p.E_J <= 0.0 || p.E_C <= 0.0)
    throw std::invalid_argument("transmon_spectrum_exact: E_J, E_C must be positive");
  const double heuristic = 5.0 * std::pow(p.E_J / (8.0 * p.E_C), 0.25);
  if (static_cast<double>(p.n_cut) < heuristic)
    throw std::invalid_argument("transmon_spectrum_exact: n_cut below convergence heuristic");
  if (n_levels > static_cast<std::size_t>(2 * p.n_cut - 3))
    throw std::invalid_argument("transmon_spectrum_exact: n_levels too large for cutoff");

  const auto es = eigendecompose_hermitian(transmon_hamiltonian(p, p.n_cut));
  const auto es2 = eigendecompose_hermitian(transmon_hamiltonian(p, 2 * p.n_cut));
  for (std::size_t k = 0; k < 3 && k < n_levels; ++k)
    if (std::abs(es.values[k] - es2.values[k]) > 1e-9 * p.E_C)
      throw regime_error("transmon_spectrum_exact: cutoff not converged");

  return {es.values.begin(), es.values.begin() + static_cast<std::ptrdiff_t>(n_levels)};
}

struct TransmonPerturbative {
  double omega;       // sqrt(8 E_J E_C)
  double omega01;     // omega - E_C
  double omega12;     // omega01 - E_C
  double alpha;       // E_C (negative anharmonicity magnitude)
  bool in_regime;     // E_J/E_C >= 20
  double phi_zpf;     // (2 E_C / E_J)^{1/4}
};

inline TransmonPerturbative transmon_perturbative(double e_j, double e_c) {
  if (e_j <= 0.0 || e_c <= 0.0)
    throw std::invalid_argument("transmon_perturbative: E_J, E_C must be positive");
  const double omega = std::sqrt(8.0 * e_j * e_c);
  return {omega, omega - e_c, omega - 2.0 * e_c, e_c, e_j / e_c >= 20.0,
          std::pow(2.0 * e_c / e_j, 0.25)};
}

// ---------------------------------------------------------------------------
// Jaynes-Cummings and the dispersive limit

// Basis ordering: |n> (x) {|e>, |g>}; index = 2n + (0 for e, 1 for g).
inline Matrix jc_hamiltonian(double omega_r, double omega_q, double g, std::size_t n_max) {
  const std::size_t dim = 2 * (n_max + 1);
  Matrix h(dim, dim);
  for (std::size_t n = 0; n <= n_max; ++n) {
    h(2 * n + 0, 2 * n + 0) = omega_r * static_cast<double>(n) + omega_q / 2.0;
    h(2 * n + 1, 2 * n + 1) = omega_r * static_cast<double>(n) - omega_q / 2.0;
    if (n + 1 <= n_max) {
      // g (a sigma+ + a^dag sigma-): couples |n+1, g> <-> |n, e>
      const double amp = g * std::sqrt(static_cast<double>(n + 1));
      h(2 * n + 0, 2 * (n + 1) + 1) = amp;
      h(2 * (n + 1) + 1, 2 * n + 0) = amp;
    }
  }
  return h;
}

inline std::vector<double> jc_spectrum(double omega_r, double omega_q, double g,
                                       std::size_t n_max) {
  const double delta = omega_q - omega_r;
  const double heuristic = 5.0 + (delta != 0.0 ? 10.0 * (g / delta) * (g / delta) : 10.0);
  if (static_cast<double>(n_max) < heuristic)
    throw std::invalid_argument("jc_spectrum: n_max below truncation heuristic");
  return eigendecompose_hermitian(jc_hamiltonian(omega_r, omega_q, g, n_max)).values;
}

// Qubit-state-dependent cavity pull. Detuning convention: delta = omega_r - omega_q,
// chosen so the formula matches the exact spectrum, chi = (E_1e - E_0e - E_1g + E_0g)/2.
inline double dispersive_chi(double omega_r, double omega_q, double g) {
  const double delta = omega_r - omega_q;
  if (delta == 0.0 || std::abs(g / delta) > 0.1)
    throw regime_error("dispersive_chi: outside dispersive regime (g/|Delta| > 0.1)");
  return -g * g / delta;
}

namespace detail {

// Energy of the eigenstate with maximal overlap on a given bare basis index.
inline double labeled_energy(const EigenSystem& es, std::size_t bare_index, double min_overlap) {
  std::size_t best = 0;
  double best_ov = -1.0;
  const std::size_t dim = es.values.size();
  for (std::size_t k = 0; k < dim; ++k) {
    const double ov = std::norm(es.vectors(bare_index, k));
    if (ov > best_ov) {
      best_ov = ov;
      best = k;
    }
  }
  if (best_ov < min_overlap)
    throw regime_error("labeled_energy: eigenstate labeling ambiguous (overlap < threshold)");
  return es.values[best];
}

}  // namespace detail

inline double dispersive_chi_numeric(double omega_r, double omega_q, double g,
                                     std::size_t n_max = 24) {
  const auto es = eigendecompose_hermitian(jc_hamiltonian(omega_r, omega_q, g, n_max));
  auto energy = [&](std::size_t n, bool excited) {
    return detail::labeled_energy(es, 2 * n + (excited ? 0 : 1), 0.8);
  };
  return 0.5 * ((energy(1, true) - energy(0, true)) - (energy(1, false) - energy(0, false)));
}

// Multilevel artificial atom coupled to a cavity: levels E_m = m w_q - (alpha/2) m(m-1),
// coupling g (a B^dag + a^dag B) with B the harmonic-ladder lowering operator.
// Used as the oracle for what the two-level truncation leaves out.
inline double dispersive_chi_multilevel(double omega_r, double omega_q, double alpha, double g,
                                        std::size_t atom_levels, std::size_t n_max = 12) {
  if (atom_levels < 2) throw std::invalid_argument("dispersive_chi_multilevel: need >= 2 levels");
  const std::size_t dim = (n_max + 1) * atom_levels;
  Matrix h(dim, dim);
  auto idx = [&](std::size_t n, std::size_t m) { return n * atom_levels + m; };
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::size_t m = 0; m < atom_levels; ++m) {
      const double md = static_cast<double>(m);
      h(idx(n, m), idx(n, m)) =
          omega_r * static_cast<double>(n) + omega_q * md - 0.5 * alpha * md * (md - 1.0);
      if (n + 1 <= n_max && m + 1 < atom_levels) {
        // a^dag B: |n, m+1> -> |n+1, m>
        const double amp =
            g * std::sqrt(static_cast<double>(n + 1)) * std::sqrt(static_cast<double>(m + 1));
        h(idx(n + 1, m), idx(n, m + 1)) = amp;
        h(idx(n, m + 1), idx(n + 1, m)) = amp;
      }
    }
  const auto es = eigendecompose_hermitian(h);
  auto energy = [&](std::size_t n, std::size_t m) {
    return detail::labeled_energy(es, idx(n, m), 0.8);
  };
  return 0.5 * ((energy(1, 1) - energy(0, 1)) - (energy(1, 0) - energy(0, 0)));
}

struct TwoLevelReduction {
  Matrix number_sub;    // b^dag b -> (1 + sigma_z)/2
  Matrix lowering_sub;  // b -> sigma^-
  Matrix raising_sub;   // b^dag -> sigma^+
  std::string validity; // qubit truncation holds for g << alpha
};

inline TwoLevelReduction two_level_reduction() {
  Matrix sm(2, 2), sp(2, 2), num(2, 2);
  sm(1, 0) = 1.0;  // |g><e|
  sp(0, 1) = 1.0;  // |e><g|
  num(0, 0) = 1.0;
  return {num, sm, sp,
          "two-level truncation of the weakly anharmonic ladder; valid for g much less "
          "than the anharmonicity alpha"};
}

// ---------------------------------------------------------------------------
// Multimode Kerr expansion of the Josephson cosine's quartic term

struct KerrMatrix {
  std::vector<double> delta_omega;          // per-mode frequency shift
  std::vector<std::vector<double>> chi;     // symmetric; chi[j][j] self-Kerr
  double fit_residual_rms = 0.0;            // oracle only
};

// Normal-ordered RWA coefficients of V = -(E_J/24) phi^4 with
// phi = sum_j phi_j (a_j + a_j^dag), in the form V = sum delta_w n + 1/2 sum chi n n.
inline KerrMatrix kerr_expansion(const std::vector<ModeSpec>& modes, double e_j) {
  if (modes.empty() || modes.size() > 3)
    throw std::invalid_argument("kerr_expansion: supports 1-3 modes");
  for (const auto& m : modes)
    if (m.phi_zpf <= 0.0 || m.phi_zpf > 0.5)
      throw regime_error("kerr_expansion: phi_zpf outside validity range (0, 0.5]");

  const std::size_t m = modes.size();
  KerrMatrix out;
  out.delta_omega.assign(m, 0.0);
  out.chi.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    const double pj2 = modes[j].phi_zpf * modes[j].phi_zpf;
    out.chi[j][j] = -(e_j / 2.0) * pj2 * pj2;
    out.delta_omega[j] = -(e_j / 4.0) * pj2 * pj2;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      const double pk2 = modes[k].phi_zpf * modes[k].phi_zpf;
      out.chi[j][k] = -e_j * pj2 * pk2;
      out.delta_omega[j] += -(e_j / 2.0) * pj2 * pk2;
    }
  }
  return out;
}

namespace detail {

// Solve the square system a x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_real(std::vector<std::vector<double>> a,
                                      std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (std::abs(a[col][col]) < 1e-14)
      throw regime_error("solve_real: singular least-squares system");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace detail

// Brute-force check of kerr_expansion: diagonalize H0 - (E_J/24) phi^4 exactly
// in a truncated Fock space, label eigenstates by maximal overlap with bare
// occupation states, and least-squares fit the labeled energies to
// E(n) = c0 + sum_j c_j n_j + sum_{j<=k} d_jk n_j n_k.
inline KerrMatrix quartic_oracle(const std::vector<ModeSpec>& modes, double e_j,
                                 std::size_t n_max, std::size_t n_fit = 3) {
  if (modes.empty() || modes.size() > 3)
    throw std::invalid_argument("quartic_oracle: supports 1-3 modes");
  if (n_max < 6) throw std::invalid_argument("quartic_oracle: n_max must be >= 6");
  if (n_fit + 2 > n_max) throw std::invalid_argument("quartic_oracle: n_fit too close to n_max");

  const std::size_t m = modes.size();
  const std::size_t per = n_max + 1;
  std::size_t dim = 1;
  for (std::size_t j = 0; j < m; ++j) dim *= per;
  if (dim > 1200) throw std::invalid_argument("quartic_oracle: truncated space too large");

  // phi operator and bare Hamiltonian in the product Fock basis.
  Matrix phi(dim, dim);
  Matrix h(dim, dim);
  std::vector<std::size_t> stride(m, 1);
  for (std::size_t j = m; j-- > 1;) stride[j - 1] = stride[j] * per;
  for (std::size_t i = 0; i < dim; ++i) {
    double e0 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t nj = (i / stride[j]) % per;
      e0 += modes[j].omega * static_cast<double>(nj);
      if (nj + 1 < per) {
        const std::size_t up = i + stride[j];
        const double amp = modes[j].phi_zpf * std::sqrt(static_cast<double>(nj + 1));
        phi(i, up) = phi(i, up) + amp;
        phi(up, i) = phi(up, i) + amp;
      }
    }
    h(i, i) = e0;
  }
  const Matrix phi2 = phi * phi;
  h = h + (phi2 * phi2) * (-e_j / 24.0);

  const auto es = eigendecompose_hermitian(h);

  // Collect labeled energies for all occupation vectors with every n_j <= n_fit.
  std::size_t n_labels = 1;
  for (std::size_t j = 0; j < m; ++j) n_labels *= (n_fit + 1);
  const std::size_t n_coef = 1 + m + m * (m + 1) / 2;
  std::vector<std::vector<double>> design;
  std::vector<double> rhs;
  for (std::size_t lab = 0; lab < n_labels; ++lab) {
    std::vector<double> n(m);
    std::size_t rem = lab, bare = 0;
    for (std::size_t j = m; j-- > 0;) {
      n[j] = static_cast<double>(rem % (n_fit + 1));
      rem /= (n_fit + 1);
    }
    for (std::size_t j = 0; j < m; ++j) bare += static_cast<std::size_t>(n[j]) * stride[j];
    rhs.push_back(detail::labeled_energy(es, bare, 0.8));
    std::vector<double> row;
    row.push_back(1.0);
    for (std::size_t j = 0; j < m; ++j) row.push_back(n[j]);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j; k < m; ++k) row.push_back(n[j] * n[k]);
    design.push_back(std::move(row));
  }

  // Normal equations.
  std::vector<std::vector<double>> ata(n_coef, std::vector<double>(n_coef, 0.0));
  std::vector<double> atb(n_coef, 0.0);
  for (std::size_t r = 0; r < design.size(); ++r)
    for (std::size_t i = 0; i < n_coef; ++i) {
      atb[i] += design[r][i] * rhs[r];
      for (std::size_t j2 = 0; j2 < n_coef; ++j2) ata[i][j2] += design[r][i] * design[r][j2];
    }
  const std::vector<double> coef = detail::solve_real(ata, atb);

  double ss = 0.0;
  for (std::size_t r = 0; r < design.size(); ++r) {
    double pred = 0.0;
    for (std::size_t i = 0; i < n_coef; ++i) pred += design[r][i] * coef[i];
    ss += (pred - rhs[r]) * (pred - rhs[r]);
  }

  KerrMatrix out;
  out.delta_omega.assign(m, 0.0);
  out.chi.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) out.delta_omega[j] = coef[1 + j] - modes[j].omega;
  std::size_t q = 1 + m;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j; k < m; ++k, ++q) {
      if (j == k) {
        out.chi[j][j] = 2.0 * coef[q];
      } else {
        out.chi[j][k] = coef[q];
        out.chi[k][j] = coef[q];
      }
    }
  out.fit_residual_rms = std::sqrt(ss / static_cast<double>(design.size()));
  return out;
}

}  // namespace qip
