#pragma once

#include <array>
#include <string>

#include "qip/gates.hpp"
#include "qip/measurement.hpp"

namespace qip {

// ---------------------------------------------------------------------------
// Classical 3-bit repetition code

inline double repetition_logical_error(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("repetition_logical_error: p out of range");
  return 3.0 * p * p - 2.0 * p * p * p;
}

// Encode one bit into three, flip each independently w.p. p, majority-vote.
inline double repetition_mc(double p, std::size_t trials, RngStream& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("repetition_mc: p out of range");
  if (trials < 1) throw std::invalid_argument("repetition_mc: trials must be >= 1");
  std::size_t failures = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream r = rng.derive(t);
    int flips = 0;
    for (int b = 0; b < 3; ++b)
      if (r.bernoulli(p)) ++flips;
    if (flips >= 2) ++failures;
  }
  return static_cast<double>(failures) / static_cast<double>(trials);
}

// ---------------------------------------------------------------------------
// 3-qubit bit-flip code

struct LogicalQubit3 {
  PureState state;          // 3 physical qubits, optionally followed by 1 bath qubit
  bool has_bath = false;

  std::size_t n_qubits() const { return state.dims().size(); }
};

enum class InferredError { I, X1, X2, X3 };

struct SyndromeRecord {
  int s1 = +1;  // Z1 Z2
  int s2 = +1;  // Z2 Z3
  InferredError inferred = InferredError::I;
};

struct ErrorChannelSpec {
  enum class Kind { deterministic, coherent, bath } kind = Kind::deterministic;
  cplx epsilon = 0.0;        // coherent/bath error amplitude
  std::size_t which = 1;     // flipped qubit, 0-based
  double bath_overlap = 0.0; // <Bath0|Bath2>, 0 = orthogonal bath branches
};

// Unitary encoding alpha|0> + beta|1> -> alpha|000> + beta|111> via two CNOTs
// from the data qubit onto fresh |0> ancillas. Not a cloning map.
inline LogicalQubit3 encode3(cplx alpha, cplx beta) {
  PureState data = PureState::qubit(beta, alpha);  // amplitude order: |1>, |0>
  PureState joint = kron(kron(data, PureState::down()), PureState::down());
  joint = cnot(0, 1, 3).apply(joint);
  joint = cnot(0, 2, 3).apply(joint);
  return {joint, false};
}

struct LogicalOperators {
  Matrix x, y, z;
};

inline LogicalOperators logical_operators() {
  const Matrix x = kron(kron(sigma_x(), sigma_x()), sigma_x());
  const Matrix z = kron(kron(sigma_z(), sigma_z()), sigma_z());
  return {x, (x * z) * cplx{0.0, 1.0}, z};
}

inline Matrix stabilizer_s1() {
  return kron(kron(sigma_z(), sigma_z()), Matrix::identity(2));
}
inline Matrix stabilizer_s2() {
  return kron(kron(Matrix::identity(2), sigma_z()), sigma_z());
}

inline InferredError syndrome_lookup(int s1, int s2) {
  if (s1 > 0 && s2 > 0) return InferredError::I;
  if (s1 < 0 && s2 > 0) return InferredError::X1;
  if (s1 < 0 && s2 < 0) return InferredError::X2;
  return InferredError::X3;
}

inline std::string inferred_name(InferredError e) {
  switch (e) {
    case InferredError::I: return "I";
    case InferredError::X1: return "X1";
    case InferredError::X2: return "X2";
    default: return "X3";
  }
}

namespace detail {

// Projective measurement of a Hermitian involution (eigenvalues +-1) acting
// on the first 8 dimensions of the state; identity on any bath factor.
inline std::pair<int, PureState> measure_involution(const PureState& state, const Matrix& s,
                                                    RngStream& rng) {
  Matrix op = s;
  if (state.dim() != op.rows()) {
    const std::size_t extra = state.dim() / op.rows();
    op = kron(op, Matrix::identity(extra));
  }
  const Matrix id = Matrix::identity(op.rows());
  const Matrix p_plus = (id + op) * 0.5;
  cvec proj = p_plus.apply(state.amps());
  const double prob_plus = norm2(proj);
  const int value = rng.uniform() < prob_plus ? +1 : -1;
  if (value < 0) {
    const Matrix p_minus = (id - op) * 0.5;
    proj = p_minus.apply(state.amps());
  }
  const double n = norm2(proj);
  if (n < tol::state) throw regime_error("measure_involution: zero-probability branch sampled");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& a : proj) a *= scale;
  return {value, PureState(state.dims(), std::move(proj))};
}

}  // namespace detail

inline std::pair<SyndromeRecord, LogicalQubit3> measure_stabilizers(const LogicalQubit3& lq,
                                                                    RngStream& rng) {
  auto [s1, after1] = detail::measure_involution(lq.state, stabilizer_s1(), rng);
  auto [s2, after2] = detail::measure_involution(after1, stabilizer_s2(), rng);
  SyndromeRecord rec{s1, s2, syndrome_lookup(s1, s2)};
  return {rec, LogicalQubit3{after2, lq.has_bath}};
}

inline LogicalQubit3 inject_error(const LogicalQubit3& lq, const ErrorChannelSpec& spec) {
  if (std::abs(spec.epsilon) > 1.0 + tol::state)
    throw std::invalid_argument("inject_error: |epsilon| must be <= 1");
  if (spec.which > 2) throw std::invalid_argument("inject_error: qubit index out of range");
  if (lq.has_bath) throw std::invalid_argument("inject_error: state already carries a bath");

  const Matrix x_err = embed_1q(sigma_x(), spec.which, 3);
  switch (spec.kind) {
    case ErrorChannelSpec::Kind::deterministic:
      return {PureState(lq.state.dims(), x_err.apply(lq.state.amps())), false};

    case ErrorChannelSpec::Kind::coherent: {
      const double c = std::sqrt(1.0 - std::norm(spec.epsilon));
      const cvec& psi = lq.state.amps();
      cvec flipped = x_err.apply(psi);
      cvec out(psi.size());
      for (std::size_t i = 0; i < psi.size(); ++i) out[i] = c * psi[i] + spec.epsilon * flipped[i];
      const double n = norm2(out);
      if (std::abs(n - 1.0) > tol::state)
        throw regime_error("inject_error: coherent branch lost normalization");
      return {PureState(lq.state.dims(), std::move(out)), false};
    }

    case ErrorChannelSpec::Kind::bath:
    default: {
      const double eta = spec.bath_overlap;
      if (eta < -1.0 || eta > 1.0)
        throw std::invalid_argument("inject_error: bath overlap out of range");
      // Bath branch states: Bath0 = |0>, Bath2 = eta|0> + sqrt(1-eta^2)|1>.
      const PureState bath0 = PureState::down();
      const PureState bath2 = PureState::qubit(std::sqrt(1.0 - eta * eta), eta);
      const double c = std::sqrt(1.0 - std::norm(spec.epsilon));
      const cvec flipped = x_err.apply(lq.state.amps());
      const PureState branch0 = kron(lq.state, bath0);
      const PureState branch2 = kron(PureState(lq.state.dims(), flipped), bath2);
      cvec out(branch0.dim());
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c * branch0.amps()[i] + spec.epsilon * branch2.amps()[i];
      const double n = norm2(out);
      if (n < tol::state) throw regime_error("inject_error: bath branch vanished");
      const double scale = 1.0 / std::sqrt(n);
      for (auto& a : out) a *= scale;
      return {PureState(branch0.dims(), std::move(out)), true};
    }
  }
}

inline LogicalQubit3 apply_correction(const LogicalQubit3& lq, InferredError which) {
  if (which == InferredError::I) return lq;
  const std::size_t qubit = which == InferredError::X1 ? 0 : which == InferredError::X2 ? 1 : 2;
  const Matrix op = embed_1q(sigma_x(), qubit, lq.n_qubits());
  return {PureState(lq.state.dims(), op.apply(lq.state.amps())), lq.has_bath};
}

inline std::pair<LogicalQubit3, SyndromeRecord> qec_cycle(const LogicalQubit3& lq,
                                                          RngStream& rng) {
  auto [rec, collapsed] = measure_stabilizers(lq, rng);
  return {apply_correction(collapsed, rec.inferred), rec};
}

// Reduced state of the 3 physical qubits when a bath is attached.
inline DensityMatrix reduced_system_state(const LogicalQubit3& lq) {
  if (!lq.has_bath) return DensityMatrix::from_pure(lq.state);
  const DensityMatrix rho = DensityMatrix::from_pure(lq.state);
  return partial_trace(rho, {0, 1, 2});
}

struct EntropyAccounting {
  double syndrome_shannon;            // Shannon entropy of the syndrome record
  double pre_measurement_entanglement; // system-bath entanglement before readout
};

// A coherent amplitude-epsilon error entangled with an orthogonal bath puts
// H2(|eps|^2) bits of entanglement between system and bath; reading the
// syndrome transfers exactly that many bits into the classical record.
inline EntropyAccounting entropy_accounting(cplx epsilon) {
  if (std::abs(epsilon) > 1.0 + tol::state)
    throw std::invalid_argument("entropy_accounting: |epsilon| must be <= 1");
  const double p = std::min(1.0, std::norm(epsilon));
  const double record = shannon_entropy({1.0 - p, p});

  LogicalQubit3 lq = encode3(std::sqrt(0.5), std::sqrt(0.5));
  lq = inject_error(lq, {ErrorChannelSpec::Kind::bath, epsilon, 1, 0.0});
  const double entanglement = von_neumann_entropy(reduced_system_state(lq));
  return {record, entanglement};
}

}  // namespace qip
