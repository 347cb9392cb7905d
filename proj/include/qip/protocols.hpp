#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qip/gates.hpp"
#include "qip/measurement.hpp"

namespace qip {

// ---------------------------------------------------------------------------
// One-time pad

using Bits = std::vector<int>;

inline Bits otp_encrypt(const Bits& message, const Bits& pad) {
  if (pad.size() < message.size()) throw std::invalid_argument("otp: pad shorter than message");
  Bits out(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) out[i] = message[i] ^ pad[i];
  return out;
}

inline Bits otp_decrypt(const Bits& cipher, const Bits& pad) { return otp_encrypt(cipher, pad); }

// ---------------------------------------------------------------------------
// Quantum money

enum class Axis { Z, X };

struct SecretEntry {
  Axis axis;
  int sign;  // +1 or -1
};

struct QuantumBill {
  std::uint64_t classical_serial = 0;
  std::vector<SecretEntry> secret;
  std::vector<PureState> qubits;
};

inline MeasurementAxis axis_vector(Axis a) {
  return a == Axis::Z ? MeasurementAxis::z() : MeasurementAxis::x();
}

inline PureState eigenstate_of(Axis a, int sign) {
  if (a == Axis::Z) return sign > 0 ? PureState::up() : PureState::down();
  return sign > 0 ? PureState::plus_x() : PureState::minus_x();
}

inline QuantumBill money_issue(std::size_t n_qubits, std::uint64_t serial, RngStream& rng) {
  if (n_qubits < 1) throw std::invalid_argument("money_issue: need at least one qubit");
  QuantumBill bill;
  bill.classical_serial = serial;
  for (std::size_t i = 0; i < n_qubits; ++i) {
    const Axis a = rng.bernoulli(0.5) ? Axis::Z : Axis::X;
    const int sign = rng.bernoulli(0.5) ? +1 : -1;
    bill.secret.push_back({a, sign});
    bill.qubits.push_back(eigenstate_of(a, sign));
  }
  return bill;
}

// QND verification against the issuer's secret. Genuine bills pass
// deterministically and are left unchanged (each measurement projects onto
// the eigenstate the qubit is already in).
inline bool money_verify(QuantumBill& bill, const std::vector<SecretEntry>& secret,
                         RngStream& rng) {
  if (secret.size() != bill.qubits.size())
    throw std::invalid_argument("money_verify: secret length mismatch");
  bool pass = true;
  for (std::size_t i = 0; i < bill.qubits.size(); ++i) {
    auto out = measure_axis(bill.qubits[i], 0, axis_vector(secret[i].axis), rng);
    bill.qubits[i] = out.post_state;
    if (out.value != secret[i].sign) pass = false;
  }
  return pass;
}

struct CounterfeitStrategy {
  bool rotated = false;
  double angle = 0.0;  // rotation of the guessed Z'/X' pair within the XZ plane
};

// Measure-and-reprepare attack: each qubit is measured along a guessed axis
// and the post-measurement state is handed back as the forgery.
inline QuantumBill money_counterfeit(const QuantumBill& bill, const CounterfeitStrategy& strategy,
                                     RngStream& rng) {
  QuantumBill forged = bill;
  for (auto& q : forged.qubits) {
    const bool pick_z = rng.bernoulli(0.5);
    MeasurementAxis guess;
    if (!strategy.rotated) {
      guess = pick_z ? MeasurementAxis::z() : MeasurementAxis::x();
    } else {
      guess = {strategy.angle + (pick_z ? 0.0 : std::numbers::pi / 2.0), 0.0};
    }
    q = measure_axis(q, 0, guess, rng).post_state;
  }
  return forged;
}

// ---------------------------------------------------------------------------
// BB84

struct BB84Session {
  std::size_t n_raw = 0;
  std::vector<int> alice_bits;
  std::vector<Axis> alice_axes;
  std::vector<Axis> bob_axes;
  std::vector<int> bob_results;  // bits under the +Z,+X -> 1 mapping
  std::vector<std::size_t> sifted_indices;
  std::vector<std::size_t> test_indices;
  Bits key;
  bool eve_present = false;
  bool eve_detected = false;
};

// Full session: prepare, (optionally intercept-resend), measure,
// sift on matching axes, publicly test m_test random sifted bits, keep the
// rest as key. Bits map to signs as +Z,+X -> 1 and -Z,-X -> 0.
inline BB84Session bb84_run(std::size_t n_raw, std::size_t m_test, bool eve, RngStream& rng) {
  BB84Session s;
  s.n_raw = n_raw;
  s.eve_present = eve;
  RngStream alice = rng.derive(1);
  RngStream eve_rng = rng.derive(2);
  RngStream bob = rng.derive(3);

  for (std::size_t i = 0; i < n_raw; ++i) {
    const int bit = alice.bernoulli(0.5) ? 1 : 0;
    const Axis a_axis = alice.bernoulli(0.5) ? Axis::Z : Axis::X;
    s.alice_bits.push_back(bit);
    s.alice_axes.push_back(a_axis);
    PureState qubit = eigenstate_of(a_axis, bit ? +1 : -1);

    if (eve) {
      const Axis e_axis = eve_rng.bernoulli(0.5) ? Axis::Z : Axis::X;
      qubit = measure_axis(qubit, 0, axis_vector(e_axis), eve_rng).post_state;
    }

    const Axis b_axis = bob.bernoulli(0.5) ? Axis::Z : Axis::X;
    s.bob_axes.push_back(b_axis);
    const auto out = measure_axis(qubit, 0, axis_vector(b_axis), bob);
    s.bob_results.push_back(out.value > 0 ? 1 : 0);

    if (a_axis == b_axis) s.sifted_indices.push_back(i);
  }

  if (s.sifted_indices.size() <= m_test)
    throw regime_error("bb84_run: not enough sifted bits for the test subset");

  // Bob picks the public test subset uniformly without replacement.
  std::vector<std::size_t> pool = s.sifted_indices;
  for (std::size_t k = 0; k < m_test; ++k) {
    const std::size_t j = k + bob.uniform_int(pool.size() - k);
    std::swap(pool[k], pool[j]);
    s.test_indices.push_back(pool[k]);
  }

  for (auto idx : s.test_indices)
    if (s.bob_results[idx] != s.alice_bits[idx]) s.eve_detected = true;

  for (auto idx : s.sifted_indices) {
    bool tested = false;
    for (auto t : s.test_indices) tested = tested || t == idx;
    if (!tested) s.key.push_back(s.bob_results[idx]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Superdense coding

struct TwoBitMessage {
  int hi = 0, lo = 0;  // message "hi lo", each 0/1
  bool operator==(const TwoBitMessage&) const = default;
};

inline Matrix dense_coding_op(const TwoBitMessage& msg) {
  const int code = msg.hi * 2 + msg.lo;
  switch (code) {
    case 0: return sigma_x();                              // 00 -> X
    case 1: return Matrix::identity(2);                    // 01 -> I
    case 2: return sigma_y() * cplx{0.0, 1.0};             // 10 -> iY
    default: return sigma_z();                             // 11 -> Z
  }
}

// Bell label produced by each op on B0: I->B0, Z->B1, X->B2, iY->B3.
inline int dense_coding_bell_label(const TwoBitMessage& msg) {
  const int code = msg.hi * 2 + msg.lo;
  constexpr std::array<int, 4> label = {2, 0, 3, 1};
  return label[code];
}

// Computational basis index -> Bell label under the measurement circuit
// (|ge> -> B0, |ee> -> B1, |gg> -> B2, |eg> -> B3).
inline int bell_label_from_basis_index(std::size_t index) {
  constexpr std::array<int, 4> label = {1, 3, 0, 2};  // index order ee, eg, ge, gg
  return label.at(index);
}

// Full round trip: encode msg on qubit 0 of B0, run the Bell measurement
// circuit, read both qubits, decode. Deterministic.
inline TwoBitMessage densecode_send(const TwoBitMessage& msg) {
  PureState state = bell_state(0);
  const Matrix op = embed_1q(dense_coding_op(msg), 0, 2);
  state = PureState({2, 2}, op.apply(state.amps()));
  state = bell_measurement_map(state);
  // The mapped state is +-1 times a computational basis state.
  std::size_t idx = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(state.amps()[i]) > best) {
      best = std::abs(state.amps()[i]);
      idx = i;
    }
  const int bell = bell_label_from_basis_index(idx);
  constexpr std::array<TwoBitMessage, 4> decode = {TwoBitMessage{0, 1}, TwoBitMessage{1, 1},
                                                   TwoBitMessage{0, 0}, TwoBitMessage{1, 0}};
  return decode.at(static_cast<std::size_t>(bell));
}

// ---------------------------------------------------------------------------
// Teleportation

struct TeleportResult {
  PureState bob_state;   // after correction
  int bell_outcome;      // which Bell state Alice announced
  std::string correction;
};

// Bob's correction for each announced Bell state: B0->X, B1->-iY, B2->I, B3->Z.
inline Matrix teleport_correction(int bell_outcome) {
  switch (bell_outcome) {
    case 0: return sigma_x();
    case 1: return sigma_y() * cplx{0.0, -1.0};
    case 2: return Matrix::identity(2);
    case 3: return sigma_z();
    default: throw std::invalid_argument("teleport_correction: bad Bell label");
  }
}

// Teleport an unknown single-qubit state through a shared B0 pair. Alice
// spin-flips her unknown qubit before the Bell measurement; with that
// encoding step the four branches carry exactly the correction table above
// and Bob recovers the input up to global sign.
inline TeleportResult teleport(const PureState& unknown, RngStream& rng) {
  if (unknown.dim() != 2) throw std::invalid_argument("teleport: input must be a single qubit");

  const PureState flipped = PureState({2}, sigma_x().apply(unknown.amps()));
  PureState joint = kron(flipped, bell_state(0));  // qubits: unknown, Alice's half, Bob's half

  // Bell measurement on qubits 0,1: basis-change circuit, then two Z readouts.
  Matrix circuit = kron(cnot(0, 1, 2).u, Matrix::identity(2));
  circuit = kron(embed_1q(hadamard().u, 0, 2), Matrix::identity(2)) * circuit;
  joint = PureState(joint.dims(), circuit.apply(joint.amps()));

  const auto m0 = measure_axis(joint, 0, MeasurementAxis::z(), rng);
  const auto m1 = measure_axis(m0.post_state, 1, MeasurementAxis::z(), rng);

  const std::size_t idx = (m0.value > 0 ? 0u : 1u) * 2u + (m1.value > 0 ? 0u : 1u);
  const int bell = bell_label_from_basis_index(idx);

  // Extract Bob's qubit from the collapsed product state.
  cvec bob(2);
  bob[0] = m1.post_state.amps()[idx * 2 + 0];
  bob[1] = m1.post_state.amps()[idx * 2 + 1];
  cvec corrected = teleport_correction(bell).apply(bob);

  static const std::array<const char*, 4> names = {"X", "-iY", "I", "Z"};
  return {PureState({2}, std::move(corrected)), bell, names.at(static_cast<std::size_t>(bell))};
}

// ---------------------------------------------------------------------------
// CHSH

// Alice measures X or Z; Bob measures the 45-degree combinations
// X' = (Z + X)/sqrt2 and Z' = (Z - X)/sqrt2.
struct ChshSettings {
  MeasurementAxis alice_x = MeasurementAxis::x();
  MeasurementAxis alice_z = MeasurementAxis::z();
  MeasurementAxis bob_xp = {std::numbers::pi / 4.0, 0.0};
  MeasurementAxis bob_zp = {std::numbers::pi / 4.0, std::numbers::pi};
};

// S = <XX'> + <ZZ'> - <XZ'> + <ZX'> from exact expectation values.
inline double chsh_expectation(const PureState& state) {
  if (state.dim() != 4) throw std::invalid_argument("chsh_expectation: expects two qubits");
  const ChshSettings cfg;
  const DensityMatrix rho = DensityMatrix::from_pure(state);
  auto corr = [&](const MeasurementAxis& a, const MeasurementAxis& b) {
    return expectation(kron(pauli_axis(a), pauli_axis(b)), rho);
  };
  return corr(cfg.alice_x, cfg.bob_xp) + corr(cfg.alice_z, cfg.bob_zp) -
         corr(cfg.alice_x, cfg.bob_zp) + corr(cfg.alice_z, cfg.bob_xp);
}

struct ChshEstimate {
  double s = 0.0;
  double stderr_s = 0.0;
  std::size_t n_trials = 0;
};

// Monte-Carlo estimate of S: each trial draws a random setting pair and
// measures both qubits projectively.
inline ChshEstimate chsh_sample(const PureState& state, std::size_t n_trials, RngStream& rng) {
  if (state.dim() != 4) throw std::invalid_argument("chsh_sample: expects two qubits");
  if (n_trials < 1) throw std::invalid_argument("chsh_sample: n_trials must be >= 1");
  const ChshSettings cfg;

  std::array<double, 4> sum = {0, 0, 0, 0};
  std::array<double, 4> count = {0, 0, 0, 0};
  for (std::size_t t = 0; t < n_trials; ++t) {
    RngStream trial = rng.derive(t);
    const bool alice_uses_x = trial.bernoulli(0.5);
    const bool bob_uses_xp = trial.bernoulli(0.5);
    const auto& a_axis = alice_uses_x ? cfg.alice_x : cfg.alice_z;
    const auto& b_axis = bob_uses_xp ? cfg.bob_xp : cfg.bob_zp;
    const auto ma = measure_axis(state, 0, a_axis, trial);
    const auto mb = measure_axis(ma.post_state, 1, b_axis, trial);
    const int setting = (alice_uses_x ? 0 : 1) * 2 + (bob_uses_xp ? 0 : 1);
    sum[setting] += ma.value * mb.value;
    count[setting] += 1.0;
  }

  ChshEstimate est;
  est.n_trials = n_trials;
  double var = 0.0;
  const std::array<double, 4> signs = {+1.0, -1.0, +1.0, +1.0};  // XX', XZ', ZX', ZZ'
  for (int k = 0; k < 4; ++k) {
    if (count[k] == 0.0) throw regime_error("chsh_sample: a setting pair was never drawn");
    const double mean = sum[k] / count[k];
    est.s += signs[k] * mean;
    var += (1.0 - mean * mean) / count[k];  // outcomes are +-1
  }
  est.stderr_s = std::sqrt(var);
  return est;
}

// ---------------------------------------------------------------------------
// Entangled clock

struct ClockOverlaps {
  cplx product;  // <Psi(0)|Psi(t)> for N independently precessing spins
  cplx ghz;      // same for the maximally entangled register
};

inline constexpr std::size_t kMaxClockQubits = 12;

// Both overlaps computed from explicit state vectors. Closed forms:
// product = [(1+e^{-i w t})/2]^N, ghz = (1+e^{-i N w t})/2.
inline ClockOverlaps clock_phase_demo(std::size_t n_qubits, double omega0, double t) {
  if (n_qubits < 1 || n_qubits > kMaxClockQubits)
    throw regime_error("clock_phase_demo: register size out of range");
  const double r = 1.0 / std::sqrt(2.0);
  // |0> + e^{-iwt}|1>: amplitude on |1> = index 0 under the basis convention.
  auto factor = [&](double time) {
    return PureState::qubit(std::polar(r, -omega0 * time), r);
  };
  PureState prod0 = factor(0.0), prodt = factor(t);
  for (std::size_t q = 1; q < n_qubits; ++q) {
    prod0 = kron(prod0, factor(0.0));
    prodt = kron(prodt, factor(t));
  }

  const std::size_t dim = std::size_t{1} << n_qubits;
  auto ghz = [&](double time) {
    cvec amps(dim, cplx{0.0, 0.0});
    amps[dim - 1] = r;                                          // |000...0>
    amps[0] = std::polar(r, -static_cast<double>(n_qubits) * omega0 * time);  // |111...1>
    return PureState(std::vector<std::size_t>(n_qubits, 2), std::move(amps));
  };

  return {prod0.overlap(prodt), ghz(0.0).overlap(ghz(t))};
}

}  // namespace qip
