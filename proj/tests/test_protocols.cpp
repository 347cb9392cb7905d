#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qip/protocols.hpp"

using namespace qip;

TEST_CASE("one-time pad round trip; cipher differs from message for nonzero pad") {
  const Bits msg = {1, 0, 1, 1, 0, 0, 1};
  const Bits pad = {0, 1, 1, 0, 1, 0, 1};
  const Bits cipher = otp_encrypt(msg, pad);
  CHECK(otp_decrypt(cipher, pad) == msg);
  CHECK(cipher != msg);
  CHECK_THROWS_AS(otp_encrypt(msg, {1, 0}), std::invalid_argument);
}

TEST_CASE("genuine bills always verify and are left unchanged") {
  RngStream rng(31);
  for (int t = 0; t < 200; ++t) {
    RngStream r = rng.derive(t);
    auto bill = money_issue(8, static_cast<std::uint64_t>(t), r);
    const auto before = bill.qubits;
    CHECK(money_verify(bill, bill.secret, r));
    for (std::size_t i = 0; i < before.size(); ++i)
      CHECK(std::abs(std::abs(before[i].overlap(bill.qubits[i])) - 1.0) < 1e-10);
  }
}

TEST_CASE("counterfeit pass rate is (3/4)^N for both guessing strategies") {
  const std::size_t n_qubits = 8, trials = 20000;
  const double expected = std::pow(0.75, 8.0);
  const double sd = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));

  for (const CounterfeitStrategy strat : {CounterfeitStrategy{false, 0.0},
                                          CounterfeitStrategy{true, 0.31},
                                          CounterfeitStrategy{true, 1.1}}) {
    RngStream rng(strat.rotated ? 7 + static_cast<std::uint64_t>(strat.angle * 100) : 7);
    std::size_t pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream r = rng.derive(t);
      auto bill = money_issue(n_qubits, t, r);
      auto fake = money_counterfeit(bill, strat, r);
      if (money_verify(fake, bill.secret, r)) ++pass;
    }
    const double rate = static_cast<double>(pass) / static_cast<double>(trials);
    CHECK(std::abs(rate - expected) < 3.5 * sd);
  }
}

TEST_CASE("BB84 without Eve: half the bits sift, all sifted bits agree") {
  RngStream rng(5);
  const auto s = bb84_run(10000, 100, false, rng);
  const double sift = static_cast<double>(s.sifted_indices.size()) / 10000.0;
  CHECK(std::abs(sift - 0.5) < 3.0 * std::sqrt(0.25 / 10000.0));
  for (auto idx : s.sifted_indices) CHECK(s.bob_results[idx] == s.alice_bits[idx]);
  CHECK_FALSE(s.eve_detected);
  CHECK(s.key.size() == s.sifted_indices.size() - 100);
}

TEST_CASE("BB84 with Eve: detection rate 1-(3/4)^M") {
  RngStream rng(6);
  const std::size_t sessions = 2000, m = 20;
  std::size_t detected = 0;
  for (std::size_t t = 0; t < sessions; ++t) {
    RngStream r = rng.derive(t);
    if (bb84_run(200, m, true, r).eve_detected) ++detected;
  }
  const double expected = 1.0 - std::pow(0.75, static_cast<double>(m));
  const double sd = std::sqrt(expected * (1.0 - expected) / static_cast<double>(sessions));
  CHECK(std::abs(static_cast<double>(detected) / static_cast<double>(sessions) - expected) <
        3.0 * sd);
}

TEST_CASE("BB84 aborts when the sifted pool cannot cover the test subset") {
  RngStream rng(1);
  CHECK_THROWS_AS(bb84_run(10, 20, false, rng), regime_error);
}

TEST_CASE("dense coding: local Pauli identities on the singlet") {
  auto apply0 = [](const Matrix& op, const PureState& s) {
    return PureState({2, 2}, embed_1q(op, 0, 2).apply(s.amps()));
  };
  auto close = [](const PureState& a, const PureState& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a.amps()[i] - b.amps()[i]));
    return m < 1e-12;
  };
  const PureState b0 = bell_state(0);
  CHECK(close(apply0(sigma_z(), b0), bell_state(1)));
  CHECK(close(apply0(sigma_x(), b0), bell_state(2)));
  CHECK(close(apply0(sigma_y() * cplx{0.0, 1.0}, b0), bell_state(3)));
}

TEST_CASE("dense coding: every two-bit message round-trips") {
  for (int hi = 0; hi < 2; ++hi)
    for (int lo = 0; lo < 2; ++lo) {
      const TwoBitMessage msg{hi, lo};
      CHECK(densecode_send(msg) == msg);
    }
}

TEST_CASE("teleportation: unit fidelity for 100 random states") {
  RngStream rng(12);
  for (int t = 0; t < 100; ++t) {
    RngStream r = rng.derive(t);
    const double theta = std::acos(2.0 * r.uniform() - 1.0);
    const double phi = 2.0 * std::numbers::pi * r.uniform();
    const PureState psi = spin_eigenstates(theta, phi).first;
    const auto res = teleport(psi, r);
    CHECK(std::abs(std::abs(psi.overlap(res.bob_state)) - 1.0) < 1e-10);
  }
}

TEST_CASE("teleportation: Bell outcomes uniform, corrections as tabulated") {
  RngStream rng(13);
  std::array<std::size_t, 4> counts = {0, 0, 0, 0};
  const std::size_t trials = 10000;
  const std::array<std::string, 4> names = {"X", "-iY", "I", "Z"};
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream r = rng.derive(t);
    const PureState psi = spin_eigenstates(1.0, 0.3).first;
    const auto res = teleport(psi, r);
    ++counts[static_cast<std::size_t>(res.bell_outcome)];
    CHECK(res.correction == names[static_cast<std::size_t>(res.bell_outcome)]);
  }
  const double sd = std::sqrt(0.25 * 0.75 * static_cast<double>(trials));
  for (auto c : counts)
    CHECK(std::abs(static_cast<double>(c) - 0.25 * static_cast<double>(trials)) < 3.5 * sd);
}

TEST_CASE("CHSH: exact singlet value and sampled estimate") {
  CHECK(chsh_expectation(bell_state(0)) ==
        doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-12));
  RngStream rng(3);
  const auto est = chsh_sample(bell_state(0), 50000, rng);
  CHECK(std::abs(est.s - (-2.0 * std::sqrt(2.0))) < 3.0 * est.stderr_s);
}

TEST_CASE("CHSH: product states never violate |S| <= 2") {
  RngStream rng(8);
  for (int t = 0; t < 1000; ++t) {
    RngStream r = rng.derive(t);
    const PureState a =
        spin_eigenstates(std::acos(2.0 * r.uniform() - 1.0), 6.28 * r.uniform()).first;
    const PureState b =
        spin_eigenstates(std::acos(2.0 * r.uniform() - 1.0), 6.28 * r.uniform()).first;
    CHECK(std::abs(chsh_expectation(kron(a, b))) <= 2.0 + 1e-10);
  }
}

TEST_CASE("clock overlaps match the closed forms") {
  const double w = 1.3, t = 0.7;
  for (std::size_t n : {std::size_t{1}, std::size_t{4}, std::size_t{9}}) {
    const auto ov = clock_phase_demo(n, w, t);
    const cplx prod = std::pow((1.0 + std::polar(1.0, -w * t)) / 2.0, static_cast<double>(n));
    const cplx ghz = (1.0 + std::polar(1.0, -static_cast<double>(n) * w * t)) / 2.0;
    CHECK(std::abs(ov.product - prod) < 1e-12);
    CHECK(std::abs(ov.ghz - ghz) < 1e-12);
  }
  // the entangled register reaches its first null N times sooner
  const std::size_t n = 6;
  const double t_null = std::numbers::pi / (static_cast<double>(n) * w);
  CHECK(std::abs(clock_phase_demo(n, w, t_null).ghz) < 1e-12);
  CHECK(std::abs(clock_phase_demo(n, w, t_null).product) > 0.5);
  CHECK_THROWS_AS(clock_phase_demo(kMaxClockQubits + 1, w, t), regime_error);
}
