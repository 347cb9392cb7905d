#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qip/qec.hpp"

using namespace qip;

namespace {

LogicalQubit3 random_code_state(RngStream& r) {
  const double theta = std::acos(2.0 * r.uniform() - 1.0);
  const double phi = 2.0 * std::numbers::pi * r.uniform();
  const cplx beta = std::polar(std::sin(theta / 2.0), phi);
  return encode3(std::cos(theta / 2.0), beta);
}

}  // namespace

TEST_CASE("classical repetition code closed form") {
  CHECK(repetition_logical_error(0.0) == 0.0);
  CHECK(repetition_logical_error(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(repetition_logical_error(1e-6) == doctest::Approx(3e-12).epsilon(1e-5));
  CHECK_THROWS_AS(repetition_logical_error(1.5), std::invalid_argument);
}

TEST_CASE("classical repetition code Monte-Carlo agrees at p = 0.01 and 0.1") {
  RngStream rng(40);
  for (double p : {0.01, 0.1}) {
    const std::size_t trials = 100000;
    const double expected = repetition_logical_error(p);
    const double got = repetition_mc(p, trials, rng);
    const double sd = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
    CHECK(std::abs(got - expected) < 3.0 * sd);
  }
}

TEST_CASE("encode3 is the two-CNOT unitary, not a cloning map") {
  const cplx a = 0.6, b = 0.8;
  const auto lq = encode3(a, b);
  // alpha|000> + beta|111>: indices 7 and 0 under the e=0 convention
  CHECK(std::abs(lq.state.amps()[7] - a) < 1e-12);
  CHECK(std::abs(lq.state.amps()[0] - b) < 1e-12);

  // cloning would give (alpha|0> + beta|1>)^{x3}; overlap with the code state is not 1
  const PureState single = PureState::qubit(b, a);
  const PureState cloned = kron(kron(single, single), single);
  CHECK(std::abs(lq.state.overlap(cloned)) < 0.999);

  // basis states encode trivially
  CHECK(std::abs(encode3(1.0, 0.0).state.amps()[7] - 1.0) < 1e-12);
}

TEST_CASE("logical operators act as Pauli algebra on the code space") {
  const auto ops = logical_operators();
  const auto lq = encode3(0.6, 0.8);
  const cvec flipped = ops.x.apply(lq.state.amps());
  // X_log swaps the code words
  CHECK(std::abs(flipped[0] - 0.6) < 1e-12);
  CHECK(std::abs(flipped[7] - 0.8) < 1e-12);

  // Z_log eigenvalues on the code words
  const cvec z000 = ops.z.apply(encode3(1.0, 0.0).state.amps());
  CHECK(std::abs(z000[7] - (-1.0)) < 1e-12);  // |000> has all spins down -> eigenvalue -1

  // commutation with both stabilizers, and Y = i X Z
  auto comm = [](const Matrix& p, const Matrix& q) { return (p * q - q * p).max_abs(); };
  for (const Matrix* s : {&ops.x, &ops.y, &ops.z}) {
    CHECK(comm(*s, stabilizer_s1()) < 1e-12);
    CHECK(comm(*s, stabilizer_s2()) < 1e-12);
  }
  CHECK(comm(stabilizer_s1(), stabilizer_s2()) < 1e-12);
  CHECK(((ops.x * ops.z) * cplx{0.0, 1.0} - ops.y).max_abs() < 1e-12);
}

TEST_CASE("syndrome table exhaustively correct on 50 random code states") {
  RngStream rng(50);
  const InferredError expected[4] = {InferredError::I, InferredError::X1, InferredError::X2,
                                     InferredError::X3};
  for (int t = 0; t < 50; ++t) {
    RngStream r = rng.derive(t);
    const LogicalQubit3 ideal = random_code_state(r);
    for (int e = 0; e < 4; ++e) {
      LogicalQubit3 lq = ideal;
      if (e > 0)
        lq = inject_error(lq, {ErrorChannelSpec::Kind::deterministic, 0.0,
                               static_cast<std::size_t>(e - 1), 0.0});
      auto [fixed, rec] = qec_cycle(lq, r);
      CHECK(rec.inferred == expected[e]);
      CHECK(std::abs(std::abs(ideal.state.overlap(fixed.state)) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("stabilizer measurement order does not matter for definite syndromes") {
  RngStream r1(3), r2(3);
  const auto ideal = encode3(0.6, 0.8);
  const auto lq = inject_error(ideal, {ErrorChannelSpec::Kind::deterministic, 0.0, 1, 0.0});
  // measure S2 first by hand, then S1, and compare with the standard order
  auto [v2, after2] = detail::measure_involution(lq.state, stabilizer_s2(), r1);
  auto [v1, after1] = detail::measure_involution(after2, stabilizer_s1(), r1);
  auto [rec, collapsed] = measure_stabilizers(lq, r2);
  CHECK(v1 == rec.s1);
  CHECK(v2 == rec.s2);
  CHECK(std::abs(std::abs(after1.overlap(collapsed.state)) - 1.0) < 1e-10);
}

TEST_CASE("coherent error: normalization, branch statistics, exact removal") {
  const cplx eps{0.3, 0.1};  // |eps|^2 = 0.1
  const auto ideal = encode3(0.28, std::sqrt(1.0 - 0.28 * 0.28));
  const auto corrupted = inject_error(ideal, {ErrorChannelSpec::Kind::coherent, eps, 1, 0.0});
  CHECK(std::abs(norm2(corrupted.state.amps()) - 1.0) < 1e-12);

  RngStream rng(60);
  const std::size_t trials = 10000;
  std::size_t flagged = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream r = rng.derive(t);
    auto [fixed, rec] = qec_cycle(corrupted, r);
    if (rec.inferred != InferredError::I) {
      ++flagged;
      CHECK(rec.inferred == InferredError::X2);
    }
    CHECK(std::abs(std::abs(ideal.state.overlap(fixed.state)) - 1.0) < 1e-10);
  }
  const double expected = std::norm(eps);
  const double sd = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  CHECK(std::abs(static_cast<double>(flagged) / static_cast<double>(trials) - expected) <
        3.0 * sd);
}

TEST_CASE("superposition of all four error operators corrects to fidelity 1") {
  RngStream rng(61);
  const auto ideal = encode3(0.6, 0.8);
  for (int t = 0; t < 20; ++t) {
    RngStream r = rng.derive(t);
    Matrix op = Matrix::identity(8) * cplx{r.uniform() - 0.5, r.uniform() - 0.5};
    for (std::size_t q = 0; q < 3; ++q)
      op = op + embed_1q(sigma_x(), q, 3) * cplx{r.uniform() - 0.5, r.uniform() - 0.5};
    cvec v = op.apply(ideal.state.amps());
    const double n = std::sqrt(norm2(v));
    for (auto& x : v) x /= n;
    auto [fixed, rec] = qec_cycle({PureState({2, 2, 2}, v), false}, r);
    CHECK(std::abs(std::abs(ideal.state.overlap(fixed.state)) - 1.0) < 1e-10);
  }
}

TEST_CASE("bath error: entanglement before, product after the corrective cycle") {
  const cplx eps{0.3, 0.1};
  const auto ideal = encode3(0.6, 0.8);
  const auto lq = inject_error(ideal, {ErrorChannelSpec::Kind::bath, eps, 1, 0.0});
  CHECK(lq.has_bath);
  const double pre = von_neumann_entropy(reduced_system_state(lq));
  CHECK(pre == doctest::Approx(binary_entropy(std::norm(eps))).epsilon(1e-9));

  RngStream rng(62);
  for (int t = 0; t < 20; ++t) {
    RngStream r = rng.derive(t);
    auto [fixed, rec] = qec_cycle(lq, r);
    // Schmidt rank 1: the reduced system state is pure again
    const DensityMatrix red = reduced_system_state(fixed);
    CHECK(red.purity() == doctest::Approx(1.0).epsilon(1e-10));
    const double f =
        std::sqrt(std::abs(expectation(DensityMatrix::from_pure(ideal.state).mat(), red)));
    CHECK(f == doctest::Approx(1.0).epsilon(1e-10));
  }

  // non-orthogonal bath states are supported
  const auto soft = inject_error(ideal, {ErrorChannelSpec::Kind::bath, eps, 1, 0.6});
  CHECK(von_neumann_entropy(reduced_system_state(soft)) < pre);
}

TEST_CASE("entropy accounting: syndrome record carries exactly the removed entanglement") {
  for (double e : {0.1, 0.3, 1.0 / std::sqrt(2.0)}) {
    const auto acct = entropy_accounting(e);
    CHECK(std::abs(acct.syndrome_shannon - acct.pre_measurement_entanglement) < 1e-10);
    CHECK(acct.syndrome_shannon == doctest::Approx(binary_entropy(e * e)).epsilon(1e-9));
  }
  const auto zero = entropy_accounting(0.0);
  CHECK(zero.syndrome_shannon == doctest::Approx(0.0));
  CHECK(zero.pre_measurement_entanglement == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("phase errors are invisible to the bit-flip code (documented limitation)") {
  RngStream rng(70);
  const auto ideal = encode3(0.6, 0.8);
  const Matrix z2 = embed_1q(sigma_z(), 1, 3);
  const LogicalQubit3 bad{PureState({2, 2, 2}, z2.apply(ideal.state.amps())), false};
  auto [rec, collapsed] = measure_stabilizers(bad, rng);
  CHECK(rec.s1 == +1);
  CHECK(rec.s2 == +1);
  CHECK(rec.inferred == InferredError::I);
}

TEST_CASE("two simultaneous flips are miscorrected to the complementary code word") {
  RngStream rng(71);
  const auto ideal = encode3(0.6, 0.8);
  auto lq = inject_error(ideal, {ErrorChannelSpec::Kind::deterministic, 0.0, 0, 0.0});
  lq = inject_error(lq, {ErrorChannelSpec::Kind::deterministic, 0.0, 1, 0.0});
  auto [fixed, rec] = qec_cycle(lq, rng);
  const cvec complementary = logical_operators().x.apply(ideal.state.amps());
  CHECK(std::abs(std::abs(inner(complementary, fixed.state.amps())) - 1.0) < 1e-10);
}
