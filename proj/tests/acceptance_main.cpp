// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qip/cqed.hpp"
#include "qip/experiments.hpp"
#include "qip/protocols.hpp"
#include "qip/qec.hpp"

using namespace qip;

namespace {

int failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d: %-28s %s\n", ok ? "PASS" : "FAIL", number, name,
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double binom_sd(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

PureState random_state(RngStream& r) {
  return spin_eigenstates(std::acos(2.0 * r.uniform() - 1.0),
                          2.0 * std::numbers::pi * r.uniform()).first;
}

// 1. quantum money
void c1() {
  const std::size_t trials = 100000;
  RngStream rng(42);
  std::size_t forged = 0, genuine = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream r = rng.derive(t);
    auto bill = money_issue(8, t, r);
    if (money_verify(bill, bill.secret, r)) ++genuine;
    auto fake = money_counterfeit(bill, {}, r);
    if (money_verify(fake, bill.secret, r)) ++forged;
  }
  const double expected = std::pow(0.75, 8.0);
  const double rate = static_cast<double>(forged) / trials;
  const bool ok = genuine == trials &&
                  std::abs(rate - expected) < 3.0 * binom_sd(expected, trials);
  report(1, "quantum money", ok,
         fmt("forged rate %.6f vs (3/4)^8 = %.6f; genuine %g/1", rate, expected,
             static_cast<double>(genuine) / trials));
}

// 2. BB84
void c2() {
  RngStream rng(7);
  const auto big = bb84_run(10000, 100, false, rng);
  const double sift = static_cast<double>(big.sifted_indices.size()) / 10000.0;
  const bool sift_ok = std::abs(sift - 0.5) < 3.0 * binom_sd(0.5, 10000.0);

  const std::size_t sessions = 10000;
  std::size_t detected = 0;
  for (std::size_t t = 0; t < sessions; ++t) {
    RngStream r = rng.derive(t);
    if (bb84_run(100, 20, true, r).eve_detected) ++detected;
  }
  const double expected = 1.0 - std::pow(0.75, 20.0);
  const double rate = static_cast<double>(detected) / sessions;
  const bool det_ok = std::abs(rate - expected) < 3.0 * binom_sd(expected, sessions);
  report(2, "BB84", sift_ok && det_ok,
         fmt("sift %.4f; detection %.5f vs %.5f", sift, rate, expected));
}

// 3. CHSH
void c3() {
  const double s_exact = chsh_expectation(bell_state(0));
  const double want = -2.0 * std::sqrt(2.0);
  bool ok = std::abs(s_exact - want) < 1e-9;

  RngStream rng(3);
  const auto est = chsh_sample(bell_state(0), 100000, rng);
  ok = ok && std::abs(est.s - want) < 3.0 * est.stderr_s;

  RngStream prng(8);
  for (int t = 0; t < 1000 && ok; ++t) {
    RngStream r = prng.derive(t);
    ok = std::abs(chsh_expectation(kron(random_state(r), random_state(r)))) <= 2.0 + 1e-10;
  }
  report(3, "CHSH", ok, fmt("exact %.9f; sampled %.4f +- %.4f", s_exact, est.s, est.stderr_s));
}

// 4. dense coding
void c4() {
  bool ok = true;
  for (int hi = 0; hi < 2; ++hi)
    for (int lo = 0; lo < 2; ++lo) ok = ok && densecode_send({hi, lo}) == TwoBitMessage{hi, lo};

  auto ident = [&](const Matrix& op, int k) {
    const cvec got = embed_1q(op, 0, 2).apply(bell_state(0).amps());
    const cvec want = bell_state(k).amps();
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(got[i] - want[i]));
    return m < 1e-12;
  };
  ok = ok && ident(sigma_z(), 1) && ident(sigma_x(), 2) && ident(sigma_y() * cplx{0.0, 1.0}, 3);
  report(4, "dense coding", ok, "4 round trips + 3 local-op identities");
}

// 5. teleportation
void c5() {
  RngStream rng(12);
  bool ok = true;
  double worst = 1.0;
  for (int t = 0; t < 100; ++t) {
    RngStream r = rng.derive(t);
    const PureState psi = random_state(r);
    const auto res = teleport(psi, r);
    worst = std::min(worst, std::abs(psi.overlap(res.bob_state)));
  }
  ok = worst > 1.0 - 1e-10;

  std::array<std::size_t, 4> counts = {0, 0, 0, 0};
  const std::size_t trials = 10000;
  const std::array<std::string, 4> names = {"X", "-iY", "I", "Z"};
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream r = rng.derive(1000000 + t);
    const auto res = teleport(random_state(r), r);
    ++counts[static_cast<std::size_t>(res.bell_outcome)];
    ok = ok && res.correction == names[static_cast<std::size_t>(res.bell_outcome)];
  }
  for (auto c : counts)
    ok = ok && std::abs(static_cast<double>(c) / trials - 0.25) < 3.0 * binom_sd(0.25, trials);
  report(5, "teleportation", ok,
         fmt("min fidelity %.12f; counts spread %.0f", worst,
             static_cast<double>(*std::max_element(counts.begin(), counts.end()) -
                                 *std::min_element(counts.begin(), counts.end()))));
}

// 6. Bell measurement circuit identities
void c6() {
  const struct {
    int k;
    std::size_t idx;
    double sign;
  } table[] = {{0, 2, +1.0}, {1, 0, +1.0}, {2, 3, -1.0}, {3, 1, -1.0}};
  bool ok = true;
  for (const auto& row : table) {
    const cvec got = bell_measurement_map(bell_state(row.k)).amps();
    for (std::size_t i = 0; i < 4; ++i) {
      const cplx want = i == row.idx ? cplx{row.sign, 0.0} : cplx{0.0, 0.0};
      ok = ok && std::abs(got[i] - want) < 1e-12;
    }
  }
  report(6, "Bell circuit identities", ok, "H1 CNOT12 |Bk> -> signed basis states");
}

// 7. entropies
void c7() {
  bool ok = std::abs(von_neumann_entropy(DensityMatrix::maximally_mixed({2})) - 1.0) < 1e-5;
  ok = ok && std::abs(von_neumann_entropy(DensityMatrix::from_pure(PureState::up()))) < 1e-5;
  const DensityMatrix red = partial_trace(DensityMatrix::from_pure(bell_state(0)), {0});
  ok = ok && std::abs(von_neumann_entropy(red) - 1.0) < 1e-5;
  ok = ok && std::abs(shannon_entropy({0.999, 0.001}) - 0.01141) < 1e-5;
  double worst = 0.0;
  for (double e : {0.1, 0.3, 1.0 / std::sqrt(2.0)}) {
    const auto acct = entropy_accounting(e);
    worst = std::max(worst,
                     std::abs(acct.syndrome_shannon - acct.pre_measurement_entanglement));
  }
  ok = ok && worst < 1e-10;
  report(7, "entropies", ok, fmt("record-vs-entanglement max gap %.2e", worst));
}

// 8. QEC
void c8() {
  RngStream rng(50);
  const InferredError expected[4] = {InferredError::I, InferredError::X1, InferredError::X2,
                                     InferredError::X3};
  const auto ideal = encode3(0.6, 0.8);
  bool ok = true;
  for (int e = 0; e < 4; ++e) {
    LogicalQubit3 lq = ideal;
    if (e > 0)
      lq = inject_error(lq, {ErrorChannelSpec::Kind::deterministic, 0.0,
                             static_cast<std::size_t>(e - 1), 0.0});
    auto [fixed, rec] = qec_cycle(lq, rng);
    ok = ok && rec.inferred == expected[e] &&
         std::abs(std::abs(ideal.state.overlap(fixed.state)) - 1.0) < 1e-10;
  }

  const cplx eps{0.3, 0.1};
  const auto corrupted = inject_error(ideal, {ErrorChannelSpec::Kind::coherent, eps, 1, 0.0});
  std::size_t flagged = 0;
  const std::size_t trials = 10000;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream r = rng.derive(t);
    auto [fixed, rec] = qec_cycle(corrupted, r);
    if (rec.inferred != InferredError::I) ++flagged;
    ok = ok && std::abs(std::abs(ideal.state.overlap(fixed.state)) - 1.0) < 1e-10;
  }
  const double p = std::norm(eps);
  ok = ok && std::abs(static_cast<double>(flagged) / trials - p) < 3.0 * binom_sd(p, trials);

  const auto bathy = inject_error(ideal, {ErrorChannelSpec::Kind::bath, eps, 1, 0.0});
  auto [fixed_b, rec_b] = qec_cycle(bathy, rng);
  ok = ok && std::abs(reduced_system_state(fixed_b).purity() - 1.0) < 1e-10;

  RngStream mc(40);
  for (double pp : {0.01, 0.1}) {
    const double want = repetition_logical_error(pp);
    const double got = repetition_mc(pp, 100000, mc);
    ok = ok && std::abs(got - want) < 3.0 * binom_sd(want, 100000.0);
  }
  ok = ok && std::abs(repetition_logical_error(1e-6) - 3.0e-12) < 1e-17;
  report(8, "QEC", ok, fmt("coherent flag rate %.4f vs %.4f",
                           static_cast<double>(flagged) / trials, p));
}

// 9. transmon
void c9() {
  const auto e = transmon_spectrum_exact({50.0, 1.0, 0.0, 12}, 3);
  const double e01 = e[1] - e[0], e12 = e[2] - e[1];
  const double anharm_dev = std::abs((e01 - e12) - 1.0);
  bool ok = std::abs(e01 - 19.0) / 19.0 < 0.02;
  // exact anharmonicity at EJ/EC = 50 is 1.14922 EC (leading correction is
  // O(sqrt(EC/EJ)) ~ 14%), so the comparison margin is 15%
  ok = ok && anharm_dev < 0.15;
  double lo = 1e300, hi = -1e300;
  for (double ng : {0.0, 0.1, 0.25, 0.4, 0.5}) {
    const auto es = transmon_spectrum_exact({50.0, 1.0, ng, 12}, 2);
    lo = std::min(lo, es[1] - es[0]);
    hi = std::max(hi, es[1] - es[0]);
  }
  ok = ok && (hi - lo) < 1e-4;
  const auto big = transmon_spectrum_exact({50.0, 1.0, 0.0, 24}, 3);
  for (int k = 0; k < 3; ++k) ok = ok && std::abs(e[k] - big[k]) < 1e-9;
  report(9, "transmon", ok,
         fmt("E01 %.4f (19 +- 2%%); anharm dev %.3f EC; dispersion %.1e", e01, anharm_dev,
             hi - lo));
}

// 10. dispersive
void c10() {
  std::vector<double> gs = {0.1, 0.05, 0.025}, errs;
  for (double g : gs)
    errs.push_back(std::abs(dispersive_chi_numeric(5.0, 6.0, g) - dispersive_chi(5.0, 6.0, g)) /
                   std::abs(dispersive_chi(5.0, 6.0, g)));
  const double slope = std::log(errs[0] / errs[2]) / std::log(gs[0] / gs[2]);
  const bool ok = errs[0] < 0.02 && slope > 1.7 && slope < 2.3;
  report(10, "dispersive shift", ok,
         fmt("rel err %.4f at g/D=0.1; log-log slope %.2f", errs[0], slope));
}

// 11. Kerr
void c11() {
  bool ok = true;
  double worst = 0.0;
  const std::vector<std::vector<ModeSpec>> cases = {{{5.0, 0.1}}, {{5.0, 0.1}, {7.3, 0.08}}};
  for (const auto& modes : cases) {
    const auto analytic = kerr_expansion(modes, 1.0);
    const auto fitted = quartic_oracle(modes, 1.0, modes.size() == 1 ? 10 : 9);
    for (std::size_t j = 0; j < modes.size(); ++j) {
      worst = std::max(worst, std::abs(fitted.delta_omega[j] - analytic.delta_omega[j]) /
                                  std::abs(analytic.delta_omega[j]));
      for (std::size_t k = 0; k < modes.size(); ++k) {
        ok = ok && analytic.chi[j][k] == analytic.chi[k][j];
        worst = std::max(worst, std::abs(fitted.chi[j][k] - analytic.chi[j][k]) /
                                    std::abs(analytic.chi[j][k]));
      }
    }
  }
  ok = ok && worst < 0.01;
  report(11, "Kerr expansion", ok, fmt("worst coefficient mismatch %.4f%%", 100.0 * worst));
}

// 12. QFT
void c12() {
  RngStream rng(5);
  bool ok = true;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    cvec f(dim);
    double norm = 0.0;
    for (auto& a : f) {
      a = cplx{rng.uniform() - 0.5, rng.uniform() - 0.5};
      norm += std::norm(a);
    }
    for (auto& a : f) a /= std::sqrt(norm);
    const cvec got = qft(n).apply(f);
    const cvec want = dft(f);
    for (std::size_t i = 0; i < dim; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  }
  ok = worst < 1e-9;

  cvec comb(8, cplx{0.0, 0.0});
  comb[0] = comb[2] = comb[4] = comb[6] = 0.5;
  const cvec out = qft(3).apply(comb);
  const double concentrated = std::norm(out[0]) + std::norm(out[4]);
  ok = ok && concentrated > 0.999;
  report(12, "QFT", ok, fmt("max DFT deviation %.2e; comb weight %.6f", worst, concentrated));
}

// 13. determinism
void c13() {
  bool ok = true;
  for (const char* name : {"money", "qec3", "sterngerlach"}) {
    ExperimentSpec spec;
    spec.name = name;
    spec.seed = 42;
    spec.trials = 2000;
    const std::string a = to_csv(run_experiment(spec));
    const std::string b = to_csv(run_experiment(spec));
    ok = ok && a == b && !a.empty();
  }
  report(13, "determinism", ok, "re-runs byte-identical for 3 experiments");
}

}  // namespace

int main() {
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  c10();
  c11();
  c12();
  c13();
  std::printf("%s (%d/13 criteria)\n", failures == 0 ? "ALL PASS" : "FAILURES", 13 - failures);
  return failures == 0 ? 0 : 1;
}
