#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qip/cqed.hpp"
#include "qip/protocols.hpp"
#include "qip/qec.hpp"

namespace qip {

inline constexpr const char* kToolkitVersion = "1.0.0";

struct ExperimentSpec {
  std::string name;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::size_t trials = 0;  // 0 = use the experiment's default (or exact mode)
  std::string format = "csv";
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct RunReport {
  ExperimentSpec resolved;  // params filled in with defaults applied
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ParamDoc {
  std::string name;
  double default_value;
  std::string doc;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
  std::string reference;  // closed form or identity the run is checked against
  std::size_t default_trials;
  std::vector<ParamDoc> params;
};

inline const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog = {
      {"money", "measure-and-reprepare counterfeiting of random-basis qubit bills",
       "forged pass rate = (3/4)^N", 100000,
       {{"n_qubits", 8, "qubits per bill"},
        {"rotated", 0, "1 = counterfeiter guesses a rotated axis pair"},
        {"angle", 0.3, "rotation of the guessed axis pair (radians)"}}},
      {"bb84", "quantum key distribution with optional intercept-resend attack",
       "sift fraction = 1/2; detection rate = 1-(3/4)^M", 200,
       {{"n_raw", 1000, "raw qubits per session"},
        {"m_test", 20, "publicly compared sifted bits"},
        {"eve", 0, "1 = eavesdropper present"}}},
      {"densecode", "two classical bits through one qubit of a shared Bell pair",
       "exact round trip of all four messages", 0, {}},
      {"teleport", "single-qubit teleportation through a shared Bell pair",
       "fidelity = 1; Bell outcomes uniform at 1/4", 10000, {}},
      {"chsh", "Bell-inequality correlator on the singlet",
       "S = -2*sqrt(2)", 0, {}},
      {"clock", "phase sensitivity of product vs maximally entangled registers",
       "product overlap = [(1+e^{-iwt})/2]^N; entangled = (1+e^{-iNwt})/2", 0,
       {{"n_qubits", 4, "register size"},
        {"omega0", 1.0, "single-spin precession frequency"},
        {"t", 0.5, "evolution time"}}},
      {"qft", "quantum Fourier transform of a periodic amplitude vector",
       "matches the classical DFT; period-p weight on k multiples of 2^n/p", 0,
       {{"n_qubits", 3, "register size"}, {"period", 2, "input period"}}},
      {"sterngerlach", "pointer-state measurement back-action model",
       "<R> = (|a|^2-|b|^2) d; overlap = exp(-d^2/2s^2)", 20000,
       {{"theta", 1.0471975511965976, "spin polar angle"},
        {"phi", 0.5235987755982988, "spin azimuthal angle"},
        {"d", 1.0, "pointer separation"},
        {"sigma", 0.35, "pointer width"}}},
      {"repetition", "classical 3-bit repetition code under symmetric bit flips",
       "p_logical = 3p^2 - 2p^3", 100000, {{"p", 0.1, "per-bit flip probability"}}},
      {"qec3", "3-qubit bit-flip code: syndrome, correction, entropy bookkeeping",
       "error branch probability = |eps|^2; corrected fidelity = 1", 10000,
       {{"epsilon", 0.3, "coherent error amplitude"},
        {"kind", 1, "0 deterministic, 1 coherent, 2 bath"},
        {"which", 2, "flipped qubit, 1-based"}}},
      {"lc", "LC oscillator quantization", "Omega = 1/sqrt(LC); Phi_zpf*Q_zpf = 1/2", 0,
       {{"L", 1.0, "inductance"}, {"C", 1.0, "capacitance"}}},
      {"modes", "normal modes of a one-port reactive network from admittance zeros",
       "single LC: omega = 1/sqrt(LC), Z = sqrt(L/C)", 0,
       {{"c0", 0.5, "shunt capacitance"},
        {"l1", 2.0, "branch-1 inductance"},
        {"c1", 0, "branch-1 series capacitance (0 = none)"},
        {"l2", 0, "branch-2 inductance (0 = absent)"},
        {"c2", 0, "branch-2 series capacitance (0 = none)"},
        {"wmin", 0.1, "scan band lower edge"},
        {"wmax", 10.0, "scan band upper edge"}}},
      {"transmon", "charge-basis transmon spectrum vs the weakly anharmonic ladder",
       "E01 ~ sqrt(8 EJ EC) - EC; anharmonicity ~ -EC", 0,
       {{"ej", 50.0, "Josephson energy"},
        {"ec", 1.0, "charging energy"},
        {"ng", 0.0, "offset charge"},
        {"ncut", 12, "charge-basis cutoff"},
        {"levels", 4, "levels to report"}}},
      {"jc", "Jaynes-Cummings spectrum vs per-block closed form",
       "E = (N-1/2) w_r +- sqrt(Delta^2/4 + g^2 N)", 0,
       {{"wr", 5.0, "cavity frequency"},
        {"wq", 6.0, "qubit frequency"},
        {"g", 0.1, "coupling"},
        {"nmax", 20, "photon truncation"}}},
      {"dispersive", "dispersive cavity pull vs exact diagonalization",
       "chi = -g^2/Delta, Delta = w_r - w_q", 0,
       {{"wr", 5.0, "cavity frequency"},
        {"wq", 6.0, "qubit frequency"},
        {"g", 0.1, "coupling"},
        {"nmax", 24, "photon truncation"}}},
      {"kerr", "normal-ordered Kerr coefficients vs brute-force quartic oracle",
       "chi_jj = -(EJ/2) phi_j^4; chi_jk = -EJ phi_j^2 phi_k^2", 0,
       {{"n_modes", 2, "number of modes (1-3)"},
        {"w1", 5.0, "mode-1 frequency"},
        {"phi1", 0.1, "mode-1 phi_zpf"},
        {"w2", 7.3, "mode-2 frequency"},
        {"phi2", 0.08, "mode-2 phi_zpf"},
        {"w3", 9.1, "mode-3 frequency"},
        {"phi3", 0.06, "mode-3 phi_zpf"},
        {"ej", 1.0, "Josephson energy"},
        {"nmax", 9, "per-mode Fock truncation"}}},
  };
  return catalog;
}

inline const ExperimentInfo* find_experiment(const std::string& name) {
  for (const auto& e : experiment_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

// Levenshtein distance for "did you mean" suggestions on unknown names.
inline std::string nearest_experiment(const std::string& name) {
  auto dist = [](const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      std::size_t prev = row[0];
      row[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j) {
        const std::size_t cur = row[j];
        row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                           prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
        prev = cur;
      }
    }
    return row[b.size()];
  };
  std::string best;
  std::size_t best_d = SIZE_MAX;
  for (const auto& e : experiment_catalog()) {
    const std::size_t d = dist(name, e.name);
    if (d < best_d) {
      best_d = d;
      best = e.name;
    }
  }
  return best;
}

namespace detail {

inline double zscore(double observed, double expected, double stderr_val) {
  if (stderr_val <= 0.0) return 0.0;
  return (observed - expected) / stderr_val;
}

inline double rate_z(double observed, double expected, double n) {
  const double var = expected * (1.0 - expected) / n;
  return zscore(observed, expected, std::sqrt(var));
}

inline std::map<std::string, double> resolve_params(const ExperimentInfo& info,
                                                    const std::map<std::string, double>& user) {
  std::map<std::string, double> out;
  for (const auto& p : info.params) out[p.name] = p.default_value;
  for (const auto& [k, v] : user) {
    if (!out.count(k))
      throw std::invalid_argument("unknown parameter '" + k + "' for experiment " + info.name);
    out[k] = v;
  }
  return out;
}

inline PureState random_qubit(RngStream& rng) {
  const double theta = std::acos(2.0 * rng.uniform() - 1.0);
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return spin_eigenstates(theta, phi).first;
}

}  // namespace detail

inline RunReport run_experiment(const ExperimentSpec& spec) {
  const ExperimentInfo* info = find_experiment(spec.name);
  if (!info)
    throw std::invalid_argument("unknown experiment '" + spec.name + "'; nearest match: " +
                                nearest_experiment(spec.name));
  const auto p = detail::resolve_params(*info, spec.params);
  const std::size_t trials = spec.trials ? spec.trials : info->default_trials;

  RunReport rep;
  rep.resolved = spec;
  rep.resolved.params = p;
  rep.resolved.trials = trials;
  RngStream rng(spec.seed);

  auto ipar = [&](const char* k) { return static_cast<std::size_t>(p.at(k)); };
  const double nt = static_cast<double>(trials);

  if (spec.name == "money") {
    const std::size_t n = ipar("n_qubits");
    CounterfeitStrategy strat{p.at("rotated") != 0.0, p.at("angle")};
    std::size_t forged_pass = 0, genuine_pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream r = rng.derive(t);
      auto bill = money_issue(n, t, r);
      if (money_verify(bill, bill.secret, r)) ++genuine_pass;
      auto fake = money_counterfeit(bill, strat, r);
      if (money_verify(fake, bill.secret, r)) ++forged_pass;
    }
    const double expected = std::pow(0.75, static_cast<double>(n));
    const double rate = static_cast<double>(forged_pass) / nt;
    rep.columns = {"trials", "n_qubits", "genuine_pass_rate", "forged_pass_rate",
                   "expected_rate", "expected_formula", "z"};
    rep.rows.push_back({static_cast<std::int64_t>(trials), static_cast<std::int64_t>(n),
                        static_cast<double>(genuine_pass) / nt, rate, expected,
                        std::string("(3/4)^N"), detail::rate_z(rate, expected, nt)});

  } else if (spec.name == "bb84") {
    const std::size_t n_raw = ipar("n_raw"), m_test = ipar("m_test");
    const bool eve = p.at("eve") != 0.0;
    std::size_t sifted = 0, detected = 0, key_total = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream r = rng.derive(t);
      const auto s = bb84_run(n_raw, m_test, eve, r);
      sifted += s.sifted_indices.size();
      if (s.eve_detected) ++detected;
      key_total += s.key.size();
    }
    const double sift_rate = static_cast<double>(sifted) / (nt * static_cast<double>(n_raw));
    const double det_rate = static_cast<double>(detected) / nt;
    const double det_expected = eve ? 1.0 - std::pow(0.75, static_cast<double>(m_test)) : 0.0;
    rep.columns = {"sessions",      "n_raw",       "m_test",
                   "eve",           "sift_rate",   "sift_expected",
                   "sift_z",        "detect_rate", "detect_expected",
                   "expected_formula", "detect_z",  "mean_key_bits"};
    rep.rows.push_back({static_cast<std::int64_t>(trials), static_cast<std::int64_t>(n_raw),
                        static_cast<std::int64_t>(m_test), static_cast<std::int64_t>(eve ? 1 : 0),
                        sift_rate, 0.5,
                        detail::rate_z(sift_rate, 0.5, nt * static_cast<double>(n_raw)),
                        det_rate, det_expected, std::string("1-(3/4)^M"),
                        eve ? detail::rate_z(det_rate, det_expected, nt) : 0.0,
                        static_cast<double>(key_total) / nt});

  } else if (spec.name == "densecode") {
    rep.columns = {"hi", "lo", "recovered_hi", "recovered_lo", "ok"};
    for (int hi = 0; hi < 2; ++hi)
      for (int lo = 0; lo < 2; ++lo) {
        const auto out = densecode_send({hi, lo});
        rep.rows.push_back({static_cast<std::int64_t>(hi), static_cast<std::int64_t>(lo),
                            static_cast<std::int64_t>(out.hi), static_cast<std::int64_t>(out.lo),
                            static_cast<std::int64_t>(out == TwoBitMessage{hi, lo} ? 1 : 0)});
      }

  } else if (spec.name == "teleport") {
    double fid_sum = 0.0, fid_min = 1.0;
    std::array<std::size_t, 4> counts = {0, 0, 0, 0};
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream r = rng.derive(t);
      const PureState psi = detail::random_qubit(r);
      const auto res = teleport(psi, r);
      const double f = std::abs(psi.overlap(res.bob_state));
      fid_sum += f;
      fid_min = std::min(fid_min, f);
      ++counts[static_cast<std::size_t>(res.bell_outcome)];
    }
    double max_z = 0.0;
    for (auto c : counts)
      max_z = std::max(max_z, std::abs(detail::rate_z(static_cast<double>(c) / nt, 0.25, nt)));
    rep.columns = {"trials", "mean_fidelity", "min_fidelity", "count_b0", "count_b1",
                   "count_b2", "count_b3", "expected_outcome_rate", "max_outcome_z"};
    rep.rows.push_back({static_cast<std::int64_t>(trials), fid_sum / nt, fid_min,
                        static_cast<std::int64_t>(counts[0]), static_cast<std::int64_t>(counts[1]),
                        static_cast<std::int64_t>(counts[2]), static_cast<std::int64_t>(counts[3]),
                        0.25, max_z});

  } else if (spec.name == "chsh") {
    const PureState singlet = bell_state(0);
    const double expected = -2.0 * std::sqrt(2.0);
    if (trials == 0) {
      rep.columns = {"mode", "s", "expected_s", "expected_formula", "abs_error"};
      const double s = chsh_expectation(singlet);
      rep.rows.push_back({std::string("exact"), s, expected, std::string("-2*sqrt(2)"),
                          std::abs(s - expected)});
    } else {
      const auto est = chsh_sample(singlet, trials, rng);
      rep.columns = {"mode", "trials", "s", "stderr", "expected_s", "expected_formula", "z"};
      rep.rows.push_back({std::string("sampled"), static_cast<std::int64_t>(trials), est.s,
                          est.stderr_s, expected, std::string("-2*sqrt(2)"),
                          detail::zscore(est.s, expected, est.stderr_s)});
    }

  } else if (spec.name == "clock") {
    const std::size_t n = ipar("n_qubits");
    const double w = p.at("omega0"), t = p.at("t");
    rep.columns = {"n_qubits", "product_re", "product_im", "product_abs",
                   "ghz_re", "ghz_im", "ghz_abs"};
    for (std::size_t k = 1; k <= n; ++k) {
      const auto ov = clock_phase_demo(k, w, t);
      rep.rows.push_back({static_cast<std::int64_t>(k), ov.product.real(), ov.product.imag(),
                          std::abs(ov.product), ov.ghz.real(), ov.ghz.imag(), std::abs(ov.ghz)});
    }

  } else if (spec.name == "qft") {
    const std::size_t n = ipar("n_qubits"), period = ipar("period");
    if (period < 1) throw std::invalid_argument("qft: period must be >= 1");
    const std::size_t dim = std::size_t{1} << n;
    cvec f(dim, cplx{0.0, 0.0});
    std::size_t hits = 0;
    for (std::size_t j = 0; j < dim; j += period) {
      f[j] = 1.0;
      ++hits;
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(hits));
    for (auto& a : f) a *= norm;
    const cvec transformed = qft(n).apply(f);
    const cvec oracle = dft(f);
    rep.columns = {"k", "weight", "dft_abs_error"};
    for (std::size_t k = 0; k < dim; ++k)
      rep.rows.push_back({static_cast<std::int64_t>(k), std::norm(transformed[k]),
                          std::abs(transformed[k] - oracle[k])});

  } else if (spec.name == "sterngerlach") {
    const auto [psi_p, psi_m] = spin_eigenstates(p.at("theta"), p.at("phi"));
    const cplx alpha = psi_p.amps()[0], beta = psi_p.amps()[1];
    const PointerModel pm(p.at("d"), p.at("sigma"));
    const double pa = std::norm(alpha), pb = std::norm(beta);
    const double mean_expected = (pa - pb) * p.at("d");
    double sum_r = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream r = rng.derive(t);
      sum_r += sample_pointer(alpha, beta, pm, r);
    }
    const double mean_r = sum_r / nt;
    const double var = p.at("d") * p.at("d") + p.at("sigma") * p.at("sigma") -
                       mean_expected * mean_expected;
    const DensityMatrix rho = reconstruct_unconditional(alpha, beta, pm);
    rep.columns = {"trials", "p_up", "overlap_analytic", "overlap_numeric",
                   "unconditional_entropy", "mean_r", "expected_mean_r",
                   "expected_formula", "z"};
    rep.rows.push_back({static_cast<std::int64_t>(trials), pa, pm.overlap_analytic(),
                        pm.overlap_numeric(), von_neumann_entropy(rho), mean_r, mean_expected,
                        std::string("(|a|^2-|b|^2)*d"),
                        detail::zscore(mean_r, mean_expected, std::sqrt(var / nt))});

  } else if (spec.name == "repetition") {
    const double prob = p.at("p");
    const double closed = repetition_logical_error(prob);
    const double mc = repetition_mc(prob, trials, rng);
    rep.columns = {"p", "trials", "mc_rate", "closed_form", "expected_formula", "z"};
    rep.rows.push_back({prob, static_cast<std::int64_t>(trials), mc, closed,
                        std::string("3p^2-2p^3"), detail::rate_z(mc, closed, nt)});

  } else if (spec.name == "qec3") {
    const cplx eps = p.at("epsilon");
    const int kind_i = static_cast<int>(p.at("kind"));
    if (kind_i < 0 || kind_i > 2) throw std::invalid_argument("qec3: kind must be 0, 1 or 2");
    const std::size_t which1 = ipar("which");
    if (which1 < 1 || which1 > 3) throw std::invalid_argument("qec3: which must be 1..3");
    ErrorChannelSpec err;
    err.kind = kind_i == 0 ? ErrorChannelSpec::Kind::deterministic
               : kind_i == 1 ? ErrorChannelSpec::Kind::coherent
                             : ErrorChannelSpec::Kind::bath;
    err.epsilon = eps;
    err.which = which1 - 1;
    const LogicalQubit3 ideal = encode3(0.6, 0.8);
    std::array<std::size_t, 4> counts = {0, 0, 0, 0};
    double fid_min = 1.0;
    for (std::size_t t = 0; t < trials; ++t) {
      RngStream r = rng.derive(t);
      auto lq = inject_error(ideal, err);
      auto [fixed, rec] = qec_cycle(lq, r);
      ++counts[static_cast<std::size_t>(rec.inferred)];
      double f;
      if (fixed.has_bath) {
        // bath branch collapses to a product; compare the system factor
        const DensityMatrix red = reduced_system_state(fixed);
        f = std::sqrt(std::abs(expectation(DensityMatrix::from_pure(ideal.state).mat(), red)));
      } else {
        f = std::abs(ideal.state.overlap(fixed.state));
      }
      fid_min = std::min(fid_min, f);
    }
    const double flagged =
        static_cast<double>(trials - counts[0]) / nt;  // any non-identity inference
    const double expected = kind_i == 0 ? 1.0 : std::norm(eps);
    const auto ea = entropy_accounting(eps);
    rep.columns = {"trials", "kind", "which", "epsilon_sq", "flagged_rate", "expected_rate",
                   "expected_formula", "z", "min_fidelity", "count_i", "count_x1", "count_x2",
                   "count_x3", "syndrome_entropy", "entanglement_entropy"};
    rep.rows.push_back({static_cast<std::int64_t>(trials), static_cast<std::int64_t>(kind_i),
                        static_cast<std::int64_t>(which1), std::norm(eps), flagged, expected,
                        std::string("|eps|^2"),
                        kind_i == 0 ? 0.0 : detail::rate_z(flagged, expected, nt), fid_min,
                        static_cast<std::int64_t>(counts[0]), static_cast<std::int64_t>(counts[1]),
                        static_cast<std::int64_t>(counts[2]), static_cast<std::int64_t>(counts[3]),
                        ea.syndrome_shannon, ea.pre_measurement_entanglement});

  } else if (spec.name == "lc") {
    const auto q = lc_quantize({p.at("L"), p.at("C")});
    rep.columns = {"L", "C", "omega", "z", "phi_zpf", "q_zpf", "zpf_product"};
    rep.rows.push_back(
        {p.at("L"), p.at("C"), q.omega, q.z, q.phi_zpf, q.q_zpf, q.phi_zpf * q.q_zpf});

  } else if (spec.name == "modes") {
    OnePortNetwork net;
    net.C0 = p.at("c0");
    auto add_branch = [&](double l, double c) {
      if (l <= 0.0) return;
      net.branches.push_back({l, c > 0.0 ? c : std::numeric_limits<double>::infinity()});
    };
    add_branch(p.at("l1"), p.at("c1"));
    add_branch(p.at("l2"), p.at("c2"));
    const auto modes = find_modes(net, p.at("wmin"), p.at("wmax"));
    rep.columns = {"mode", "omega", "z", "abs_admittance"};
    for (std::size_t j = 0; j < modes.size(); ++j)
      rep.rows.push_back({static_cast<std::int64_t>(j), modes[j].omega, modes[j].z,
                          std::abs(admittance(net, modes[j].omega))});

  } else if (spec.name == "transmon") {
    TransmonParams tp{p.at("ej"), p.at("ec"), p.at("ng"), static_cast<int>(p.at("ncut"))};
    const std::size_t levels = ipar("levels");
    const auto e = transmon_spectrum_exact(tp, levels);
    const auto pert = transmon_perturbative(tp.E_J, tp.E_C);
    rep.columns = {"level", "energy", "gap", "gap_perturbative"};
    for (std::size_t k = 0; k < e.size(); ++k) {
      const double gap = k > 0 ? e[k] - e[k - 1] : 0.0;
      const double gap_p = k > 0 ? pert.omega - static_cast<double>(k) * pert.alpha : 0.0;
      rep.rows.push_back({static_cast<std::int64_t>(k), e[k], gap, gap_p});
    }

  } else if (spec.name == "jc") {
    const double wr = p.at("wr"), wq = p.at("wq"), g = p.at("g");
    const std::size_t nmax = ipar("nmax");
    const auto numeric = jc_spectrum(wr, wq, g, nmax);
    std::vector<double> closed = {-wq / 2.0};
    const double delta = wq - wr;
    for (std::size_t n = 1; n <= nmax; ++n) {
      const double mid = (static_cast<double>(n) - 0.5) * wr;
      const double split =
          std::sqrt(delta * delta / 4.0 + g * g * static_cast<double>(n));
      closed.push_back(mid - split);
      closed.push_back(mid + split);
    }
    std::sort(closed.begin(), closed.end());
    rep.columns = {"index", "energy", "closed_form", "abs_error"};
    const std::size_t n_report = std::min<std::size_t>(10, numeric.size());
    for (std::size_t k = 0; k < n_report; ++k)
      rep.rows.push_back({static_cast<std::int64_t>(k), numeric[k], closed[k],
                          std::abs(numeric[k] - closed[k])});

  } else if (spec.name == "dispersive") {
    const double wr = p.at("wr"), wq = p.at("wq"), g = p.at("g");
    const double chi_f = dispersive_chi(wr, wq, g);
    const double chi_n = dispersive_chi_numeric(wr, wq, g, ipar("nmax"));
    rep.columns = {"delta", "chi_formula", "chi_numeric", "expected_formula", "rel_error"};
    rep.rows.push_back({wr - wq, chi_f, chi_n, std::string("-g^2/Delta"),
                        std::abs(chi_n - chi_f) / std::abs(chi_f)});

  } else if (spec.name == "kerr") {
    const std::size_t n_modes = ipar("n_modes");
    if (n_modes < 1 || n_modes > 3)
      throw std::invalid_argument("kerr: n_modes must be 1..3");
    std::vector<ModeSpec> modes;
    const char* wk[] = {"w1", "w2", "w3"};
    const char* pk[] = {"phi1", "phi2", "phi3"};
    for (std::size_t j = 0; j < n_modes; ++j) modes.push_back({p.at(wk[j]), p.at(pk[j])});
    const auto analytic = kerr_expansion(modes, p.at("ej"));
    const auto fitted = quartic_oracle(modes, p.at("ej"), ipar("nmax"));
    rep.columns = {"quantity", "analytic", "oracle_fit", "rel_error"};
    auto push = [&](const std::string& nm, double a, double o) {
      rep.rows.push_back({nm, a, o, a != 0.0 ? std::abs(o - a) / std::abs(a) : std::abs(o)});
    };
    for (std::size_t j = 0; j < n_modes; ++j)
      push("delta_omega_" + std::to_string(j + 1), analytic.delta_omega[j],
           fitted.delta_omega[j]);
    for (std::size_t j = 0; j < n_modes; ++j)
      for (std::size_t k = j; k < n_modes; ++k)
        push("chi_" + std::to_string(j + 1) + std::to_string(k + 1), analytic.chi[j][k],
             fitted.chi[j][k]);
    rep.rows.push_back(
        {std::string("fit_residual_rms"), 0.0, fitted.fit_residual_rms, 0.0});

  } else {
    throw std::invalid_argument("unhandled experiment '" + spec.name + "'");
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  char buf[48];
  if (std::holds_alternative<std::int64_t>(c)) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::get<std::int64_t>(c)));
  } else {
    std::snprintf(buf, sizeof buf, "%.12g", std::get<double>(c));
  }
  return buf;
}

}  // namespace detail

inline std::string to_csv(const RunReport& rep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < rep.columns.size(); ++i)
    os << (i ? "," : "") << rep.columns[i];
  os << "\n";
  for (const auto& row : rep.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << detail::format_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace qip

#include "json.hpp"

namespace qip {

inline std::string to_json(const RunReport& rep) {
  nlohmann::ordered_json j;
  j["meta"] = {{"experiment", rep.resolved.name},
               {"params", rep.resolved.params},
               {"seed", rep.resolved.seed},
               {"trials", rep.resolved.trials},
               {"version", kToolkitVersion}};
  j["results"]["columns"] = rep.columns;
  auto& rows = j["results"]["rows"];
  rows = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (std::holds_alternative<std::string>(c))
        jr.push_back(std::get<std::string>(c));
      else if (std::holds_alternative<std::int64_t>(c))
        jr.push_back(std::get<std::int64_t>(c));
      else
        jr.push_back(std::get<double>(c));
    }
    rows.push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

}  // namespace qip
