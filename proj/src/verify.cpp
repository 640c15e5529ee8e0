#include "ghzsim/verify.hpp"

#include <cmath>
#include <sstream>

#include "ghzsim/basis.hpp"
#include "ghzsim/capacity.hpp"
#include "ghzsim/density.hpp"
#include "ghzsim/errors.hpp"
#include "ghzsim/locc.hpp"
#include "ghzsim/operators.hpp"
#include "ghzsim/protocols.hpp"
#include "ghzsim/state.hpp"

namespace ghzsim {

namespace {

StateVector random_state(int num_qubits, SplitMix64& rng) {
  std::vector<cx> amps(std::size_t{1} << num_qubits);
  for (cx& a : amps) {
    // Box-Muller onto both components.
    const double u1 = std::max(rng.next_double(), 1e-16);
    const double u2 = rng.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = cx{r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }
  return StateVector::normalized(num_qubits, std::move(amps));
}

QubitOperator random_single(int target, SplitMix64& rng) {
  // Haar-ish 2x2 unitary from two random phases and an angle.
  const double theta = rng.next_double() * M_PI;
  const double p1 = rng.next_double() * 2.0 * M_PI;
  const double p2 = rng.next_double() * 2.0 * M_PI;
  const cx e1 = std::polar(1.0, p1);
  const cx e2 = std::polar(1.0, p2);
  const double c = std::cos(theta), s = std::sin(theta);
  return QubitOperator::single({e1 * c, e2 * s, -std::conj(e2) * s, std::conj(e1) * c}, target,
                               "U(rand)");
}

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({name, pass, detail});
  }

  template <typename F>
  void run(const std::string& name, F&& body) {
    try {
      body(*this, name);
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }
};

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void qla_checks(Suite& s) {
  SplitMix64 rng(0x51a7e5eedULL);

  s.run("qla.normalization-preserved", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      StateVector a = random_state(2, rng);
      StateVector b = random_state(2, rng);
      StateVector t = tensor(a, b);
      worst = std::max(worst, std::abs(t.norm_squared() - 1.0));
      StateVector u = apply(random_single(1 + int(rng.next() % 4), rng), t);
      worst = std::max(worst, std::abs(u.norm_squared() - 1.0));
      ProjectionResult pr = project(u, random_state(1, rng), {1});
      if (pr.residual.has_value()) {
        worst = std::max(worst, std::abs(pr.residual->norm_squared() - 1.0));
      }
    }
    su.check(name, worst <= tol::kEq, "max residual " + num(worst));
  });

  s.run("qla.partial-trace-of-product", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      StateVector a = random_state(2, rng);
      StateVector b = random_state(1 + int(rng.next() % 2), rng);
      DensityMatrix joint = to_density(tensor(a, b));
      DensityMatrix reduced = partial_trace(joint, {1, 2});
      worst = std::max(worst, max_abs_diff(reduced, to_density(a)));
    }
    su.check(name, worst <= tol::kEq, "100 trials, max residual " + num(worst));
  });

  s.run("qla.ghz-class-single-qubit-entropy", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const ProjectiveBasis basis = ghz_class_basis(n);
      for (const StateVector& e : basis.elements()) {
        for (int q = 1; q <= n; ++q) {
          worst = std::max(worst,
                           std::abs(von_neumann_entropy(reduced_single_qubit(e, q)) - 1.0));
        }
      }
    }
    su.check(name, worst <= tol::kEq, "N<=6, max |S-1| = " + num(worst));
  });

  s.run("qla.projection-probabilities-sum", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      StateVector psi = random_state(3, rng);
      const ProjectiveBasis basis = ghz_class_basis(3);
      double sum = 0.0;
      for (const StateVector& e : basis.elements()) {
        sum += project(psi, e, {1, 2, 3}).probability;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    su.check(name, worst <= tol::kEq, "max |sum-1| = " + num(worst));
  });
}

void gates_checks(Suite& s) {
  SplitMix64 rng(0x9a7e5ULL);

  s.run("gates.unitarity", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (PauliKind k : {PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z,
                        PauliKind::MinusIY, PauliKind::IY}) {
      worst = std::max(worst, pauli(k).unitarity_residual());
    }
    worst = std::max(worst, cnot(1, 2).unitarity_residual());
    worst = std::max(worst, entangle_op(4).unitarity_residual());
    worst = std::max(worst, compose({hadamard(2), cnot(2, 3)}, 3).unitarity_residual());
    for (int trial = 0; trial < 20; ++trial) {
      worst = std::max(worst,
                       tensor_product(random_single(1, rng), random_single(2, rng))
                           .unitarity_residual());
    }
    su.check(name, worst <= tol::kEq, "max residual " + num(worst));
  });

  s.run("gates.embed-compose-commute", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int target = 1 + int(rng.next() % 3);
      QubitOperator a = random_single(target, rng);
      QubitOperator b = random_single(target, rng);
      Eigen::MatrixXcd ab = a.matrix() * b.matrix();
      QubitOperator prod(ab, {target}, "A·B");
      const double diff =
          (embed(prod, 3).matrix() - embed(a, 3).matrix() * embed(b, 3).matrix())
              .cwiseAbs()
              .maxCoeff();
      worst = std::max(worst, diff);
    }
    su.check(name, worst <= tol::kEq, "50 trials, max diff " + num(worst));
  });

  s.run("gates.untouched-qubit-invariant", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      StateVector psi = random_state(3, rng);
      const int target = 1 + int(rng.next() % 3);
      StateVector moved = apply(random_single(target, rng), psi);
      for (int q = 1; q <= 3; ++q) {
        if (q == target) continue;
        worst = std::max(
            worst, max_abs_diff(reduced_single_qubit(psi, q), reduced_single_qubit(moved, q)));
      }
    }
    su.check(name, worst <= tol::kEq, "50 trials, max diff " + num(worst));
  });

  s.run("gates.nonuniqueness-identity", [&](Suite& su, const std::string& name) {
    StateVector base = superpose(StateVector::basis_state(3, 1), StateVector::basis_state(3, 6),
                                 cx{1, 0}, cx{-1, 0});  // |001> - |110>
    StateVector lhs = apply(tensor_product(pauli(PauliKind::Z, 2), pauli(PauliKind::X, 3)), base);
    StateVector rhs = apply(pauli(PauliKind::IY, 3), base);
    double diff = 0.0;
    for (std::uint32_t i = 0; i < lhs.dim(); ++i) {
      diff = std::max(diff, std::abs(lhs.amplitude(i) - rhs.amplitude(i)));
    }
    su.check(name, diff <= tol::kStrict, "amplitude diff " + num(diff));
  });

  s.run("gates.locality-tags", [&](Suite& su, const std::string& name) {
    const bool ok = pauli(PauliKind::X).locality() == LocalityTag::LocalSingle &&
                    tensor_product(pauli(PauliKind::X, 1), pauli(PauliKind::I, 2)).locality() ==
                        LocalityTag::Factorized &&
                    cnot(1, 2).locality() == LocalityTag::Nonlocal;
    su.check(name, ok);
  });
}

void bases_checks(Suite& s) {
  s.run("bases.generating-operator-reproduces", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const StateVector omega = ghz_state(n);
      for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
        const BitString bits(n, x);
        StateVector produced = apply(generating_operator(bits), omega);
        StateVector expected = ghz_class_element(n, bits);
        for (std::uint32_t i = 0; i < produced.dim(); ++i) {
          worst = std::max(worst, std::abs(produced.amplitude(i) - expected.amplitude(i)));
        }
      }
    }
    su.check(name, worst <= tol::kStrict, "N<=6, max amplitude error " + num(worst));
  });

  s.run("bases.completeness", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    worst = std::max(worst, bell_basis().completeness_residual());
    worst = std::max(worst, teleport_basis_ghz().completeness_residual());
    worst = std::max(worst, converted_dense_basis().completeness_residual());
    worst = std::max(worst, pi_computational_basis().completeness_residual());
    for (int n = 2; n <= 6; ++n) {
      worst = std::max(worst, ghz_class_basis(n).completeness_residual());
    }
    for (int n = 3; n <= 6; ++n) {
      worst = std::max(worst, nparty_teleport_basis(n).completeness_residual());
    }
    su.check(name, worst <= tol::kEq, "max residual " + num(worst));
  });

  s.run("bases.generating-operator-arity", [&](Suite& su, const std::string& name) {
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
      ok = ok && generating_operator(BitString(n, (1u << n) - 1u)).arity() == n - 1;
      ok = ok && validate_arity(n, n - 1);
    }
    su.check(name, ok);
  });
}

void locc_checks(Suite& s) {
  s.run("locc.branch-probabilities-sum", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    auto sum_probs = [](const std::vector<ProtocolTranscript>& ts) {
      double sum = 0.0;
      for (const auto& t : ts) sum += t.outcome_probability;
      return sum;
    };
    const UnknownStateSpec q1 = UnknownStateSpec::single_qubit(0.6, 0.8);
    const UnknownStateSpec epr = UnknownStateSpec::epr_form(0.6, 0.8);
    const UnknownStateSpec g3 = UnknownStateSpec::ghz_form(3, 0.6, 0.8);
    const UnknownStateSpec g2 = UnknownStateSpec::ghz_form(2, 0.6, 0.8);
    worst = std::max(worst, std::abs(sum_probs(teleport_tight(q1, RunMode::exhaustive())) - 1));
    worst = std::max(worst, std::abs(sum_probs(teleport_ghz(epr, RunMode::exhaustive())) - 1));
    worst = std::max(worst,
                     std::abs(sum_probs(teleport_nparty(g3, 4, RunMode::exhaustive())) - 1));
    worst = std::max(worst,
                     std::abs(sum_probs(teleport_onebit_style(g2, RunMode::exhaustive())) - 1));
    su.check(name, worst <= tol::kEq, "max |sum-1| = " + num(worst));
  });

  s.run("locc.locality-enforced", [&](Suite& su, const std::string& name) {
    bool threw = false;
    try {
      teleport_ghz_nonlocal_variant(UnknownStateSpec::epr_form(0.6, 0.8), 0, false);
    } catch (const LocalityError&) {
      threw = true;
    }
    bool no_nonlocal_in_locc = true;
    for (const auto& t : teleport_ghz(UnknownStateSpec::epr_form(0.6, 0.8),
                                      RunMode::exhaustive())) {
      for (const auto& c : t.corrections) {
        if (c.locality == LocalityTag::Nonlocal) no_nonlocal_in_locc = false;
      }
    }
    su.check(name, threw && no_nonlocal_in_locc);
  });

  s.run("locc.classical-bits", [&](Suite& su, const std::string& name) {
    bool ok = true;
    ok = ok && teleport_tight(UnknownStateSpec::single_qubit(1.0, 0.0),
                              RunMode::exhaustive())[0].classical_bits_sent == 2;
    ok = ok && teleport_ghz(UnknownStateSpec::epr_form(0.6, 0.8),
                            RunMode::exhaustive())[0].classical_bits_sent == 3;
    ok = ok && teleport_nparty(UnknownStateSpec::ghz_form(3, 0.6, 0.8), 4,
                               RunMode::exhaustive())[0].classical_bits_sent == 4;
    ok = ok && teleport_onebit_style(UnknownStateSpec::ghz_form(2, 0.6, 0.8),
                                     RunMode::exhaustive())[0].classical_bits_sent == 2;
    su.check(name, ok);
  });

  s.run("locc.sampling-deterministic", [&](Suite& su, const std::string& name) {
    const UnknownStateSpec spec = UnknownStateSpec::epr_form(0.6, 0.8);
    const auto a = teleport_ghz(spec, RunMode::sampled(12345));
    const auto b = teleport_ghz(spec, RunMode::sampled(12345));
    su.check(name, a.size() == 1 && b.size() == 1 && a[0].outcome == b[0].outcome &&
                       a[0].rng_algorithm == kRngAlgorithm);
  });
}

void protocols_checks(Suite& s) {
  s.run("protocols.perfect-teleportation", [&](Suite& su, const std::string& name) {
    double worst = 1.0;
    auto scan = [&](const std::vector<ProtocolTranscript>& ts) {
      for (const auto& t : ts) {
        if (t.fidelity.has_value()) worst = std::min(worst, *t.fidelity);
      }
    };
    scan(teleport_tight(UnknownStateSpec::single_qubit(0.6, 0.8), RunMode::exhaustive()));
    scan(teleport_tight(UnknownStateSpec::single_qubit(cx{0, 1} * 0.6, 0.8),
                        RunMode::exhaustive()));
    scan(teleport_ghz(UnknownStateSpec::epr_form(0.6, 0.8), RunMode::exhaustive()));
    scan(teleport_nparty(UnknownStateSpec::ghz_form(4, 0.6, 0.8), 5, RunMode::exhaustive()));
    scan(teleport_onebit_style(UnknownStateSpec::ghz_form(2, 0.6, 0.8), RunMode::exhaustive()));
    su.check(name, worst >= 1.0 - tol::kEq, "min fidelity " + num(worst));
  });

  s.run("protocols.dense-bijectivity", [&](Suite& su, const std::string& name) {
    bool ok = true;
    for (std::uint32_t m = 0; m < 4; ++m) {
      ok = ok && dense_code_tight(BitString(2, m)).decoded == BitString(2, m);
    }
    for (std::uint32_t m = 0; m < 8; ++m) {
      ok = ok && dense_code_ghz(BitString(3, m)).decoded == BitString(3, m);
      ok = ok && dense_code_ghz_converted(BitString(3, m)).decoded == BitString(3, m);
      ok = ok && dense_code_ghz_from_epr(BitString(3, m)).decoded == BitString(3, m);
    }
    for (int n = 2; n <= 6; ++n) {
      for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        ok = ok && dense_code_nparty(BitString(n, m)).decoded == BitString(n, m);
      }
    }
    for (std::uint32_t m = 0; m < 16; ++m) {
      ok = ok && modified_dense_scheme(1, 4, BitString(4, m)).decoded == BitString(4, m);
    }
    su.check(name, ok);
  });

  s.run("protocols.probability-uniformity", [&](Suite& su, const std::string& name) {
    double max_p = 0.0, min_p = 1.0;
    for (const auto& t : teleport_ghz(UnknownStateSpec::epr_form(0.6, 0.8),
                                      RunMode::exhaustive())) {
      max_p = std::max(max_p, t.outcome_probability);
      min_p = std::min(min_p, t.outcome_probability);
    }
    const bool uniform = std::abs(max_p - 0.125) <= tol::kEq && std::abs(min_p - 0.125) <= tol::kEq;

    // Non-maximal channel: same measurement over alpha'|000>+beta'|111>.
    const StateVector channel = weighted_ghz_state(3, 0.5, std::sqrt(0.75));
    const StateVector zeta = UnknownStateSpec::epr_form(0.6, 0.8).to_state();
    const StateVector joint = tensor(zeta, channel);
    const ProjectiveBasis basis = teleport_basis_ghz();
    double wmax = 0.0, wmin = 1.0;
    for (std::uint32_t x = 0; x < basis.size(); ++x) {
      const double p = project(joint, basis.element(x), {1, 2, 3}).probability;
      wmax = std::max(wmax, p);
      wmin = std::min(wmin, p);
    }
    su.check(name, uniform && wmax / wmin > 1.0 + 1e-6,
             "uniform 1/8; weighted ratio " + num(wmax / wmin));
  });

  s.run("protocols.clone-consistency", [&](Suite& su, const std::string& name) {
    SplitMix64 rng(0xc10eULL);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double l0 = rng.next_double();
      const TelecloneResult r = teleclone(UnknownStateSpec::mixed_diagonal(l0));
      const DensityMatrix input = DensityMatrix::diagonal(1, {l0, 1.0 - l0});
      worst = std::max(worst, max_abs_diff(r.rho_b, r.rho_c));
      worst = std::max(worst, max_abs_diff(r.rho_b, input));
      worst = std::max(worst, r.rho_bc.max_abs_offdiagonal());
    }
    su.check(name, worst <= tol::kStrict, "20 trials, max residual " + num(worst));
  });

  s.run("protocols.teleport-set-incomplete-for-dense", [&](Suite& su, const std::string& name) {
    const GramRankReport r = teleport_operator_dense_rank();
    su.check(name, r.rank < 8, "Gram rank " + std::to_string(r.rank) + " of 8");
  });

  s.run("protocols.negative-check", [&](Suite& su, const std::string& name) {
    const auto bad = general_two_qubit_negative_check(
        UnknownStateSpec::general_two_qubit({0.5, 0.5, 0.5, 0.5}));
    const auto good = general_two_qubit_negative_check(UnknownStateSpec::epr_form(0.6, 0.8));
    su.check(name,
             bad.applicable && bad.min_fidelity < 1.0 - 1e-6 && !good.applicable &&
                 good.min_fidelity >= 1.0 - tol::kEq,
             "general min fidelity " + num(bad.min_fidelity));
  });
}

void capacity_checks(Suite& s) {
  s.run("capacity.holevo-pure-ensemble", [&](Suite& su, const std::string& name) {
    Ensemble e;
    for (std::uint32_t x = 0; x < 8; ++x) {
      e.states.push_back(to_density(ghz_dense_state(BitString(3, x))));
      e.probabilities.push_back(0.125);
    }
    const double c = holevo(e);
    const double s_only = von_neumann_entropy(e.average());
    su.check(name, std::abs(c - 3.0) <= tol::kEq && std::abs(c - s_only) <= tol::kEq,
             "C = " + num(c));
  });

  s.run("capacity.two-route-agreement", [&](Suite& su, const std::string& name) {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const auto rows = capacity_sweep(n, 21);
      for (const auto& row : rows) worst = std::max(worst, row.abs_diff);
    }
    su.check(name, worst <= tol::kEq, "grid max |c - closed form| = " + num(worst));
  });

  s.run("capacity.monotone-and-max", [&](Suite& su, const std::string& name) {
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
      const auto rows = capacity_sweep(n, 21);
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].entanglement > rows[i - 1].entanglement + 1e-15 &&
            rows[i].capacity < rows[i - 1].capacity - tol::kEq) {
          ok = false;
        }
      }
      const double c_max = per_bit_capacity(n, cx{1.0 / std::sqrt(2.0), 0}, cx{1.0 / std::sqrt(2.0), 0});
      if (std::abs(c_max * (n - 1) - n) > tol::kEq) ok = false;
    }
    su.check(name, ok);
  });
}

void identity_checks(Suite& s) {
  s.run("identities.nonlocal-correction-route", [&](Suite& su, const std::string& name) {
    // (sigma_x (x) 1l) C_BC C_CB C_BC read as a circuit (sigma_x first)
    // equals the x = 0 residual beta|00> + alpha|11>.
    const cx a{0.6, 0.0}, b{0.8, 0.0};
    const StateVector zeta = UnknownStateSpec::epr_form(a, b).to_state();
    StateVector out = apply(pauli(PauliKind::X, 1), zeta);
    out = apply(cnot(1, 2), out);
    out = apply(cnot(2, 1), out);
    out = apply(cnot(1, 2), out);
    const StateVector residual(2, {b, cx{}, cx{}, a});
    double diff = 0.0;
    for (std::uint32_t i = 0; i < 4; ++i) {
      diff = std::max(diff, std::abs(out.amplitude(i) - residual.amplitude(i)));
    }
    su.check(name, diff <= tol::kStrict, "amplitude diff " + num(diff));
  });

  s.run("identities.cnot-prepares-ghz", [&](Suite& su, const std::string& name) {
    const StateVector prepared =
        apply(cnot(2, 3), tensor(bell_state(0), StateVector::basis_state(1, 0)));
    const StateVector ghz = ghz_state(3);
    double diff = 0.0;
    for (std::uint32_t i = 0; i < 8; ++i) {
      diff = std::max(diff, std::abs(prepared.amplitude(i) - ghz.amplitude(i)));
    }
    su.check(name, diff <= tol::kStrict, "amplitude diff " + num(diff));
  });

  s.run("identities.converted-family-complete", [&](Suite& su, const std::string& name) {
    const double res = converted_dense_basis().completeness_residual();
    su.check(name, res <= tol::kStrict, "residual " + num(res));
  });

  s.run("identities.entangle-disentangle", [&](Suite& su, const std::string& name) {
    bool ok = true;
    for (int k = 2; k <= 6; ++k) {
      const QubitOperator en = entangle_op(k);
      const QubitOperator den = disentangle_op(k);
      const StateVector ghz = apply(en, StateVector(k));
      ok = ok && approx_equal_phase(ghz, ghz_state(k));
      const double inv =
          (den.matrix() * en.matrix() -
           Eigen::MatrixXcd::Identity(Eigen::Index(en.dim()), Eigen::Index(en.dim())))
              .cwiseAbs()
              .maxCoeff();
      ok = ok && inv <= tol::kEq;
    }
    su.check(name, ok);
  });
}

}  // namespace

std::vector<CheckResult> run_verification_suite() {
  Suite s;
  qla_checks(s);
  gates_checks(s);
  bases_checks(s);
  locc_checks(s);
  protocols_checks(s);
  capacity_checks(s);
  identity_checks(s);
  return s.results;
}

}  // namespace ghzsim
