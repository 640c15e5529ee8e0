#include "ghzsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ghzsim/errors.hpp"
#include "ghzsim/kernels.hpp"

namespace ghzsim {

namespace {

std::string fmt_cx(cx v) {
  std::ostringstream os;
  os << v.real();
  if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
  return os.str();
}

void check_amplitude_pair(cx alpha, cx beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > tol::kEq) {
    std::ostringstream os;
    os << "amplitudes not normalized: |alpha|^2+|beta|^2 = " << n2;
    throw UsageError(os.str());
  }
}

std::vector<ProtocolTranscript> run_mode(const ProtocolSetup& setup, const RunMode& mode) {
  if (mode.sample) return {sample_branch(setup, mode.seed)};
  return run_all_branches(setup);
}

/// Lexicographically first product-Pauli correction (per-qubit alphabet
/// I < X < Z < XZ) mapping `residual` onto `target` up to global phase.
std::optional<std::vector<PauliKind>> solve_product_pauli(const StateVector& residual,
                                                          const StateVector& target) {
  static constexpr PauliKind kAlphabet[4] = {PauliKind::I, PauliKind::X, PauliKind::Z,
                                             PauliKind::MinusIY};
  const int n = residual.num_qubits();
  std::array<std::array<cx, 4>, 4> mats{};
  for (int i = 0; i < 4; ++i) mats[std::size_t(i)] = pauli_matrix(kAlphabet[i]);

  const std::size_t combos = std::size_t{1} << (2 * n);
  std::vector<cx> scratch;
  for (std::size_t s = 0; s < combos; ++s) {
    scratch = residual.amplitudes();
    for (int q = 1; q <= n; ++q) {
      const std::size_t digit = (s >> (2 * (n - q))) & 3u;  // qubit 1 most significant
      if (kAlphabet[digit] == PauliKind::I) continue;
      kernels::apply_1q(scratch.data(), scratch.size(), std::size_t{1} << (n - q),
                        mats[digit].data());
    }
    const cx ov = kernels::cdot(target.amplitudes().data(), scratch.data(), scratch.size());
    if (std::norm(ov) >= 1.0 - tol::kEq) {
      std::vector<PauliKind> out(std::size_t(n), PauliKind::I);
      for (int q = 1; q <= n; ++q) {
        out[std::size_t(q - 1)] = kAlphabet[(s >> (2 * (n - q))) & 3u];
      }
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// UnknownStateSpec

UnknownStateSpec UnknownStateSpec::single_qubit(cx alpha, cx beta) {
  UnknownStateSpec s;
  s.kind = SpecKind::SingleQubit;
  s.alpha = alpha;
  s.beta = beta;
  s.validate();
  return s;
}

UnknownStateSpec UnknownStateSpec::epr_form(cx alpha, cx beta) {
  UnknownStateSpec s;
  s.kind = SpecKind::EprForm;
  s.alpha = alpha;
  s.beta = beta;
  s.validate();
  return s;
}

UnknownStateSpec UnknownStateSpec::ghz_form(int width, cx alpha, cx beta) {
  UnknownStateSpec s;
  s.kind = SpecKind::GhzForm;
  s.ghz_width = width;
  s.alpha = alpha;
  s.beta = beta;
  s.validate();
  return s;
}

UnknownStateSpec UnknownStateSpec::general_two_qubit(const std::array<cx, 4>& amplitudes) {
  UnknownStateSpec s;
  s.kind = SpecKind::GeneralTwoQubit;
  s.general = amplitudes;
  s.validate();
  return s;
}

UnknownStateSpec UnknownStateSpec::mixed_diagonal(double lambda0) {
  UnknownStateSpec s;
  s.kind = SpecKind::MixedDiagonal;
  s.lambda0 = lambda0;
  s.validate();
  return s;
}

void UnknownStateSpec::validate() const {
  switch (kind) {
    case SpecKind::SingleQubit:
    case SpecKind::EprForm:
      check_amplitude_pair(alpha, beta);
      return;
    case SpecKind::GhzForm:
      if (ghz_width < 1) throw UsageError("ghz_form width must be positive");
      check_amplitude_pair(alpha, beta);
      return;
    case SpecKind::GeneralTwoQubit: {
      double n2 = 0.0;
      for (const cx& a : general) n2 += std::norm(a);
      if (std::abs(n2 - 1.0) > tol::kEq) throw UsageError("general state not normalized");
      return;
    }
    case SpecKind::MixedDiagonal:
      if (!(lambda0 >= 0.0 && lambda0 <= 1.0)) {
        throw UsageError("lambda0 must lie in [0,1]");
      }
      return;
  }
  throw UsageError("unknown spec kind");
}

StateVector UnknownStateSpec::to_state() const {
  switch (kind) {
    case SpecKind::SingleQubit: return StateVector(1, {alpha, beta});
    case SpecKind::EprForm: return StateVector(2, {cx{}, alpha, beta, cx{}});
    case SpecKind::GhzForm: return weighted_ghz_state(ghz_width, alpha, beta);
    case SpecKind::GeneralTwoQubit:
      return StateVector(2, {general[0], general[1], general[2], general[3]});
    case SpecKind::MixedDiagonal: break;
  }
  throw UsageError("mixed spec has no pure state");
}

std::string UnknownStateSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case SpecKind::SingleQubit:
      os << "zeta = " << fmt_cx(alpha) << "|0> + " << fmt_cx(beta) << "|1>";
      break;
    case SpecKind::EprForm:
      os << "zeta = " << fmt_cx(alpha) << "|01> + " << fmt_cx(beta) << "|10>";
      break;
    case SpecKind::GhzForm:
      os << "zeta = " << fmt_cx(alpha) << "|0>^" << ghz_width << " + " << fmt_cx(beta) << "|1>^"
         << ghz_width;
      break;
    case SpecKind::GeneralTwoQubit:
      os << "psi = [" << fmt_cx(general[0]) << ", " << fmt_cx(general[1]) << ", "
         << fmt_cx(general[2]) << ", " << fmt_cx(general[3]) << "]";
      break;
    case SpecKind::MixedDiagonal:
      os << "rho1 = " << lambda0 << "|0><0| + " << 1.0 - lambda0 << "|1><1|";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Tight teleportation

ProtocolSetup make_teleport_tight_setup(const UnknownStateSpec& spec) {
  if (spec.kind != SpecKind::SingleQubit) {
    throw UnsupportedStateError("teleport_tight carries a single unknown qubit");
  }
  spec.validate();

  ProtocolSetup s(bell_basis());
  s.protocol_name = "teleport-tight";
  s.initial_state_desc = spec.describe() + " (x) Omega_AB";
  s.register_size = 3;  // 1 = unknown, 2 = A, 3 = B
  s.parties = {{"Alice", {1, 2}}, {"Bob", {3}}};
  s.sender = "Alice";
  s.initial = tensor(spec.to_state(), ghz_state(2));
  s.measured_qubits = {1, 2};
  // Outcome -> Bob's inverse operator, from the Bell projection algebra.
  const PauliKind table[4] = {PauliKind::I, PauliKind::X, PauliKind::Z, PauliKind::MinusIY};
  for (int x = 0; x < 4; ++x) s.corrections.push_back({{"Bob", pauli(table[x], 3)}});
  s.target = spec.to_state();
  return s;
}

std::vector<ProtocolTranscript> teleport_tight(const UnknownStateSpec& spec,
                                               const RunMode& mode) {
  return run_mode(make_teleport_tight_setup(spec), mode);
}

// ---------------------------------------------------------------------------
// GHZ teleportation

namespace {

/// The eight-row correction table (B_x on Bob, C_x on Claire).
std::vector<std::vector<CorrectionStep>> ghz_correction_table(int bob_q, int claire_q) {
  auto B = [&](PauliKind k, bool neg = false) {
    QubitOperator op = pauli(k, bob_q);
    return CorrectionStep{"Bob", neg ? negated(op) : op};
  };
  auto C = [&](PauliKind k, bool neg = false) {
    QubitOperator op = pauli(k, claire_q);
    return CorrectionStep{"Claire", neg ? negated(op) : op};
  };
  std::vector<std::vector<CorrectionStep>> t;
  t.push_back({B(PauliKind::X), C(PauliKind::I)});
  t.push_back({B(PauliKind::IY), C(PauliKind::I)});
  t.push_back({B(PauliKind::MinusIY), C(PauliKind::I)});
  t.push_back({B(PauliKind::X, true), C(PauliKind::I)});
  t.push_back({B(PauliKind::I), C(PauliKind::X)});
  t.push_back({B(PauliKind::I), C(PauliKind::MinusIY)});
  t.push_back({B(PauliKind::I), C(PauliKind::IY)});
  t.push_back({B(PauliKind::I), C(PauliKind::X, true)});
  return t;
}

ProtocolSetup make_ghz_setup_for_state(const StateVector& unknown, const std::string& desc) {
  ProtocolSetup s(teleport_basis_ghz());
  s.protocol_name = "teleport-ghz";
  s.initial_state_desc = desc + " (x) GHZ_ABC";
  s.register_size = 5;  // 1,2 = unknown pair; 3 = A; 4 = B; 5 = C
  s.parties = {{"Alice", {1, 2, 3}}, {"Bob", {4}}, {"Claire", {5}}};
  s.sender = "Alice";
  s.initial = tensor(unknown, ghz_state(3));
  s.measured_qubits = {1, 2, 3};
  s.corrections = ghz_correction_table(4, 5);
  s.target = unknown;
  return s;
}

}  // namespace

ProtocolSetup make_teleport_ghz_setup(const UnknownStateSpec& spec) {
  if (spec.kind != SpecKind::EprForm) {
    throw UnsupportedStateError(
        "teleport_ghz carries the EPR-form pair alpha|01>+beta|10> only");
  }
  spec.validate();
  return make_ghz_setup_for_state(spec.to_state(), spec.describe());
}

std::vector<ProtocolTranscript> teleport_ghz(const UnknownStateSpec& spec, const RunMode& mode) {
  return run_mode(make_teleport_ghz_setup(spec), mode);
}

ProtocolTranscript teleport_ghz_nonlocal_variant(const UnknownStateSpec& spec,
                                                 std::uint32_t outcome, bool nonlocal_allowed) {
  if (outcome != 0) {
    throw UsageError("the nonlocal variant is worked out for outcome x=0 only");
  }
  ProtocolSetup s = make_teleport_ghz_setup(spec);
  s.protocol_name = "teleport-ghz-nonlocal";
  s.nonlocal_allowed = nonlocal_allowed;
  // (sigma_x (x) 1l)·C_BC·C_CB·C_BC applied to the residual; the CNOT triple
  // is SWAP, so this recovers zeta from beta|00>+alpha|11> exactly like the
  // factorized pair, by a genuinely nonlocal route. Attributed to Bob: it
  // reaches Claire's qubit.
  QubitOperator nonlocal = compose(
      {pauli(PauliKind::X, 1), cnot(1, 2), cnot(2, 1), cnot(1, 2)}, 2);
  s.corrections[0] = {{"Bob", nonlocal.retargeted({4, 5})}};
  return run_branch(s, outcome);
}

NegativeCheckReport general_two_qubit_negative_check(const UnknownStateSpec& spec) {
  if (spec.kind != SpecKind::GeneralTwoQubit && spec.kind != SpecKind::EprForm) {
    throw UnsupportedStateError("negative check takes a two-qubit state");
  }
  spec.validate();
  const StateVector unknown = spec.to_state();
  ProtocolSetup s = make_ghz_setup_for_state(unknown, spec.describe());
  s.protocol_name = "teleport-ghz-negative-check";

  NegativeCheckReport report;
  report.applicable =
      std::abs(unknown.amplitude(0)) > 0.1 || std::abs(unknown.amplitude(3)) > 0.1;
  report.min_fidelity = 1.0;
  for (const ProtocolTranscript& t : run_all_branches(s)) {
    if (!t.branch_possible || !t.fidelity.has_value()) continue;
    if (*t.fidelity < report.min_fidelity) {
      report.min_fidelity = *t.fidelity;
      report.worst_outcome = t.outcome.value;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// N-party teleportation

ProtocolSetup make_teleport_nparty_setup(const UnknownStateSpec& spec, int num_parties) {
  const int n = num_parties;
  if (n < 3 || n > 7) throw UsageError("teleport_nparty supports 3 <= N <= 7");
  if (spec.kind != SpecKind::GhzForm || spec.ghz_width != n - 1) {
    throw UnsupportedStateError(
        "teleport_nparty carries alpha|0>^(N-1)+beta|1>^(N-1) on N-1 qubits");
  }
  spec.validate();

  ProtocolSetup s(nparty_teleport_basis(n));
  s.protocol_name = "teleport-nparty";
  s.initial_state_desc = spec.describe() + " (x) Omega(" + std::to_string(n) + ")";
  s.register_size = 2 * n - 1;  // 1..N-1 unknown, N..2N-1 channel
  std::vector<int> alice = {n};
  for (int q = 1; q < n; ++q) alice.push_back(q);
  std::sort(alice.begin(), alice.end());
  s.parties.push_back({"Alice", alice});
  for (int k = 2; k <= n; ++k) {
    s.parties.push_back({"receiver-" + std::to_string(k), {n + k - 1}});
  }
  s.sender = "Alice";
  s.initial = tensor(spec.to_state(), ghz_state(n));
  for (int q = 1; q <= n; ++q) s.measured_qubits.push_back(q);
  s.target = spec.to_state();

  // Corrections are synthesized per outcome: the lexicographically first
  // product Pauli turning the residual back into zeta, then verified by the
  // engine's fidelity accounting.
  for (std::uint32_t x = 0; x < s.basis.size(); ++x) {
    ProjectionResult proj = project(s.initial, s.basis.element(x), s.measured_qubits);
    std::vector<CorrectionStep> steps;
    if (proj.residual.has_value()) {
      auto solution = solve_product_pauli(*proj.residual, *s.target);
      if (!solution.has_value()) {
        throw Error("no product-Pauli correction found for branch " + std::to_string(x));
      }
      for (int j = 0; j < n - 1; ++j) {
        const PauliKind k = (*solution)[std::size_t(j)];
        if (k == PauliKind::I) continue;
        const int reg_q = n + 1 + j;
        steps.push_back({"receiver-" + std::to_string(j + 2), pauli(k, reg_q)});
      }
    }
    s.corrections.push_back(std::move(steps));
  }
  return s;
}

std::vector<ProtocolTranscript> teleport_nparty(const UnknownStateSpec& spec, int num_parties,
                                                const RunMode& mode) {
  return run_mode(make_teleport_nparty_setup(spec, num_parties), mode);
}

// ---------------------------------------------------------------------------
// One-bit-style teleportation over a single EPR pair

ProtocolSetup make_teleport_onebit_setup(const UnknownStateSpec& spec) {
  if (spec.kind != SpecKind::GhzForm || spec.ghz_width != 2) {
    throw UnsupportedStateError("teleport_onebit_style carries alpha|00>+beta|11>");
  }
  spec.validate();

  ProtocolSetup s(pi_computational_basis());
  s.protocol_name = "teleport-onebit";
  s.initial_state_desc =
      "C_A2 [" + spec.describe() + " (x) Omega_AB] (entangling step, not LOCC)";
  s.register_size = 4;  // 1,2 = unknown pair; 3 = A; 4 = B
  s.parties = {{"Alice", {1, 2}}, {"Bob", {3, 4}}};
  s.sender = "Alice";
  s.initial = apply(cnot(3, 2), tensor(spec.to_state(), ghz_state(2)));
  s.measured_qubits = {1, 2};
  s.target = spec.to_state();
  s.nonlocal_allowed = true;  // the preparation step already crossed parties

  for (std::uint32_t x = 0; x < s.basis.size(); ++x) {
    ProjectionResult proj = project(s.initial, s.basis.element(x), s.measured_qubits);
    std::vector<CorrectionStep> steps;
    if (proj.residual.has_value()) {
      auto solution = solve_product_pauli(*proj.residual, *s.target);
      if (!solution.has_value()) {
        throw Error("no product-Pauli correction found for branch " + std::to_string(x));
      }
      for (int j = 0; j < 2; ++j) {
        const PauliKind k = (*solution)[std::size_t(j)];
        if (k == PauliKind::I) continue;
        steps.push_back({"Bob", pauli(k, 3 + j)});
      }
    }
    s.corrections.push_back(std::move(steps));
  }
  return s;
}

std::vector<ProtocolTranscript> teleport_onebit_style(const UnknownStateSpec& spec,
                                                      const RunMode& mode) {
  return run_mode(make_teleport_onebit_setup(spec), mode);
}

// ---------------------------------------------------------------------------
// Dense coding

namespace {

struct Decoded {
  std::uint32_t outcome = 0;
  double probability = 0.0;
};

/// Full-register projective measurement of `encoded` in `basis`; dense
/// coding is exact, so the winning outcome must carry all the weight.
Decoded decode_in_basis(const StateVector& encoded, const ProjectiveBasis& basis) {
  Decoded best;
  for (std::uint32_t x = 0; x < basis.size(); ++x) {
    const cx ov = inner_product(basis.element(x), encoded);
    const double p = std::norm(ov);
    if (p > best.probability) {
      best.probability = p;
      best.outcome = x;
    }
  }
  return best;
}

void check_message(const BitString& message, int expected_length) {
  if (message.length != expected_length) {
    std::ostringstream os;
    os << "message must be " << expected_length << " bits, got " << message.length;
    throw UsageError(os.str());
  }
}

/// dense_code_ghz encodes through the (B_x, C_x) table, whose first-factor
/// bit order is swapped relative to the GHZ-class index; the receiver
/// decodes through the inverse of that bijection.
std::uint32_t ghz_table_outcome_to_message(std::uint32_t outcome) {
  const std::uint32_t b1 = (outcome >> 2) & 1u;
  const std::uint32_t b2 = (outcome >> 1) & 1u;
  return (b2 << 2) | (b1 << 1) | (outcome & 1u);
}

}  // namespace

DenseCodeResult dense_code_tight(const BitString& message) {
  check_message(message, 2);
  DenseCodeResult r;
  r.scheme = "tight";
  r.message = message;
  r.encoded = apply(generating_operator(message), ghz_state(2));
  const ProjectiveBasis basis = bell_basis();
  const Decoded d = decode_in_basis(r.encoded, basis);
  r.measured = BitString(2, d.outcome);
  r.decoded = r.measured;
  r.outcome_probability = d.probability;
  r.manipulated_qubits = 1;
  r.classical_bits = 2;
  r.nonlocal_encoding = false;
  r.basis_label = basis.label();
  return r;
}

DenseCodeResult dense_code_ghz(const BitString& message) {
  check_message(message, 3);
  DenseCodeResult r;
  r.scheme = "ghz";
  r.message = message;
  r.encoded = ghz_dense_state(message);
  const ProjectiveBasis basis = ghz_class_basis(3);
  const Decoded d = decode_in_basis(r.encoded, basis);
  r.measured = BitString(3, d.outcome);
  r.decoded = BitString(3, ghz_table_outcome_to_message(d.outcome));
  r.outcome_probability = d.probability;
  r.manipulated_qubits = 2;
  r.classical_bits = 3;
  r.nonlocal_encoding = false;
  r.basis_label = basis.label();
  return r;
}

DenseCodeResult dense_code_ghz_converted(const BitString& message) {
  check_message(message, 3);
  DenseCodeResult r;
  r.scheme = "ghz-converted";
  r.message = message;
  r.encoded = convert_dense_to_teleport(message);
  const ProjectiveBasis basis = converted_dense_basis();
  const Decoded d = decode_in_basis(r.encoded, basis);
  r.measured = BitString(3, d.outcome);
  r.decoded = r.measured;  // the converted family is indexed by the message
  r.outcome_probability = d.probability;
  r.manipulated_qubits = 2;
  r.classical_bits = 3;
  r.nonlocal_encoding = true;  // H_B C_BC is not a local operation
  r.basis_label = basis.label();
  return r;
}

DenseCodeResult dense_code_ghz_from_epr(const BitString& message) {
  check_message(message, 3);
  DenseCodeResult r;
  r.scheme = "ghz-from-epr";
  r.message = message;
  // Channel Phi+ (x) |0>; each U_x(2) is pre-composed with C_BC.
  StateVector state = tensor(bell_state(0), StateVector::basis_state(1, 0));
  state = apply(cnot(2, 3), state);
  auto [b, c] = ghz_dense_pair(message);
  r.encoded = apply(c, apply(b, state));
  const ProjectiveBasis basis = ghz_class_basis(3);
  const Decoded d = decode_in_basis(r.encoded, basis);
  r.measured = BitString(3, d.outcome);
  r.decoded = BitString(3, ghz_table_outcome_to_message(d.outcome));
  r.outcome_probability = d.probability;
  r.manipulated_qubits = 2;
  r.classical_bits = 3;
  r.nonlocal_encoding = true;  // the inline C_BC preparation
  r.basis_label = basis.label();
  return r;
}

DenseCodeResult dense_code_nparty(const BitString& message) {
  const int n = message.length;
  if (n < 2 || n > 10) throw UsageError("dense_code_nparty supports 2 <= N <= 10");
  DenseCodeResult r;
  r.scheme = "nparty";
  r.message = message;
  r.encoded = apply(generating_operator(message), ghz_state(n));
  const ProjectiveBasis basis = ghz_class_basis(n);
  const Decoded d = decode_in_basis(r.encoded, basis);
  r.measured = BitString(n, d.outcome);
  r.decoded = r.measured;
  r.outcome_probability = d.probability;
  r.manipulated_qubits = n - 1;
  r.classical_bits = n;
  r.nonlocal_encoding = false;
  r.basis_label = basis.label();
  return r;
}

DenseCodeResult modified_dense_scheme(int independent_qubits, int disentangle_width,
                                      const BitString& message) {
  const int n = message.length;
  const int k = independent_qubits;
  const int width = disentangle_width;
  if (n < 2 || n > 10) throw UsageError("modified_dense_scheme supports 2 <= N <= 10");
  if (k < 0 || n - k < 2) {
    throw UsageError("need an entangled block of at least two qubits (k + 2 <= N)");
  }
  if (width != 0 && (width < 2 || width > n)) {
    throw UsageError("disentangle width must be 0 or within [2, N]");
  }

  DenseCodeResult r;
  r.scheme = "modified";
  r.message = message;

  // Channel: (N-k)-qubit entangled block, then k fresh |0> qubits.
  StateVector state = ghz_state(n - k);
  for (int j = 0; j < k; ++j) state = tensor(state, StateVector::basis_state(1, 0));
  // Ent(k+1): ladder extending the block through the fresh qubits.
  for (int q = n - k; q < n; ++q) state = apply(cnot(q, q + 1), state);
  // Sufficient-tight encoding.
  state = apply(generating_operator(message), state);
  // Den(width): H(2)·C(2,3)...C(width-1,width), rightmost first.
  auto den = [&](StateVector psi) {
    if (width >= 2) {
      for (int q = width - 1; q >= 2; --q) psi = apply(cnot(q, q + 1), psi);
      psi = apply(hadamard(2), psi);
    }
    return psi;
  };
  r.encoded = den(std::move(state));

  std::vector<StateVector> elements;
  elements.reserve(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
    elements.push_back(den(ghz_class_element(n, BitString(n, x))));
  }
  const ProjectiveBasis basis("modified-dense-" + std::to_string(n), std::move(elements));

  const Decoded d = decode_in_basis(r.encoded, basis);
  r.measured = BitString(n, d.outcome);
  r.decoded = r.measured;
  r.outcome_probability = d.probability;
  r.manipulated_qubits = n - 1;
  r.classical_bits = n;
  r.nonlocal_encoding = k > 0 || width >= 2;
  r.basis_label = basis.label();
  return r;
}

GramRankReport teleport_operator_dense_rank() {
  // The eight states (1l (x) B_x (x) C_x)|GHZ> with (B_x, C_x) taken from the
  // teleportation correction table.
  const auto table = ghz_correction_table(2, 3);
  std::vector<StateVector> states;
  states.reserve(8);
  for (const auto& steps : table) {
    StateVector s = ghz_state(3);
    for (const CorrectionStep& step : steps) s = apply(step.op, s);
    states.push_back(std::move(s));
  }
  Eigen::MatrixXcd gram(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      gram(i, j) = inner_product(states[std::size_t(i)], states[std::size_t(j)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  GramRankReport report;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()[i] > 1e-9) ++report.rank;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Telecloning

TelecloneResult teleclone(const UnknownStateSpec& spec) {
  if (spec.kind != SpecKind::MixedDiagonal) {
    throw UnsupportedStateError("teleclone takes a mixed diagonal qubit");
  }
  spec.validate();
  const double l0 = spec.lambda0;
  const double l1 = 1.0 - l0;

  // rho_1 (x) |GHZ><GHZ| on (1, A=2, B=3, C=4); entirely density-matrix.
  const DensityMatrix rho1 = DensityMatrix::diagonal(1, {l0, l1});
  const DensityMatrix joint = tensor_density(rho1, to_density(ghz_state(3)));
  const ProjectiveBasis bell = bell_basis();
  const DensityMatrix expected = DensityMatrix::diagonal(2, {l0, 0.0, 0.0, l1});

  // Outcome -> local corrections on B and C (engine-free density path).
  std::vector<std::vector<QubitOperator>> corrections = {
      {},
      {pauli(PauliKind::X, 1), pauli(PauliKind::X, 2)},
      {pauli(PauliKind::Z, 1)},
      {pauli(PauliKind::X, 1), pauli(PauliKind::X, 2), pauli(PauliKind::Z, 1)},
  };

  std::vector<ProtocolTranscript> transcripts;
  Eigen::MatrixXcd averaged = Eigen::MatrixXcd::Zero(4, 4);
  for (std::uint32_t x = 0; x < 4; ++x) {
    DensityProjectionResult proj = project_density(joint, bell.element(x), {1, 2});

    ProtocolTranscript t;
    t.protocol_name = "teleclone";
    t.initial_state = spec.describe() + " (x) GHZ_ABC";
    t.basis_label = bell.label();
    t.outcome = BitString(2, x);
    t.outcome_probability = proj.probability;
    t.classical_bits_sent = 2;
    t.messages.push_back({"Alice", "broadcast", t.outcome});
    if (!proj.residual.has_value()) {
      t.branch_possible = false;
      transcripts.push_back(std::move(t));
      continue;
    }
    DensityMatrix corrected = *proj.residual;
    for (const QubitOperator& op : corrections[x]) {
      corrected = apply_density(op, corrected);
      const char* party = op.targets()[0] == 1 ? "Bob" : "Claire";
      t.corrections.push_back({party, op.label(), op.targets(), op.locality()});
    }
    t.fidelity = fidelity_mixed(corrected, expected);
    averaged += proj.probability * corrected.matrix();
    t.final_density = std::move(corrected);
    transcripts.push_back(std::move(t));
  }

  DensityMatrix rho_bc(2, std::move(averaged));
  DensityMatrix rho_b = partial_trace(rho_bc, {1});
  DensityMatrix rho_c = partial_trace(rho_bc, {2});
  return {std::move(rho_bc), std::move(rho_b), std::move(rho_c), std::move(transcripts)};
}

}  // namespace ghzsim
