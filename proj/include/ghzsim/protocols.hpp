#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ghzsim/basis.hpp"
#include "ghzsim/density.hpp"
#include "ghzsim/locc.hpp"
#include "ghzsim/types.hpp"

namespace ghzsim {

enum class SpecKind { SingleQubit, EprForm, GhzForm, GeneralTwoQubit, MixedDiagonal };

/// The unknown-state family a protocol is asked to transmit.
///   single_qubit:     alpha|0> + beta|1>
///   epr_form:         alpha|01> + beta|10>            (GHZ teleportation)
///   ghz_form(w):      alpha|0..0> + beta|1..1> on w qubits
///   general_two_qubit: arbitrary 4 amplitudes          (negative check)
///   mixed_diagonal:   lambda0|0><0| + lambda1|1><1|    (telecloning)
struct UnknownStateSpec {
  SpecKind kind = SpecKind::SingleQubit;
  cx alpha{1.0, 0.0};
  cx beta{0.0, 0.0};
  int ghz_width = 0;
  std::array<cx, 4> general{};
  double lambda0 = 1.0;

  static UnknownStateSpec single_qubit(cx alpha, cx beta);
  static UnknownStateSpec epr_form(cx alpha, cx beta);
  static UnknownStateSpec ghz_form(int width, cx alpha, cx beta);
  static UnknownStateSpec general_two_qubit(const std::array<cx, 4>& amplitudes);
  static UnknownStateSpec mixed_diagonal(double lambda0);

  void validate() const;
  StateVector to_state() const;  // pure kinds
  std::string describe() const;
};

struct RunMode {
  bool sample = false;
  std::uint64_t seed = 0;

  static RunMode exhaustive() { return {}; }
  static RunMode sampled(std::uint64_t seed) { return {true, seed}; }
};

// ---------------------------------------------------------------------------
// Teleportation suite. Exhaustive mode returns every branch in outcome
// order; sample mode returns the single sampled branch.

/// EPR channel, Bell measurement, one-qubit corrections; 2 classical bits.
ProtocolSetup make_teleport_tight_setup(const UnknownStateSpec& spec);
std::vector<ProtocolTranscript> teleport_tight(const UnknownStateSpec& spec, const RunMode& mode);

/// GHZ channel carrying alpha|01>+beta|10>; eight-outcome product-basis
/// measurement; factorized (B_x, C_x) corrections for Bob and Claire.
ProtocolSetup make_teleport_ghz_setup(const UnknownStateSpec& spec);
std::vector<ProtocolTranscript> teleport_ghz(const UnknownStateSpec& spec, const RunMode& mode);

/// The x=0 branch with the non-factorized correction
/// (sigma_x (x) 1l)·C_BC·C_CB·C_BC in place of the (B_0, C_0) pair.
ProtocolTranscript teleport_ghz_nonlocal_variant(const UnknownStateSpec& spec,
                                                 std::uint32_t outcome = 0,
                                                 bool nonlocal_allowed = true);

/// Runs the GHZ protocol verbatim on an arbitrary two-qubit state and
/// reports the worst branch fidelity. `applicable` is set when the input
/// leaves the span{|01>,|10>} support that the channel can carry.
struct NegativeCheckReport {
  bool applicable = false;
  double min_fidelity = 1.0;
  std::uint32_t worst_outcome = 0;
};
NegativeCheckReport general_two_qubit_negative_check(const UnknownStateSpec& spec);

/// Omega(N) channel carrying alpha|0>^(N-1)+beta|1>^(N-1); measurement of
/// the N-1 unknown qubits plus one channel qubit; per-branch product-Pauli
/// corrections synthesized and verified. N classical bits. 3 <= N <= 7.
ProtocolSetup make_teleport_nparty_setup(const UnknownStateSpec& spec, int num_parties);
std::vector<ProtocolTranscript> teleport_nparty(const UnknownStateSpec& spec, int num_parties,
                                                const RunMode& mode);

/// One-EPR-pair scheme for alpha|00>+beta|11> (the ghz_form width-2 shape;
/// this differs from teleport_ghz's alpha|01>+beta|10> deliberately — both
/// appear in the source protocols). Entangling step CNOT(A -> qubit 2), then
/// a pi/computational product measurement on the two unknown qubits; 4
/// branches, 2 classical bits. Not an LOCC protocol: the entangling step
/// spans both parties.
ProtocolSetup make_teleport_onebit_setup(const UnknownStateSpec& spec);
std::vector<ProtocolTranscript> teleport_onebit_style(const UnknownStateSpec& spec,
                                                      const RunMode& mode);

// ---------------------------------------------------------------------------
// Dense coding suite. Every scheme is an exact round trip.

struct DenseCodeResult {
  std::string scheme;
  BitString message;
  StateVector encoded;
  BitString measured;  // decoder's measurement outcome
  BitString decoded;
  double outcome_probability = 0.0;
  int manipulated_qubits = 0;
  int classical_bits = 0;
  bool nonlocal_encoding = false;
  std::string basis_label;
};

/// 2-bit message over the EPR channel; encode on one qubit, Bell decode.
DenseCodeResult dense_code_tight(const BitString& message);

/// 3-bit message over GHZ via the (B_x, C_x) table; decode in the GHZ-class
/// basis through the table bijection.
DenseCodeResult dense_code_ghz(const BitString& message);

/// Same, with the conversion H_B C_BC appended to the encoding (making it
/// nonlocal); decode in the converted family.
DenseCodeResult dense_code_ghz_converted(const BitString& message);

/// Channel starts as Phi+ (x) |0>; every encoding operator is pre-composed
/// with C_BC, preparing the GHZ channel inline.
DenseCodeResult dense_code_ghz_from_epr(const BitString& message);

/// N-bit message (2 <= N <= 10) encoded by the factorized generator on
/// qubits 2..N; decode in ghz_class_basis(N). Manipulates N-1 qubits.
DenseCodeResult dense_code_nparty(const BitString& message);

/// The entangle/disentangle-modified scheme: channel is an (N-k)-qubit
/// entangled block plus k fresh qubits; a CNOT ladder extends the block to
/// Omega(N) before encoding, and a disentangling cascade
/// H(2)·C(2,3)...C(n-1,n) simplifies the measurement family. k=0, n=0
/// degenerates to dense_code_nparty.
DenseCodeResult modified_dense_scheme(int independent_qubits, int disentangle_width,
                                      const BitString& message);

/// Gram-rank demonstration that the teleportation correction operators do
/// not generate a complete dense-coding set: returns the rank of the Gram
/// matrix of the eight (1l (x) B_x (x) C_x)|GHZ> states.
struct GramRankReport {
  int rank = 0;
  int expected_complete = 8;
};
GramRankReport teleport_operator_dense_rank();

// ---------------------------------------------------------------------------
// Telecloning

struct TelecloneResult {
  DensityMatrix rho_bc;  // probability-averaged post-correction state
  DensityMatrix rho_b;
  DensityMatrix rho_c;
  std::vector<ProtocolTranscript> transcripts;
};

/// Distributes a mixed qubit lambda0|0><0|+lambda1|1><1| to two receivers
/// over the GHZ channel with a Bell measurement and table corrections. Runs
/// entirely in the density-matrix representation.
TelecloneResult teleclone(const UnknownStateSpec& spec);

}  // namespace ghzsim
