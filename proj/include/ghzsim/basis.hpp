#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ghzsim/operators.hpp"
#include "ghzsim/state.hpp"
#include "ghzsim/types.hpp"

namespace ghzsim {

/// An indexed complete family of orthonormal N-qubit projectors |e_x><e_x|.
/// Orthonormality is validated eagerly for dim <= 64; the residual methods
/// run the full checks at any size (used by the verification suites).
class ProjectiveBasis {
 public:
  ProjectiveBasis(std::string label, std::vector<StateVector> elements);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return elements_.size(); }
  const std::string& label() const { return label_; }
  const StateVector& element(std::uint32_t x) const { return elements_[x]; }
  const std::vector<StateVector>& elements() const { return elements_; }

  /// max_x,y |<e_x|e_y> - delta_xy|
  double orthonormality_residual() const;
  /// max-norm of sum_x |e_x><e_x| - I (streamed by rows; O(dim) memory).
  double completeness_residual() const;

 private:
  int num_qubits_;
  std::vector<StateVector> elements_;
  std::string label_;
};

/// (|0...0> + |1...1>)/sqrt(2) on N qubits; Omega, the maximally entangled
/// channel. ghz_state(3) is the GHZ triplet.
StateVector ghz_state(int num_qubits);

/// alpha|0...0> + beta|1...1>; the non-maximal channel of the capacity scan.
StateVector weighted_ghz_state(int num_qubits, cx alpha, cx beta);

/// (|0> + sign|1>)/sqrt(2); sign must be +1 or -1.
StateVector pi_state(int sign);

/// Conventional Bell state by index 0..3 = Phi+, Psi+, Phi-, Psi-.
StateVector bell_state(int index);

/// The Bell basis ordered Phi+, Psi+, Phi-, Psi- at x = 0..3. Coincides with
/// ghz_class_basis(2): the lexicographic family Phi_{b1 b2} lands on exactly
/// this ordering.
ProjectiveBasis bell_basis();

/// Element of the GHZ-class complete set:
/// (|0>|b2..bN> + (-1)^{b1} |1>|~b2..~bN>)/sqrt(2).
StateVector ghz_class_element(int num_qubits, const BitString& bits);

/// alpha/beta-weighted variant (the Phi' family of the capacity analysis).
StateVector ghz_class_element_weighted(int num_qubits, const BitString& bits, cx alpha, cx beta);

/// The 2^N-element complete set of maximally entangled states, indexed by
/// the bit string b1..bN. 2 <= N <= 12.
ProjectiveBasis ghz_class_basis(int num_qubits);

/// The factorized (N-1)-qubit generator on qubits 2..N:
/// sigma_x^{b2} sigma_z^{b1} (x) sigma_x^{b3} (x) ... (x) sigma_x^{bN},
/// satisfying (1l (x) U) Omega = ghz_class_element(bits).
QubitOperator generating_operator(const BitString& bits);

/// The eight-element measurement basis of GHZ teleportation, ordered as the
/// protocol table rows x=0..7:
/// {pi+Phi+, pi+Phi-, pi-Phi+, pi-Phi-, pi+Psi+, pi+Psi-, pi-Psi+, pi-Psi-},
/// with the pi factor on qubit 1 and the Bell pair on qubits (2,3).
ProjectiveBasis teleport_basis_ghz();

/// N-party basis (pi^{s1} (x) ... (x) pi^{s_{N-2}}) (x) Bell with the Bell
/// pair on the last two qubits. Index layout: sign bits high (s1 most
/// significant, 0 = +), Bell index in the two least significant bits.
ProjectiveBasis nparty_teleport_basis(int num_qubits);

/// {pi±(1) (x) |b>(2)}, x = 2s + b; the one-bit-style measurement basis.
ProjectiveBasis pi_computational_basis();

/// The GHZ dense-coding table: message bits -> (B on qubit 2, C on qubit 3).
/// B = sigma_x^{b1} sigma_z^{b2}, C = sigma_x^{b3}.
std::pair<QubitOperator, QubitOperator> ghz_dense_pair(const BitString& message);

/// D_x = (1l (x) B_x (x) C_x)|GHZ>; the dense-coding state family.
StateVector ghz_dense_state(const BitString& message);

/// H(2) · CNOT(2,3) applied to D_x: the conversion taking the dense-coding
/// family onto a product-form complete basis.
StateVector convert_dense_to_teleport(const BitString& message);

/// The full converted family {convert_dense_to_teleport(x)} as a basis.
ProjectiveBasis converted_dense_basis();

}  // namespace ghzsim
