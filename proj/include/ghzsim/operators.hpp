#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ghzsim/density.hpp"
#include "ghzsim/state.hpp"
#include "ghzsim/types.hpp"

namespace ghzsim {

/// Locality classification of an operator, decided at construction.
///   LocalSingle — one-qubit operator;
///   Factorized  — tensor product of one-qubit operators over its targets
///                 (the LOCC-compatible class);
///   Nonlocal    — everything else (CNOT, SWAP products, ...).
enum class LocalityTag { LocalSingle, Factorized, Nonlocal };

const char* locality_name(LocalityTag tag);

enum class PauliKind { I, X, Y, Z, MinusIY, IY };

/// A unitary tagged with the ordered subset of qubits it acts on. The matrix
/// is indexed by the targets' bits in listed order, big-endian. Unitarity is
/// enforced at construction; operators are compared entrywise (not up to
/// phase; the tables distinguish -iY from iY).
class QubitOperator {
 public:
  /// Full validation: shape, unitarity, factorization scan.
  QubitOperator(Eigen::MatrixXcd matrix, std::vector<int> targets, std::string label);

  static QubitOperator single(const std::array<cx, 4>& m, int target, std::string label);

  int arity() const { return int(targets_.size()); }
  std::size_t dim() const { return std::size_t(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  const std::vector<int>& targets() const { return targets_; }
  LocalityTag locality() const { return locality_; }
  const std::string& label() const { return label_; }

  /// One-qubit factors in target order, present iff the product structure is
  /// known; their ordered product equals matrix() exactly.
  const std::vector<std::array<cx, 4>>& factors() const { return factors_; }

  QubitOperator adjoint() const;
  QubitOperator retargeted(std::vector<int> new_targets) const;

  double unitarity_residual() const;

 private:
  Eigen::MatrixXcd matrix_;
  std::vector<int> targets_;
  LocalityTag locality_ = LocalityTag::Nonlocal;
  std::string label_;
  std::vector<std::array<cx, 4>> factors_;

  struct Trusted {};  // construction path whose unitarity is inherited
  QubitOperator(Trusted, Eigen::MatrixXcd matrix, std::vector<int> targets, std::string label,
                std::optional<LocalityTag> tag, std::vector<std::array<cx, 4>> factors);

  friend QubitOperator tensor_product(const QubitOperator&, const QubitOperator&);
  friend QubitOperator embed(const QubitOperator&, int);
  friend QubitOperator compose(const std::vector<QubitOperator>&, int);
  friend QubitOperator negated(const QubitOperator&);
  friend QubitOperator cnot(int, int);
  friend QubitOperator entangle_op(int);
  friend QubitOperator disentangle_op(int);
};

/// The 2x2 library. Convention sigma_y = i sigma_x sigma_z, so
/// -iY = sigma_x sigma_z and iY = sigma_z sigma_x.
QubitOperator pauli(PauliKind which, int target = 1);
QubitOperator hadamard(int target = 1);
std::array<cx, 4> pauli_matrix(PauliKind which);

/// CNOT with the stated control/target order; always Nonlocal.
QubitOperator cnot(int control, int target);

/// Tensor product; target lists concatenate (a's qubits first).
QubitOperator tensor_product(const QubitOperator& a, const QubitOperator& b);

/// -1 * op (needed for the signed correction tables).
QubitOperator negated(const QubitOperator& op);

/// Acts as `op` on its targets and as identity elsewhere in a register of
/// `register_size` qubits.
QubitOperator embed(const QubitOperator& op, int register_size);

/// Right-to-left matrix product of embeddings: compose({A,B})
/// applies B first. Result targets the whole register.
QubitOperator compose(const std::vector<QubitOperator>& ops, int register_size);

/// En(k)/Den(k): H on qubit 1 followed by the CNOT ladder C12 C23 ...
/// maps |0...0> onto (|0...0>+|1...1>)/sqrt(2); Den is the inverse.
QubitOperator entangle_op(int k);
QubitOperator disentangle_op(int k);

/// Dimension-count guard for basis-generating operator families:
/// an m-qubit family can index a 2^N basis only if m >= N/2.
bool validate_arity(int num_qubits, int arity);

/// op applied to psi on op.targets() (1-based register indices).
StateVector apply(const QubitOperator& op, const StateVector& psi);

/// rho -> U rho U^dag with U = embed(op, rho.num_qubits()).
DensityMatrix apply_density(const QubitOperator& op, const DensityMatrix& rho);

double operator_max_diff(const QubitOperator& a, const QubitOperator& b);

}  // namespace ghzsim
