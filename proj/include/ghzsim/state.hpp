#pragma once

#include <optional>
#include <vector>

#include "ghzsim/types.hpp"

namespace ghzsim {

/// Pure state of an ordered qubit register. Amplitudes are indexed by the
/// basis integer whose binary digits b1 b2 ... bN are read big-endian:
/// qubit 1 is the most significant bit. Qubit indices are 1-based throughout.
///
/// Immutable after construction; all operations return new values.
class StateVector {
 public:
  static constexpr int kMaxQubits = 16;

  /// Empty register: zero qubits, single amplitude 1. The unit of tensor().
  StateVector();

  /// |0...0> on num_qubits.
  explicit StateVector(int num_qubits);

  /// Takes ownership of amplitudes; validates length, finiteness and
  /// normalization (within tol::kEq).
  StateVector(int num_qubits, std::vector<cx> amplitudes);

  static StateVector basis_state(int num_qubits, std::uint32_t index);

  /// Normalizes the given amplitudes (error if the norm is ~0).
  static StateVector normalized(int num_qubits, std::vector<cx> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cx>& amplitudes() const { return amps_; }
  cx amplitude(std::uint32_t index) const { return amps_[index]; }

  /// Bit mask of qubit q (1-based) within a basis index.
  std::uint32_t qubit_mask(int q) const { return 1u << (num_qubits_ - q); }

  double norm_squared() const;

 private:
  int num_qubits_;
  std::vector<cx> amps_;

  struct Unchecked {};
  StateVector(Unchecked, int num_qubits, std::vector<cx> amps);
  friend StateVector tensor(const StateVector&, const StateVector&);
};

/// Result of projecting a register onto a partial-register state. When the
/// branch probability falls below tol::kZeroProb the residual is undefined.
struct ProjectionResult {
  double probability = 0.0;
  std::optional<StateVector> residual;
};

/// Kronecker product; qubits of `a` precede qubits of `b`.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Normalized ca*a + cb*b (same register shape).
StateVector superpose(const StateVector& a, const StateVector& b, cx ca, cx cb);

/// |<a|b>|^2. Equals 1 iff the states agree up to global phase.
double fidelity_pure(const StateVector& a, const StateVector& b);

/// <a|b>.
cx inner_product(const StateVector& a, const StateVector& b);

/// State equality modulo global phase (the only physical notion of equality
/// used for states; operators are compared entrywise).
bool approx_equal_phase(const StateVector& a, const StateVector& b, double tolerance = tol::kEq);

/// Projects `psi` onto `projector_state` living on the listed qubits
/// (ordered, 1-based; the projector's own qubit order follows the list).
/// The residual keeps the remaining qubits in their original relative order.
ProjectionResult project(const StateVector& psi, const StateVector& projector_state,
                         const std::vector<int>& on_qubits);

}  // namespace ghzsim
