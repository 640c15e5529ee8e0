#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ghzsim/state.hpp"
#include "ghzsim/types.hpp"

namespace ghzsim {

/// Mixed state of an ordered qubit register: Hermitian, trace-1, PSD matrix
/// over the same big-endian basis indexing as StateVector. Validated at
/// construction (Hermiticity and trace within tol::kEq, eigenvalues above
/// -tol::kEq). Immutable.
class DensityMatrix {
 public:
  static constexpr int kMaxQubits = 10;

  DensityMatrix(int num_qubits, Eigen::MatrixXcd entries);

  /// Diagonal mixture over computational basis states.
  static DensityMatrix diagonal(int num_qubits, const std::vector<double>& populations);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  cx entry(std::size_t i, std::size_t j) const { return entries_(Eigen::Index(i), Eigen::Index(j)); }

  /// Ascending eigenvalues (real; the matrix is Hermitian).
  std::vector<double> eigenvalues() const;

  double max_abs_offdiagonal() const;

 private:
  int num_qubits_;
  Eigen::MatrixXcd entries_;
};

/// |psi><psi|.
DensityMatrix to_density(const StateVector& psi);

/// Partial trace keeping the listed qubits (ordered, 1-based); the result's
/// qubit order follows the list.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Single-qubit reduction straight from a pure state; equals
/// partial_trace(to_density(psi), {q}) without materializing the full matrix.
DensityMatrix reduced_single_qubit(const StateVector& psi, int q);

/// S(rho) = -sum lambda log2 lambda, with 0 log 0 := 0. Eigenvalues below
/// tol::kEigFloor raise InvalidStateError; small negatives are clamped to 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Projects a mixed register onto `projector_state` on the listed qubits and
/// traces them out. The residual covers the remaining qubits in original
/// order; probability below tol::kZeroProb leaves it empty.
struct DensityProjectionResult {
  double probability = 0.0;
  std::optional<DensityMatrix> residual;
};
DensityProjectionResult project_density(const DensityMatrix& rho,
                                        const StateVector& projector_state,
                                        const std::vector<int>& on_qubits);

/// Conjugation rho -> M rho M^dag for a full-register matrix M (unitary in
/// every use here).
DensityMatrix conjugate(const DensityMatrix& rho, const Eigen::MatrixXcd& m);

/// Kronecker product; qubits of `a` precede qubits of `b`.
DensityMatrix tensor_density(const DensityMatrix& a, const DensityMatrix& b);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity_mixed(const DensityMatrix& a, const DensityMatrix& b);

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace ghzsim
