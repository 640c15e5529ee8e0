#pragma once

#include <vector>

#include "ghzsim/density.hpp"
#include "ghzsim/types.hpp"

namespace ghzsim {

/// A finite ensemble {p_i, rho_i} of equal-dimension states.
struct Ensemble {
  std::vector<DensityMatrix> states;
  std::vector<double> probabilities;

  void validate() const;
  DensityMatrix average() const;
};

/// Holevo function C({p_i}, rho) = S(sum p_i rho_i) - sum p_i S(rho_i), bits.
double holevo(const Ensemble& ensemble);

/// E = -|alpha|^2 log2 |alpha|^2 - |beta|^2 log2 |beta|^2; the reduced
/// von Neumann entropy of any single qubit of the weighted channel. Depends
/// only on the moduli of alpha and beta.
double channel_entanglement(cx alpha, cx beta);

/// Average of the 2^N weighted-channel dense-coding states at p = 2^-N.
/// Verifies the factorization rho'(1) (x) (1l/2)^(N-1) with
/// rho'(1) = diag(|alpha|^2, |beta|^2) before returning. N <= 8.
DensityMatrix ensemble_density(int num_qubits, cx alpha, cx beta);

/// Holevo capacity of the weighted channel per transmitted (manipulated)
/// qubit: C/(N-1). Cross-checked against the closed form 1 + E/(N-1).
double per_bit_capacity(int num_qubits, cx alpha, cx beta);

struct CapacityRow {
  int num_qubits = 0;
  double alpha_sq = 0.0;
  double entanglement = 0.0;
  double holevo_bits = 0.0;
  double capacity = 0.0;
  double capacity_closed_form = 0.0;
  double abs_diff = 0.0;
};

/// Sweep of alpha^2 over [0,1] on a uniform grid.
std::vector<CapacityRow> capacity_sweep(int num_qubits, int grid_points);

}  // namespace ghzsim
