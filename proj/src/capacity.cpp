#include "ghzsim/capacity.hpp"

#include <cmath>
#include <sstream>

#include "ghzsim/basis.hpp"
#include "ghzsim/errors.hpp"

namespace ghzsim {

void Ensemble::validate() const {
  if (states.empty() || states.size() != probabilities.size()) {
    throw UsageError("ensemble needs matching state and probability lists");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw UsageError("ensemble probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "ensemble probabilities sum to " << sum;
    throw UsageError(os.str());
  }
  for (const DensityMatrix& s : states) {
    if (s.num_qubits() != states.front().num_qubits()) {
      throw UsageError("ensemble states must share one register size");
    }
  }
}

DensityMatrix Ensemble::average() const {
  validate();
  Eigen::MatrixXcd acc =
      Eigen::MatrixXcd::Zero(Eigen::Index(states.front().dim()), Eigen::Index(states.front().dim()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    acc += probabilities[i] * states[i].matrix();
  }
  return DensityMatrix(states.front().num_qubits(), std::move(acc));
}

double holevo(const Ensemble& ensemble) {
  ensemble.validate();
  double avg_member_entropy = 0.0;
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    if (ensemble.probabilities[i] == 0.0) continue;
    avg_member_entropy += ensemble.probabilities[i] * von_neumann_entropy(ensemble.states[i]);
  }
  return von_neumann_entropy(ensemble.average()) - avg_member_entropy;
}

double channel_entanglement(cx alpha, cx beta) {
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  if (std::abs(a2 + b2 - 1.0) > tol::kEq) {
    std::ostringstream os;
    os << "channel amplitudes not normalized: |alpha|^2+|beta|^2 = " << a2 + b2;
    throw UsageError(os.str());
  }
  auto term = [](double p) { return p > tol::kStrict ? -p * std::log2(p) : 0.0; };
  return term(a2) + term(b2);
}

DensityMatrix ensemble_density(int num_qubits, cx alpha, cx beta) {
  const int n = num_qubits;
  if (n < 2 || n > 8) throw UsageError("ensemble_density supports 2 <= N <= 8");
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  if (std::abs(a2 + b2 - 1.0) > tol::kEq) throw UsageError("channel amplitudes not normalized");

  const double p = 1.0 / double(std::size_t{1} << n);
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
    const StateVector phi = ghz_class_element_weighted(n, BitString(n, x), alpha, beta);
    Eigen::Map<const Eigen::VectorXcd> v(phi.amplitudes().data(), dim);
    acc += p * (v * v.adjoint());
  }
  DensityMatrix rho(n, std::move(acc));

  // The average must factorize as rho'(1) (x) (1l/2)^(N-1).
  DensityMatrix reference = DensityMatrix::diagonal(1, {a2, b2});
  for (int k = 1; k < n; ++k) {
    reference = tensor_density(reference, DensityMatrix::diagonal(1, {0.5, 0.5}));
  }
  const double residual = max_abs_diff(rho, reference);
  if (residual > tol::kEq) {
    std::ostringstream os;
    os << "ensemble average failed to factorize: residual " << residual;
    throw InvalidStateError(os.str());
  }
  return rho;
}

double per_bit_capacity(int num_qubits, cx alpha, cx beta) {
  const int n = num_qubits;
  if (n < 2) throw UsageError("per_bit_capacity needs N >= 2");

  double holevo_bits;
  if (n <= 6) {
    // Literal ensemble route: 2^N equiprobable pure members.
    Ensemble e;
    const double p = 1.0 / double(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
      e.states.push_back(to_density(ghz_class_element_weighted(n, BitString(n, x), alpha, beta)));
      e.probabilities.push_back(p);
    }
    holevo_bits = holevo(e);
  } else {
    // Members are pure, so the Holevo function collapses to S(rho-bar).
    holevo_bits = von_neumann_entropy(ensemble_density(n, alpha, beta));
  }

  const double via_holevo = holevo_bits / double(n - 1);
  const double closed_form = 1.0 + channel_entanglement(alpha, beta) / double(n - 1);
  if (std::abs(via_holevo - closed_form) > tol::kEq) {
    std::ostringstream os;
    os << "capacity routes disagree: Holevo " << via_holevo << " vs closed form " << closed_form;
    throw InvalidStateError(os.str());
  }
  return via_holevo;
}

std::vector<CapacityRow> capacity_sweep(int num_qubits, int grid_points) {
  if (grid_points < 2) throw UsageError("capacity sweep needs at least 2 grid points");
  std::vector<CapacityRow> rows;
  rows.reserve(std::size_t(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double a2 = double(i) / double(grid_points - 1);
    const cx alpha{std::sqrt(a2), 0.0};
    const cx beta{std::sqrt(1.0 - a2), 0.0};
    CapacityRow row;
    row.num_qubits = num_qubits;
    row.alpha_sq = a2;
    row.entanglement = channel_entanglement(alpha, beta);
    row.holevo_bits = von_neumann_entropy(ensemble_density(num_qubits, alpha, beta));
    row.capacity = row.holevo_bits / double(num_qubits - 1);
    row.capacity_closed_form = 1.0 + row.entanglement / double(num_qubits - 1);
    row.abs_diff = std::abs(row.capacity - row.capacity_closed_form);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ghzsim
