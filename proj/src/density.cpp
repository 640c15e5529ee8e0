#include "ghzsim/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

void check_density_size(int n) {
  if (n < 1 || n > DensityMatrix::kMaxQubits) {
    std::ostringstream os;
    os << "density register size " << n << " outside [1, " << DensityMatrix::kMaxQubits << "]";
    throw UsageError(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(int num_qubits, Eigen::MatrixXcd entries)
    : num_qubits_(num_qubits), entries_(std::move(entries)) {
  check_density_size(num_qubits);
  const Eigen::Index d = Eigen::Index(1) << num_qubits;
  if (entries_.rows() != d || entries_.cols() != d) {
    throw UsageError("density matrix shape does not match 2^num_qubits");
  }
  if (!entries_.allFinite()) throw InvalidStateError("non-finite density entry");
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kEq) {
    std::ostringstream os;
    os << "density matrix not Hermitian: residual " << herm;
    throw InvalidStateError(os.str());
  }
  const cx tr = entries_.trace();
  if (std::abs(tr - cx{1.0, 0.0}) > tol::kEq) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " != 1";
    throw InvalidStateError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol::kEq) {
    std::ostringstream os;
    os << "density matrix not PSD: min eigenvalue " << solver.eigenvalues().minCoeff();
    throw InvalidStateError(os.str());
  }
}

DensityMatrix DensityMatrix::diagonal(int num_qubits, const std::vector<double>& populations) {
  check_density_size(num_qubits);
  const std::size_t d = std::size_t{1} << num_qubits;
  if (populations.size() != d) throw UsageError("population count does not match 2^num_qubits");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t i = 0; i < d; ++i) m(Eigen::Index(i), Eigen::Index(i)) = populations[i];
  return DensityMatrix(num_qubits, std::move(m));
}

std::vector<double> DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double DensityMatrix::max_abs_offdiagonal() const {
  double out = 0.0;
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (i != j) out = std::max(out, std::abs(entries_(i, j)));
    }
  }
  return out;
}

DensityMatrix to_density(const StateVector& psi) {
  check_density_size(psi.num_qubits());
  const Eigen::Index d = Eigen::Index(psi.dim());
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), d);
  Eigen::MatrixXcd m = v * v.adjoint();
  return DensityMatrix(psi.num_qubits(), std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.num_qubits();
  if (keep.empty()) throw UsageError("partial_trace: keep set must be nonempty");
  std::vector<bool> seen(std::size_t(n) + 1, false);
  for (int q : keep) {
    if (q < 1 || q > n) throw UsageError("partial_trace: qubit index out of range");
    if (seen[std::size_t(q)]) throw UsageError("partial_trace: duplicate qubit");
    seen[std::size_t(q)] = true;
  }

  const int k = int(keep.size());
  const int t = n - k;
  std::vector<int> kpos(std::size_t(k), 0);
  for (int i = 0; i < k; ++i) kpos[std::size_t(i)] = n - keep[std::size_t(i)];
  std::vector<int> tpos;
  tpos.reserve(std::size_t(t));
  for (int q = 1; q <= n; ++q) {
    if (!seen[std::size_t(q)]) tpos.push_back(n - q);
  }

  const std::size_t dk = std::size_t{1} << k;
  const std::size_t dt = std::size_t{1} << t;
  auto full_index = [&](std::size_t kept, std::size_t traced) {
    std::size_t idx = 0;
    for (int i = 0; i < k; ++i) {
      idx |= ((kept >> (k - 1 - i)) & 1u) << kpos[std::size_t(i)];
    }
    for (int i = 0; i < t; ++i) {
      idx |= ((traced >> (t - 1 - i)) & 1u) << tpos[std::size_t(i)];
    }
    return Eigen::Index(idx);
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index(dk), Eigen::Index(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      cx sum{};
      for (std::size_t s = 0; s < dt; ++s) {
        sum += rho.matrix()(full_index(a, s), full_index(b, s));
      }
      out(Eigen::Index(a), Eigen::Index(b)) = sum;
    }
  }
  return DensityMatrix(k, std::move(out));
}

DensityMatrix reduced_single_qubit(const StateVector& psi, int q) {
  const int n = psi.num_qubits();
  if (q < 1 || q > n) throw UsageError("reduced_single_qubit: qubit index out of range");
  const std::uint32_t mask = psi.qubit_mask(q);
  cx r00{}, r01{}, r11{};
  for (std::uint32_t i = 0; i < psi.dim(); ++i) {
    const cx a = psi.amplitude(i);
    if (a == cx{}) continue;
    if (i & mask) {
      r11 += a * std::conj(a);
    } else {
      r00 += a * std::conj(a);
      r01 += a * std::conj(psi.amplitude(i | mask));
    }
  }
  Eigen::MatrixXcd m(2, 2);
  m << r00, r01, std::conj(r01), r11;
  return DensityMatrix(1, std::move(m));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda < tol::kEigFloor) {
      std::ostringstream os;
      os << "entropy of an invalid state: eigenvalue " << lambda;
      throw InvalidStateError(os.str());
    }
    if (lambda <= tol::kStrict) continue;  // clamp numerical PSD drift
    s -= lambda * std::log2(lambda);
  }
  return s;
}

DensityProjectionResult project_density(const DensityMatrix& rho,
                                        const StateVector& projector_state,
                                        const std::vector<int>& on_qubits) {
  const int n = rho.num_qubits();
  const int m = int(on_qubits.size());
  if (projector_state.num_qubits() != m) {
    throw UsageError("projector register size does not match the qubit list");
  }
  if (m >= n) throw UsageError("project_density must leave at least one qubit");
  std::vector<bool> seen(std::size_t(n) + 1, false);
  for (int q : on_qubits) {
    if (q < 1 || q > n) throw UsageError("projection qubit index out of range");
    if (seen[std::size_t(q)]) throw UsageError("duplicate projection qubit");
    seen[std::size_t(q)] = true;
  }

  std::vector<int> mpos(std::size_t(m), 0);
  for (int i = 0; i < m; ++i) mpos[std::size_t(i)] = n - on_qubits[std::size_t(i)];
  std::vector<int> rpos;
  for (int q = 1; q <= n; ++q) {
    if (!seen[std::size_t(q)]) rpos.push_back(n - q);
  }
  const int r = n - m;
  const std::size_t dm = std::size_t{1} << m;
  const std::size_t dr = std::size_t{1} << r;
  auto full_index = [&](std::size_t meas, std::size_t rest) {
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i) idx |= ((meas >> (m - 1 - i)) & 1u) << mpos[std::size_t(i)];
    for (int i = 0; i < r; ++i) idx |= ((rest >> (r - 1 - i)) & 1u) << rpos[std::size_t(i)];
    return Eigen::Index(idx);
  };

  // <proj| rho |proj> partial inner product on the measured qubits.
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index(dr), Eigen::Index(dr));
  for (std::size_t a = 0; a < dr; ++a) {
    for (std::size_t b = 0; b < dr; ++b) {
      cx sum{};
      for (std::size_t p = 0; p < dm; ++p) {
        const cx cp = std::conj(projector_state.amplitude(std::uint32_t(p)));
        if (cp == cx{}) continue;
        for (std::size_t q = 0; q < dm; ++q) {
          const cx cq = projector_state.amplitude(std::uint32_t(q));
          if (cq == cx{}) continue;
          sum += cp * cq * rho.matrix()(full_index(p, a), full_index(q, b));
        }
      }
      out(Eigen::Index(a), Eigen::Index(b)) = sum;
    }
  }

  DensityProjectionResult result;
  result.probability = out.trace().real();
  if (result.probability >= tol::kZeroProb) {
    out /= result.probability;
    result.residual = DensityMatrix(r, std::move(out));
  }
  return result;
}

DensityMatrix conjugate(const DensityMatrix& rho, const Eigen::MatrixXcd& m) {
  if (m.rows() != Eigen::Index(rho.dim()) || m.cols() != Eigen::Index(rho.dim())) {
    throw UsageError("conjugate: matrix shape mismatch");
  }
  Eigen::MatrixXcd out = m * rho.matrix() * m.adjoint();
  return DensityMatrix(rho.num_qubits(), std::move(out));
}

DensityMatrix tensor_density(const DensityMatrix& a, const DensityMatrix& b) {
  const Eigen::Index da = Eigen::Index(a.dim());
  const Eigen::Index db = Eigen::Index(b.dim());
  Eigen::MatrixXcd out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return DensityMatrix(a.num_qubits() + b.num_qubits(), std::move(out));
}

double fidelity_mixed(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("fidelity_mixed: size mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sa(a.matrix());
  Eigen::VectorXd ev = sa.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXcd sqrt_a = sa.eigenvectors() * ev.asDiagonal() * sa.eigenvectors().adjoint();
  Eigen::MatrixXcd inner = sqrt_a * b.matrix() * sqrt_a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> si(inner, Eigen::EigenvaluesOnly);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < si.eigenvalues().size(); ++i) {
    tr += std::sqrt(std::max(0.0, si.eigenvalues()[i]));
  }
  return tr * tr;
}

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("max_abs_diff: size mismatch");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace ghzsim
