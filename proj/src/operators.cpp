#include "ghzsim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ghzsim/errors.hpp"
#include "ghzsim/kernels.hpp"

namespace ghzsim {

namespace {

void check_targets(const std::vector<int>& targets) {
  if (targets.empty()) throw UsageError("operator needs at least one target qubit");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 1) throw UsageError("target qubit indices are 1-based");
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) throw UsageError("duplicate target qubit");
    }
  }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Nearest-Kronecker factorization into one-qubit factors. Splits the matrix
// as A(2x2) (x) B recursively, deriving A from Frobenius inner products with
// the dominant block and verifying the reconstruction entrywise. Handles
// traceless factors, which a partial-trace based test cannot.
bool try_factorize(const Eigen::MatrixXcd& m, std::vector<std::array<cx, 4>>& out) {
  const Eigen::Index d = m.rows();
  if (d == 2) {
    out.push_back({m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
    return true;
  }
  const Eigen::Index h = d / 2;
  double best = -1.0;
  int ba = 0, bb = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double norm = m.block(a * h, b * h, h, h).squaredNorm();
      if (norm > best) {
        best = norm;
        ba = a;
        bb = b;
      }
    }
  }
  if (best <= tol::kFactorized) return false;
  const Eigen::MatrixXcd block = m.block(ba * h, bb * h, h, h);
  std::array<cx, 4> factor{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      factor[std::size_t(2 * a + b)] =
          (block.adjoint() * m.block(a * h, b * h, h, h)).trace() / best;
    }
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double err = (m.block(a * h, b * h, h, h) - factor[std::size_t(2 * a + b)] * block)
                             .cwiseAbs()
                             .maxCoeff();
      if (err > tol::kFactorized) return false;
    }
  }
  out.push_back(factor);
  return try_factorize(block, out);
}

LocalityTag classify(const Eigen::MatrixXcd& m, int arity,
                     std::vector<std::array<cx, 4>>& factors) {
  if (arity == 1) {
    factors.push_back({m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
    return LocalityTag::LocalSingle;
  }
  std::vector<std::array<cx, 4>> scan;
  if (try_factorize(m, scan)) {
    factors = std::move(scan);
    return LocalityTag::Factorized;
  }
  factors.clear();
  return LocalityTag::Nonlocal;
}

}  // namespace

const char* locality_name(LocalityTag tag) {
  switch (tag) {
    case LocalityTag::LocalSingle: return "local-single";
    case LocalityTag::Factorized: return "factorized";
    case LocalityTag::Nonlocal: return "nonlocal";
  }
  return "?";
}

QubitOperator::QubitOperator(Eigen::MatrixXcd matrix, std::vector<int> targets, std::string label)
    : matrix_(std::move(matrix)), targets_(std::move(targets)), label_(std::move(label)) {
  check_targets(targets_);
  const Eigen::Index d = Eigen::Index(1) << targets_.size();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw UsageError("operator matrix shape does not match 2^arity");
  }
  if (!matrix_.allFinite()) throw InvalidStateError("non-finite operator entry");
  const double res = unitarity_residual();
  if (res > tol::kEq) {
    std::ostringstream os;
    os << "operator '" << label_ << "' is not unitary: residual " << res;
    throw InvalidStateError(os.str());
  }
  locality_ = classify(matrix_, arity(), factors_);
}

QubitOperator::QubitOperator(Trusted, Eigen::MatrixXcd matrix, std::vector<int> targets,
                             std::string label, std::optional<LocalityTag> tag,
                             std::vector<std::array<cx, 4>> factors)
    : matrix_(std::move(matrix)),
      targets_(std::move(targets)),
      label_(std::move(label)),
      factors_(std::move(factors)) {
  check_targets(targets_);
  locality_ = tag ? *tag : classify(matrix_, arity(), factors_);
}

QubitOperator QubitOperator::single(const std::array<cx, 4>& m, int target, std::string label) {
  Eigen::MatrixXcd mat(2, 2);
  mat << m[0], m[1], m[2], m[3];
  return QubitOperator(std::move(mat), {target}, std::move(label));
}

double QubitOperator::unitarity_residual() const {
  return (matrix_ * matrix_.adjoint() - Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols()))
      .cwiseAbs()
      .maxCoeff();
}

QubitOperator QubitOperator::adjoint() const {
  std::vector<std::array<cx, 4>> f;
  f.reserve(factors_.size());
  for (const auto& m : factors_) {
    f.push_back({std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])});
  }
  return QubitOperator(Trusted{}, matrix_.adjoint(), targets_, label_ + "†", locality_,
                       std::move(f));
}

QubitOperator QubitOperator::retargeted(std::vector<int> new_targets) const {
  if (new_targets.size() != targets_.size()) {
    throw UsageError("retargeted: arity mismatch");
  }
  return QubitOperator(Trusted{}, matrix_, std::move(new_targets), label_, locality_, factors_);
}

std::array<cx, 4> pauli_matrix(PauliKind which) {
  const cx i{0.0, 1.0};
  switch (which) {
    case PauliKind::I: return {1, 0, 0, 1};
    case PauliKind::X: return {0, 1, 1, 0};
    case PauliKind::Y: return {0, -i, i, 0};
    case PauliKind::Z: return {1, 0, 0, -1};
    case PauliKind::MinusIY: return {0, -1, 1, 0};  // sigma_x sigma_z
    case PauliKind::IY: return {0, 1, -1, 0};       // sigma_z sigma_x
  }
  throw UsageError("unknown Pauli kind");
}

QubitOperator pauli(PauliKind which, int target) {
  const char* name = "?";
  switch (which) {
    case PauliKind::I: name = "I"; break;
    case PauliKind::X: name = "X"; break;
    case PauliKind::Y: name = "Y"; break;
    case PauliKind::Z: name = "Z"; break;
    case PauliKind::MinusIY: name = "-iY"; break;
    case PauliKind::IY: name = "iY"; break;
  }
  return QubitOperator::single(pauli_matrix(which), target, name);
}

QubitOperator hadamard(int target) {
  const double s = 1.0 / std::sqrt(2.0);
  return QubitOperator::single({s, s, s, -s}, target, "H");
}

QubitOperator cnot(int control, int target) {
  if (control == target) throw UsageError("cnot: control and target must differ");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  std::ostringstream os;
  os << "CNOT(" << control << "," << target << ")";
  return QubitOperator(QubitOperator::Trusted{}, std::move(m), {control, target}, os.str(),
                       LocalityTag::Nonlocal, {});
}

QubitOperator tensor_product(const QubitOperator& a, const QubitOperator& b) {
  std::vector<int> targets = a.targets();
  targets.insert(targets.end(), b.targets().begin(), b.targets().end());
  std::vector<std::array<cx, 4>> factors;
  std::optional<LocalityTag> tag;
  if (!a.factors().empty() && !b.factors().empty()) {
    factors = a.factors();
    factors.insert(factors.end(), b.factors().begin(), b.factors().end());
    tag = LocalityTag::Factorized;
  }
  return QubitOperator(QubitOperator::Trusted{}, kron(a.matrix(), b.matrix()), std::move(targets),
                       a.label() + "⊗" + b.label(), tag, std::move(factors));
}

QubitOperator negated(const QubitOperator& op) {
  std::vector<std::array<cx, 4>> factors = op.factors();
  if (!factors.empty()) {
    for (cx& v : factors[0]) v = -v;
  }
  std::optional<LocalityTag> tag = op.locality();
  return QubitOperator(QubitOperator::Trusted{}, -op.matrix(), op.targets(), "-" + op.label(), tag,
                       std::move(factors));
}

QubitOperator embed(const QubitOperator& op, int register_size) {
  const int n = register_size;
  if (n < 1 || n > StateVector::kMaxQubits) throw UsageError("embed: bad register size");
  for (int t : op.targets()) {
    if (t > n) throw UsageError("embed: target outside register");
  }
  const int m = op.arity();
  std::vector<int> pos(std::size_t(m), 0);
  std::uint32_t target_mask = 0;
  for (int j = 0; j < m; ++j) {
    pos[std::size_t(j)] = n - op.targets()[std::size_t(j)];
    target_mask |= 1u << pos[std::size_t(j)];
  }
  const std::size_t dm = std::size_t{1} << m;
  std::vector<std::uint32_t> spread(dm, 0);
  for (std::size_t s = 0; s < dm; ++s) {
    for (int j = 0; j < m; ++j) {
      spread[s] |= ((std::uint32_t(s) >> (m - 1 - j)) & 1u) << pos[std::size_t(j)];
    }
  }

  const std::size_t dn = std::size_t{1} << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index(dn), Eigen::Index(dn));
  for (std::uint32_t rest = 0; rest < dn; ++rest) {
    if (rest & target_mask) continue;
    for (std::size_t a = 0; a < dm; ++a) {
      for (std::size_t b = 0; b < dm; ++b) {
        out(Eigen::Index(rest | spread[a]), Eigen::Index(rest | spread[b])) =
            op.matrix()(Eigen::Index(a), Eigen::Index(b));
      }
    }
  }

  std::vector<int> targets(std::size_t(n), 0);
  for (int q = 1; q <= n; ++q) targets[std::size_t(q - 1)] = q;
  std::vector<std::array<cx, 4>> factors;
  std::optional<LocalityTag> tag;
  if (!op.factors().empty()) {
    factors.assign(std::size_t(n), {1, 0, 0, 1});
    for (int j = 0; j < m; ++j) {
      factors[std::size_t(op.targets()[std::size_t(j)] - 1)] = op.factors()[std::size_t(j)];
    }
    tag = n == 1 ? LocalityTag::LocalSingle : LocalityTag::Factorized;
  } else if (op.locality() == LocalityTag::Nonlocal) {
    tag = LocalityTag::Nonlocal;
  }
  return QubitOperator(QubitOperator::Trusted{}, std::move(out), std::move(targets),
                       op.arity() == n ? op.label() : op.label() + "@" + std::to_string(n),
                       tag, std::move(factors));
}

QubitOperator compose(const std::vector<QubitOperator>& ops, int register_size) {
  if (ops.empty()) throw UsageError("compose: empty operator list");
  const std::size_t dn = std::size_t{1} << register_size;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(Eigen::Index(dn), Eigen::Index(dn));
  std::string label;
  for (const QubitOperator& op : ops) {
    acc = acc * embed(op, register_size).matrix();
    if (!label.empty()) label += "·";
    label += op.label();
  }
  std::vector<int> targets(std::size_t(register_size), 0);
  for (int q = 1; q <= register_size; ++q) targets[std::size_t(q - 1)] = q;
  return QubitOperator(QubitOperator::Trusted{}, std::move(acc), std::move(targets),
                       std::move(label), std::nullopt, {});
}

QubitOperator entangle_op(int k) {
  if (k < 2) throw UsageError("entangle_op: k must be at least 2");
  if (k > StateVector::kMaxQubits) throw UsageError("entangle_op: k exceeds register cap");
  std::vector<QubitOperator> ops;
  for (int q = k - 1; q >= 1; --q) ops.push_back(cnot(q, q + 1));
  ops.push_back(hadamard(1));
  QubitOperator ladder = compose(ops, k);
  return QubitOperator(QubitOperator::Trusted{}, ladder.matrix(), ladder.targets(),
                       "En(" + std::to_string(k) + ")", LocalityTag::Nonlocal, {});
}

QubitOperator disentangle_op(int k) {
  QubitOperator en = entangle_op(k);
  return QubitOperator(QubitOperator::Trusted{}, en.matrix().adjoint(), en.targets(),
                       "Den(" + std::to_string(k) + ")", LocalityTag::Nonlocal, {});
}

bool validate_arity(int num_qubits, int arity) {
  if (num_qubits < 1 || arity < 1 || arity > num_qubits) {
    throw UsageError("validate_arity: need 1 <= m <= N");
  }
  return 2 * arity >= num_qubits;
}

StateVector apply(const QubitOperator& op, const StateVector& psi) {
  const int n = psi.num_qubits();
  for (int t : op.targets()) {
    if (t > n) throw UsageError("apply: operator target outside register");
  }
  std::vector<cx> amps = psi.amplitudes();

  if (!op.factors().empty()) {
    for (std::size_t j = 0; j < op.factors().size(); ++j) {
      const std::size_t stride = std::size_t{1} << (n - op.targets()[j]);
      kernels::apply_1q(amps.data(), amps.size(), stride, op.factors()[j].data());
    }
    return StateVector(n, std::move(amps));
  }

  const int m = op.arity();
  std::vector<int> pos(std::size_t(m), 0);
  std::uint32_t target_mask = 0;
  for (int j = 0; j < m; ++j) {
    pos[std::size_t(j)] = n - op.targets()[std::size_t(j)];
    target_mask |= 1u << pos[std::size_t(j)];
  }
  const std::size_t dm = std::size_t{1} << m;
  std::vector<std::uint32_t> spread(dm, 0);
  for (std::size_t s = 0; s < dm; ++s) {
    for (int j = 0; j < m; ++j) {
      spread[s] |= ((std::uint32_t(s) >> (m - 1 - j)) & 1u) << pos[std::size_t(j)];
    }
  }
  std::vector<cx> gathered(dm);
  for (std::uint32_t base = 0; base < amps.size(); ++base) {
    if (base & target_mask) continue;
    for (std::size_t s = 0; s < dm; ++s) gathered[s] = amps[base | spread[s]];
    for (std::size_t r = 0; r < dm; ++r) {
      cx acc{};
      for (std::size_t s = 0; s < dm; ++s) {
        acc += op.matrix()(Eigen::Index(r), Eigen::Index(s)) * gathered[s];
      }
      amps[base | spread[r]] = acc;
    }
  }
  return StateVector(n, std::move(amps));
}

DensityMatrix apply_density(const QubitOperator& op, const DensityMatrix& rho) {
  return conjugate(rho, embed(op, rho.num_qubits()).matrix());
}

double operator_max_diff(const QubitOperator& a, const QubitOperator& b) {
  if (a.arity() != b.arity()) throw UsageError("operator_max_diff: arity mismatch");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace ghzsim
