#include "ghzsim/basis.hpp"

#include <cmath>
#include <sstream>

#include "ghzsim/errors.hpp"
#include "ghzsim/kernels.hpp"

namespace ghzsim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_basis_size(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    std::ostringstream os;
    os << what << ": register size " << n << " outside [" << lo << ", " << hi << "]";
    throw UsageError(os.str());
  }
}

}  // namespace

ProjectiveBasis::ProjectiveBasis(std::string label, std::vector<StateVector> elements)
    : num_qubits_(elements.empty() ? 0 : elements.front().num_qubits()),
      elements_(std::move(elements)),
      label_(std::move(label)) {
  if (elements_.empty()) throw UsageError("basis needs at least one element");
  if (elements_.size() != (std::size_t{1} << num_qubits_)) {
    throw UsageError("basis element count must be 2^num_qubits");
  }
  for (const StateVector& e : elements_) {
    if (e.num_qubits() != num_qubits_) throw UsageError("basis element register size mismatch");
  }
  if (elements_.front().dim() <= 64) {
    const double res = orthonormality_residual();
    if (res > tol::kEq) {
      std::ostringstream os;
      os << "basis '" << label_ << "' not orthonormal: residual " << res;
      throw InvalidStateError(os.str());
    }
  }
}

double ProjectiveBasis::orthonormality_residual() const {
  double res = 0.0;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = i; j < elements_.size(); ++j) {
      const cx g = inner_product(elements_[i], elements_[j]);
      const double target = i == j ? 1.0 : 0.0;
      res = std::max(res, std::abs(g - cx{target, 0.0}));
    }
  }
  return res;
}

double ProjectiveBasis::completeness_residual() const {
  const std::size_t dim = elements_.front().dim();
  std::vector<cx> row(dim);
  double res = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    std::fill(row.begin(), row.end(), cx{});
    for (const StateVector& e : elements_) {
      const cx er = e.amplitude(std::uint32_t(r));
      if (er == cx{}) continue;
      kernels::conj_axpy(row.data(), e.amplitudes().data(), dim, er);
    }
    row[r] -= cx{1.0, 0.0};
    for (const cx& v : row) res = std::max(res, std::abs(v));
  }
  return res;
}

StateVector ghz_state(int num_qubits) {
  return weighted_ghz_state(num_qubits, cx{kInvSqrt2, 0.0}, cx{kInvSqrt2, 0.0});
}

StateVector weighted_ghz_state(int num_qubits, cx alpha, cx beta) {
  if (num_qubits < 1) throw UsageError("weighted_ghz_state: need at least one qubit");
  std::vector<cx> amps(std::size_t{1} << num_qubits, cx{});
  amps.front() = alpha;
  amps.back() = beta;
  return StateVector(num_qubits, std::move(amps));
}

StateVector pi_state(int sign) {
  if (sign != 1 && sign != -1) throw UsageError("pi_state: sign must be +1 or -1");
  return StateVector(1, {cx{kInvSqrt2, 0.0}, cx{sign * kInvSqrt2, 0.0}});
}

StateVector bell_state(int index) {
  if (index < 0 || index > 3) throw UsageError("bell_state: index must be 0..3");
  return ghz_class_element(2, BitString(2, std::uint32_t(index)));
}

ProjectiveBasis bell_basis() {
  std::vector<StateVector> elements;
  for (int x = 0; x < 4; ++x) elements.push_back(bell_state(x));
  return ProjectiveBasis("bell", std::move(elements));
}

StateVector ghz_class_element(int num_qubits, const BitString& bits) {
  return ghz_class_element_weighted(num_qubits, bits, cx{kInvSqrt2, 0.0}, cx{kInvSqrt2, 0.0});
}

StateVector ghz_class_element_weighted(int num_qubits, const BitString& bits, cx alpha, cx beta) {
  check_basis_size(num_qubits, 2, 12, "ghz_class_element");
  if (bits.length != num_qubits) throw UsageError("bit string length must equal num_qubits");
  const std::uint32_t low_mask = (1u << (num_qubits - 1)) - 1u;
  const std::uint32_t tail = bits.value & low_mask;
  const std::uint32_t i0 = tail;
  const std::uint32_t i1 = (1u << (num_qubits - 1)) | (~tail & low_mask);
  const double sign = bits.bit(1) ? -1.0 : 1.0;
  std::vector<cx> amps(std::size_t{1} << num_qubits, cx{});
  amps[i0] = alpha;
  amps[i1] = sign * beta;
  return StateVector(num_qubits, std::move(amps));
}

ProjectiveBasis ghz_class_basis(int num_qubits) {
  check_basis_size(num_qubits, 2, 12, "ghz_class_basis");
  std::vector<StateVector> elements;
  elements.reserve(std::size_t{1} << num_qubits);
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << num_qubits); ++x) {
    elements.push_back(ghz_class_element(num_qubits, BitString(num_qubits, x)));
  }
  std::ostringstream os;
  os << "ghz-class-" << num_qubits;
  return ProjectiveBasis(os.str(), std::move(elements));
}

QubitOperator generating_operator(const BitString& bits) {
  const int n = bits.length;
  if (n < 2) throw UsageError("generating_operator: need at least two bits");
  const int b1 = bits.bit(1);
  const int b2 = bits.bit(2);
  PauliKind first = PauliKind::I;
  if (b2 == 1 && b1 == 1) {
    first = PauliKind::MinusIY;  // sigma_x sigma_z
  } else if (b2 == 1) {
    first = PauliKind::X;
  } else if (b1 == 1) {
    first = PauliKind::Z;
  }
  QubitOperator op = pauli(first, 2);
  for (int k = 3; k <= n; ++k) {
    op = tensor_product(op, pauli(bits.bit(k) ? PauliKind::X : PauliKind::I, k));
  }
  return op;
}

ProjectiveBasis teleport_basis_ghz() {
  // Table row order: bell label alternates +/- within the Phi block then the
  // Psi block; the pi sign flips every two rows.
  static constexpr int kBell[8] = {0, 2, 0, 2, 1, 3, 1, 3};
  static constexpr int kSign[8] = {1, 1, -1, -1, 1, 1, -1, -1};
  std::vector<StateVector> elements;
  elements.reserve(8);
  for (int x = 0; x < 8; ++x) {
    elements.push_back(tensor(pi_state(kSign[x]), bell_state(kBell[x])));
  }
  return ProjectiveBasis("teleport-ghz", std::move(elements));
}

ProjectiveBasis nparty_teleport_basis(int num_qubits) {
  if (num_qubits < 3) throw UsageError("nparty_teleport_basis: need at least 3 qubits");
  check_basis_size(num_qubits, 3, 12, "nparty_teleport_basis");
  const int sign_bits = num_qubits - 2;
  std::vector<StateVector> elements;
  elements.reserve(std::size_t{1} << num_qubits);
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << num_qubits); ++x) {
    const std::uint32_t signs = x >> 2;
    StateVector e;
    for (int k = 0; k < sign_bits; ++k) {
      const int s = (signs >> (sign_bits - 1 - k)) & 1u ? -1 : 1;
      e = tensor(e, pi_state(s));
    }
    e = tensor(e, bell_state(int(x & 3u)));
    elements.push_back(std::move(e));
  }
  std::ostringstream os;
  os << "nparty-teleport-" << num_qubits;
  return ProjectiveBasis(os.str(), std::move(elements));
}

ProjectiveBasis pi_computational_basis() {
  std::vector<StateVector> elements;
  for (int s = 0; s < 2; ++s) {
    for (std::uint32_t b = 0; b < 2; ++b) {
      elements.push_back(tensor(pi_state(s == 0 ? 1 : -1), StateVector::basis_state(1, b)));
    }
  }
  return ProjectiveBasis("pi-computational", std::move(elements));
}

std::pair<QubitOperator, QubitOperator> ghz_dense_pair(const BitString& message) {
  if (message.length != 3) throw UsageError("ghz_dense_pair: message must be 3 bits");
  const int b1 = message.bit(1);
  const int b2 = message.bit(2);
  PauliKind bk = PauliKind::I;
  if (b1 == 1 && b2 == 1) {
    bk = PauliKind::MinusIY;
  } else if (b1 == 1) {
    bk = PauliKind::X;
  } else if (b2 == 1) {
    bk = PauliKind::Z;
  }
  const PauliKind ck = message.bit(3) ? PauliKind::X : PauliKind::I;
  return {pauli(bk, 2), pauli(ck, 3)};
}

StateVector ghz_dense_state(const BitString& message) {
  auto [b, c] = ghz_dense_pair(message);
  return apply(c, apply(b, ghz_state(3)));
}

StateVector convert_dense_to_teleport(const BitString& message) {
  StateVector d = ghz_dense_state(message);
  return apply(hadamard(2), apply(cnot(2, 3), d));
}

ProjectiveBasis converted_dense_basis() {
  std::vector<StateVector> elements;
  elements.reserve(8);
  for (std::uint32_t x = 0; x < 8; ++x) {
    elements.push_back(convert_dense_to_teleport(BitString(3, x)));
  }
  return ProjectiveBasis("converted-dense", std::move(elements));
}

}  // namespace ghzsim
