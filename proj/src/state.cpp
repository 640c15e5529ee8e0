#include "ghzsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ghzsim/errors.hpp"
#include "ghzsim/kernels.hpp"

namespace ghzsim {

namespace {

void check_qubit_count(int n) {
  if (n < 0 || n > StateVector::kMaxQubits) {
    std::ostringstream os;
    os << "statevector register size " << n << " outside [0, " << StateVector::kMaxQubits << "]";
    throw UsageError(os.str());
  }
}

void check_finite(const std::vector<cx>& amps) {
  for (const cx& a : amps) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidStateError("non-finite amplitude");
    }
  }
}

}  // namespace

BitString BitString::from_bits(const std::vector<int>& bits) {
  BitString b;
  b.length = int(bits.size());
  for (int v : bits) {
    if (v != 0 && v != 1) throw UsageError("bit values must be 0 or 1");
    b.value = (b.value << 1) | std::uint32_t(v);
  }
  return b;
}

BitString BitString::parse(const std::string& text) {
  std::vector<int> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw UsageError("bit string must consist of 0s and 1s: " + text);
    bits.push_back(c - '0');
  }
  if (bits.empty()) throw UsageError("empty bit string");
  return from_bits(bits);
}

std::vector<int> BitString::bits() const {
  std::vector<int> out(length);
  for (int k = 1; k <= length; ++k) out[k - 1] = bit(k);
  return out;
}

std::string BitString::str() const {
  std::string s(length, '0');
  for (int k = 1; k <= length; ++k) s[k - 1] = char('0' + bit(k));
  return s;
}

StateVector::StateVector() : num_qubits_(0), amps_{cx{1.0, 0.0}} {}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, cx{});
  amps_[0] = cx{1.0, 0.0};
}

StateVector::StateVector(int num_qubits, std::vector<cx> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(num_qubits);
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw UsageError("amplitude count does not match 2^num_qubits");
  }
  check_finite(amps_);
  const double n2 = norm_squared();
  if (std::abs(n2 - 1.0) > tol::kEq) {
    std::ostringstream os;
    os << "state not normalized: |psi|^2 = " << n2;
    throw InvalidStateError(os.str());
  }
}

StateVector::StateVector(Unchecked, int num_qubits, std::vector<cx> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector StateVector::basis_state(int num_qubits, std::uint32_t index) {
  check_qubit_count(num_qubits);
  if (num_qubits < 1) throw UsageError("basis_state needs at least one qubit");
  if (index >= (std::uint32_t{1} << num_qubits)) throw UsageError("basis index out of range");
  std::vector<cx> amps(std::size_t{1} << num_qubits, cx{});
  amps[index] = cx{1.0, 0.0};
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::normalized(int num_qubits, std::vector<cx> amplitudes) {
  check_finite(amplitudes);
  const double n2 = kernels::norm2(amplitudes.data(), amplitudes.size());
  if (n2 < tol::kZeroProb) throw InvalidStateError("cannot normalize a ~zero vector");
  kernels::scale(amplitudes.data(), amplitudes.size(), cx{1.0 / std::sqrt(n2), 0.0});
  return StateVector(num_qubits, std::move(amplitudes));
}

double StateVector::norm_squared() const { return kernels::norm2(amps_.data(), amps_.size()); }

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.num_qubits() + b.num_qubits();
  check_qubit_count(n);
  std::vector<cx> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const cx ai = a.amplitude(std::uint32_t(i));
    cx* row = out.data() + i * b.dim();
    if (ai == cx{}) continue;
    for (std::size_t j = 0; j < b.dim(); ++j) row[j] = ai * b.amplitude(std::uint32_t(j));
  }
  return StateVector(StateVector::Unchecked{}, n, std::move(out));
}

StateVector superpose(const StateVector& a, const StateVector& b, cx ca, cx cb) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("superpose: register size mismatch");
  std::vector<cx> amps(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    amps[i] = ca * a.amplitude(std::uint32_t(i)) + cb * b.amplitude(std::uint32_t(i));
  }
  return StateVector::normalized(a.num_qubits(), std::move(amps));
}

cx inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("inner_product: register size mismatch");
  return kernels::cdot(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

double fidelity_pure(const StateVector& a, const StateVector& b) {
  const cx ov = inner_product(a, b);
  return ov.real() * ov.real() + ov.imag() * ov.imag();
}

bool approx_equal_phase(const StateVector& a, const StateVector& b, double tolerance) {
  if (a.num_qubits() != b.num_qubits()) return false;
  return fidelity_pure(a, b) >= 1.0 - tolerance;
}

ProjectionResult project(const StateVector& psi, const StateVector& projector_state,
                         const std::vector<int>& on_qubits) {
  const int n = psi.num_qubits();
  const int m = int(on_qubits.size());
  if (projector_state.num_qubits() != m) {
    throw UsageError("projector register size does not match the qubit list");
  }
  std::vector<bool> seen(std::size_t(n) + 1, false);
  for (int q : on_qubits) {
    if (q < 1 || q > n) throw UsageError("projection qubit index out of range");
    if (seen[std::size_t(q)]) throw UsageError("duplicate projection qubit");
    seen[std::size_t(q)] = true;
  }

  // Bit positions (from LSB) of the measured qubits in listed order, and of
  // the untouched qubits in original order.
  std::vector<int> mpos(m);
  for (int k = 0; k < m; ++k) mpos[k] = n - on_qubits[std::size_t(k)];
  std::vector<int> rpos;
  rpos.reserve(std::size_t(n - m));
  for (int q = 1; q <= n; ++q) {
    if (!seen[std::size_t(q)]) rpos.push_back(n - q);
  }

  const int r = n - m;
  std::vector<cx> residual(std::size_t{1} << r, cx{});
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const cx amp = psi.amplitude(std::uint32_t(i));
    if (amp == cx{}) continue;
    std::uint32_t mi = 0;
    for (int k = 0; k < m; ++k) mi = (mi << 1) | ((std::uint32_t(i) >> mpos[std::size_t(k)]) & 1u);
    std::uint32_t ri = 0;
    for (int k = 0; k < r; ++k) ri = (ri << 1) | ((std::uint32_t(i) >> rpos[std::size_t(k)]) & 1u);
    residual[ri] += std::conj(projector_state.amplitude(mi)) * amp;
  }

  ProjectionResult out;
  out.probability = kernels::norm2(residual.data(), residual.size());
  if (out.probability >= tol::kZeroProb) {
    kernels::scale(residual.data(), residual.size(), cx{1.0 / std::sqrt(out.probability), 0.0});
    out.residual = StateVector(r, std::move(residual));
  }
  return out;
}

}  // namespace ghzsim
