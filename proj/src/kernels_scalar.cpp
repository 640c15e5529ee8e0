// Scalar reference kernels. Kept deliberately plain: these definitions are
// the semantics the SIMD variants are tested against.

#include "ghzsim/kernels.hpp"

namespace ghzsim::kernels {
namespace {

double norm2_scalar(const cx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

cx cdot_scalar(const cx* a, const cx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void scale_scalar(cx* a, std::size_t n, cx s) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void conj_axpy_scalar(cx* y, const cx* x, std::size_t n, cx s) {
  for (std::size_t i = 0; i < n; ++i) y[i] += s * std::conj(x[i]);
}

void apply_1q_scalar(cx* a, std::size_t n, std::size_t stride, const cx* u) {
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t k = 0; k < stride; ++k) {
      const std::size_t i0 = base + k;
      const std::size_t i1 = i0 + stride;
      const cx a0 = a[i0];
      const cx a1 = a[i1];
      a[i0] = u[0] * a0 + u[1] * a1;
      a[i1] = u[2] * a0 + u[3] * a1;
    }
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table = {
    norm2_scalar, cdot_scalar, scale_scalar, conj_axpy_scalar, apply_1q_scalar,
};
}  // namespace detail

}  // namespace ghzsim::kernels
