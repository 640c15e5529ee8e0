// AVX2 kernel variants. One __m256d holds two interleaved complex doubles.
// Compiled with -mavx2 -mfma; selected at runtime only when the CPU reports
// both feature bits.

#ifdef GHZSIM_HAVE_AVX2

#include <immintrin.h>

#include "ghzsim/kernels.hpp"

namespace ghzsim::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Packed complex product v * s for scalar s broadcast as (sre, sim).
inline __m256d cmul(__m256d v, __m256d sre, __m256d sim) {
  __m256d vswap = _mm256_permute_pd(v, 0x5);  // [im, re] within each pair
  return _mm256_fmaddsub_pd(v, sre, _mm256_mul_pd(vswap, sim));
}

double norm2_avx2(const cx* a, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(p + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return r;
}

cx cdot_avx2(const cx* a, const cx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    re_acc = _mm256_fmadd_pd(va, vb, re_acc);
    __m256d vas = _mm256_mul_pd(_mm256_permute_pd(va, 0x5), sign);
    im_acc = _mm256_fmadd_pd(vas, vb, im_acc);
  }
  double re = hsum(re_acc);
  double im = hsum(im_acc);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void scale_avx2(cx* a, std::size_t n, cx s) {
  double* p = reinterpret_cast<double*>(a);
  const __m256d sre = _mm256_set1_pd(s.real());
  const __m256d sim = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(p + 2 * i, cmul(_mm256_loadu_pd(p + 2 * i), sre, sim));
  }
  for (; i < n; ++i) a[i] *= s;
}

void conj_axpy_avx2(cx* y, const cx* x, std::size_t n, cx s) {
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  const __m256d sre = _mm256_set1_pd(s.real());
  const __m256d sim = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_xor_pd(_mm256_loadu_pd(px + 2 * i), conj_mask);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul(vx, sre, sim)));
  }
  for (; i < n; ++i) y[i] += s * std::conj(x[i]);
}

void apply_1q_avx2(cx* a, std::size_t n, std::size_t stride, const cx* u) {
  double* p = reinterpret_cast<double*>(a);
  const __m256d u0r = _mm256_set1_pd(u[0].real()), u0i = _mm256_set1_pd(u[0].imag());
  const __m256d u1r = _mm256_set1_pd(u[1].real()), u1i = _mm256_set1_pd(u[1].imag());
  const __m256d u2r = _mm256_set1_pd(u[2].real()), u2i = _mm256_set1_pd(u[2].imag());
  const __m256d u3r = _mm256_set1_pd(u[3].real()), u3i = _mm256_set1_pd(u[3].imag());

  if (stride == 1) {
    if (n < 4) {  // single pair
      const cx a0 = a[0], a1 = a[1];
      a[0] = u[0] * a0 + u[1] * a1;
      a[1] = u[2] * a0 + u[3] * a1;
      return;
    }
    // Two adjacent pairs per iteration; separate the low/high halves so each
    // register carries two a0's (resp. a1's).
    for (std::size_t i = 0; i < n; i += 4) {
      __m256d v_lo = _mm256_loadu_pd(p + 2 * i);      // [a0, a1]
      __m256d v_hi = _mm256_loadu_pd(p + 2 * i + 4);  // [a0', a1']
      __m256d a0 = _mm256_permute2f128_pd(v_lo, v_hi, 0x20);
      __m256d a1 = _mm256_permute2f128_pd(v_lo, v_hi, 0x31);
      __m256d n0 = _mm256_add_pd(cmul(a0, u0r, u0i), cmul(a1, u1r, u1i));
      __m256d n1 = _mm256_add_pd(cmul(a0, u2r, u2i), cmul(a1, u3r, u3i));
      _mm256_storeu_pd(p + 2 * i, _mm256_permute2f128_pd(n0, n1, 0x20));
      _mm256_storeu_pd(p + 2 * i + 4, _mm256_permute2f128_pd(n0, n1, 0x31));
    }
    return;
  }

  // stride >= 2: both halves of each block are contiguous.
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    double* p0 = p + 2 * base;
    double* p1 = p + 2 * (base + stride);
    for (std::size_t k = 0; k < stride; k += 2) {
      __m256d a0 = _mm256_loadu_pd(p0 + 2 * k);
      __m256d a1 = _mm256_loadu_pd(p1 + 2 * k);
      _mm256_storeu_pd(p0 + 2 * k, _mm256_add_pd(cmul(a0, u0r, u0i), cmul(a1, u1r, u1i)));
      _mm256_storeu_pd(p1 + 2 * k, _mm256_add_pd(cmul(a0, u2r, u2i), cmul(a1, u3r, u3i)));
    }
  }
}

}  // namespace

namespace detail {
const KernelTable avx2_table = {
    norm2_avx2, cdot_avx2, scale_avx2, conj_axpy_avx2, apply_1q_avx2,
};
}  // namespace detail

}  // namespace ghzsim::kernels

#endif  // GHZSIM_HAVE_AVX2
