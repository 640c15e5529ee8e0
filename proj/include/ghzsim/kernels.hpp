#pragma once

#include <cstddef>
#include <string>

#include "ghzsim/types.hpp"

namespace ghzsim::kernels {

/// The inner loops of the simulator, in scalar reference form and (on x86-64)
/// AVX2 form. The two variants are equivalence-tested against each other; the
/// scalar build is the semantic reference.
///
/// Complex data is interleaved [re,im] as laid out by std::complex<double>.
struct KernelTable {
  /// sum_i |a_i|^2
  double (*norm2)(const cx* a, std::size_t n);
  /// sum_i conj(a_i) * b_i
  cx (*cdot)(const cx* a, const cx* b, std::size_t n);
  /// a_i *= s
  void (*scale)(cx* a, std::size_t n, cx s);
  /// y_i += s * conj(x_i)   (rank-1 row update in completeness sums)
  void (*conj_axpy)(cx* y, const cx* x, std::size_t n, cx s);
  /// One-qubit gate u (row-major 2x2) over amplitude pairs (i, i+stride)
  /// for every i with (i & stride) == 0. n and stride are powers of two.
  void (*apply_1q)(cx* a, std::size_t n, std::size_t stride, const cx* u);
};

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);

/// Active table. Chosen at first use: GHZSIM_KERNELS=scalar|avx2 if set,
/// otherwise the widest available instruction set.
const KernelTable& table();
const KernelTable& table(Backend b);  // throws UsageError if unavailable

Backend active_backend();
void select_backend(Backend b);  // throws UsageError if unavailable

// Convenience wrappers over the active table.
inline double norm2(const cx* a, std::size_t n) { return table().norm2(a, n); }
inline cx cdot(const cx* a, const cx* b, std::size_t n) { return table().cdot(a, b, n); }
inline void scale(cx* a, std::size_t n, cx s) { table().scale(a, n, s); }
inline void conj_axpy(cx* y, const cx* x, std::size_t n, cx s) { table().conj_axpy(y, x, n, s); }
inline void apply_1q(cx* a, std::size_t n, std::size_t stride, const cx* u) {
  table().apply_1q(a, n, stride, u);
}

namespace detail {
extern const KernelTable scalar_table;
#ifdef GHZSIM_HAVE_AVX2
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace ghzsim::kernels
