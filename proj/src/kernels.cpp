// Runtime backend selection for the kernel layer.

#include "ghzsim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "ghzsim/errors.hpp"

namespace ghzsim::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(GHZSIM_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("GHZSIM_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!backend_available(Backend::Avx2)) {
        throw UsageError("GHZSIM_KERNELS=avx2 but AVX2 is unavailable on this host");
      }
      return Backend::Avx2;
    }
    // Unknown value: fall through to auto-detection.
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<const KernelTable*>& active_ptr() {
  static std::atomic<const KernelTable*> ptr{&table(initial_backend())};
  return ptr;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Backend b) {
  switch (b) {
    case Backend::Scalar: return detail::scalar_table;
    case Backend::Avx2:
#ifdef GHZSIM_HAVE_AVX2
      if (cpu_has_avx2()) return detail::avx2_table;
#endif
      throw UsageError("AVX2 kernels unavailable on this host");
  }
  throw UsageError("unknown kernel backend");
}

const KernelTable& table() { return *active_ptr().load(std::memory_order_relaxed); }

Backend active_backend() {
  return &table() == &detail::scalar_table ? Backend::Scalar : Backend::Avx2;
}

void select_backend(Backend b) { active_ptr().store(&table(b), std::memory_order_relaxed); }

}  // namespace ghzsim::kernels
