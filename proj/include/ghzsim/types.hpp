#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ghzsim {

using cx = std::complex<double>;

/// Global numeric tolerances. All stored quantities are exact dyadics or
/// entropies of them, so double precision leaves wide headroom.
namespace tol {
inline constexpr double kEq = 1e-10;        // state/operator equality, normalization
inline constexpr double kStrict = 1e-12;    // exact identities (amplitude-level)
inline constexpr double kZeroProb = 1e-14;  // a branch below this is impossible
inline constexpr double kFactorized = 1e-8; // Kronecker-factorization detection
inline constexpr double kEigFloor = -1e-8;  // most negative admissible eigenvalue
}  // namespace tol

/// Ordered bit string b1 b2 ... bN with b1 the most significant bit of the
/// integer value. Mirrors the register convention: qubit 1 is the high bit
/// of a basis index.
struct BitString {
  int length = 0;
  std::uint32_t value = 0;

  BitString() = default;
  BitString(int len, std::uint32_t val) : length(len), value(val) {}

  static BitString from_bits(const std::vector<int>& bits);
  static BitString parse(const std::string& text);  // e.g. "101"

  /// k is 1-based; bit(1) = b1 = most significant.
  int bit(int k) const { return int((value >> (length - k)) & 1u); }
  std::vector<int> bits() const;
  std::string str() const;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.length == b.length && a.value == b.value;
  }
};

/// splitmix64: deterministic, trivially splittable, 64-bit seeded.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 bits; independent of library distributions.
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

  SplitMix64 split() { return SplitMix64(next()); }
};

inline const char* kRngAlgorithm = "splitmix64";

}  // namespace ghzsim
