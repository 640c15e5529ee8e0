#include <doctest.h>

#include <cmath>

#include "ghzsim/basis.hpp"
#include "ghzsim/capacity.hpp"
#include "ghzsim/errors.hpp"
#include "oracle.hpp"

using namespace ghzsim;

namespace {
constexpr double kS2 = 0.7071067811865475244;
constexpr double kEnt25 = 0.8112781244591328;  // -0.25 log2 0.25 - 0.75 log2 0.75
}  // namespace

TEST_CASE("holevo") {
  // Eight equiprobable GHZ dense-coding states: C = 3.
  Ensemble ghz;
  for (std::uint32_t x = 0; x < 8; ++x) {
    ghz.states.push_back(to_density(ghz_dense_state(BitString(3, x))));
    ghz.probabilities.push_back(0.125);
  }
  CHECK(holevo(ghz) == doctest::Approx(3.0).epsilon(1e-10));

  // Single-state ensemble: 0.
  Ensemble single;
  single.states.push_back(to_density(ghz_state(2)));
  single.probabilities.push_back(1.0);
  CHECK(holevo(single) == doctest::Approx(0.0).epsilon(1e-10));

  // Four equiprobable Bell states: S(I/4) = 2.
  Ensemble bell;
  for (int x = 0; x < 4; ++x) {
    bell.states.push_back(to_density(bell_state(x)));
    bell.probabilities.push_back(0.25);
  }
  CHECK(holevo(bell) == doctest::Approx(2.0).epsilon(1e-10));

  Ensemble bad;
  bad.states.push_back(to_density(ghz_state(2)));
  bad.states.push_back(to_density(ghz_state(3)));
  bad.probabilities = {0.5, 0.5};
  CHECK_THROWS_AS(holevo(bad), UsageError);
}

TEST_CASE("channel_entanglement") {
  CHECK(channel_entanglement(kS2, kS2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(channel_entanglement(1.0, 0.0) == doctest::Approx(0.0));
  CHECK(channel_entanglement(0.5, std::sqrt(0.75)) == doctest::Approx(kEnt25).epsilon(1e-12));
  // Depends only on the moduli.
  CHECK(channel_entanglement(cx{0, 0.5}, std::sqrt(0.75)) ==
        doctest::Approx(kEnt25).epsilon(1e-12));
  // Matches the reduced entropy of the weighted channel.
  const StateVector channel = weighted_ghz_state(3, 0.5, std::sqrt(0.75));
  CHECK(von_neumann_entropy(reduced_single_qubit(channel, 2)) ==
        doctest::Approx(kEnt25).epsilon(1e-10));
  CHECK_THROWS_AS(channel_entanglement(1.0, 1.0), UsageError);
}

TEST_CASE("ensemble_density") {
  // Maximal channel, N=3: I/8.
  const DensityMatrix even = ensemble_density(3, kS2, kS2);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const cx expect = i == j ? cx{0.125} : cx{};
      CHECK(std::abs(even.entry(i, j) - expect) < tol::kEq);
    }
  }

  // alpha = 1, N=2: diag(1,0) (x) I/2.
  const DensityMatrix degenerate = ensemble_density(2, 1.0, 0.0);
  const DensityMatrix ref =
      tensor_density(DensityMatrix::diagonal(1, {1.0, 0.0}), DensityMatrix::diagonal(1, {0.5, 0.5}));
  CHECK(max_abs_diff(degenerate, ref) < tol::kEq);

  // |alpha|^2 = 0.25, N=3: explicit entrywise check vs the oracle averaging.
  const cx alpha{0.5}, beta{std::sqrt(0.75)};
  const DensityMatrix rho = ensemble_density(3, alpha, beta);
  oracle::cmat acc(8, oracle::cvec(8, 0.0));
  for (std::uint32_t x = 0; x < 8; ++x) {
    const StateVector phi = ghz_class_element_weighted(3, BitString(3, x), alpha, beta);
    const auto op = oracle::outer(oracle::cvec(phi.amplitudes().begin(), phi.amplitudes().end()));
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) acc[i][j] += op[i][j] / 8.0;
    }
  }
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(std::abs(rho.entry(i, j) - cx{acc[i][j]}) < tol::kEq);
    }
  }
  // ... and the factorized form diag(0.25,0.75) (x) I/2 (x) I/2.
  DensityMatrix kron_ref = DensityMatrix::diagonal(1, {0.25, 0.75});
  kron_ref = tensor_density(kron_ref, DensityMatrix::diagonal(1, {0.5, 0.5}));
  kron_ref = tensor_density(kron_ref, DensityMatrix::diagonal(1, {0.5, 0.5}));
  CHECK(max_abs_diff(rho, kron_ref) < tol::kEq);

  CHECK_THROWS_AS(ensemble_density(9, kS2, kS2), UsageError);
}

TEST_CASE("per_bit_capacity") {
  CHECK(per_bit_capacity(3, kS2, kS2) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(per_bit_capacity(2, kS2, kS2) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(per_bit_capacity(4, 0.5, std::sqrt(0.75)) ==
        doctest::Approx(1.0 + kEnt25 / 3.0).epsilon(1e-10));
  CHECK_THROWS_AS(per_bit_capacity(1, 1.0, 0.0), UsageError);
}

TEST_CASE("holevo equals the plain average entropy for pure ensembles") {
  Ensemble e;
  for (std::uint32_t x = 0; x < 8; ++x) {
    e.states.push_back(
        to_density(ghz_class_element_weighted(3, BitString(3, x), 0.6, 0.8)));
    e.probabilities.push_back(0.125);
  }
  CHECK(holevo(e) == doctest::Approx(von_neumann_entropy(e.average())).epsilon(1e-12));
}

TEST_CASE("the two capacity routes agree on a grid") {
  for (int n = 2; n <= 6; ++n) {
    const auto rows = capacity_sweep(n, 21);
    REQUIRE(rows.size() == 21);
    double prev_c = 0.0;
    double prev_e = -1.0;
    for (const auto& row : rows) {
      CHECK(row.abs_diff < tol::kEq);
      // monotone in E for fixed N (grid is symmetric in E; compare via E)
      if (row.entanglement > prev_e) {
        CHECK(row.capacity >= prev_c - tol::kEq);
      }
      prev_e = row.entanglement;
      prev_c = row.capacity;
    }
    // maximum N/(N-1) at E=1 (alpha^2 = 0.5, the middle grid point)
    CHECK(rows[10].entanglement == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[10].capacity * (n - 1) == doctest::Approx(double(n)).epsilon(1e-10));
  }
}
