#include <doctest.h>

#include <cmath>

#include "ghzsim/basis.hpp"
#include "ghzsim/density.hpp"
#include "ghzsim/errors.hpp"
#include "ghzsim/operators.hpp"
#include "ghzsim/state.hpp"
#include "oracle.hpp"

using namespace ghzsim;

namespace {

constexpr double kS2 = 0.7071067811865475244;

StateVector random_state(int n, SplitMix64& rng) {
  std::vector<cx> amps(std::size_t{1} << n);
  for (cx& a : amps) a = cx{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
  return StateVector::normalized(n, std::move(amps));
}

oracle::cvec to_oracle(const StateVector& s) {
  return oracle::cvec(s.amplitudes().begin(), s.amplitudes().end());
}

}  // namespace

TEST_CASE("tensor products") {
  const StateVector zero(1);
  const StateVector z00 = tensor(zero, zero);
  CHECK(z00.num_qubits() == 2);
  CHECK(z00.amplitude(0) == cx{1.0, 0.0});
  for (std::uint32_t i = 1; i < 4; ++i) CHECK(z00.amplitude(i) == cx{});

  const StateVector epr = ghz_state(2);
  const StateVector ext = tensor(epr, zero);
  CHECK(std::abs(ext.amplitude(0) - cx{kS2}) < tol::kStrict);  // |000>
  CHECK(std::abs(ext.amplitude(6) - cx{kS2}) < tol::kStrict);  // |110>
  CHECK(std::abs(ext.norm_squared() - 1.0) < tol::kEq);

  // |0>^3 superposed with |1>^3 gives the GHZ triplet.
  StateVector all0 = tensor(tensor(zero, zero), zero);
  StateVector all1 = apply(pauli(PauliKind::X, 1),
                           apply(pauli(PauliKind::X, 2), apply(pauli(PauliKind::X, 3), all0)));
  const StateVector ghz = superpose(all0, all1, cx{1, 0}, cx{1, 0});
  CHECK(std::abs(ghz.amplitude(0) - cx{kS2}) < tol::kStrict);
  CHECK(std::abs(ghz.amplitude(7) - cx{kS2}) < tol::kStrict);

  // empty register is the unit
  CHECK(tensor(StateVector(), epr).num_qubits() == 2);
  CHECK_THROWS_AS(tensor(zero, StateVector(16)), UsageError);  // 17 qubits exceeds the cap
}

TEST_CASE("to_density") {
  CHECK(to_density(StateVector(1)).entry(0, 0) == cx{1.0, 0.0});
  CHECK(to_density(StateVector(1)).entry(1, 1) == cx{});

  const StateVector plus = pi_state(1);
  const DensityMatrix dp = to_density(plus);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(std::abs(dp.entry(i, j) - cx{0.5}) < tol::kEq);
  }

  const DensityMatrix ghz = to_density(ghz_state(3));
  const auto expect = oracle::outer(to_oracle(ghz_state(3)));
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(std::abs(ghz.entry(i, j) - cx{expect[i][j]}) < tol::kStrict);
    }
  }
  CHECK(std::abs(ghz.entry(0, 7) - cx{0.5}) < tol::kStrict);
}

TEST_CASE("partial_trace") {
  const DensityMatrix half = partial_trace(to_density(ghz_state(3)), {1});
  CHECK(std::abs(half.entry(0, 0) - cx{0.5}) < tol::kEq);
  CHECK(std::abs(half.entry(1, 1) - cx{0.5}) < tol::kEq);
  CHECK(std::abs(half.entry(0, 1)) < tol::kEq);

  const StateVector s01 = tensor(StateVector(1), StateVector::basis_state(1, 1));
  const DensityMatrix q2 = partial_trace(to_density(s01), {2});
  CHECK(std::abs(q2.entry(0, 0)) < tol::kEq);
  CHECK(std::abs(q2.entry(1, 1) - cx{1.0}) < tol::kEq);

  const StateVector zeta(2, {cx{}, cx{0.6}, cx{0.8}, cx{}});
  const DensityMatrix r1 = partial_trace(to_density(zeta), {1});
  const auto expect = oracle::partial_trace(oracle::outer(to_oracle(zeta)), 2, {1});
  CHECK(std::abs(r1.entry(0, 0) - cx{expect[0][0]}) < tol::kEq);
  CHECK(std::abs(r1.entry(0, 0) - cx{0.36}) < tol::kEq);
  CHECK(std::abs(r1.entry(1, 1) - cx{0.64}) < tol::kEq);

  CHECK_THROWS_AS(partial_trace(to_density(zeta), {}), UsageError);
  CHECK_THROWS_AS(partial_trace(to_density(zeta), {3}), UsageError);
  CHECK_THROWS_AS(partial_trace(to_density(zeta), {1, 1}), UsageError);

  // keep-order: partial_trace(rho, {2,1}) is the qubit-swapped reduction
  SplitMix64 rng(7);
  const StateVector psi = random_state(3, rng);
  const DensityMatrix swapped = partial_trace(to_density(psi), {2, 1});
  const auto oswap = oracle::partial_trace(oracle::outer(to_oracle(psi)), 3, {2, 1});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(std::abs(swapped.entry(i, j) - cx{oswap[i][j]}) < tol::kEq);
    }
  }
}

TEST_CASE("von_neumann_entropy") {
  CHECK(von_neumann_entropy(to_density(ghz_state(2))) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(von_neumann_entropy(DensityMatrix::diagonal(1, {0.5, 0.5})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // -0.25 log2 0.25 - 0.75 log2 0.75
  CHECK(von_neumann_entropy(DensityMatrix::diagonal(1, {0.25, 0.75})) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-12));

  Eigen::MatrixXcd bad(2, 2);
  bad << 1.2, 0, 0, -0.2;  // trace 1, Hermitian, not PSD
  CHECK_THROWS_AS(DensityMatrix(1, bad), InvalidStateError);
}

TEST_CASE("fidelity_pure") {
  SplitMix64 rng(11);
  const StateVector psi = random_state(3, rng);
  CHECK(fidelity_pure(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<cx> rotated = psi.amplitudes();
  const cx phase = std::polar(1.0, 1.234);
  for (cx& a : rotated) a *= phase;
  CHECK(fidelity_pure(psi, StateVector(3, std::move(rotated))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(approx_equal_phase(psi, psi));

  CHECK(fidelity_pure(StateVector::basis_state(1, 0), StateVector::basis_state(1, 1)) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity_pure(StateVector(1), StateVector(2)), UsageError);
}

TEST_CASE("project") {
  // GHZ onto <0| at qubit 1
  ProjectionResult r = project(ghz_state(3), StateVector::basis_state(1, 0), {1});
  CHECK(r.probability == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(r.residual.has_value());
  CHECK(std::abs(r.residual->amplitude(0) - cx{1.0}) < tol::kEq);

  // zeta (x) GHZ onto pi+ (x) Phi+ at qubits (1,2,3): prob 1/8, residual
  // beta|00> + alpha|11>
  const cx a{0.6}, b{0.8};
  const StateVector zeta(2, {cx{}, a, b, cx{}});
  const StateVector joint = tensor(zeta, ghz_state(3));
  const StateVector proj = tensor(pi_state(1), bell_state(0));
  ProjectionResult pr = project(joint, proj, {1, 2, 3});
  CHECK(pr.probability == doctest::Approx(0.125).epsilon(1e-10));
  REQUIRE(pr.residual.has_value());
  const auto op = oracle::project(to_oracle(joint), 5, to_oracle(proj), {1, 2, 3});
  CHECK(oracle::max_vec_diff(to_oracle(*pr.residual), op.residual) < tol::kStrict);
  CHECK(std::abs(pr.residual->amplitude(0) - b) < tol::kEq);
  CHECK(std::abs(pr.residual->amplitude(3) - a) < tol::kEq);

  // full-register self projection leaves the empty register
  ProjectionResult full = project(joint, joint, {1, 2, 3, 4, 5});
  CHECK(full.probability == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(full.residual.has_value());
  CHECK(full.residual->num_qubits() == 0);

  // impossible branch
  ProjectionResult zero =
      project(StateVector::basis_state(1, 0), StateVector::basis_state(1, 1), {1});
  CHECK(zero.probability < tol::kZeroProb);
  CHECK(!zero.residual.has_value());

  CHECK_THROWS_AS(project(joint, proj, {1, 2, 9}), UsageError);
  CHECK_THROWS_AS(project(joint, proj, {1, 2, 2}), UsageError);
}

TEST_CASE("normalization is preserved by tensor, project and unitaries") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    StateVector a = random_state(2, rng);
    StateVector b = random_state(2, rng);
    StateVector t = tensor(a, b);
    CHECK(std::abs(t.norm_squared() - 1.0) < tol::kEq);
    StateVector u = apply(cnot(1, 3), t);
    CHECK(std::abs(u.norm_squared() - 1.0) < tol::kEq);
    ProjectionResult pr = project(u, random_state(1, rng), {2});
    if (pr.residual.has_value()) CHECK(std::abs(pr.residual->norm_squared() - 1.0) < tol::kEq);
  }
}

TEST_CASE("partial trace of a pure product recovers the factor") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    StateVector a = random_state(2, rng);
    StateVector b = random_state(2, rng);
    const DensityMatrix reduced = partial_trace(to_density(tensor(a, b)), {1, 2});
    CHECK(max_abs_diff(reduced, to_density(a)) < tol::kEq);
  }
}

TEST_CASE("reduced_single_qubit equals the partial-trace route") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    StateVector psi = random_state(4, rng);
    for (int q = 1; q <= 4; ++q) {
      CHECK(max_abs_diff(reduced_single_qubit(psi, q),
                         partial_trace(to_density(psi), {q})) < tol::kEq);
    }
  }
}

TEST_CASE("projection probabilities over a complete basis sum to one") {
  SplitMix64 rng(37);
  const ProjectiveBasis basis = ghz_class_basis(3);
  for (int trial = 0; trial < 25; ++trial) {
    StateVector psi = random_state(3, rng);
    double sum = 0.0;
    for (const StateVector& e : basis.elements()) sum += project(psi, e, {1, 2, 3}).probability;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("register caps and invariants") {
  CHECK_THROWS_AS(StateVector(17), UsageError);
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(2048, 2048);
  CHECK_THROWS_AS(DensityMatrix(11, big / 2048.0), UsageError);
  CHECK_THROWS_AS(StateVector(1, {cx{1.0}, cx{1.0}}), InvalidStateError);  // unnormalized
  const double nan = std::nan("");
  CHECK_THROWS_AS(StateVector(1, {cx{nan}, cx{}}), InvalidStateError);
}
