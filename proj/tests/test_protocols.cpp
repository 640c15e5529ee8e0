#include <doctest.h>

#include <cmath>

#include "ghzsim/capacity.hpp"
#include "ghzsim/errors.hpp"
#include "ghzsim/protocols.hpp"
#include "oracle.hpp"

using namespace ghzsim;

namespace {

constexpr double kS2 = 0.7071067811865475244;

double amp_diff(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    d = std::max(d, std::abs(a.amplitude(i) - b.amplitude(i)));
  }
  return d;
}

oracle::cvec to_oracle(const StateVector& s) {
  return oracle::cvec(s.amplitudes().begin(), s.amplitudes().end());
}

}  // namespace

TEST_CASE("teleport_tight") {
  // alpha = 1: every branch recovers |0>.
  for (const auto& t : teleport_tight(UnknownStateSpec::single_qubit(1.0, 0.0),
                                      RunMode::exhaustive())) {
    REQUIRE(t.final_state.has_value());
    CHECK(fidelity_pure(*t.final_state, StateVector(1)) == doctest::Approx(1.0).epsilon(1e-10));
  }

  // alpha = beta = 1/sqrt(2): all four branches, probability 1/4, fidelity 1,
  // cross-checked with the exhaustive oracle.
  const UnknownStateSpec even = UnknownStateSpec::single_qubit(kS2, kS2);
  const ProtocolSetup setup = make_teleport_tight_setup(even);
  const auto ts = teleport_tight(even, RunMode::exhaustive());
  CHECK(ts.size() == 4);
  for (const auto& t : ts) {
    const auto op = oracle::project(to_oracle(setup.initial), 3,
                                    to_oracle(setup.basis.element(t.outcome.value)), {1, 2});
    CHECK(t.outcome_probability == doctest::Approx(op.prob).epsilon(1e-12));
    CHECK(t.outcome_probability == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(*t.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  }

  // x = 3 uses -iY.
  CHECK(ts[3].corrections.at(0).op_label == "-iY");
  CHECK(ts[3].corrections.at(0).party == "Bob");
}

TEST_CASE("dense_code_tight") {
  const DenseCodeResult r00 = dense_code_tight(BitString::parse("00"));
  CHECK(amp_diff(r00.encoded, bell_state(0)) < tol::kStrict);
  CHECK(r00.decoded == BitString::parse("00"));

  const DenseCodeResult r10 = dense_code_tight(BitString::parse("10"));
  CHECK(amp_diff(r10.encoded, bell_state(2)) < tol::kStrict);  // Phi-
  CHECK(r10.decoded == BitString::parse("10"));

  for (std::uint32_t m = 0; m < 4; ++m) {
    const DenseCodeResult r = dense_code_tight(BitString(2, m));
    CHECK(r.decoded == BitString(2, m));
    CHECK(r.outcome_probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.manipulated_qubits == 1);
    CHECK(r.classical_bits == 2);
  }
}

TEST_CASE("teleport_ghz against the protocol table") {
  const cx a{0.6}, b{0.8};
  const UnknownStateSpec spec = UnknownStateSpec::epr_form(a, b);
  const ProtocolSetup setup = make_teleport_ghz_setup(spec);

  // Expected residuals per outcome, straight from the table.
  auto vec = [](cx a00, cx a01, cx a10, cx a11) {
    return oracle::cvec{a00, a01, a10, a11};
  };
  const oracle::cvec residuals[8] = {
      vec(b, 0, 0, a),  vec(b, 0, 0, -a),  vec(-b, 0, 0, a),  vec(-b, 0, 0, -a),
      vec(a, 0, 0, b),  vec(-a, 0, 0, b),  vec(a, 0, 0, -b),  vec(-a, 0, 0, -b)};

  const oracle::cvec joint = to_oracle(setup.initial);
  for (std::uint32_t x = 0; x < 8; ++x) {
    const auto op =
        oracle::project(joint, 5, to_oracle(setup.basis.element(x)), {1, 2, 3});
    CHECK(op.prob == doctest::Approx(0.125).epsilon(1e-10));
    // phase-insensitive match against the table row
    CHECK(oracle::fidelity(op.residual, residuals[x]) == doctest::Approx(1.0).epsilon(1e-10));
  }

  const auto ts = teleport_ghz(spec, RunMode::exhaustive());
  CHECK(ts.size() == 8);
  for (const auto& t : ts) {
    CHECK(t.outcome_probability == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(*t.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.classical_bits_sent == 3);
    for (const auto& c : t.corrections) CHECK(c.locality != LocalityTag::Nonlocal);
  }
  // Correction columns of rows 0 and 5.
  CHECK(ts[0].corrections.at(0).op_label == "X");
  CHECK(ts[0].corrections.at(0).party == "Bob");
  CHECK(ts[0].corrections.at(1).op_label == "I");
  CHECK(ts[5].corrections.at(0).op_label == "I");
  CHECK(ts[5].corrections.at(1).op_label == "-iY");
  CHECK(ts[5].corrections.at(1).party == "Claire");

  CHECK_THROWS_AS(teleport_ghz(UnknownStateSpec::single_qubit(1, 0), RunMode::exhaustive()),
                  UnsupportedStateError);
}

TEST_CASE("teleport_ghz_nonlocal_variant") {
  const UnknownStateSpec spec = UnknownStateSpec::epr_form(0.6, 0.8);
  const ProtocolTranscript t = teleport_ghz_nonlocal_variant(spec, 0, true);
  CHECK(*t.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(t.corrections.size() == 1);
  CHECK(t.corrections[0].locality == LocalityTag::Nonlocal);
  CHECK(t.nonlocal_allowed);

  // factorized and nonlocal corrections land on the same physical state
  const ProtocolTranscript factorized = teleport_ghz(spec, RunMode::exhaustive())[0];
  CHECK(fidelity_pure(*factorized.final_state, *t.final_state) ==
        doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(teleport_ghz_nonlocal_variant(spec, 0, false), LocalityError);
  CHECK_THROWS_AS(teleport_ghz_nonlocal_variant(spec, 1, true), UsageError);
}

TEST_CASE("general two-qubit states cannot ride the GHZ channel") {
  const auto basis00 = general_two_qubit_negative_check(
      UnknownStateSpec::general_two_qubit({1.0, 0.0, 0.0, 0.0}));
  CHECK(basis00.applicable);
  CHECK(basis00.min_fidelity < 1.0 - 1e-6);

  const auto uniform = general_two_qubit_negative_check(
      UnknownStateSpec::general_two_qubit({0.5, 0.5, 0.5, 0.5}));
  CHECK(uniform.applicable);
  CHECK(uniform.min_fidelity < 1.0 - 1e-6);

  // EPR-form control: transmissible, reported not applicable.
  const auto control = general_two_qubit_negative_check(UnknownStateSpec::epr_form(0.6, 0.8));
  CHECK(!control.applicable);
  CHECK(control.min_fidelity >= 1.0 - tol::kEq);
}

TEST_CASE("dense_code_ghz table rows and round trip") {
  const DenseCodeResult r101 = dense_code_ghz(BitString::parse("101"));
  CHECK(std::abs(r101.encoded.amplitude(3) - cx{kS2}) < tol::kStrict);  // |011>
  CHECK(std::abs(r101.encoded.amplitude(4) - cx{kS2}) < tol::kStrict);  // |100>
  CHECK(r101.decoded == BitString::parse("101"));

  const DenseCodeResult r010 = dense_code_ghz(BitString::parse("010"));
  CHECK(std::abs(r010.encoded.amplitude(0) - cx{kS2}) < tol::kStrict);
  CHECK(std::abs(r010.encoded.amplitude(7) + cx{kS2}) < tol::kStrict);
  CHECK(r010.decoded == BitString::parse("010"));

  for (std::uint32_t m = 0; m < 8; ++m) {
    const DenseCodeResult r = dense_code_ghz(BitString(3, m));
    CHECK(r.decoded == BitString(3, m));
    CHECK(r.outcome_probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.manipulated_qubits == 2);
    CHECK(r.classical_bits == 3);
    CHECK(!r.nonlocal_encoding);
  }
}

TEST_CASE("dense_code_ghz_converted") {
  for (std::uint32_t m = 0; m < 8; ++m) {
    const DenseCodeResult r = dense_code_ghz_converted(BitString(3, m));
    CHECK(r.decoded == BitString(3, m));
    CHECK(r.nonlocal_encoding);
  }
  // encoded states pairwise orthogonal
  for (std::uint32_t m = 0; m < 8; ++m) {
    for (std::uint32_t k = m + 1; k < 8; ++k) {
      const cx ov = inner_product(dense_code_ghz_converted(BitString(3, m)).encoded,
                                  dense_code_ghz_converted(BitString(3, k)).encoded);
      CHECK(std::abs(ov) < tol::kEq);
    }
  }
  // encoding of 000 equals the conversion image of 000
  CHECK(amp_diff(dense_code_ghz_converted(BitString(3, 0)).encoded,
                 convert_dense_to_teleport(BitString(3, 0))) < tol::kStrict);
}

TEST_CASE("dense_code_ghz_from_epr") {
  const DenseCodeResult r0 = dense_code_ghz_from_epr(BitString(3, 0));
  CHECK(amp_diff(r0.encoded, ghz_state(3)) < tol::kStrict);  // C_BC alone prepares GHZ
  CHECK(r0.decoded == BitString(3, 0));

  for (std::uint32_t m = 0; m < 8; ++m) {
    CHECK(dense_code_ghz_from_epr(BitString(3, m)).decoded == BitString(3, m));
  }

  // initial channel Phi+ (x) |0> has single-qubit entropies (1,1,0)
  const StateVector channel = tensor(bell_state(0), StateVector::basis_state(1, 0));
  CHECK(von_neumann_entropy(reduced_single_qubit(channel, 1)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(von_neumann_entropy(reduced_single_qubit(channel, 2)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(von_neumann_entropy(reduced_single_qubit(channel, 3)) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("teleport_nparty") {
  // N=3 reduces branch-for-branch to teleport_ghz: match each nparty basis
  // element to its teleport-basis row and compare outcomes.
  const UnknownStateSpec epr_spec = UnknownStateSpec::epr_form(0.6, 0.8);
  const UnknownStateSpec ghz2_spec = UnknownStateSpec::ghz_form(2, 0.6, 0.8);
  // note: nparty carries alpha|00>+beta|11>; the ghz protocol carries
  // alpha|01>+beta|10>. The N=3 reduction statement is about branch
  // structure: both have 8 branches, uniform probability 1/8, fidelity 1.
  const auto nparty3 = teleport_nparty(ghz2_spec, 3, RunMode::exhaustive());
  const auto ghz = teleport_ghz(epr_spec, RunMode::exhaustive());
  CHECK(nparty3.size() == ghz.size());
  for (const auto& t : nparty3) {
    CHECK(t.outcome_probability == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(*t.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  }

  // N=4, alpha=0.6: 16 branches, probability 1/16, fidelity 1.
  const auto nparty4 =
      teleport_nparty(UnknownStateSpec::ghz_form(3, 0.6, 0.8), 4, RunMode::exhaustive());
  CHECK(nparty4.size() == 16);
  for (const auto& t : nparty4) {
    CHECK(t.outcome_probability == doctest::Approx(1.0 / 16).epsilon(1e-10));
    CHECK(*t.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.classical_bits_sent == 4);
    for (const auto& c : t.corrections) {
      CHECK(c.party != "Alice");
      CHECK(c.locality == LocalityTag::LocalSingle);
    }
  }

  CHECK_THROWS_AS(teleport_nparty(UnknownStateSpec::ghz_form(3, 0.6, 0.8), 5,
                                  RunMode::exhaustive()),
                  UnsupportedStateError);  // width mismatch
  CHECK_THROWS_AS(teleport_nparty(UnknownStateSpec::ghz_form(7, 0.6, 0.8), 8,
                                  RunMode::exhaustive()),
                  UsageError);  // out of supported range
}

TEST_CASE("teleport_onebit_style") {
  // alpha = 1: every branch leaves |00> on A,B.
  for (const auto& t : teleport_onebit_style(UnknownStateSpec::ghz_form(2, 1.0, 0.0),
                                             RunMode::exhaustive())) {
    REQUIRE(t.final_state.has_value());
    CHECK(fidelity_pure(*t.final_state, StateVector(2)) == doctest::Approx(1.0).epsilon(1e-10));
  }

  const auto ts =
      teleport_onebit_style(UnknownStateSpec::ghz_form(2, 0.6, 0.8), RunMode::exhaustive());
  CHECK(ts.size() == 4);
  for (const auto& t : ts) {
    CHECK(t.outcome_probability == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(*t.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.classical_bits_sent == 2);
    CHECK(t.nonlocal_allowed);  // the entangling step is not LOCC
  }
}

TEST_CASE("modified_dense_scheme") {
  // GHZ case: the encoder operator equals the converted (x) from-EPR
  // composite, modulo the table's first-two-bit relabeling.
  for (std::uint32_t m = 0; m < 8; ++m) {
    const BitString msg(3, m);
    const std::uint32_t swapped = ((m >> 1) & 1u) << 2 | ((m >> 2) & 1u) << 1 | (m & 1u);
    auto [bx, cxop] = ghz_dense_pair(msg);
    const QubitOperator composite =
        compose({hadamard(2), cnot(2, 3), bx, cxop, cnot(2, 3)}, 3);
    const QubitOperator modified = compose(
        {hadamard(2), cnot(2, 3), generating_operator(BitString(3, swapped)), cnot(2, 3)}, 3);
    CHECK(operator_max_diff(composite, modified) < tol::kStrict);
  }

  // k=0, n=0 degenerates to dense_code_nparty.
  for (std::uint32_t m = 0; m < 16; ++m) {
    const DenseCodeResult plain = dense_code_nparty(BitString(4, m));
    const DenseCodeResult degenerate = modified_dense_scheme(0, 0, BitString(4, m));
    CHECK(degenerate.decoded == plain.decoded);
    CHECK(amp_diff(degenerate.encoded, plain.encoded) < tol::kStrict);
  }

  // N=4, k=1: EPR-block + ancilla channel round-trips all 16 messages.
  for (std::uint32_t m = 0; m < 16; ++m) {
    const DenseCodeResult r = modified_dense_scheme(1, 4, BitString(4, m));
    CHECK(r.decoded == BitString(4, m));
    CHECK(r.outcome_probability == doctest::Approx(1.0).epsilon(1e-10));
  }
  // N=3, k=1, full-width cascade: the GHZ case of the replacement rule.
  for (std::uint32_t m = 0; m < 8; ++m) {
    CHECK(modified_dense_scheme(1, 3, BitString(3, m)).decoded == BitString(3, m));
  }

  CHECK_THROWS_AS(modified_dense_scheme(3, 0, BitString(4, 0)), UsageError);  // block too small
  CHECK_THROWS_AS(modified_dense_scheme(0, 1, BitString(4, 0)), UsageError);  // bad width
}

TEST_CASE("dense_code_nparty") {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
      const DenseCodeResult r = dense_code_nparty(BitString(n, m));
      CHECK(r.decoded == BitString(n, m));
      CHECK(r.manipulated_qubits == n - 1);
      CHECK(r.classical_bits == n);
    }
  }
  // N=5 spot row from the examples and the all-zero identity encoding.
  CHECK(dense_code_nparty(BitString::parse("10110")).decoded == BitString::parse("10110"));
  CHECK(amp_diff(dense_code_nparty(BitString(5, 0)).encoded, ghz_state(5)) < tol::kStrict);

  // N=3 reproduces dense_code_ghz up to the table relabeling.
  for (std::uint32_t m = 0; m < 8; ++m) {
    const std::uint32_t swapped = ((m >> 1) & 1u) << 2 | ((m >> 2) & 1u) << 1 | (m & 1u);
    CHECK(amp_diff(dense_code_nparty(BitString(3, swapped)).encoded,
                   dense_code_ghz(BitString(3, m)).encoded) < tol::kStrict);
  }
}

TEST_CASE("teleclone") {
  // lambda0 = 1: both copies are |0><0|.
  const TelecloneResult pure = teleclone(UnknownStateSpec::mixed_diagonal(1.0));
  CHECK(std::abs(pure.rho_bc.entry(0, 0) - cx{1.0}) < tol::kStrict);
  CHECK(std::abs(pure.rho_b.entry(0, 0) - cx{1.0}) < tol::kStrict);

  // lambda0 = 0.3: rho_B = rho_C = diag(0.3, 0.7); four uniform branches.
  const TelecloneResult r = teleclone(UnknownStateSpec::mixed_diagonal(0.3));
  CHECK(std::abs(r.rho_b.entry(0, 0) - cx{0.3}) < tol::kStrict);
  CHECK(std::abs(r.rho_b.entry(1, 1) - cx{0.7}) < tol::kStrict);
  CHECK(max_abs_diff(r.rho_b, r.rho_c) < tol::kStrict);
  CHECK(r.rho_bc.max_abs_offdiagonal() < tol::kStrict);
  CHECK(r.transcripts.size() == 4);
  for (const auto& t : r.transcripts) {
    CHECK(t.outcome_probability == doctest::Approx(0.25).epsilon(1e-10));
    REQUIRE(t.fidelity.has_value());
    CHECK(*t.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(t.final_density.has_value());
    CHECK(t.final_density->max_abs_offdiagonal() < tol::kStrict);
  }

  // rho'_BC is the separable classically correlated mixture.
  CHECK(std::abs(r.rho_bc.entry(0, 0) - cx{0.3}) < tol::kStrict);
  CHECK(std::abs(r.rho_bc.entry(3, 3) - cx{0.7}) < tol::kStrict);
  CHECK(std::abs(r.rho_bc.entry(1, 1)) < tol::kStrict);

  CHECK_THROWS_AS(teleclone(UnknownStateSpec::mixed_diagonal(1.5)), UsageError);
}

TEST_CASE("clone consistency over random inputs") {
  SplitMix64 rng(0x7e1ec10eULL);
  for (int trial = 0; trial < 20; ++trial) {
    const double l0 = rng.next_double();
    const TelecloneResult r = teleclone(UnknownStateSpec::mixed_diagonal(l0));
    const DensityMatrix input = DensityMatrix::diagonal(1, {l0, 1.0 - l0});
    CHECK(max_abs_diff(r.rho_b, input) < tol::kStrict);
    CHECK(max_abs_diff(r.rho_c, input) < tol::kStrict);
  }
}

TEST_CASE("teleportation operators do not form a complete dense set") {
  const GramRankReport r = teleport_operator_dense_rank();
  CHECK(r.rank < 8);
  MESSAGE("Gram rank of the teleport-operator dense family: ", r.rank);
}

TEST_CASE("resource accounting") {
  CHECK(teleport_tight(UnknownStateSpec::single_qubit(0.6, 0.8),
                       RunMode::exhaustive())[0].classical_bits_sent == 2);
  CHECK(teleport_ghz(UnknownStateSpec::epr_form(0.6, 0.8),
                     RunMode::exhaustive())[0].classical_bits_sent == 3);
  CHECK(teleport_nparty(UnknownStateSpec::ghz_form(4, 0.6, 0.8), 5,
                        RunMode::exhaustive())[0].classical_bits_sent == 5);
  CHECK(teleport_onebit_style(UnknownStateSpec::ghz_form(2, 0.6, 0.8),
                              RunMode::exhaustive())[0].classical_bits_sent == 2);
}

TEST_CASE("sampled protocol runs") {
  const auto s1 = teleport_ghz(UnknownStateSpec::epr_form(0.6, 0.8), RunMode::sampled(99));
  const auto s2 = teleport_ghz(UnknownStateSpec::epr_form(0.6, 0.8), RunMode::sampled(99));
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].outcome == s2[0].outcome);
  CHECK(*s1[0].fidelity == doctest::Approx(1.0).epsilon(1e-10));
}
