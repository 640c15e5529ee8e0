#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghzsim/basis.hpp"
#include "ghzsim/density.hpp"
#include "ghzsim/operators.hpp"
#include "ghzsim/state.hpp"
#include "ghzsim/types.hpp"

namespace ghzsim {

/// A named party owning a disjoint subset of the register.
struct Party {
  std::string name;
  std::vector<int> owned_qubits;
};

struct ClassicalMessage {
  std::string from;
  std::string to;  // party name or "broadcast"
  BitString bits;
};

/// A correction to run for a given outcome: `party` applies `op` (targets in
/// register coordinates).
struct CorrectionStep {
  std::string party;
  QubitOperator op;
};

struct AppliedCorrection {
  std::string party;
  std::string op_label;
  std::vector<int> targets;
  LocalityTag locality;
};

/// The full record of one protocol branch.
struct ProtocolTranscript {
  std::string protocol_name;
  std::string initial_state;
  std::string basis_label;
  BitString outcome;
  double outcome_probability = 0.0;
  bool branch_possible = true;
  std::vector<ClassicalMessage> messages;
  std::vector<AppliedCorrection> corrections;
  std::optional<StateVector> final_state;
  std::optional<DensityMatrix> final_density;
  std::optional<double> fidelity;
  int classical_bits_sent = 0;
  bool nonlocal_allowed = false;
  std::string rng_algorithm;  // set only for sampled branches
  std::optional<std::uint64_t> seed;
};

/// One measurement-message-correction round over a shared register.
/// `measured_qubits` lists, in basis order, which register qubits the
/// observable acts on; `corrections` is indexed by outcome.
struct ProtocolSetup {
  std::string protocol_name;
  std::string initial_state_desc;
  int register_size = 0;
  std::vector<Party> parties;
  std::string sender;
  StateVector initial;
  ProjectiveBasis basis;
  std::vector<int> measured_qubits;
  std::vector<std::vector<CorrectionStep>> corrections;
  std::optional<StateVector> target;
  bool nonlocal_allowed = false;

  explicit ProtocolSetup(ProjectiveBasis measurement_basis) : basis(std::move(measurement_basis)) {}

  const Party& party(const std::string& name) const;
  void validate() const;
};

/// Deterministic execution of one branch: project, record the probability,
/// deliver the outcome, apply corrections under the locality rules, score
/// fidelity against the declared target. Throws BranchImpossibleError on a
/// ~zero-probability branch and LocalityError on an ownership violation
/// without nonlocal_allowed.
ProtocolTranscript run_branch(const ProtocolSetup& setup, std::uint32_t outcome);

/// All 2^k branches in outcome order. Zero-probability branches are included
/// (branch_possible = false) so exhaustive runs always have 2^k entries;
/// probabilities sum to 1.
std::vector<ProtocolTranscript> run_all_branches(const ProtocolSetup& setup);

/// Samples one branch from the outcome distribution with the seeded
/// generator; identical seed, identical transcript.
ProtocolTranscript sample_branch(const ProtocolSetup& setup, std::uint64_t seed);

}  // namespace ghzsim
