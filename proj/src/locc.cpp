#include "ghzsim/locc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

int outcome_bits(const ProtocolSetup& setup) {
  return std::bit_width(setup.basis.size()) - 1;
}

/// Remaining-register index (1-based) of an original qubit after the
/// measured ones are projected out; -1 if it was measured.
std::vector<int> remaining_map(const ProtocolSetup& setup) {
  std::vector<bool> measured(std::size_t(setup.register_size) + 1, false);
  for (int q : setup.measured_qubits) measured[std::size_t(q)] = true;
  std::vector<int> map(std::size_t(setup.register_size) + 1, -1);
  int next = 1;
  for (int q = 1; q <= setup.register_size; ++q) {
    if (!measured[std::size_t(q)]) map[std::size_t(q)] = next++;
  }
  return map;
}

}  // namespace

const Party& ProtocolSetup::party(const std::string& name) const {
  for (const Party& p : parties) {
    if (p.name == name) return p;
  }
  throw UsageError("unknown party: " + name);
}

void ProtocolSetup::validate() const {
  if (initial.num_qubits() != register_size) {
    throw UsageError("initial state does not match register size");
  }
  std::vector<int> owner(std::size_t(register_size) + 1, -1);
  for (std::size_t p = 0; p < parties.size(); ++p) {
    for (int q : parties[p].owned_qubits) {
      if (q < 1 || q > register_size) throw UsageError("owned qubit outside register");
      if (owner[std::size_t(q)] != -1) {
        throw UsageError("qubit " + std::to_string(q) + " owned by two parties");
      }
      owner[std::size_t(q)] = int(p);
    }
  }
  for (int q = 1; q <= register_size; ++q) {
    if (owner[std::size_t(q)] == -1) {
      throw UsageError("qubit " + std::to_string(q) + " not owned by any party");
    }
  }
  if (int(measured_qubits.size()) != basis.num_qubits()) {
    throw UsageError("measured qubit list does not match basis arity");
  }
  for (int q : measured_qubits) {
    if (q < 1 || q > register_size) throw UsageError("measured qubit outside register");
  }
  if (corrections.size() != basis.size()) {
    throw UsageError("corrections must be defined for every outcome");
  }
  party(sender);  // must exist
}

ProtocolTranscript run_branch(const ProtocolSetup& setup, std::uint32_t outcome) {
  setup.validate();
  if (outcome >= setup.basis.size()) throw UsageError("outcome index out of range");

  ProtocolTranscript t;
  t.protocol_name = setup.protocol_name;
  t.initial_state = setup.initial_state_desc;
  t.basis_label = setup.basis.label();
  t.outcome = BitString(outcome_bits(setup), outcome);
  t.classical_bits_sent = outcome_bits(setup);
  t.nonlocal_allowed = setup.nonlocal_allowed;

  ProjectionResult proj = project(setup.initial, setup.basis.element(outcome),
                                  setup.measured_qubits);
  t.outcome_probability = proj.probability;
  if (!proj.residual.has_value()) {
    std::ostringstream os;
    os << "branch " << t.outcome.str() << " has probability " << proj.probability;
    throw BranchImpossibleError(os.str());
  }

  const std::vector<int> remap = remaining_map(setup);
  StateVector state = std::move(*proj.residual);
  t.messages.push_back({setup.sender, "broadcast", t.outcome});
  for (const CorrectionStep& step : setup.corrections[outcome]) {
    const Party& actor = setup.party(step.party);
    const bool local = std::all_of(
        step.op.targets().begin(), step.op.targets().end(), [&](int q) {
          return std::find(actor.owned_qubits.begin(), actor.owned_qubits.end(), q) !=
                 actor.owned_qubits.end();
        });
    if (!local &&
        !(step.op.locality() == LocalityTag::Nonlocal && setup.nonlocal_allowed)) {
      std::ostringstream os;
      os << "party " << actor.name << " cannot apply " << step.op.label()
         << " outside its qubits (locality " << locality_name(step.op.locality()) << ")";
      throw LocalityError(os.str());
    }
    std::vector<int> new_targets;
    new_targets.reserve(step.op.targets().size());
    for (int q : step.op.targets()) {
      if (remap[std::size_t(q)] == -1) {
        throw UsageError("correction targets a measured qubit");
      }
      new_targets.push_back(remap[std::size_t(q)]);
    }
    state = apply(step.op.retargeted(new_targets), state);
    t.corrections.push_back(
        {actor.name, step.op.label(), step.op.targets(), step.op.locality()});
  }

  if (setup.target.has_value()) t.fidelity = fidelity_pure(*setup.target, state);
  t.final_state = std::move(state);
  return t;
}

std::vector<ProtocolTranscript> run_all_branches(const ProtocolSetup& setup) {
  setup.validate();
  std::vector<ProtocolTranscript> out;
  out.reserve(setup.basis.size());
  for (std::uint32_t x = 0; x < setup.basis.size(); ++x) {
    try {
      out.push_back(run_branch(setup, x));
    } catch (const BranchImpossibleError&) {
      ProtocolTranscript t;
      t.protocol_name = setup.protocol_name;
      t.initial_state = setup.initial_state_desc;
      t.basis_label = setup.basis.label();
      t.outcome = BitString(outcome_bits(setup), x);
      t.outcome_probability = 0.0;
      t.branch_possible = false;
      t.classical_bits_sent = outcome_bits(setup);
      t.nonlocal_allowed = setup.nonlocal_allowed;
      out.push_back(std::move(t));
    }
  }
  return out;
}

ProtocolTranscript sample_branch(const ProtocolSetup& setup, std::uint64_t seed) {
  setup.validate();
  std::vector<double> probs(setup.basis.size());
  for (std::uint32_t x = 0; x < setup.basis.size(); ++x) {
    probs[x] = project(setup.initial, setup.basis.element(x), setup.measured_qubits).probability;
  }
  SplitMix64 rng(seed);
  const double u = rng.next_double();
  double cum = 0.0;
  std::uint32_t pick = 0;
  for (std::uint32_t x = 0; x < probs.size(); ++x) {
    if (probs[x] < tol::kZeroProb) continue;
    cum += probs[x];
    pick = x;  // ends as the last possible branch if u ~ 1
    if (u < cum) break;
  }
  ProtocolTranscript t = run_branch(setup, pick);
  t.rng_algorithm = kRngAlgorithm;
  t.seed = seed;
  return t;
}

}  // namespace ghzsim
