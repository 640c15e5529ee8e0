#include "ghzsim/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "ghzsim/errors.hpp"

namespace ghzsim::io {

namespace {

ordered_json complex_pair(cx v) { return ordered_json::array({v.real(), v.imag()}); }

ordered_json amplitudes_json(const StateVector& s) {
  ordered_json arr = ordered_json::array();
  for (const cx& a : s.amplitudes()) arr.push_back(complex_pair(a));
  return arr;
}

ordered_json density_json(const DensityMatrix& rho) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < rho.dim(); ++j) row.push_back(complex_pair(rho.entry(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_value(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(std::size_t(indent) * std::size_t(depth), ' ');
  const std::string pad_in(std::size_t(indent) * std::size_t(depth + 1), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        out += ordered_json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Flat arrays of numbers stay on one line (amplitude pairs etc).
      bool scalar_only = true;
      for (const auto& v : j) {
        if (v.is_structured()) scalar_only = false;
      }
      if (scalar_only) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          dump_value(j[i], out, indent, depth);
          if (i + 1 < j.size()) out += ", ";
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_value(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

ordered_json transcript_to_json(const ProtocolTranscript& t) {
  ordered_json j;
  j["protocol"] = t.protocol_name;
  j["initial_state"] = t.initial_state;
  j["basis"] = t.basis_label;
  j["outcome"] = {{"bits", t.outcome.str()}, {"value", t.outcome.value}};
  j["probability"] = t.outcome_probability;
  j["branch_possible"] = t.branch_possible;
  ordered_json msgs = ordered_json::array();
  for (const ClassicalMessage& m : t.messages) {
    msgs.push_back({{"from", m.from}, {"to", m.to}, {"bits", m.bits.str()}});
  }
  j["messages"] = std::move(msgs);
  ordered_json corr = ordered_json::array();
  for (const AppliedCorrection& c : t.corrections) {
    corr.push_back({{"party", c.party},
                    {"op", c.op_label},
                    {"targets", c.targets},
                    {"locality", locality_name(c.locality)}});
  }
  j["corrections"] = std::move(corr);
  if (t.final_state.has_value()) {
    j["final_state"] = {{"type", "pure"},
                        {"num_qubits", t.final_state->num_qubits()},
                        {"amplitudes", amplitudes_json(*t.final_state)}};
  } else if (t.final_density.has_value()) {
    j["final_state"] = {{"type", "mixed"},
                        {"num_qubits", t.final_density->num_qubits()},
                        {"entries", density_json(*t.final_density)}};
  } else {
    j["final_state"] = nullptr;
  }
  if (t.fidelity.has_value()) {
    j["fidelity"] = *t.fidelity;
  } else {
    j["fidelity"] = nullptr;
  }
  j["classical_bits_sent"] = t.classical_bits_sent;
  j["nonlocal_allowed"] = t.nonlocal_allowed;
  if (!t.rng_algorithm.empty()) {
    j["rng"] = {{"algorithm", t.rng_algorithm}, {"seed", t.seed.value_or(0)}};
  }
  return j;
}

ordered_json run_to_json(const std::string& protocol,
                         const std::vector<ProtocolTranscript>& ts) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["protocol"] = protocol;
  double prob_sum = 0.0;
  double min_fidelity = 1.0;
  bool any_fidelity = false;
  ordered_json arr = ordered_json::array();
  for (const ProtocolTranscript& t : ts) {
    prob_sum += t.outcome_probability;
    if (t.fidelity.has_value()) {
      any_fidelity = true;
      min_fidelity = std::min(min_fidelity, *t.fidelity);
    }
    arr.push_back(transcript_to_json(t));
  }
  j["summary"] = {{"branches", ts.size()},
                  {"probability_sum", prob_sum},
                  {"min_fidelity", any_fidelity ? ordered_json(min_fidelity) : nullptr}};
  j["transcripts"] = std::move(arr);
  return j;
}

ordered_json basis_to_json(const ProjectiveBasis& basis) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["label"] = basis.label();
  j["num_qubits"] = basis.num_qubits();
  ordered_json elements = ordered_json::array();
  for (const StateVector& e : basis.elements()) elements.push_back(amplitudes_json(e));
  j["elements"] = std::move(elements);
  j["completeness_residual"] = basis.completeness_residual();
  return j;
}

ordered_json densecode_to_json(const DenseCodeResult& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["scheme"] = r.scheme;
  j["message"] = r.message.str();
  j["encoded"] = {{"num_qubits", r.encoded.num_qubits()},
                  {"amplitudes", amplitudes_json(r.encoded)}};
  j["basis"] = r.basis_label;
  j["measured"] = r.measured.str();
  j["decoded"] = r.decoded.str();
  j["outcome_probability"] = r.outcome_probability;
  j["manipulated_qubits"] = r.manipulated_qubits;
  j["classical_bits"] = r.classical_bits;
  j["nonlocal_encoding"] = r.nonlocal_encoding;
  j["round_trip_exact"] = r.decoded == r.message;
  return j;
}

ordered_json teleclone_to_json(double lambda0, const TelecloneResult& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["protocol"] = "teleclone";
  j["lambda0"] = lambda0;
  j["rho_bc_corrected"] = density_json(r.rho_bc);
  j["rho_b"] = density_json(r.rho_b);
  j["rho_c"] = density_json(r.rho_c);
  j["rho_bc_max_offdiagonal"] = r.rho_bc.max_abs_offdiagonal();
  ordered_json arr = ordered_json::array();
  for (const ProtocolTranscript& t : r.transcripts) arr.push_back(transcript_to_json(t));
  j["transcripts"] = std::move(arr);
  return j;
}

std::string dump_deterministic(const ordered_json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  out += "\n";
  return out;
}

std::string capacity_csv(const std::vector<CapacityRow>& rows) {
  std::string out = "N,alpha_sq,E,holevo,c,c_closed_form,abs_diff\n";
  for (const CapacityRow& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.num_qubits,
                  r.alpha_sq, r.entanglement, r.holevo_bits, r.capacity, r.capacity_closed_form,
                  r.abs_diff);
    out += buf;
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for writing: " + path);
  f << content;
  if (!f) throw Error("write failed: " + path);
}

}  // namespace ghzsim::io
