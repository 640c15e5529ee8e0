#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "ghzsim/basis.hpp"
#include "ghzsim/capacity.hpp"
#include "ghzsim/locc.hpp"
#include "ghzsim/protocols.hpp"

namespace ghzsim::io {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

ordered_json transcript_to_json(const ProtocolTranscript& t);
ordered_json run_to_json(const std::string& protocol, const std::vector<ProtocolTranscript>& ts);
ordered_json basis_to_json(const ProjectiveBasis& basis);
ordered_json densecode_to_json(const DenseCodeResult& r);
ordered_json teleclone_to_json(double lambda0, const TelecloneResult& r);

/// Serializes with fixed field order and every float printed with 17
/// significant digits, so identical inputs give byte-identical output.
std::string dump_deterministic(const ordered_json& j, int indent = 2);

std::string capacity_csv(const std::vector<CapacityRow>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace ghzsim::io
