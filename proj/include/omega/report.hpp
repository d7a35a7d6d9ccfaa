#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "omega/catalog.hpp"
#include "omega/forms.hpp"
#include "omega/verify.hpp"

namespace omega {

// Insertion-ordered JSON keeps report bytes stable across runs.
using json = nlohmann::ordered_json;

json spectrum_to_json(const LambdaSpectrum& spectrum, int top = -1);
json omega_values_to_json(const std::vector<OmegaValue>& values);
json verify_report_to_json(const VerifyReport& report);

/// SHA-256 hex of the canonical serialization; the determinism contract is on
/// this hash, computed over everything except the envelope.
std::string stable_hash(const json& stable_part);

/// Assemble the versioned report: schema, command, config, payload, plus an
/// envelope holding the timestamp, wall time, and the stable hash of the rest.
json finalize_report(const std::string& command, json config, json payload, double wall_ms);

/// Spectra table rows: k,value,multiplicity,witness.
std::string omega_values_to_csv(const std::vector<OmegaValue>& values);
std::string spectrum_to_csv(const LambdaSpectrum& spectrum);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace omega
