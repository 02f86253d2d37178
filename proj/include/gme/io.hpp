// io.hpp
// JSON documents for states, witnesses and run manifests, and the builtin
// state grammar used on the command line.

#pragma once

#include "gme/state.hpp"
#include "gme/witness.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace gme {

/// Malformed input document; `field()` is a JSON-pointer-like path to the
/// offending entry, e.g. "amplitudes[2].index".
class FormatError : public std::runtime_error {
public:
    FormatError(std::string field, const std::string& why)
        : std::runtime_error(field + ": " + why), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// { "dims": [...], "amplitudes": [ {"index": [...], "re": r, "im": i}, ... ] }
/// Only nonzero amplitudes are written.
nlohmann::json state_to_json(const PureState& psi);
/// Amplitudes are normalized on load.
PureState state_from_json(const nlohmann::json& doc);

/// { "lambda2": v, "psi": <state document> }
nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

/// Resolves "ghz:<n>", "w:<n>", "dicke:<n>:<k>", "bell", or otherwise a path
/// to a state document.
PureState load_state(const std::string& spec);

/// Record of one CLI invocation.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::map<std::string, double> results;

    nlohmann::json to_json() const;
};

/// Library version string.
const char* version();

}  // namespace gme
