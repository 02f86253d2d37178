#include "gme/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gme {

using nlohmann::json;

namespace {

const json& require_field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw FormatError(path.empty() ? "<root>" : path, "expected a JSON object");
    const auto it = obj.find(key);
    const std::string field = path.empty() ? key : path + "." + key;
    if (it == obj.end()) throw FormatError(field, "missing field");
    return *it;
}

std::size_t as_index(const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw FormatError(field, "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& field) {
    if (!v.is_number()) throw FormatError(field, "expected a number");
    return v.get<double>();
}

PureState state_at(const json& doc, const std::string& path) {
    const std::string prefix = path.empty() ? "" : path + ".";
    const json& jdims = require_field(doc, path, "dims");
    if (!jdims.is_array() || jdims.empty()) throw FormatError(prefix + "dims", "expected a nonempty array");
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < jdims.size(); ++i) {
        const std::string field = prefix + "dims[" + std::to_string(i) + "]";
        const std::size_t d = as_index(jdims[i], field);
        if (d == 0) throw FormatError(field, "local dimension must be positive");
        dims.push_back(d);
    }
    std::optional<PartyShape> shape;
    try {
        shape.emplace(std::move(dims));
    } catch (const std::exception& e) {
        throw FormatError(prefix + "dims", e.what());
    }

    const json& jamps = require_field(doc, path, "amplitudes");
    if (!jamps.is_array()) throw FormatError(prefix + "amplitudes", "expected an array");
    if (jamps.empty()) throw FormatError(prefix + "amplitudes", "empty entry list");
    std::vector<AmplitudeEntry> entries;
    for (std::size_t k = 0; k < jamps.size(); ++k) {
        const std::string entry = prefix + "amplitudes[" + std::to_string(k) + "]";
        const json& jidx = require_field(jamps[k], entry, "index");
        if (!jidx.is_array()) throw FormatError(entry + ".index", "expected an array");
        AmplitudeEntry e;
        for (std::size_t i = 0; i < jidx.size(); ++i) {
            e.index.push_back(as_index(jidx[i], entry + ".index[" + std::to_string(i) + "]"));
        }
        const double re = as_real(require_field(jamps[k], entry, "re"), entry + ".re");
        const auto im_it = jamps[k].find("im");
        const double im = im_it == jamps[k].end() ? 0.0 : as_real(*im_it, entry + ".im");
        e.value = Complex{re, im};
        try {
            shape->flat_index(e.index);
        } catch (const std::exception& ex) {
            throw FormatError(entry + ".index", ex.what());
        }
        entries.push_back(std::move(e));
    }
    try {
        return make_pure_state(*shape, entries);
    } catch (const std::exception& e) {
        throw FormatError(prefix + "amplitudes", e.what());
    }
}

std::size_t parse_count(std::string_view text, const std::string& spec) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw FormatError("state", "malformed builtin '" + spec + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

}  // namespace

json state_to_json(const PureState& psi) {
    json amps = json::array();
    const CVector& a = psi.amplitudes();
    for (Eigen::Index f = 0; f < a.size(); ++f) {
        if (a[f] == Complex{}) continue;
        amps.push_back({{"index", psi.shape().multi_index(static_cast<std::size_t>(f))},
                        {"re", a[f].real()},
                        {"im", a[f].imag()}});
    }
    std::vector<std::size_t> dims(psi.shape().dims().begin(), psi.shape().dims().end());
    return {{"dims", dims}, {"amplitudes", amps}};
}

PureState state_from_json(const json& doc) { return state_at(doc, ""); }

json witness_to_json(const Witness& w) {
    if (!w.is_structured()) throw std::invalid_argument("witness_to_json: only structured witnesses serialize");
    const auto& s = w.as_structured();
    return {{"lambda2", s.lambda2}, {"psi", state_to_json(s.psi)}};
}

Witness witness_from_json(const json& doc) {
    const double lambda2 = as_real(require_field(doc, "", "lambda2"), "lambda2");
    PureState psi = state_at(require_field(doc, "", "psi"), "psi");
    try {
        return Witness::structured(std::move(psi), lambda2);
    } catch (const std::exception& e) {
        throw FormatError("lambda2", e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path, e.what());
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

PureState load_state(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string_view head = parts.front();
    try {
        if (head == "bell" && parts.size() == 1) return bell();
        if (head == "ghz" && parts.size() == 2) return ghz(parse_count(parts[1], spec));
        if (head == "w" && parts.size() == 2) return w_state(parse_count(parts[1], spec));
        if (head == "dicke" && parts.size() == 3) {
            return dicke(parse_count(parts[1], spec), parse_count(parts[2], spec));
        }
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw FormatError("state", "builtin '" + spec + "': " + e.what());
    }
    if (head == "bell" || head == "ghz" || head == "w" || head == "dicke") {
        throw FormatError("state", "malformed builtin '" + spec + "'");
    }
    return state_from_json(read_json_file(spec));
}

json RunManifest::to_json() const {
    return {{"command", command},
            {"parameters", parameters},
            {"seed", seed},
            {"tool_version", tool_version},
            {"results", results}};
}

const char* version() { return GME_VERSION; }

}  // namespace gme
