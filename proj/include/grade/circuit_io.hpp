#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "grade/circuit.hpp"
#include "grade/distribution.hpp"
#include "grade/error.hpp"

namespace grade {

// Circuit text format:
//
//   qubits <n>
//   h <q> | x <q> | z <q>
//   mcx <c1,c2,...> <t> | mcz <c1,c2,...> <t>
//
// '#' starts a comment. Canonical output uses lowercase mnemonics, single
// spaces, ascending controls and a trailing newline on every line.

inline std::string render_circuit(const Circuit& circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
    for (const GateOp& op : circuit.ops()) {
        out += mnemonic(op.kind);
        out += ' ';
        if (is_controlled(op.kind)) {
            for (std::size_t i = 0; i < op.controls.size(); ++i) {
                if (i > 0) out += ',';
                out += std::to_string(op.controls[i]);
            }
            out += ' ';
        }
        out += std::to_string(op.target);
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

inline std::optional<int> parse_index(std::string_view s) {
    int v = 0;
    if (s.empty() || s.front() < '0' || s.front() > '9') return std::nullopt;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// Parses circuit text. Every failure is reported as ParseError with a line number.
inline Circuit parse_circuit(std::string_view text) {
    std::optional<Circuit> circuit;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto tokens = detail::split_ws(line);

        if (!circuit) {
            if (tokens.size() != 2 || tokens[0] != "qubits") {
                throw ParseError(line_no, "expected header 'qubits <n>'");
            }
            const auto n = detail::parse_index(tokens[1]);
            if (!n || *n < 1 || *n > kMaxQubits) {
                throw ParseError(line_no, "qubit count must be an integer in [1, " + std::to_string(kMaxQubits) + "]");
            }
            circuit.emplace(*n);
            continue;
        }

        const std::string_view name = tokens[0];
        GateOp op;
        if (name == "h" || name == "x" || name == "z") {
            if (tokens.size() != 2) throw ParseError(line_no, "'" + std::string(name) + "' takes one qubit");
            const auto q = detail::parse_index(tokens[1]);
            if (!q) throw ParseError(line_no, "invalid qubit index '" + std::string(tokens[1]) + "'");
            op = name == "h" ? GateOp::h(*q) : name == "x" ? GateOp::x(*q) : GateOp::z(*q);
        } else if (name == "mcx" || name == "mcz") {
            if (tokens.size() != 3) throw ParseError(line_no, "'" + std::string(name) + "' takes <controls> <target>");
            std::vector<int> controls;
            std::string_view list = tokens[1];
            while (true) {
                const auto comma = list.find(',');
                const auto item = list.substr(0, comma);
                const auto c = detail::parse_index(item);
                if (!c) throw ParseError(line_no, "invalid control index '" + std::string(item) + "'");
                controls.push_back(*c);
                if (comma == std::string_view::npos) break;
                list = list.substr(comma + 1);
            }
            const auto t = detail::parse_index(tokens[2]);
            if (!t) throw ParseError(line_no, "invalid target index '" + std::string(tokens[2]) + "'");
            op = name == "mcx" ? GateOp::mcx(std::move(controls), *t) : GateOp::mcz(std::move(controls), *t);
        } else {
            throw ParseError(line_no, "unknown gate '" + std::string(name) + "'");
        }

        try {
            circuit->add(std::move(op));
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!circuit) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'qubits <n>' header");
    return std::move(*circuit);
}

/// Free-form provenance attached to a counts file.
struct CountsMetadata {
    std::optional<std::string> backend;
    std::optional<std::string> timestamp;

    friend bool operator==(const CountsMetadata&, const CountsMetadata&) = default;
};

struct CountsFile {
    CountsMap counts;
    CountsMetadata metadata;
};

/// Canonical JSON counts document: sorted keys, two-space indent, trailing newline.
inline std::string write_counts(const CountsMap& counts, const CountsMetadata& metadata = {}) {
    nlohmann::json doc;
    doc["num_qubits"] = counts.num_qubits();
    doc["shots"] = counts.shots();
    doc["counts"] = nlohmann::json::object();
    for (const auto& [key, n] : counts.counts()) doc["counts"][key] = n;
    if (metadata.backend || metadata.timestamp) {
        auto& meta = doc["metadata"] = nlohmann::json::object();
        if (metadata.backend) meta["backend"] = *metadata.backend;
        if (metadata.timestamp) meta["timestamp"] = *metadata.timestamp;
    }
    return doc.dump(2) + "\n";
}

inline CountsFile read_counts(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("counts file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("counts file must be a JSON object");

    auto require_uint = [&doc](const char* field) -> std::uint64_t {
        if (!doc.contains(field) || !doc[field].is_number_unsigned()) {
            throw ValidationError(std::string("counts file field '") + field + "' must be a non-negative integer");
        }
        return doc[field].get<std::uint64_t>();
    };
    const std::uint64_t n = require_uint("num_qubits");
    const std::uint64_t shots = require_uint("shots");
    if (n < 1 || n > static_cast<std::uint64_t>(kMaxQubits)) {
        throw CapacityError("counts file num_qubits " + std::to_string(n) + " out of range");
    }
    if (!doc.contains("counts") || !doc["counts"].is_object()) {
        throw ValidationError("counts file field 'counts' must be an object");
    }
    std::map<std::string, std::uint64_t> entries;
    for (const auto& [key, value] : doc["counts"].items()) {
        if (!value.is_number_unsigned()) {
            throw ValidationError("count for '" + key + "' must be a non-negative integer");
        }
        entries.emplace(key, value.get<std::uint64_t>());
    }

    CountsMetadata meta;
    if (doc.contains("metadata")) {
        const auto& m = doc["metadata"];
        if (!m.is_object()) throw ValidationError("counts file field 'metadata' must be an object");
        if (m.contains("backend")) {
            if (!m["backend"].is_string()) throw ValidationError("metadata.backend must be a string");
            meta.backend = m["backend"].get<std::string>();
        }
        if (m.contains("timestamp")) {
            if (!m["timestamp"].is_string()) throw ValidationError("metadata.timestamp must be a string");
            meta.timestamp = m["timestamp"].get<std::string>();
        }
    }
    return {CountsMap(static_cast<int>(n), std::move(entries), shots), std::move(meta)};
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace grade
