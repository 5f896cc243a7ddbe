#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "grade/circuit.hpp"
#include "grade/circuit_io.hpp"
#include "grade/distribution.hpp"
#include "grade/grover.hpp"
#include "grade/scoring.hpp"

namespace grade {

inline constexpr std::string_view kToolkitName = "grade";
inline constexpr std::string_view kToolkitVersion = "0.1.0";

/// Search-space modes a benchmark can request.
struct ByNumTargets {
    int num_targets = 1;
};
struct ByTargetList {
    std::vector<std::uint64_t> targets;
};
struct ExplicitSpace {
    std::uint64_t space_size = 0;
    std::uint64_t num_targets = 0;
};
using SearchMode = std::variant<ByNumTargets, ByTargetList, ExplicitSpace>;

struct BenchmarkSpec {
    std::string backend = "noiseless";
    SearchMode search = ByNumTargets{};
    std::optional<int> iterations;
    ScoreParams params{};
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    bool exact = false;  // score the exact output distribution instead of sampled counts
};

struct ScoreReport {
    enum class Kind { Run, External };

    Kind kind = Kind::Run;
    std::optional<BenchmarkSpec> spec;  // set for Kind::Run
    std::string backend;
    ScoreParams params{};
    int num_qubits = 0;
    std::vector<std::string> targets;
    std::string origin;
    std::optional<int> iterations;
    std::optional<CountsMap> counts;
    std::optional<CircuitStats> circuit;
    std::optional<CountsMetadata> source;  // metadata of an external counts file
    ProbabilityDistribution distribution;
    ScoreBreakdown breakdown;
    double elapsed_ms = 0.0;
};

namespace detail {

inline nlohmann::json search_mode_json(const SearchMode& mode) {
    nlohmann::json j;
    std::visit(
        [&j](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ByNumTargets>) {
                j["mode"] = "by-count";
                j["num_targets"] = m.num_targets;
            } else if constexpr (std::is_same_v<T, ByTargetList>) {
                j["mode"] = "by-list";
                j["target_list"] = m.targets;
            } else {
                j["mode"] = "explicit";
                j["space_size"] = m.space_size;
                j["num_targets"] = m.num_targets;
            }
        },
        mode);
    return j;
}

}  // namespace detail

/// Machine-readable report. Doubles are written with round-trip precision, so
/// the breakdown can be recomputed bit-for-bit from the embedded distribution.
inline nlohmann::json report_to_json(const ScoreReport& r) {
    nlohmann::json j;
    j["toolkit"] = {{"name", kToolkitName}, {"version", kToolkitVersion}};
    j["kind"] = r.kind == ScoreReport::Kind::Run ? "run" : "external";
    if (r.spec) {
        const BenchmarkSpec& s = *r.spec;
        j["spec"] = {
            {"backend", s.backend},
            {"search", detail::search_mode_json(s.search)},
            {"iterations", s.iterations ? nlohmann::json(*s.iterations) : nlohmann::json(nullptr)},
            {"lambda", s.params.lambda},
            {"mu", s.params.mu},
            {"shots", s.shots},
            {"seed", s.seed},
            {"exact", s.exact},
        };
    }
    j["backend"] = r.backend;
    j["search"] = {
        {"num_qubits", r.num_qubits},
        {"space_size", std::uint64_t{1} << r.num_qubits},
        {"targets", r.targets},
        {"origin", r.origin},
    };
    j["iterations"] = r.iterations ? nlohmann::json(*r.iterations) : nlohmann::json(nullptr);
    if (r.circuit) {
        nlohmann::json gates;
        for (GateKind k : kAllGateKinds) gates[std::string(mnemonic(k))] = r.circuit->count(k);
        j["circuit"] = {{"depth", r.circuit->depth}, {"total_gates", r.circuit->total}, {"gates", gates}};
    }
    if (r.counts) {
        j["shots"] = r.counts->shots();
        j["counts"] = r.counts->counts();
    } else {
        j["shots"] = nullptr;
        j["counts"] = nullptr;
    }
    if (r.source) {
        nlohmann::json src = nlohmann::json::object();
        if (r.source->backend) src["backend"] = *r.source->backend;
        if (r.source->timestamp) src["timestamp"] = *r.source->timestamp;
        j["source"] = src;
    }
    j["distribution"] = r.distribution.nonzero();
    j["score"] = {
        {"lambda", r.params.lambda},
        {"mu", r.params.mu},
        {"p_target", r.breakdown.p_target},
        {"sigma_target", r.breakdown.sigma_target},
        {"p_nontarget", r.breakdown.p_nontarget},
        {"raw", r.breakdown.raw},
        {"final", r.breakdown.final},
    };
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

/// Report JSON without run-time dependent fields, for reproducibility checks.
inline nlohmann::json canonical_report_json(nlohmann::json report) {
    report.erase("elapsed_ms");
    return report;
}

/// Recomputes the score breakdown from a report's embedded distribution and targets.
inline ScoreBreakdown recompute_breakdown(const nlohmann::json& report) {
    try {
        const int n = report.at("search").at("num_qubits").get<int>();
        const auto entries = report.at("distribution").get<std::map<std::string, double>>();
        const auto targets = report.at("search").at("targets").get<std::vector<std::string>>();
        ScoreParams params{report.at("score").at("lambda").get<double>(), report.at("score").at("mu").get<double>()};
        return compute_score(ProbabilityDistribution::from_map(n, entries), targets, params);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

}  // namespace grade
