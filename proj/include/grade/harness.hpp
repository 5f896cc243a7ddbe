#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "grade/circuit_io.hpp"
#include "grade/grover.hpp"
#include "grade/noise.hpp"
#include "grade/report.hpp"
#include "grade/scoring.hpp"
#include "grade/statevector.hpp"

namespace grade {

inline SearchSpec resolve_search(const SearchMode& mode, std::uint64_t seed) {
    return std::visit(
        [seed](const auto& m) -> SearchSpec {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ByNumTargets>) {
                return generate_space_by_num_targets(m.num_targets, seed);
            } else if constexpr (std::is_same_v<T, ByTargetList>) {
                return generate_space_for_target_list(m.targets);
            } else {
                return generate_space_explicit(m.space_size, m.num_targets, seed);
            }
        },
        mode);
}

/// Streams derived from a benchmark seed: one for target selection, one for shots.
inline std::uint64_t target_seed(std::uint64_t seed) { return derive_seed(seed, {0x7461726765747300ULL}); }
inline std::uint64_t shot_seed(std::uint64_t seed) { return derive_seed(seed, {0x73686f7473000000ULL}); }

namespace detail {

// Output of one execution, before any scoring weights are applied.
struct Execution {
    SearchSpec search;
    int iterations;
    CircuitStats stats;
    std::optional<CountsMap> counts;
    ProbabilityDistribution distribution;
};

inline Execution execute(const SearchMode& mode, std::optional<int> iterations, const NoiseProfile& profile,
                         std::uint64_t shots, std::uint64_t seed, bool exact) {
    if (shots == 0) throw ValidationError("shots must be at least 1");
    SearchSpec search = resolve_search(mode, target_seed(seed));
    GroverPlan plan = build_grover_circuit(search, iterations);
    const CircuitStats stats = circuit_stats(plan.full_circuit);

    if (exact) {
        if (profile.has_gate_noise()) {
            throw ValidationError("exact mode needs a profile without gate noise ('" + profile.name +
                                  "' has p1/p2 > 0); use shot mode");
        }
        auto dist = apply_readout_channel(probabilities(simulate(plan.full_circuit)), profile.p_readout);
        return {std::move(search), plan.iterations, stats, std::nullopt, std::move(dist)};
    }
    CountsMap counts = run_noisy(plan.full_circuit, profile, shots, shot_seed(seed));
    auto dist = counts_to_distribution(counts);
    return {std::move(search), plan.iterations, stats, std::move(counts), std::move(dist)};
}

inline ScoreReport make_run_report(const BenchmarkSpec& spec, const Execution& ex, const ScoreParams& params) {
    ScoreReport r;
    r.kind = ScoreReport::Kind::Run;
    r.spec = spec;
    r.spec->params = params;
    r.backend = spec.backend;
    r.params = params;
    r.num_qubits = ex.search.num_qubits();
    r.targets = ex.search.target_bitstrings();
    r.origin = std::string(to_string(ex.search.origin()));
    r.iterations = ex.iterations;
    r.counts = ex.counts;
    r.circuit = ex.stats;
    r.distribution = ex.distribution;
    r.breakdown = compute_score(ex.distribution, r.targets, params);
    return r;
}

inline double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

/// Full pipeline: resolve the search space, build the Grover circuit, execute
/// it on the named backend, and score the resulting distribution.
inline ScoreReport run_single(const BenchmarkSpec& spec, const ProfileRegistry& registry = {}) {
    const auto start = std::chrono::steady_clock::now();
    spec.params.validate();
    const NoiseProfile& profile = registry.find(spec.backend);
    const auto ex = detail::execute(spec.search, spec.iterations, profile, spec.shots, spec.seed, spec.exact);
    ScoreReport r = detail::make_run_report(spec, ex, spec.params);
    r.elapsed_ms = detail::elapsed_since(start);
    return r;
}

/// Scores counts produced elsewhere (for example on real hardware).
inline ScoreReport score_external(const CountsFile& file, std::span<const std::string> targets,
                                  const ScoreParams& params) {
    const auto start = std::chrono::steady_clock::now();
    for (const std::string& t : targets) {
        if (!is_bitstring(t, file.counts.num_qubits())) {
            throw ValidationError("target '" + t + "' does not match the counts file width of " +
                                  std::to_string(file.counts.num_qubits()) + " qubits");
        }
    }
    ScoreReport r;
    r.kind = ScoreReport::Kind::External;
    r.backend = file.metadata.backend.value_or("external");
    r.params = params;
    r.num_qubits = file.counts.num_qubits();
    r.targets.assign(targets.begin(), targets.end());
    r.origin = std::string(to_string(SearchOrigin::Explicit));
    r.counts = file.counts;
    r.source = file.metadata;
    r.distribution = counts_to_distribution(file.counts);
    r.breakdown = compute_score(r.distribution, r.targets, params);
    r.elapsed_ms = detail::elapsed_since(start);
    return r;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSpec {
    std::vector<std::uint64_t> space_sizes{8};
    std::vector<std::uint64_t> num_targets{1};
    std::vector<double> lambdas{1.0};
    std::vector<double> mus{1.0};
    std::vector<std::string> profiles{"noiseless"};
    std::uint64_t shots = 1000;
    std::uint64_t base_seed = 0;
    int repetitions = 1;
    bool exact = false;
    std::optional<int> iterations;

    void validate() const {
        auto nonempty = [](bool empty, const char* what) {
            if (empty) throw ValidationError(std::string("sweep grid '") + what + "' is empty");
        };
        nonempty(space_sizes.empty(), "space_sizes");
        nonempty(num_targets.empty(), "num_targets");
        nonempty(lambdas.empty(), "lambdas");
        nonempty(mus.empty(), "mus");
        nonempty(profiles.empty(), "profiles");
        if (shots == 0) throw ValidationError("sweep shots must be at least 1");
        if (repetitions < 1) throw ValidationError("sweep repetitions must be at least 1");
        for (double l : lambdas) ScoreParams{l, 0.0}.validate();
        for (double m : mus) ScoreParams{0.0, m}.validate();
    }
};

/// Aggregate over the repetitions of one grid cell.
struct CellAggregate {
    std::string profile;
    std::uint64_t space_size = 0;
    std::uint64_t num_targets = 0;
    double lambda = 0.0;
    double mu = 0.0;
    int repetitions = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::optional<std::string> skipped;  // reason, when the cell could not run
};

struct SweepResult {
    std::vector<ScoreReport> reports;  // grid order, repetitions innermost
    std::vector<CellAggregate> cells;  // grid order
};

/// Seed for repetition `rep` of the (profile, N, M) execution. Weights do not
/// enter, so cells that differ only in lambda/mu score the same samples.
inline std::uint64_t cell_seed(std::uint64_t base, const std::string& profile, std::uint64_t space_size,
                               std::uint64_t num_targets, int rep) {
    return derive_seed(base, {fnv1a64(profile), space_size, num_targets, static_cast<std::uint64_t>(rep)});
}

/// Runs every cell of the grid in canonical order: profile, N, M, lambda, mu.
/// Cells with M >= N are recorded as skipped and the sweep continues.
inline SweepResult run_sweep(const SweepSpec& sweep, const ProfileRegistry& registry = {}) {
    sweep.validate();
    for (const auto& name : sweep.profiles) registry.find(name);

    SweepResult result;
    for (const std::string& name : sweep.profiles) {
        const NoiseProfile& profile = registry.find(name);
        for (std::uint64_t n_size : sweep.space_sizes) {
            for (std::uint64_t m : sweep.num_targets) {
                std::optional<std::string> skip;
                std::vector<detail::Execution> runs;
                std::vector<double> elapsed;
                if (m >= n_size) {
                    skip = "infeasible: M >= N";
                } else {
                    for (int rep = 0; rep < sweep.repetitions; ++rep) {
                        const auto start = std::chrono::steady_clock::now();
                        runs.push_back(detail::execute(ExplicitSpace{n_size, m}, sweep.iterations, profile,
                                                       sweep.shots, cell_seed(sweep.base_seed, name, n_size, m, rep),
                                                       sweep.exact));
                        elapsed.push_back(detail::elapsed_since(start));
                    }
                }
                for (double lambda : sweep.lambdas) {
                    for (double mu : sweep.mus) {
                        CellAggregate cell{name, n_size, m, lambda, mu, 0, 0.0, 0.0, 0.0, skip};
                        if (!skip) {
                            cell.min = std::numeric_limits<double>::infinity();
                            cell.max = -std::numeric_limits<double>::infinity();
                            double sum = 0.0;
                            for (int rep = 0; rep < sweep.repetitions; ++rep) {
                                BenchmarkSpec spec{name, ExplicitSpace{n_size, m}, sweep.iterations, {lambda, mu},
                                                   sweep.shots, cell_seed(sweep.base_seed, name, n_size, m, rep),
                                                   sweep.exact};
                                ScoreReport r = detail::make_run_report(spec, runs[static_cast<std::size_t>(rep)],
                                                                        {lambda, mu});
                                r.elapsed_ms = elapsed[static_cast<std::size_t>(rep)];
                                const double s = r.breakdown.final;
                                sum += s;
                                cell.min = std::min(cell.min, s);
                                cell.max = std::max(cell.max, s);
                                result.reports.push_back(std::move(r));
                            }
                            cell.repetitions = sweep.repetitions;
                            cell.mean = sum / sweep.repetitions;
                        }
                        result.cells.push_back(std::move(cell));
                    }
                }
            }
        }
    }
    return result;
}

namespace detail {

inline std::string format_double(double v, const char* fmt = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

inline std::string format_weight(double v) { return format_double(v, "%g"); }

}  // namespace detail

/// One row per cell: profile,space_size,num_targets,lambda,mu,repetitions,mean,min,max,status.
inline std::string render_aggregate_csv(std::span<const CellAggregate> cells) {
    std::string out = "profile,space_size,num_targets,lambda,mu,repetitions,mean,min,max,status\n";
    for (const CellAggregate& c : cells) {
        out += c.profile + "," + std::to_string(c.space_size) + "," + std::to_string(c.num_targets) + "," +
               detail::format_weight(c.lambda) + "," + detail::format_weight(c.mu) + ",";
        if (c.skipped) {
            out += "0,,,,\"" + *c.skipped + "\"\n";
        } else {
            out += std::to_string(c.repetitions) + "," + detail::format_double(c.mean) + "," +
                   detail::format_double(c.min) + "," + detail::format_double(c.max) + ",ok\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Config files

struct BenchConfig {
    std::optional<SweepSpec> sweep;
    std::vector<NoiseProfile> profiles;
    std::optional<std::pair<std::string, std::string>> heatmap;  // (rows, cols) axis names
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
            throw ValidationError("unknown key '" + key + "' in " + where);
        }
    }
}

template <class T>
T get_field(const nlohmann::json& obj, const char* key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError("invalid or missing '" + std::string(key) + "' in " + where);
    }
}

template <class T>
void read_optional(const nlohmann::json& obj, const char* key, T& out, const std::string& where) {
    if (obj.contains(key)) out = get_field<T>(obj, key, where);
}

}  // namespace detail

inline NoiseProfile parse_profile(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("profile entries must be objects");
    detail::reject_unknown_keys(j, {"name", "p1", "p2", "p_readout", "mcx_cost"}, "profile");
    NoiseProfile p;
    p.name = detail::get_field<std::string>(j, "name", "profile");
    const std::string where = "profile '" + p.name + "'";
    detail::read_optional(j, "p1", p.p1, where);
    detail::read_optional(j, "p2", p.p2, where);
    detail::read_optional(j, "p_readout", p.p_readout, where);
    if (j.contains("mcx_cost")) {
        const auto& c = j["mcx_cost"];
        if (!c.is_object()) throw ValidationError("mcx_cost must be an object in " + where);
        detail::reject_unknown_keys(c, {"slope", "offset"}, where + " mcx_cost");
        detail::read_optional(c, "slope", p.mcx_cost.slope, where);
        detail::read_optional(c, "offset", p.mcx_cost.offset, where);
    }
    p.validate();
    return p;
}

/// Parses a JSON config with optional `profiles` (array) and `sweep` (object) sections.
inline BenchConfig parse_config(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");
    detail::reject_unknown_keys(doc, {"profiles", "sweep"}, "config");

    BenchConfig cfg;
    if (doc.contains("profiles")) {
        if (!doc["profiles"].is_array()) throw ValidationError("'profiles' must be an array");
        for (const auto& p : doc["profiles"]) cfg.profiles.push_back(parse_profile(p));
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        if (!s.is_object()) throw ValidationError("'sweep' must be an object");
        detail::reject_unknown_keys(s,
                                    {"space_sizes", "num_targets", "lambdas", "mus", "profiles", "shots", "seed",
                                     "repetitions", "exact", "iterations", "heatmap"},
                                    "sweep");
        SweepSpec sw;
        const std::string where = "sweep";
        detail::read_optional(s, "space_sizes", sw.space_sizes, where);
        detail::read_optional(s, "num_targets", sw.num_targets, where);
        detail::read_optional(s, "lambdas", sw.lambdas, where);
        detail::read_optional(s, "mus", sw.mus, where);
        detail::read_optional(s, "profiles", sw.profiles, where);
        detail::read_optional(s, "shots", sw.shots, where);
        detail::read_optional(s, "seed", sw.base_seed, where);
        detail::read_optional(s, "repetitions", sw.repetitions, where);
        detail::read_optional(s, "exact", sw.exact, where);
        if (s.contains("iterations") && !s["iterations"].is_null()) {
            sw.iterations = detail::get_field<int>(s, "iterations", where);
        }
        if (s.contains("heatmap")) {
            const auto& h = s["heatmap"];
            if (!h.is_object()) throw ValidationError("sweep.heatmap must be an object");
            detail::reject_unknown_keys(h, {"rows", "cols"}, "sweep.heatmap");
            cfg.heatmap.emplace(detail::get_field<std::string>(h, "rows", "sweep.heatmap"),
                                detail::get_field<std::string>(h, "cols", "sweep.heatmap"));
        }
        sw.validate();
        cfg.sweep = std::move(sw);
    }
    return cfg;
}

/// Presets plus the profiles declared in a config.
inline ProfileRegistry registry_with(std::span<const NoiseProfile> extra) {
    ProfileRegistry reg;
    for (const auto& p : extra) reg.add(p);
    return reg;
}

}  // namespace grade
