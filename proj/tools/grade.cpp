// grade: command-line front end for the Grover reliability benchmark.
//
// Exit codes: 0 success, 2 validation error, 3 I/O error.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grade/grade.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct SearchFlags {
    std::optional<std::uint64_t> space_size;
    std::optional<int> num_targets;
    std::optional<std::string> target_list;
    std::optional<int> iterations;
    std::uint64_t seed = 0;
    std::string backend = "noiseless";
    std::optional<std::string> config;

    void attach(CLI::App& cmd) {
        cmd.add_option("--space-size", space_size, "Search-space size N (power of two); needs --num-targets");
        cmd.add_option("--num-targets", num_targets, "Number of targets M");
        cmd.add_option("--target-list", target_list, "Comma-separated target integers, e.g. 3,7");
        cmd.add_option("--iterations", iterations, "Grover iteration override (default: optimal)");
        cmd.add_option("--seed", seed, "Master random seed");
        cmd.add_option("--backend", backend, "Noise profile name");
        cmd.add_option("--config", config, "Config file with extra noise profiles");
    }

    grade::SearchMode mode() const {
        if (target_list) {
            if (space_size || num_targets) {
                throw grade::ValidationError("--target-list cannot be combined with --space-size/--num-targets");
            }
            return grade::ByTargetList{parse_int_list(*target_list)};
        }
        if (space_size) {
            if (!num_targets) throw grade::ValidationError("--space-size requires --num-targets");
            if (*num_targets < 1) throw grade::ValidationError("--num-targets must be at least 1");
            return grade::ExplicitSpace{*space_size, static_cast<std::uint64_t>(*num_targets)};
        }
        if (num_targets) return grade::ByNumTargets{*num_targets};
        throw grade::ValidationError("specify --num-targets, --space-size with --num-targets, or --target-list");
    }

    static std::vector<std::uint64_t> parse_int_list(const std::string& text) {
        std::vector<std::uint64_t> out;
        std::size_t pos = 0;
        while (true) {
            const auto comma = text.find(',', pos);
            const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
                throw grade::ValidationError("invalid target '" + item + "' (expected a non-negative integer)");
            }
            out.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    }
};

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        out.push_back(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

grade::ProfileRegistry load_registry(const std::optional<std::string>& config_path) {
    if (!config_path) return {};
    const auto cfg = grade::parse_config(grade::read_text_file(*config_path));
    return grade::registry_with(cfg.profiles);
}

void emit(const std::optional<std::string>& path, const std::string& text) {
    if (path) {
        grade::write_text_file(*path, text);
    } else {
        std::cout << text;
    }
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw grade::IoError("cannot create directory '" + dir + "': " + ec.message());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover-based reliability benchmark for quantum backends"};
    app.set_version_flag("--version", std::string(grade::kToolkitVersion));
    app.require_subcommand(1);

    // grade run
    auto* run = app.add_subcommand("run", "Run one benchmark and print its score report");
    SearchFlags run_flags;
    run_flags.attach(*run);
    double run_lambda = 1.0;
    double run_mu = 1.0;
    std::uint64_t run_shots = 1000;
    bool run_exact = false;
    std::optional<std::string> run_out;
    run->add_option("--lambda", run_lambda, "Uniformity penalty weight");
    run->add_option("--mu", run_mu, "Non-target penalty weight");
    run->add_option("--shots", run_shots, "Measurement shots");
    run->add_flag("--exact", run_exact, "Score the exact output distribution instead of sampled shots");
    run->add_option("--out", run_out, "Write the JSON report here instead of stdout");

    // grade sweep
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
    std::string sweep_config;
    std::string sweep_out;
    sweep->add_option("--config", sweep_config, "Config file with a 'sweep' section")->required();
    sweep->add_option("--out", sweep_out, "Output directory")->required();

    // grade score
    auto* score = app.add_subcommand("score", "Score an externally produced counts file");
    std::string score_counts;
    std::string score_targets;
    double score_lambda = 1.0;
    double score_mu = 1.0;
    std::optional<std::string> score_out;
    score->add_option("--counts", score_counts, "Counts file (JSON)")->required();
    score->add_option("--targets", score_targets, "Comma-separated target bitstrings, e.g. 101,010")->required();
    score->add_option("--lambda", score_lambda, "Uniformity penalty weight");
    score->add_option("--mu", score_mu, "Non-target penalty weight");
    score->add_option("--out", score_out, "Write the JSON report here instead of stdout");

    // grade export
    auto* exp = app.add_subcommand("export", "Write the Grover circuit for a search space as circuit text");
    SearchFlags exp_flags;
    exp_flags.attach(*exp);
    std::string exp_out;
    exp->add_option("--out", exp_out, "Circuit file to write")->required();

    // grade profiles list
    auto* profiles = app.add_subcommand("profiles", "Inspect noise profiles");
    profiles->require_subcommand(1);
    auto* profiles_list = profiles->add_subcommand("list", "List known noise profiles");
    std::optional<std::string> profiles_config;
    profiles_list->add_option("--config", profiles_config, "Config file with extra noise profiles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*run) {
            grade::BenchmarkSpec spec;
            spec.backend = run_flags.backend;
            spec.search = run_flags.mode();
            spec.iterations = run_flags.iterations;
            spec.params = {run_lambda, run_mu};
            spec.shots = run_shots;
            spec.seed = run_flags.seed;
            spec.exact = run_exact;
            const auto report = grade::run_single(spec, load_registry(run_flags.config));
            emit(run_out, grade::report_to_json(report).dump(2) + "\n");
        } else if (*sweep) {
            const auto cfg = grade::parse_config(grade::read_text_file(sweep_config));
            if (!cfg.sweep) throw grade::ValidationError("config has no 'sweep' section");
            const auto registry = grade::registry_with(cfg.profiles);
            const auto result = grade::run_sweep(*cfg.sweep, registry);

            ensure_directory(sweep_out);
            const std::filesystem::path dir(sweep_out);
            nlohmann::json reports = nlohmann::json::array();
            for (const auto& r : result.reports) reports.push_back(grade::report_to_json(r));
            grade::write_text_file((dir / "reports.json").string(), reports.dump(2) + "\n");
            grade::write_text_file((dir / "aggregate.csv").string(), grade::render_aggregate_csv(result.cells));

            std::size_t feasible = 0;
            for (const auto& c : result.cells) feasible += c.skipped ? 0 : 1;
            std::cout << "cells: " << result.cells.size() << " (" << feasible << " feasible), reports: "
                      << result.reports.size() << "\n";

            if (cfg.heatmap) {
                const auto maps = grade::build_heatmaps(result.cells, grade::parse_axis(cfg.heatmap->first),
                                                        grade::parse_axis(cfg.heatmap->second));
                for (std::size_t i = 0; i < maps.size(); ++i) {
                    const std::string stem = "heatmap_" + std::to_string(i);
                    grade::write_text_file((dir / (stem + ".csv")).string(), grade::render_heatmap_csv(maps[i]));
                    grade::write_text_file((dir / (stem + ".svg")).string(), grade::render_heatmap_svg(maps[i]));
                    std::cout << stem << ": " << maps[i].title << "\n";
                }
            }
        } else if (*score) {
            const auto file = grade::read_counts(grade::read_text_file(score_counts));
            const auto report = grade::score_external(file, split_commas(score_targets), {score_lambda, score_mu});
            emit(score_out, grade::report_to_json(report).dump(2) + "\n");
        } else if (*exp) {
            grade::BenchmarkSpec spec;
            spec.search = exp_flags.mode();
            const auto registry = load_registry(exp_flags.config);
            registry.find(exp_flags.backend);
            const auto search = grade::resolve_search(spec.search, grade::target_seed(exp_flags.seed));
            const auto plan = grade::build_grover_circuit(search, exp_flags.iterations);
            grade::write_text_file(exp_out, grade::render_circuit(plan.full_circuit));
            std::cout << "qubits: " << search.num_qubits() << "\niterations: " << plan.iterations << "\ntargets:";
            for (const auto& t : search.target_bitstrings()) std::cout << " " << t;
            std::cout << "\n";
        } else if (*profiles_list) {
            const auto registry = load_registry(profiles_config);
            std::printf("%-16s %10s %10s %10s  %s\n", "name", "p1", "p2", "p_readout", "mcx_cost");
            for (const auto& p : registry.all()) {
                std::printf("%-16s %10g %10g %10g  %d*c%+d\n", p.name.c_str(), p.p1, p.p2, p.p_readout,
                            p.mcx_cost.slope, p.mcx_cost.offset);
            }
        }
    } catch (const grade::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const grade::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
