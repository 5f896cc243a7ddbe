#include <cmath>

#include <gtest/gtest.h>

#include "grade/grade.hpp"
#include "oracles.hpp"

using namespace grade;

namespace {

BenchmarkSpec explicit_spec(std::uint64_t n, std::uint64_t m, double lambda, double mu, bool exact,
                            std::uint64_t shots = 1000, std::uint64_t seed = 7) {
    BenchmarkSpec s;
    s.search = ExplicitSpace{n, m};
    s.params = {lambda, mu};
    s.exact = exact;
    s.shots = shots;
    s.seed = seed;
    return s;
}

}  // namespace

TEST(RunSingle, SampledNoiselessNearClosedForm) {
    const auto r = run_single(explicit_spec(8, 1, 0, 0, false, 100000));
    EXPECT_NEAR(r.breakdown.final, 0.9453, 0.01);
    EXPECT_EQ(r.counts->shots(), 100000u);
}

TEST(RunSingle, ExactModeValues) {
    EXPECT_NEAR(run_single(explicit_spec(8, 1, 1, 1, true)).breakdown.final, 0.8907, 1e-3);
    const auto four = run_single(explicit_spec(8, 4, 1, 1, true));
    EXPECT_NEAR(four.breakdown.p_target, 0.5, 1e-12);
    EXPECT_NEAR(four.breakdown.sigma_target, 0.0, 1e-12);
    EXPECT_NEAR(four.breakdown.final, 0.0, 1e-9);
}

TEST(RunSingle, ExactModeEqualsDirectScoring) {
    for (std::uint64_t n : {4u, 16u, 32u}) {
        const auto spec = explicit_spec(n, 2, 1, 0.5, true, 1000, n);
        const auto r = run_single(spec);
        const auto search = resolve_search(spec.search, target_seed(spec.seed));
        const auto plan = build_grover_circuit(search);
        const auto direct = compute_score(probabilities(simulate(plan.full_circuit)), search.target_bitstrings(),
                                          spec.params);
        EXPECT_NEAR(r.breakdown.final, direct.final, 1e-12);
        EXPECT_FALSE(r.counts.has_value());
    }
}

TEST(RunSingle, ExactModeRejectsGateNoise) {
    auto spec = explicit_spec(8, 1, 1, 1, true);
    spec.backend = "nisq-medium";
    EXPECT_THROW(run_single(spec), ValidationError);
}

TEST(RunSingle, ModesAndErrors) {
    BenchmarkSpec by_list;
    by_list.search = ByTargetList{{3, 7}};
    const auto r = run_single(by_list);
    EXPECT_EQ(r.targets, (std::vector<std::string>{"011", "111"}));
    EXPECT_EQ(r.origin, "by-list");

    BenchmarkSpec by_count;
    by_count.search = ByNumTargets{2};
    EXPECT_EQ(run_single(by_count).num_qubits, 2);

    EXPECT_THROW(run_single(explicit_spec(8, 8, 1, 1, false)), ValidationError);
    auto unknown = explicit_spec(8, 1, 1, 1, false);
    unknown.backend = "nope";
    EXPECT_THROW(run_single(unknown), NotFoundError);
}

TEST(RunSingle, ReproducibleAndSelfVerifying) {
    auto spec = explicit_spec(16, 2, 1, 1, false);
    spec.backend = "nisq-high";
    const auto a = report_to_json(run_single(spec));
    const auto b = report_to_json(run_single(spec));
    EXPECT_EQ(canonical_report_json(a).dump(), canonical_report_json(b).dump());
    const auto again = recompute_breakdown(nlohmann::json::parse(a.dump()));
    EXPECT_NEAR(again.final, a["score"]["final"].get<double>(), 1e-12);
}

TEST(ScoreExternal, HandComputedReport) {
    const CountsFile file{CountsMap(3, {{"101", 940}, {"000", 20}, {"010", 20}, {"111", 20}}, 1000), {}};
    const std::vector<std::string> t{"101"};
    const auto r = score_external(file, t, {1, 1});
    EXPECT_NEAR(r.breakdown.p_target, 0.94, 1e-12);
    EXPECT_NEAR(r.breakdown.p_nontarget, 0.06, 1e-12);
    EXPECT_NEAR(r.breakdown.final, 0.88, 1e-12);
    const auto r2 = score_external(file, t, {1, 1});
    EXPECT_EQ(canonical_report_json(report_to_json(r)).dump(), canonical_report_json(report_to_json(r2)).dump());

    const std::vector<std::string> bad{"10"};
    EXPECT_THROW(score_external(file, bad, {1, 1}), ValidationError);
}

TEST(ScoreExternal, UniformCountsScoreZero) {
    std::map<std::string, std::uint64_t> c;
    for (int i = 0; i < 8; ++i) c[to_bitstring(static_cast<std::uint64_t>(i), 3)] = 125;
    const std::vector<std::string> t{"110"};
    EXPECT_EQ(score_external({CountsMap(3, c, 1000), {}}, t, {0, 1}).breakdown.final, 0.0);
}

TEST(RunSweep, NoiselessExactGrid) {
    SweepSpec s;
    s.space_sizes = {4, 8, 16, 32, 64};
    s.num_targets = {1};
    s.lambdas = {0};
    s.mus = {0};
    s.exact = true;
    const auto res = run_sweep(s);
    ASSERT_EQ(res.cells.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto n = static_cast<double>(s.space_sizes[i]);
        EXPECT_NEAR(res.cells[i].mean, oracle::grover_closed_form(n, 1.0, optimal_iterations(s.space_sizes[i], 1)), 1e-9);
        EXPECT_GE(res.cells[i].mean, 0.94);
    }
}

TEST(RunSweep, SkipsInfeasibleCellsAndCountsReports) {
    SweepSpec s;
    s.space_sizes = {4, 8};
    s.num_targets = {1, 2, 4, 8};
    s.lambdas = {0, 1};
    s.mus = {1};
    s.repetitions = 3;
    s.shots = 200;
    const auto res = run_sweep(s);
    std::size_t feasible = 0;
    for (const auto& c : res.cells) {
        if (c.skipped) {
            EXPECT_GE(c.num_targets, c.space_size);
        } else {
            ++feasible;
        }
    }
    EXPECT_EQ(res.cells.size(), 2u * 4u * 2u);
    EXPECT_EQ(feasible, 10u);
    EXPECT_EQ(res.reports.size(), feasible * 3);
    const auto csv = render_aggregate_csv(res.cells);
    EXPECT_NE(csv.find("infeasible"), std::string::npos);
}

TEST(RunSweep, FigureThreeAnalog) {
    SweepSpec s;
    s.space_sizes = {8};
    s.num_targets = {1, 2, 3, 4};
    s.exact = true;
    const auto res = run_sweep(s);
    ASSERT_EQ(res.reports.size(), 4u);
    EXPECT_NEAR(res.cells[0].mean, 0.8907, 1e-3);
    EXPECT_NEAR(res.cells[1].mean, 1.0, 1e-9);
    EXPECT_NEAR(res.cells[3].mean, 0.0, 1e-9);
}

TEST(Heatmap, MuRowIsPointwiseBelow) {
    SweepSpec s;
    s.space_sizes = {8, 16};
    s.mus = {0, 1};
    s.lambdas = {1};
    s.exact = true;
    const auto res = run_sweep(s);
    const auto h = build_heatmap(res.cells, Axis::Mu, Axis::SpaceSize);
    ASSERT_EQ(h.values.size(), 2u);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LE(h.values[1][j], h.values[0][j]);
    const auto csv = render_heatmap_csv(h);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "mu\\N,8,16");
    const auto svg = render_heatmap_svg(h);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
}

TEST(Heatmap, SingleCellAndRaggedGrid) {
    CellAggregate c{"noiseless", 8, 1, 1, 0, 1, 0.5, 0.5, 0.5, {}};
    const std::vector<CellAggregate> one{c};
    EXPECT_EQ(render_heatmap_csv(build_heatmap(one, Axis::Mu, Axis::SpaceSize)), "mu\\N,8\n0,0.500000\n");

    auto d = c;
    d.space_size = 16;
    auto e = c;
    e.mu = 1;
    const std::vector<CellAggregate> ragged{c, d, e};
    try {
        build_heatmap(ragged, Axis::Mu, Axis::SpaceSize);
        FAIL();
    } catch (const ValidationError& err) {
        EXPECT_NE(std::string(err.what()).find("(mu=1, N=16)"), std::string::npos) << err.what();
    }
    EXPECT_THROW(build_heatmap(one, Axis::Mu, Axis::Mu), ValidationError);
    EXPECT_THROW(parse_axis("sigma"), ValidationError);
}

TEST(Heatmap, GroupsByRemainingDimensions) {
    SweepSpec s;
    s.space_sizes = {8, 16};
    s.mus = {0, 1};
    s.lambdas = {0, 1};
    s.exact = true;
    const auto maps = build_heatmaps(run_sweep(s).cells, Axis::Mu, Axis::SpaceSize);
    ASSERT_EQ(maps.size(), 2u);
    EXPECT_NE(maps[0].title.find("lambda=0"), std::string::npos);
}

TEST(Config, ParsesProfilesAndSweep) {
    const auto cfg = parse_config(R"({
      "profiles": [{"name": "mine", "p1": 0.001, "p2": 0.01, "p_readout": 0.0, "mcx_cost": {"slope": 1, "offset": 0}}],
      "sweep": {"space_sizes": [8, 16], "num_targets": [1], "lambdas": [0], "mus": [0, 1],
                "profiles": ["mine", "noiseless"], "shots": 200, "seed": 3, "repetitions": 2,
                "heatmap": {"rows": "mu", "cols": "N"}}
    })");
    ASSERT_EQ(cfg.profiles.size(), 1u);
    EXPECT_EQ(cfg.profiles[0].mcx_cost(4), 4);
    ASSERT_TRUE(cfg.sweep);
    EXPECT_EQ(cfg.sweep->repetitions, 2);
    EXPECT_EQ(cfg.heatmap->first, "mu");
    const auto res = run_sweep(*cfg.sweep, registry_with(cfg.profiles));
    EXPECT_EQ(res.reports.size(), 2u * 2u * 2u * 2u);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("{"), ValidationError);
    EXPECT_THROW(parse_config(R"({"sweeep": {}})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"profiles": [{"name": "x", "p1": 2}]})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"sweep": {"shots": 0}})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"sweep": {"mus": []}})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"sweep": {"space_sizes": "8"}})"), ValidationError);
    EXPECT_THROW(registry_with(std::vector<NoiseProfile>{{"nisq-low", 0, 0, 0, {}}}), ValidationError);
}
