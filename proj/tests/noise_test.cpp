#include <cmath>

#include <gtest/gtest.h>

#include "grade/grover.hpp"
#include "grade/noise.hpp"
#include "grade/scoring.hpp"

using namespace grade;

namespace {

Circuit grover8() { return build_grover_circuit(SearchSpec(3, {5}, SearchOrigin::Explicit)).full_circuit; }

double mean_target_probability(const NoiseProfile& p, int seeds) {
    double sum = 0.0;
    for (int s = 0; s < seeds; ++s) {
        sum += counts_to_distribution(run_noisy(grover8(), p, 1000, static_cast<std::uint64_t>(s))).at("101");
    }
    return sum / seeds;
}

}  // namespace

TEST(Profiles, Presets) {
    const ProfileRegistry reg;
    const auto& quiet = reg.find("noiseless");
    EXPECT_EQ(quiet.p1, 0.0);
    EXPECT_EQ(quiet.p2, 0.0);
    EXPECT_EQ(quiet.p_readout, 0.0);
    EXPECT_EQ(reg.find("nisq-medium").p2, 0.02);
    EXPECT_EQ(reg.find("nisq-low").p1, 0.0005);
    EXPECT_EQ(reg.find("nisq-high").p_readout, 0.05);
    EXPECT_THROW(reg.find("ibm-imaginary"), NotFoundError);
}

TEST(Profiles, RegistryValidation) {
    ProfileRegistry reg;
    EXPECT_THROW(reg.add({"noiseless", 0, 0, 0, {}}), ValidationError);
    EXPECT_THROW(reg.add({"", 0, 0, 0, {}}), ValidationError);
    EXPECT_THROW(reg.add({"bad", 1.5, 0, 0, {}}), ValidationError);
    reg.add({"custom", 0.1, 0.2, 0.3, {3, 0}});
    EXPECT_EQ(reg.find("custom").mcx_cost(2), 6);
    EXPECT_EQ(ProfileRegistry::empty().all().size(), 0u);
}

TEST(McxCostModel, DefaultIsTwoCMinusOne) {
    const McxCostModel m;
    EXPECT_EQ(m(1), 1);
    EXPECT_EQ(m(2), 3);
    EXPECT_EQ(m(5), 9);
}

TEST(RunNoisy, NoiselessMatchesExactSampling) {
    const auto c = grover8();
    const NoiseProfile quiet{"noiseless", 0, 0, 0, {}};
    for (std::uint64_t seed : {0u, 1u, 99u}) {
        EXPECT_EQ(run_noisy(c, quiet, 1000, seed), sample_counts(simulate(c), 1000, seed));
    }
}

TEST(RunNoisy, CertainReadoutFlip) {
    const NoiseProfile flip{"flip", 0, 0, 1.0, {}};
    const auto counts = run_noisy(Circuit(2), flip, 500, 4);
    EXPECT_EQ(counts.count("11"), 500u);
}

TEST(RunNoisy, Deterministic) {
    const ProfileRegistry reg;
    const auto& p = reg.find("nisq-high");
    EXPECT_EQ(run_noisy(grover8(), p, 300, 77), run_noisy(grover8(), p, 300, 77));
    EXPECT_NE(run_noisy(grover8(), p, 300, 77), run_noisy(grover8(), p, 300, 78));
    EXPECT_THROW(run_noisy(grover8(), p, 0, 1), ValidationError);
}

TEST(RunNoisy, HigherNoiseLowersSuccess) {
    const ProfileRegistry reg;
    EXPECT_LT(mean_target_probability(reg.find("nisq-high"), 10),
              mean_target_probability(reg.find("nisq-low"), 10));
}

TEST(RunNoisy, ReadoutMarginal) {
    // Only readout noise on |101>: P(correct) = (1-q)^3.
    const double q = 0.1;
    Circuit c(3);
    c.x(0).x(2);
    const NoiseProfile p{"ro", 0, 0, q, {}};
    const std::uint64_t shots = 20000;
    const auto counts = run_noisy(c, p, shots, 12);
    const double expected = std::pow(1 - q, 3);
    const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(shots));
    EXPECT_NEAR(static_cast<double>(counts.count("101")) / static_cast<double>(shots), expected, 3 * sigma);
}

TEST(RunNoisy, SingleQubitDepolarizingRate) {
    // One X gate followed by depolarizing p1: X or Y flips back to 0 with prob 2p/3.
    const double p1 = 0.3;
    const NoiseProfile p{"dep", p1, 0, 0, {}};
    const std::uint64_t shots = 30000;
    const auto counts = run_noisy(Circuit(1).x(0), p, shots, 5);
    const double expected = 2 * p1 / 3;
    const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(shots));
    EXPECT_NEAR(static_cast<double>(counts.count("0")) / static_cast<double>(shots), expected, 4 * sigma);
}

TEST(SampleNoiseEvents, MultiplicityPerTouchedQubit) {
    // p2 = 1 fires every event: MCX with 2 controls touches 3 qubits, 3 events each.
    const NoiseProfile p{"all", 0, 1.0, 0, {}};
    Rng rng(1);
    const auto events = sample_noise_events(Circuit(3).mcx({0, 1}, 2), p, rng);
    EXPECT_EQ(events.size(), 9u);
    const NoiseProfile single{"one", 1.0, 0, 0, {}};
    EXPECT_EQ(sample_noise_events(Circuit(3).h(0).x(1), single, rng).size(), 2u);
}

TEST(ApplyReadoutChannel, MatchesBinomial) {
    const auto d = ProbabilityDistribution::from_map(2, {{"11", 1.0}});
    const auto out = apply_readout_channel(d, 0.1);
    EXPECT_NEAR(out.at("11"), 0.81, 1e-15);
    EXPECT_NEAR(out.at("01"), 0.09, 1e-15);
    EXPECT_NEAR(out.at("00"), 0.01, 1e-15);
}
