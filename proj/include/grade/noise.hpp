#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grade/circuit.hpp"
#include "grade/distribution.hpp"
#include "grade/error.hpp"
#include "grade/rng.hpp"
#include "grade/statevector.hpp"

namespace grade {

/// Number of independent noise events charged per touched qubit for a
/// multi-controlled gate with c controls: max(1, slope * c + offset).
struct McxCostModel {
    int slope = 2;
    int offset = -1;

    int operator()(int num_controls) const { return std::max(1, slope * num_controls + offset); }
    friend bool operator==(const McxCostModel&, const McxCostModel&) = default;
};

/// Error-rate bundle standing in for one emulated backend.
struct NoiseProfile {
    std::string name;
    double p1 = 0.0;         // depolarizing, per qubit, after single-qubit gates
    double p2 = 0.0;         // depolarizing, per qubit and event, after multi-qubit gates
    double p_readout = 0.0;  // classical flip per measured bit
    McxCostModel mcx_cost{};

    bool has_gate_noise() const noexcept { return p1 > 0.0 || p2 > 0.0; }

    void validate() const {
        if (name.empty()) throw ValidationError("noise profile name must not be empty");
        auto check = [this](double p, const char* field) {
            if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
                throw ValidationError("profile '" + name + "': " + field + " must be in [0, 1]");
            }
        };
        check(p1, "p1");
        check(p2, "p2");
        check(p_readout, "p_readout");
    }

    friend bool operator==(const NoiseProfile&, const NoiseProfile&) = default;
};

/// Built-in calibration presets. These are tuning constants, not device data.
inline std::vector<NoiseProfile> preset_profiles() {
    return {
        {"noiseless", 0.0, 0.0, 0.0, {}},
        {"nisq-low", 0.0005, 0.005, 0.01, {}},
        {"nisq-medium", 0.001, 0.02, 0.02, {}},
        {"nisq-high", 0.005, 0.05, 0.05, {}},
    };
}

/// Name-unique collection of profiles, seeded with the presets.
class ProfileRegistry {
public:
    ProfileRegistry() {
        for (auto& p : preset_profiles()) add(std::move(p));
    }

    static ProfileRegistry empty() { return ProfileRegistry(EmptyTag{}); }

    void add(NoiseProfile profile) {
        profile.validate();
        if (index_.count(profile.name)) throw ValidationError("duplicate noise profile '" + profile.name + "'");
        index_.emplace(profile.name, profiles_.size());
        profiles_.push_back(std::move(profile));
    }

    const NoiseProfile& find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw NotFoundError("unknown noise profile '" + name + "'");
        return profiles_[it->second];
    }

    bool contains(const std::string& name) const { return index_.count(name) > 0; }

    /// Registration order.
    const std::vector<NoiseProfile>& all() const noexcept { return profiles_; }

private:
    struct EmptyTag {};
    explicit ProfileRegistry(EmptyTag) {}

    std::vector<NoiseProfile> profiles_;
    std::map<std::string, std::size_t> index_;
};

enum class Pauli : std::uint8_t { X, Y, Z };

/// One inserted error: Pauli `pauli` on `qubit` right after gate `gate_index`.
struct NoiseEvent {
    std::size_t gate_index;
    int qubit;
    Pauli pauli;
};

namespace detail {

// Y is applied as X then Z; the leftover global phase is unobservable.
inline void apply_pauli(Statevector& state, int qubit, Pauli p) {
    if (p == Pauli::X || p == Pauli::Y) apply_gate(state, GateOp::x(qubit));
    if (p == Pauli::Z || p == Pauli::Y) apply_gate(state, GateOp::z(qubit));
}

inline std::uint64_t flip_readout(std::uint64_t outcome, int num_qubits, double p_readout, Rng& rng) {
    for (int q = 0; q < num_qubits; ++q) {
        if (bernoulli(rng, p_readout)) outcome ^= std::uint64_t{1} << q;
    }
    return outcome;
}

}  // namespace detail

/// Draws the gate-noise realization of one trajectory. Events are listed in
/// circuit order; an empty result means the trajectory runs ideally.
inline std::vector<NoiseEvent> sample_noise_events(const Circuit& circuit, const NoiseProfile& profile, Rng& rng) {
    std::vector<NoiseEvent> events;
    if (!profile.has_gate_noise()) return events;
    const auto& ops = circuit.ops();
    for (std::size_t g = 0; g < ops.size(); ++g) {
        const GateOp& op = ops[g];
        const bool multi = is_controlled(op.kind);
        const double p = multi ? profile.p2 : profile.p1;
        const int multiplicity = multi ? profile.mcx_cost(static_cast<int>(op.controls.size())) : 1;
        for (int q : op.qubits()) {
            for (int e = 0; e < multiplicity; ++e) {
                if (bernoulli(rng, p)) {
                    events.push_back({g, q, static_cast<Pauli>(uniform_below(rng, 3))});
                }
            }
        }
    }
    return events;
}

/// Executes `circuit` from |0...0> under `profile`, one Pauli trajectory per shot.
///
/// Without gate noise the ideal state is sampled exactly as sample_counts
/// does with the same seed, then readout flips (if any) are drawn from an
/// independent stream. With gate noise each shot s uses its own generator
/// seeded by derive_seed(rng_seed, {s}); trajectories whose sampled error
/// pattern is empty reuse the cached ideal distribution.
inline CountsMap run_noisy(const Circuit& circuit, const NoiseProfile& profile, std::uint64_t shots,
                           std::uint64_t rng_seed) {
    if (shots == 0) throw ValidationError("shots must be at least 1");
    profile.validate();
    const int n = circuit.num_qubits();
    const Statevector ideal = simulate(circuit);

    if (!profile.has_gate_noise()) {
        CountsMap ideal_counts = sample_counts(ideal, shots, rng_seed);
        if (profile.p_readout <= 0.0) return ideal_counts;
        Rng rng(derive_seed(rng_seed, {0x7265616455ULL}));
        CountsMap out(n);
        for (const auto& [key, count] : ideal_counts.counts()) {
            const std::uint64_t index = from_bitstring(key, n);
            for (std::uint64_t c = 0; c < count; ++c) out.add(detail::flip_readout(index, n, profile.p_readout, rng));
        }
        return out;
    }

    const auto ideal_probs = probabilities(ideal);
    const OutcomeSampler ideal_sampler(ideal_probs.values());
    std::vector<std::uint64_t> tally(ideal.dimension(), 0);
    const auto& ops = circuit.ops();

    for (std::uint64_t s = 0; s < shots; ++s) {
        Rng rng(derive_seed(rng_seed, {s}));
        const auto events = sample_noise_events(circuit, profile, rng);
        std::uint64_t outcome;
        if (events.empty()) {
            outcome = ideal_sampler(rng);
        } else {
            Statevector state(n);
            auto next = events.begin();
            for (std::size_t g = 0; g < ops.size(); ++g) {
                apply_gate(state, ops[g]);
                for (; next != events.end() && next->gate_index == g; ++next) {
                    detail::apply_pauli(state, next->qubit, next->pauli);
                }
            }
            outcome = OutcomeSampler(probabilities(state).values())(rng);
        }
        ++tally[detail::flip_readout(outcome, n, profile.p_readout, rng)];
    }

    CountsMap counts(n);
    for (std::uint64_t i = 0; i < tally.size(); ++i) {
        if (tally[i] > 0) counts.add(i, tally[i]);
    }
    return counts;
}

/// Exact effect of independent per-bit readout flips on a distribution.
inline ProbabilityDistribution apply_readout_channel(const ProbabilityDistribution& dist, double p_readout) {
    if (!std::isfinite(p_readout) || p_readout < 0.0 || p_readout > 1.0) {
        throw ValidationError("p_readout must be in [0, 1]");
    }
    std::vector<double> p = dist.values();
    if (p_readout == 0.0) return dist;
    for (int q = 0; q < dist.num_qubits(); ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        for (std::uint64_t i = 0; i < p.size(); ++i) {
            if (i & bit) continue;
            const double a = p[i];
            const double b = p[i | bit];
            p[i] = (1.0 - p_readout) * a + p_readout * b;
            p[i | bit] = p_readout * a + (1.0 - p_readout) * b;
        }
    }
    return {dist.num_qubits(), std::move(p)};
}

}  // namespace grade
