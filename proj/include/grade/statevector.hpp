#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grade/circuit.hpp"
#include "grade/distribution.hpp"
#include "grade/error.hpp"
#include "grade/rng.hpp"

namespace grade {

using Amplitude = std::complex<double>;

/// Dense pure state over n qubits. Index i is the basis state |i>, qubit 0 is bit 0.
class Statevector {
public:
    /// |0...0> on num_qubits qubits.
    explicit Statevector(int num_qubits) : num_qubits_(check_width(num_qubits)) {
        amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
        amps_[0] = 1.0;
    }

    /// Takes ownership of explicit amplitudes. Length must be a power of two and the norm 1.
    static Statevector from_amplitudes(std::vector<Amplitude> amps) {
        if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0) {
            throw ValidationError("amplitude count must be a power of two");
        }
        int n = 0;
        while ((std::size_t{1} << n) < amps.size()) ++n;
        Statevector s(check_width(n), std::move(amps));
        const double norm = s.norm_squared();
        if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
            throw ValidationError("state is not normalized (|psi|^2 = " + std::to_string(norm) + ")");
        }
        return s;
    }

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const {
        double s = 0.0;
        for (const Amplitude& a : amps_) s += std::norm(a);
        return s;
    }

private:
    Statevector(int num_qubits, std::vector<Amplitude> amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {}

    static int check_width(int num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw CapacityError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
        }
        return num_qubits;
    }

    int num_qubits_;
    std::vector<Amplitude> amps_;
};

inline Statevector new_zero_state(int num_qubits) { return Statevector(num_qubits); }

namespace detail {

inline std::uint64_t mask_of(const std::vector<int>& qubits) {
    std::uint64_t m = 0;
    for (int q : qubits) m |= std::uint64_t{1} << q;
    return m;
}

}  // namespace detail

/// Applies one gate in place. MCX/MCZ act natively on the amplitudes.
inline void apply_gate(Statevector& state, const GateOp& gate) {
    gate.validate(state.num_qubits());
    auto amps = state.amplitudes();
    const std::uint64_t dim = amps.size();
    const std::uint64_t t = std::uint64_t{1} << gate.target;

    switch (gate.kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & t) continue;
                const Amplitude a = amps[i];
                const Amplitude b = amps[i | t];
                amps[i] = (a + b) * r;
                amps[i | t] = (a - b) * r;
            }
            break;
        }
        case GateKind::X:
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (!(i & t)) std::swap(amps[i], amps[i | t]);
            }
            break;
        case GateKind::Z:
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & t) amps[i] = -amps[i];
            }
            break;
        case GateKind::MCX: {
            const std::uint64_t cm = detail::mask_of(gate.controls);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & cm) == cm && !(i & t)) std::swap(amps[i], amps[i | t]);
            }
            break;
        }
        case GateKind::MCZ: {
            const std::uint64_t m = detail::mask_of(gate.controls) | t;
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & m) == m) amps[i] = -amps[i];
            }
            break;
        }
    }
}

inline void apply_circuit(Statevector& state, const Circuit& circuit) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw ValidationError("circuit has " + std::to_string(circuit.num_qubits()) + " qubits, state has " +
                              std::to_string(state.num_qubits()));
    }
    for (const GateOp& op : circuit.ops()) apply_gate(state, op);
}

/// Runs `circuit` on |0...0>.
inline Statevector simulate(const Circuit& circuit) {
    Statevector s(circuit.num_qubits());
    apply_circuit(s, circuit);
    return s;
}

/// Born-rule probabilities |amp_i|^2.
inline ProbabilityDistribution probabilities(const Statevector& state) {
    std::vector<double> p(state.dimension());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(state[i]);
    return {state.num_qubits(), std::move(p)};
}

/// Inverse-CDF sampler over a fixed probability vector.
class OutcomeSampler {
public:
    explicit OutcomeSampler(std::span<const double> probs) : cdf_(probs.size()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            cdf_[i] = acc;
        }
    }

    std::uint64_t operator()(Rng& rng) const {
        const double u = uniform01(rng) * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        // Skip zero-probability tail entries that share the final cumulative value.
        if (it == cdf_.end()) it = std::lower_bound(cdf_.begin(), cdf_.end(), cdf_.back());
        return static_cast<std::uint64_t>(it - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

/// Draws `shots` measurement outcomes from one sequential generator seeded with rng_seed.
inline CountsMap sample_counts(const Statevector& state, std::uint64_t shots, std::uint64_t rng_seed) {
    if (shots == 0) throw ValidationError("shots must be at least 1");
    const auto dist = probabilities(state);
    OutcomeSampler sampler(dist.values());
    Rng rng(rng_seed);
    std::vector<std::uint64_t> tally(state.dimension(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) ++tally[sampler(rng)];
    CountsMap counts(state.num_qubits());
    for (std::uint64_t i = 0; i < tally.size(); ++i) {
        if (tally[i] > 0) counts.add(i, tally[i]);
    }
    return counts;
}

}  // namespace grade
