#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grade/bitstring.hpp"
#include "grade/circuit.hpp"
#include "grade/error.hpp"
#include "grade/rng.hpp"

namespace grade {

enum class SearchOrigin { ByCount, ByList, Explicit };

inline std::string_view to_string(SearchOrigin o) {
    switch (o) {
        case SearchOrigin::ByCount: return "by-count";
        case SearchOrigin::ByList: return "by-list";
        case SearchOrigin::Explicit: return "explicit";
    }
    return "?";
}

/// A search space of N = 2^n basis states with a marked subset T, 1 <= |T| < N.
class SearchSpec {
public:
    SearchSpec(int num_qubits, std::vector<std::uint64_t> targets, SearchOrigin origin)
        : num_qubits_(num_qubits), targets_(std::move(targets)), origin_(origin) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw CapacityError("search space needs between 1 and " + std::to_string(kMaxQubits) + " qubits");
        }
        if (targets_.empty()) throw ValidationError("at least one target is required");
        if (targets_.size() >= space_size()) {
            throw ValidationError("number of targets (" + std::to_string(targets_.size()) +
                                  ") must be smaller than the search space (" + std::to_string(space_size()) + ")");
        }
        std::set<std::uint64_t> seen;
        for (std::uint64_t t : targets_) {
            if (t >= space_size()) {
                throw ValidationError("target " + std::to_string(t) + " outside search space of size " +
                                      std::to_string(space_size()));
            }
            if (!seen.insert(t).second) throw ValidationError("duplicate target " + std::to_string(t));
        }
    }

    int num_qubits() const noexcept { return num_qubits_; }
    std::uint64_t space_size() const noexcept { return std::uint64_t{1} << num_qubits_; }
    std::size_t num_targets() const noexcept { return targets_.size(); }
    const std::vector<std::uint64_t>& targets() const noexcept { return targets_; }
    SearchOrigin origin() const noexcept { return origin_; }

    std::vector<std::string> target_bitstrings() const {
        std::vector<std::string> out;
        out.reserve(targets_.size());
        for (std::uint64_t t : targets_) out.push_back(to_bitstring(t, num_qubits_));
        return out;
    }

    friend bool operator==(const SearchSpec&, const SearchSpec&) = default;

private:
    int num_qubits_;
    std::vector<std::uint64_t> targets_;
    SearchOrigin origin_;
};

namespace detail {

// Partial Fisher-Yates over [0, space) using only the first `count` swaps.
inline std::vector<std::uint64_t> draw_distinct(std::uint64_t space, std::size_t count, std::uint64_t seed) {
    std::vector<std::uint64_t> pool(space);
    for (std::uint64_t i = 0; i < space; ++i) pool[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t j = i + uniform_below(rng, space - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace detail

/// Default search space for a target count: n = num_targets qubits, N = 2^n,
/// with num_targets distinct targets drawn uniformly from the seed.
inline SearchSpec generate_space_by_num_targets(int num_targets, std::uint64_t rng_seed) {
    if (num_targets < 1 || num_targets > 10) {
        throw ValidationError("num_targets must be in [1, 10], got " + std::to_string(num_targets));
    }
    const int n = num_targets;
    auto targets = detail::draw_distinct(std::uint64_t{1} << n, static_cast<std::size_t>(num_targets), rng_seed);
    return {n, std::move(targets), SearchOrigin::ByCount};
}

/// Smallest space containing every listed target. If the list would fill the
/// whole space, one extra qubit is added so that unmarked states remain.
inline SearchSpec generate_space_for_target_list(std::span<const std::uint64_t> target_list) {
    if (target_list.empty()) throw ValidationError("target list is empty");
    std::uint64_t max_target = 0;
    std::set<std::uint64_t> seen;
    for (std::uint64_t t : target_list) {
        if (!seen.insert(t).second) throw ValidationError("duplicate target " + std::to_string(t));
        max_target = std::max(max_target, t);
    }
    int n = std::max(1, static_cast<int>(std::bit_width(max_target)));
    if (target_list.size() >= (std::uint64_t{1} << std::min(n, 63))) ++n;
    if (n > kMaxQubits) {
        throw CapacityError("target " + std::to_string(max_target) + " needs more than " +
                            std::to_string(kMaxQubits) + " qubits");
    }
    return {n, std::vector<std::uint64_t>(target_list.begin(), target_list.end()), SearchOrigin::ByList};
}

/// User-fixed space size (a power of two) with num_targets random distinct targets.
inline SearchSpec generate_space_explicit(std::uint64_t space_size, std::uint64_t num_targets, std::uint64_t rng_seed) {
    if (space_size < 2 || !std::has_single_bit(space_size)) {
        throw ValidationError("space size must be a power of two >= 2, got " + std::to_string(space_size));
    }
    const int n = std::countr_zero(space_size);
    if (n > kMaxQubits) throw CapacityError("space size " + std::to_string(space_size) + " exceeds the simulator cap");
    if (num_targets < 1 || num_targets >= space_size) {
        throw ValidationError("num_targets must satisfy 1 <= M < N (M=" + std::to_string(num_targets) +
                              ", N=" + std::to_string(space_size) + ")");
    }
    return {n, detail::draw_distinct(space_size, static_cast<std::size_t>(num_targets), rng_seed),
            SearchOrigin::Explicit};
}

/// Phase oracle flipping the sign of every target basis state.
///
/// Each target is conjugated by X on its zero bits around an H-MCX-H block on
/// the top qubit, which together act as a phase flip on |1...1>. With one
/// qubit there is no control to use, so the block degenerates to Z.
inline Circuit construct_oracle(std::span<const std::string> targets, int num_qubits) {
    Circuit qc(num_qubits, "oracle");
    const int top = num_qubits - 1;
    std::vector<int> controls;
    for (int q = 0; q < top; ++q) controls.push_back(q);

    for (const std::string& target : targets) {
        const std::uint64_t bits = from_bitstring(target, num_qubits);
        std::vector<int> zero_indices;
        for (int q = 0; q < num_qubits; ++q) {
            if (!((bits >> q) & 1U)) zero_indices.push_back(q);
        }
        for (int q : zero_indices) qc.x(q);
        if (num_qubits == 1) {
            qc.z(top);
        } else {
            qc.h(top);
            qc.mcx(controls, top);
            qc.h(top);
        }
        for (int q : zero_indices) qc.x(q);
    }
    return qc;
}

/// Reflection about the uniform superposition, 2|s><s| - I up to global phase.
inline Circuit construct_diffusion(int num_qubits) {
    Circuit qc(num_qubits, "diffusion");
    const int top = num_qubits - 1;
    for (int q = 0; q < num_qubits; ++q) qc.h(q);
    for (int q = 0; q < num_qubits; ++q) qc.x(q);
    if (num_qubits == 1) {
        qc.z(top);
    } else {
        std::vector<int> controls;
        for (int q = 0; q < top; ++q) controls.push_back(q);
        qc.h(top);
        qc.mcx(controls, top);
        qc.h(top);
    }
    for (int q = 0; q < num_qubits; ++q) qc.x(q);
    for (int q = 0; q < num_qubits; ++q) qc.h(q);
    return qc;
}

/// floor(pi / (4 asin(sqrt(M/N)))), at least 1.
inline int optimal_iterations(std::uint64_t space_size, std::uint64_t num_targets) {
    if (num_targets < 1 || num_targets >= space_size) {
        throw ValidationError("iteration count needs 1 <= M < N (M=" + std::to_string(num_targets) +
                              ", N=" + std::to_string(space_size) + ")");
    }
    const double theta = std::asin(std::sqrt(static_cast<double>(num_targets) / static_cast<double>(space_size)));
    const auto k = static_cast<int>(std::floor(std::numbers::pi / (4.0 * theta)));
    return std::max(1, k);
}

/// Noiseless success probability sin^2((2k+1) asin(sqrt(M/N))).
inline double grover_success_probability(std::uint64_t space_size, std::uint64_t num_targets, int iterations) {
    const double theta = std::asin(std::sqrt(static_cast<double>(num_targets) / static_cast<double>(space_size)));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

struct GroverPlan {
    SearchSpec spec;
    int iterations;
    Circuit oracle;
    Circuit diffusion;
    Circuit full_circuit;
};

/// Assembles H on every qubit followed by `iterations` rounds of oracle then diffusion.
inline GroverPlan build_grover_circuit(const SearchSpec& spec, std::optional<int> iterations = std::nullopt) {
    const int k = iterations.value_or(optimal_iterations(spec.space_size(), spec.num_targets()));
    if (k < 1) throw ValidationError("iteration count must be at least 1, got " + std::to_string(k));
    const int n = spec.num_qubits();

    const auto bitstrings = spec.target_bitstrings();
    Circuit oracle = construct_oracle(bitstrings, n);
    Circuit diffusion = construct_diffusion(n);

    Circuit full(n, "grover");
    for (int q = 0; q < n; ++q) full.h(q);
    for (int i = 0; i < k; ++i) {
        full.append(oracle);
        full.append(diffusion);
    }
    return {spec, k, std::move(oracle), std::move(diffusion), std::move(full)};
}

}  // namespace grade
