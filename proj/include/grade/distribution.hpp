#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "grade/bitstring.hpp"
#include "grade/error.hpp"

namespace grade {

/// Dense probability vector over the 2^n basis states.
class ProbabilityDistribution {
public:
    /// Point mass on |0> of a single qubit.
    ProbabilityDistribution() : num_qubits_(1), probs_{1.0, 0.0} {}

    ProbabilityDistribution(int num_qubits, std::vector<double> probs)
        : num_qubits_(num_qubits), probs_(std::move(probs)) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw CapacityError("distribution qubit count " + std::to_string(num_qubits) + " out of range");
        }
        if (probs_.size() != (std::size_t{1} << num_qubits)) {
            throw ValidationError("distribution length does not match 2^num_qubits");
        }
        double total = 0.0;
        for (double p : probs_) {
            if (!std::isfinite(p) || p < 0.0 || p > 1.0 + 1e-12) {
                throw ValidationError("probability outside [0, 1]");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw ValidationError("probabilities sum to " + std::to_string(total) + ", expected 1");
        }
    }

    /// Builds a distribution from sparse bitstring entries; missing states are 0.
    static ProbabilityDistribution from_map(int num_qubits, const std::map<std::string, double>& entries) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw CapacityError("distribution qubit count " + std::to_string(num_qubits) + " out of range");
        }
        std::vector<double> probs(std::size_t{1} << num_qubits, 0.0);
        for (const auto& [key, p] : entries) probs[from_bitstring(key, num_qubits)] = p;
        return {num_qubits, std::move(probs)};
    }

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t size() const noexcept { return probs_.size(); }
    const std::vector<double>& values() const noexcept { return probs_; }

    double operator[](std::uint64_t index) const { return probs_.at(index); }
    double at(const std::string& bitstring) const { return probs_[from_bitstring(bitstring, num_qubits_)]; }

    /// Entries with non-zero probability, keyed by bitstring.
    std::map<std::string, double> nonzero() const {
        std::map<std::string, double> out;
        for (std::uint64_t i = 0; i < probs_.size(); ++i) {
            if (probs_[i] > 0.0) out.emplace(to_bitstring(i, num_qubits_), probs_[i]);
        }
        return out;
    }

private:
    int num_qubits_;
    std::vector<double> probs_;
};

/// Measurement histogram. Only observed outcomes are stored; keys are n-bit strings.
class CountsMap {
public:
    explicit CountsMap(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw CapacityError("counts qubit count " + std::to_string(num_qubits) + " out of range");
        }
    }

    /// Validating constructor: every key must be an n-bit string and counts must sum to shots.
    CountsMap(int num_qubits, std::map<std::string, std::uint64_t> counts, std::uint64_t shots)
        : CountsMap(num_qubits) {
        if (shots == 0) throw ValidationError("shots must be at least 1");
        std::uint64_t total = 0;
        for (auto& [key, n] : counts) {
            if (!is_bitstring(key, num_qubits)) {
                throw ValidationError("counts key '" + key + "' is not a " + std::to_string(num_qubits) +
                                      "-bit string");
            }
            total += n;
            if (n > 0) counts_.emplace(key, n);
        }
        if (total != shots) {
            throw ValidationError("counts sum to " + std::to_string(total) + " but shots is " +
                                  std::to_string(shots));
        }
        shots_ = shots;
    }

    void add(std::uint64_t index, std::uint64_t n = 1) {
        counts_[to_bitstring(index, num_qubits_)] += n;
        shots_ += n;
    }

    int num_qubits() const noexcept { return num_qubits_; }
    std::uint64_t shots() const noexcept { return shots_; }
    const std::map<std::string, std::uint64_t>& counts() const noexcept { return counts_; }

    std::uint64_t count(const std::string& bitstring) const {
        auto it = counts_.find(bitstring);
        return it == counts_.end() ? 0 : it->second;
    }

    friend bool operator==(const CountsMap&, const CountsMap&) = default;

private:
    int num_qubits_;
    std::map<std::string, std::uint64_t> counts_;
    std::uint64_t shots_ = 0;
};

/// Normalizes counts: each probability is count / shots.
inline ProbabilityDistribution counts_to_distribution(const CountsMap& counts) {
    if (counts.shots() == 0) throw ValidationError("cannot normalize counts with zero shots");
    std::vector<double> probs(std::size_t{1} << counts.num_qubits(), 0.0);
    const double shots = static_cast<double>(counts.shots());
    for (const auto& [key, n] : counts.counts()) {
        probs[from_bitstring(key, counts.num_qubits())] = static_cast<double>(n) / shots;
    }
    return {counts.num_qubits(), std::move(probs)};
}

/// Half the L1 distance.
inline double total_variation(const ProbabilityDistribution& a, const ProbabilityDistribution& b) {
    if (a.num_qubits() != b.num_qubits()) throw ValidationError("distribution widths differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a.values()[i] - b.values()[i]);
    return 0.5 * sum;
}

}  // namespace grade
