#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "grade/bitstring.hpp"
#include "grade/distribution.hpp"
#include "grade/error.hpp"

namespace grade {

/// Penalty weights: lambda scales target non-uniformity, mu scales non-target mass.
struct ScoreParams {
    double lambda = 1.0;
    double mu = 1.0;

    void validate() const {
        if (!std::isfinite(lambda) || lambda < 0.0) throw ValidationError("lambda must be finite and >= 0");
        if (!std::isfinite(mu) || mu < 0.0) throw ValidationError("mu must be finite and >= 0");
    }
};

struct ScoreBreakdown {
    double p_target = 0.0;      // cumulative target probability
    double sigma_target = 0.0;  // population std-dev of per-target probabilities
    double p_nontarget = 0.0;   // 1 - p_target
    double raw = 0.0;           // p_target - lambda*sigma_target - mu*p_nontarget
    double final = 0.0;         // max(0, raw)
};

/// Target indices for `targets`; rejects malformed, duplicate, empty or full sets.
inline std::vector<std::uint64_t> resolve_targets(std::span<const std::string> targets, int num_qubits) {
    if (targets.empty()) throw ValidationError("target set is empty");
    std::vector<std::uint64_t> idx;
    std::set<std::uint64_t> seen;
    for (const std::string& t : targets) {
        const std::uint64_t i = from_bitstring(t, num_qubits);
        if (!seen.insert(i).second) throw ValidationError("duplicate target '" + t + "'");
        idx.push_back(i);
    }
    if (idx.size() >= (std::uint64_t{1} << num_qubits)) {
        throw ValidationError("target set covers the whole search space");
    }
    return idx;
}

/// GRADE score of a distribution against the target set T.
///
/// P_T sums the target probabilities, sigma_T is their population standard
/// deviation (divide by |T|), P_N = 1 - P_T. The result is clamped at zero,
/// which covers the case mu*P_N > P_T as well as large non-uniformity.
inline ScoreBreakdown compute_score(const ProbabilityDistribution& dist, std::span<const std::string> targets,
                                    const ScoreParams& params) {
    params.validate();
    const auto idx = resolve_targets(targets, dist.num_qubits());
    const double m = static_cast<double>(idx.size());

    ScoreBreakdown b;
    for (std::uint64_t i : idx) b.p_target += dist[i];
    b.p_nontarget = 1.0 - b.p_target;
    const double mean = b.p_target / m;
    double ss = 0.0;
    for (std::uint64_t i : idx) {
        const double d = dist[i] - mean;
        ss += d * d;
    }
    b.sigma_target = std::sqrt(ss / m);
    b.raw = b.p_target - params.lambda * b.sigma_target - params.mu * b.p_nontarget;
    b.final = std::max(0.0, b.raw);
    return b;
}

}  // namespace grade
