#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grade/bitstring.hpp"
#include "grade/error.hpp"

namespace grade {

enum class GateKind { H, X, Z, MCX, MCZ };

inline constexpr std::array<GateKind, 5> kAllGateKinds = {GateKind::H, GateKind::X, GateKind::Z,
                                                          GateKind::MCX, GateKind::MCZ};

inline std::string_view mnemonic(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::MCX: return "mcx";
        case GateKind::MCZ: return "mcz";
    }
    return "?";
}

inline bool is_controlled(GateKind kind) { return kind == GateKind::MCX || kind == GateKind::MCZ; }

/// One gate. Controls are kept sorted ascending so equal gates compare equal.
struct GateOp {
    GateKind kind = GateKind::H;
    std::vector<int> controls;
    int target = 0;

    static GateOp h(int q) { return {GateKind::H, {}, q}; }
    static GateOp x(int q) { return {GateKind::X, {}, q}; }
    static GateOp z(int q) { return {GateKind::Z, {}, q}; }
    static GateOp mcx(std::vector<int> controls, int target) {
        return make_controlled(GateKind::MCX, std::move(controls), target);
    }
    static GateOp mcz(std::vector<int> controls, int target) {
        return make_controlled(GateKind::MCZ, std::move(controls), target);
    }

    /// Throws ValidationError unless every index is in [0, num_qubits) and
    /// controls are distinct, sorted, non-empty (MCX/MCZ only) and exclude the target.
    void validate(int num_qubits) const {
        auto in_range = [num_qubits](int q) { return q >= 0 && q < num_qubits; };
        if (!in_range(target)) {
            throw ValidationError("gate target " + std::to_string(target) + " out of range for " +
                                  std::to_string(num_qubits) + " qubits");
        }
        if (!is_controlled(kind)) {
            if (!controls.empty()) throw ValidationError("single-qubit gate must not have controls");
            return;
        }
        if (controls.empty()) throw ValidationError("multi-controlled gate needs at least one control");
        for (std::size_t i = 0; i < controls.size(); ++i) {
            if (!in_range(controls[i])) {
                throw ValidationError("control " + std::to_string(controls[i]) + " out of range for " +
                                      std::to_string(num_qubits) + " qubits");
            }
            if (controls[i] == target) throw ValidationError("control equals target");
            if (i > 0 && controls[i - 1] >= controls[i]) {
                throw ValidationError("controls must be distinct and ascending");
            }
        }
    }

    /// Every qubit the gate acts on, controls first.
    std::vector<int> qubits() const {
        std::vector<int> qs = controls;
        qs.push_back(target);
        return qs;
    }

    friend bool operator==(const GateOp&, const GateOp&) = default;

private:
    static GateOp make_controlled(GateKind kind, std::vector<int> controls, int target) {
        std::sort(controls.begin(), controls.end());
        return {kind, std::move(controls), target};
    }
};

class Circuit {
public:
    explicit Circuit(int num_qubits, std::string name = {}) : num_qubits_(num_qubits), name_(std::move(name)) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw CapacityError("circuit qubit count " + std::to_string(num_qubits) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
        }
    }

    int num_qubits() const noexcept { return num_qubits_; }
    const std::vector<GateOp>& ops() const noexcept { return ops_; }
    std::size_t size() const noexcept { return ops_.size(); }
    bool empty() const noexcept { return ops_.empty(); }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    Circuit& add(GateOp op) {
        op.validate(num_qubits_);
        ops_.push_back(std::move(op));
        return *this;
    }

    Circuit& h(int q) { return add(GateOp::h(q)); }
    Circuit& x(int q) { return add(GateOp::x(q)); }
    Circuit& z(int q) { return add(GateOp::z(q)); }
    Circuit& mcx(std::vector<int> controls, int target) { return add(GateOp::mcx(std::move(controls), target)); }
    Circuit& mcz(std::vector<int> controls, int target) { return add(GateOp::mcz(std::move(controls), target)); }

    Circuit& append(const Circuit& other) {
        if (other.num_qubits_ != num_qubits_) throw ValidationError("cannot append circuits of different width");
        ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
        return *this;
    }

    /// Structural equality; the name is metadata and does not participate.
    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.num_qubits_ == b.num_qubits_ && a.ops_ == b.ops_;
    }

private:
    int num_qubits_;
    std::vector<GateOp> ops_;
    std::string name_;
};

struct CircuitStats {
    std::size_t depth = 0;
    std::size_t total = 0;
    std::array<std::size_t, kAllGateKinds.size()> by_kind{};

    std::size_t count(GateKind kind) const { return by_kind[static_cast<std::size_t>(kind)]; }
};

/// Depth is the ASAP layer count where a gate occupies all of its qubits.
inline CircuitStats circuit_stats(const Circuit& circuit) {
    CircuitStats stats;
    std::vector<std::size_t> frontier(static_cast<std::size_t>(circuit.num_qubits()), 0);
    for (const GateOp& op : circuit.ops()) {
        std::size_t layer = 0;
        const auto qs = op.qubits();
        for (int q : qs) layer = std::max(layer, frontier[static_cast<std::size_t>(q)]);
        ++layer;
        for (int q : qs) frontier[static_cast<std::size_t>(q)] = layer;
        stats.depth = std::max(stats.depth, layer);
        ++stats.by_kind[static_cast<std::size_t>(op.kind)];
        ++stats.total;
    }
    return stats;
}

}  // namespace grade
