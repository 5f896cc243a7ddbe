#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "grade/error.hpp"

namespace grade {

/// Largest register the dense simulator accepts (2^20 amplitudes).
inline constexpr int kMaxQubits = 20;

/// Renders basis index `index` as an n-character bitstring, qubit 0 rightmost.
inline std::string to_bitstring(std::uint64_t index, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) {
        if ((index >> q) & 1U) s[static_cast<std::size_t>(num_qubits - 1 - q)] = '1';
    }
    return s;
}

inline bool is_bitstring(std::string_view s, int num_qubits) {
    if (s.size() != static_cast<std::size_t>(num_qubits)) return false;
    for (char c : s) {
        if (c != '0' && c != '1') return false;
    }
    return true;
}

/// Inverse of to_bitstring. Throws ValidationError on wrong length or alphabet.
inline std::uint64_t from_bitstring(std::string_view s, int num_qubits) {
    if (!is_bitstring(s, num_qubits)) {
        throw ValidationError("invalid bitstring '" + std::string(s) + "' for " +
                              std::to_string(num_qubits) + " qubits");
    }
    std::uint64_t index = 0;
    for (char c : s) index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    return index;
}

}  // namespace grade
