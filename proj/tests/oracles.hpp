#pragma once

// Test-only reference routes. Nothing here calls into the library's
// simulation or scoring code; gates are built as explicit Kronecker products
// and the score is evaluated straight from its defining formulas.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "grade/circuit.hpp"

namespace oracle {

using C = std::complex<double>;
using Matrix = std::vector<std::vector<C>>;
using Vec = std::vector<C>;

inline Matrix identity(std::size_t d) {
    Matrix m(d, std::vector<C>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.size() * b.size(), std::vector<C>(a.size() * b.size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t l = 0; l < b.size(); ++l) m[i * b.size() + k][j * b.size() + l] = a[i][j] * b[k][l];
    return m;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    Matrix m = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m[i][j] += b[i][j];
    return m;
}

inline Matrix mul(const Matrix& a, const Matrix& b) {
    Matrix m(a.size(), std::vector<C>(a.size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a.size(); ++k)
            for (std::size_t j = 0; j < a.size(); ++j) m[i][j] += a[i][k] * b[k][j];
    return m;
}

inline Vec apply(const Matrix& m, const Vec& v) {
    Vec out(v.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline const Matrix kI = {{1, 0}, {0, 1}};
inline const Matrix kX = {{0, 1}, {1, 0}};
inline const Matrix kZ = {{1, 0}, {0, -1}};
inline const Matrix kH = {{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
inline const Matrix kP1 = {{0, 0}, {0, 1}};
inline const Matrix kXminusI = {{-1, 1}, {1, -1}};
inline const Matrix kZminusI = {{0, 0}, {0, -2}};

// Tensor product with qubit n-1 as the leftmost factor, so qubit 0 is the
// least-significant index bit.
inline Matrix tensor(const std::vector<Matrix>& per_qubit) {
    Matrix m = per_qubit.back();
    for (int q = static_cast<int>(per_qubit.size()) - 2; q >= 0; --q) m = kron(m, per_qubit[static_cast<std::size_t>(q)]);
    return m;
}

inline Matrix gate_matrix(const grade::GateOp& g, int n) {
    const auto t = static_cast<std::size_t>(g.target);
    std::vector<Matrix> f(static_cast<std::size_t>(n), kI);
    switch (g.kind) {
        case grade::GateKind::H: f[t] = kH; return tensor(f);
        case grade::GateKind::X: f[t] = kX; return tensor(f);
        case grade::GateKind::Z: f[t] = kZ; return tensor(f);
        case grade::GateKind::MCX:
        case grade::GateKind::MCZ:
            // I + (projector onto controls=1) (x) (U - I) on the target.
            for (int c : g.controls) f[static_cast<std::size_t>(c)] = kP1;
            f[t] = g.kind == grade::GateKind::MCX ? kXminusI : kZminusI;
            return add(identity(std::size_t{1} << n), tensor(f));
    }
    return {};
}

inline Matrix circuit_matrix(const grade::Circuit& c) {
    Matrix m = identity(std::size_t{1} << c.num_qubits());
    for (const auto& g : c.ops()) m = mul(gate_matrix(g, c.num_qubits()), m);
    return m;
}

/// max_ij |a_ij - phase * b_ij| after aligning a global phase on the largest entry of b.
inline double distance_up_to_phase(const Matrix& a, const Matrix& b) {
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (std::abs(b[i][j]) > std::abs(b[bi][bj])) bi = i, bj = j;
    const C phase = a[bi][bj] / b[bi][bj];
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[i][j] - phase * b[i][j]));
    return worst;
}

/// Score written out term by term from its definition.
struct Score {
    double p_t, sigma_t, p_n, final;
};

inline Score score(const std::map<std::string, double>& p, const std::vector<std::string>& targets, double lambda,
                   double mu) {
    auto prob = [&p](const std::string& s) {
        auto it = p.find(s);
        return it == p.end() ? 0.0 : it->second;
    };
    double pt = 0.0;
    for (const auto& s : targets) pt += prob(s);
    const double mean = pt / static_cast<double>(targets.size());
    double var = 0.0;
    for (const auto& s : targets) var += (prob(s) - mean) * (prob(s) - mean);
    const double sigma = std::sqrt(var / static_cast<double>(targets.size()));
    const double pn = 1.0 - pt;
    const double raw = pt - lambda * sigma - mu * pn;
    return {pt, sigma, pn, raw < 0.0 ? 0.0 : raw};
}

inline double grover_closed_form(double space, double marked, int k) {
    const double theta = std::asin(std::sqrt(marked / space));
    return std::pow(std::sin((2 * k + 1) * theta), 2);
}

}  // namespace oracle
