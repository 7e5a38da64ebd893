#pragma once

// Brute-force reference implementations used as test oracles. Everything here
// works on printed bit strings and dense matrices, and deliberately shares no
// code path with the library's kernels, ranking or matrix embedding.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "givens/gates.hpp"
#include "givens/simulator.hpp"

namespace oracle {

using givens::cplx;
using givens::Gate;
using givens::GateKind;
using givens::Matrix;

inline std::string bits_of(std::uint64_t v, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((v >> (n - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline std::uint64_t value_of(const std::string& s) {
    std::uint64_t v = 0;
    for (char c : s) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    return v;
}

/// Weight-k strings of length n, sorted as strings.
inline std::vector<std::string> basis(int n, int k) {
    std::vector<std::string> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        const auto s = bits_of(v, n);
        if (std::count(s.begin(), s.end(), '1') == k) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Eigen::Matrix2cd single_qubit(const Gate& g) {
    const cplx i{0.0, 1.0};
    const double t = g.angle;
    Eigen::Matrix2cd m;
    switch (g.kind) {
        case GateKind::RY: m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2); break;
        case GateKind::RZ: m << std::exp(-i * t / 2.0), 0.0, 0.0, std::exp(i * t / 2.0); break;
        case GateKind::Phase: m << 1.0, 0.0, 0.0, std::exp(i * t); break;
        case GateKind::Hadamard: m << 1.0, 1.0, 1.0, -1.0; m /= std::sqrt(2.0); break;
        case GateKind::PauliX:
        case GateKind::CNOT: m << 0.0, 1.0, 1.0, 0.0; break;
        case GateKind::PauliY: m << 0.0, -i, i, 0.0; break;
        case GateKind::PauliZ: m << 1.0, 0.0, 0.0, -1.0; break;
        default: throw std::logic_error("not a single-qubit gate");
    }
    return m;
}

struct PairSpec {
    std::string source, target;
    cplx a, b, c, d;
    cplx outside = 1.0;
};

inline PairSpec pair_spec(const Gate& g) {
    const int l = static_cast<int>(g.targets.size()) / 2;
    PairSpec p;
    p.source = std::string(static_cast<std::size_t>(l), '0') + std::string(static_cast<std::size_t>(l), '1');
    p.target = std::string(static_cast<std::size_t>(l), '1') + std::string(static_cast<std::size_t>(l), '0');
    const double c = std::cos(g.angle), s = std::sin(g.angle);
    switch (g.kind) {
        case GateKind::GivensReal:
        case GateKind::DoubleExcitation:
            p.a = c, p.b = s, p.c = -s, p.d = c;
            break;
        case GateKind::GPlus:
        case GateKind::GMinus:
            p.a = c, p.b = s, p.c = -s, p.d = c;
            p.outside = std::exp(cplx{0.0, g.kind == GateKind::GPlus ? g.angle : -g.angle});
            break;
        case GateKind::Swap:
        case GateKind::Fredkin:
            p.a = 0.0, p.b = 1.0, p.c = 1.0, p.d = 0.0;
            break;
        case GateKind::Excitation:
            p.source = g.source, p.target = g.target;
            [[fallthrough]];
        case GateKind::SingleExcitation:
            p.a = g.block.a, p.b = g.block.b, p.c = g.block.c, p.d = g.block.d;
            break;
        default:
            throw std::logic_error("not an excitation gate");
    }
    return p;
}

/// Image of the basis string x under the gate, as (string, amplitude) terms,
/// read off the definition: controls gate everything, then the target
/// substring decides.
inline std::vector<std::pair<std::string, cplx>> image(const Gate& g, const std::string& x) {
    bool fire = true;
    for (const auto& c : g.controls) fire = fire && (x[static_cast<std::size_t>(c.wire)] - '0') == c.polarity;
    if (!fire) return {{x, 1.0}};
    std::string sub;
    for (int t : g.targets) sub.push_back(x[static_cast<std::size_t>(t)]);
    auto with = [&](const std::string& pattern) {
        std::string y = x;
        for (std::size_t i = 0; i < g.targets.size(); ++i) y[static_cast<std::size_t>(g.targets[i])] = pattern[i];
        return y;
    };
    if (givens::is_excitation_like(g.kind)) {
        const PairSpec p = pair_spec(g);
        if (sub == p.source) return {{with(p.source), p.a}, {with(p.target), p.b}};
        if (sub == p.target) return {{with(p.source), p.c}, {with(p.target), p.d}};
        return {{x, p.outside}};
    }
    const Eigen::Matrix2cd u = single_qubit(g);
    const int bit = sub[0] - '0';
    return {{with("0"), u(0, bit)}, {with("1"), u(1, bit)}};
}

inline Eigen::VectorXcd apply(const Gate& g, int n, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (Eigen::Index col = 0; col < v.size(); ++col) {
        if (v(col) == cplx{0.0}) continue;
        for (const auto& [y, amp] : image(g, bits_of(static_cast<std::uint64_t>(col), n)))
            out(static_cast<Eigen::Index>(value_of(y))) += amp * v(col);
    }
    return out;
}

inline Eigen::VectorXcd basis_vector(int n, std::uint64_t x) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    v(static_cast<Eigen::Index>(x)) = 1.0;
    return v;
}

/// Dense matrix of a gate on n wires.
inline Matrix gate(const Gate& g, int n) {
    const auto dim = Eigen::Index{1} << n;
    Matrix m(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) m.col(col) = apply(g, n, basis_vector(n, static_cast<std::uint64_t>(col)));
    return m;
}

inline Eigen::VectorXcd run(const givens::Circuit& c, Eigen::VectorXcd v) {
    for (const auto& g : c.gates) v = apply(g, c.wire_count(), v);
    return v;
}

/// Product of gate matrices over every wire of the circuit.
inline Matrix circuit_full(const givens::Circuit& c) {
    const int n = c.wire_count();
    const auto dim = Eigen::Index{1} << n;
    Matrix u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) u.col(col) = run(c, basis_vector(n, static_cast<std::uint64_t>(col)));
    return u;
}

/// Full-register string with the ancilla wires set to their init or final pattern.
inline std::string with_ancillas(const givens::Circuit& c, const std::string& primary, bool final_pattern) {
    std::string s = primary + std::string(static_cast<std::size_t>(c.ancilla_wire_count()), '0');
    for (const auto& a : c.ancillas)
        for (std::size_t i = 0; i < a.wires.size(); ++i)
            s[static_cast<std::size_t>(a.wires[i])] = (final_pattern ? a.final : a.init)[i];
    return s;
}

/// <y|C|x> over weight-k primary strings, ancillas entering in init and read
/// out in final.
inline Matrix restrict(const givens::Circuit& c, int k) {
    const auto b = basis(c.n_primary, k);
    const auto d = static_cast<Eigen::Index>(b.size());
    Matrix m(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
        const auto out = run(c, basis_vector(c.wire_count(), value_of(with_ancillas(c, b[static_cast<std::size_t>(col)], false))));
        for (Eigen::Index row = 0; row < d; ++row)
            m(row, col) = out(static_cast<Eigen::Index>(value_of(with_ancillas(c, b[static_cast<std::size_t>(row)], true))));
    }
    return m;
}

/// Max over weight-k inputs (ancillas in init) of the norm landing anywhere
/// except weight-k primary strings with ancillas in final.
inline double escape(const givens::Circuit& c, int k) {
    const auto b = basis(c.n_primary, k);
    double worst = 0.0;
    for (const auto& x : b) {
        const auto out = run(c, basis_vector(c.wire_count(), value_of(with_ancillas(c, x, false))));
        double kept = 0.0;
        for (const auto& y : b) kept += std::norm(out(static_cast<Eigen::Index>(value_of(with_ancillas(c, y, true)))));
        worst = std::max(worst, 1.0 - kept);
    }
    return worst;
}

inline Matrix two_level(Eigen::Index d, Eigen::Index i, Eigen::Index j, const givens::U2Params& u) {
    Matrix m = Matrix::Identity(d, d);
    m(i, i) = u.a;
    m(j, i) = u.b;
    m(i, j) = u.c;
    m(j, j) = u.d;
    return m;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
