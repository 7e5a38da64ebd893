#include "givens/lowering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace givens {

namespace {

constexpr double kExact = 1e-14;

class Emitter {
public:
    std::vector<Gate> gates;

    void cx(int control, int target) { gates.push_back(cnot(control, target)); }
    void x(int w) { gates.push_back(pauli_x(w)); }
    void h(int w) { gates.push_back(hadamard(w)); }
    void rot(GateKind kind, double angle, int w) {
        if (angle == 0.0) return;
        gates.push_back(kind == GateKind::RY ? ry(angle, w) : kind == GateKind::RZ ? rz(angle, w) : phase(angle, w));
    }

    void flip_zero_polarity(const std::vector<Control>& controls) {
        for (const auto& c : controls)
            if (c.polarity == 0) x(c.wire);
    }

    /// RY or RZ by `angle` on `target` iff every control matches its polarity.
    /// Gray-code ordering: 2^k rotations and 2^k CNOTs for k controls.
    void multiplexed(GateKind kind, double angle, int target, const std::vector<Control>& controls) {
        if (angle == 0.0) return;
        const int k = static_cast<int>(controls.size());
        if (k == 0) {
            rot(kind, angle, target);
            return;
        }
        std::uint64_t pattern = 0;
        for (int i = 0; i < k; ++i)
            if (controls[static_cast<std::size_t>(i)].polarity) pattern |= std::uint64_t{1} << i;
        const std::uint64_t count = std::uint64_t{1} << k;
        const double step = angle / static_cast<double>(count);
        for (std::uint64_t j = 0; j < count; ++j) {
            const std::uint64_t g = j ^ (j >> 1);
            rot(kind, popcount(g & pattern) % 2 ? -step : step, target);
            const std::uint64_t next = (j + 1) % count;
            const int bit = std::countr_zero(g ^ (next ^ (next >> 1)));
            cx(controls[static_cast<std::size_t>(bit)].wire, target);
        }
    }

    /// Phase e^{i alpha} iff every control matches. Uses
    /// AND(x_1..x_K) = 2^{1-K} sum_{S nonempty} (-1)^{|S|-1} XOR_{i in S} x_i.
    void controlled_phase(double alpha, const std::vector<Control>& controls) {
        if (alpha == 0.0) return;
        const int k = static_cast<int>(controls.size());
        flip_zero_polarity(controls);
        const double scale = alpha * std::ldexp(1.0, 1 - k);
        for (std::uint64_t s = 1; s < (std::uint64_t{1} << k); ++s) {
            std::vector<int> members;
            for (int i = 0; i < k; ++i)
                if ((s >> i) & 1u) members.push_back(controls[static_cast<std::size_t>(i)].wire);
            const int last = members.back();
            for (std::size_t i = 0; i + 1 < members.size(); ++i) cx(members[i], last);
            rot(GateKind::Phase, popcount(s) % 2 ? scale : -scale, last);
            for (std::size_t i = members.size() - 1; i-- > 0;) cx(members[i], last);
        }
        flip_zero_polarity(controls);
    }

    void global_phase(double alpha, int w) {
        if (alpha == 0.0) return;
        rot(GateKind::Phase, alpha, w);
        x(w);
        rot(GateKind::Phase, alpha, w);
        x(w);
    }

    /// `u` on `target` iff every control matches.
    void controlled_u(const Eigen::Matrix2cd& u, int target, const std::vector<Control>& controls) {
        const auto near = [](cplx a, cplx b) { return std::abs(a - b) < kExact; };
        if (near(u(0, 0), 1.0) && near(u(1, 1), 1.0) && near(u(0, 1), 0.0) && near(u(1, 0), 0.0)) return;

        if (near(u(0, 0), 0.0) && near(u(1, 1), 0.0) && near(u(0, 1), 1.0) && near(u(1, 0), 1.0)) {
            if (controls.empty()) {
                x(target);
            } else if (controls.size() == 1) {
                flip_zero_polarity(controls);
                cx(controls[0].wire, target);
                flip_zero_polarity(controls);
            } else {
                std::vector<Control> all = controls;
                all.push_back({target, 1});
                h(target);
                controlled_phase(std::numbers::pi, all);
                h(target);
            }
            return;
        }

        const bool real_rotation = std::abs(u(0, 0).imag()) < kExact && std::abs(u(1, 0).imag()) < kExact &&
                                   near(u(0, 0), u(1, 1)) && near(u(0, 1), -u(1, 0));
        if (real_rotation) {
            multiplexed(GateKind::RY, 2.0 * std::atan2(u(1, 0).real(), u(0, 0).real()), target, controls);
            return;
        }

        // u = e^{i alpha} RZ(beta) RY(gamma) RZ(delta)
        const double alpha = std::arg(u.determinant()) / 2.0;
        const Eigen::Matrix2cd v = u * std::exp(cplx{0.0, -alpha});
        const double gamma = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
        double sum = 0.0, diff = 0.0;  // beta + delta, beta - delta
        if (std::abs(v(0, 0)) > kExact) sum = 2.0 * std::arg(v(1, 1));
        if (std::abs(v(1, 0)) > kExact) diff = 2.0 * std::arg(v(1, 0));
        const double beta = (sum + diff) / 2.0, delta = (sum - diff) / 2.0;

        multiplexed(GateKind::RZ, delta, target, controls);
        multiplexed(GateKind::RY, gamma, target, controls);
        multiplexed(GateKind::RZ, beta, target, controls);
        if (controls.empty())
            global_phase(alpha, target);
        else
            controlled_phase(alpha, controls);
    }
};

}  // namespace

bool is_hardware_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::CNOT:
            return g.controls.size() == 1 && g.controls[0].polarity == 1;
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::Phase:
        case GateKind::Hadamard:
        case GateKind::PauliX:
        case GateKind::PauliY:
        case GateKind::PauliZ:
            return g.controls.empty();
        default:
            return false;
    }
}

std::vector<Gate> lower_gate(const Gate& g) {
    if (is_hardware_gate(g)) return {g};
    if (g.kind == GateKind::GPlus || g.kind == GateKind::GMinus)
        throw DomainError(std::string(kind_name(g.kind)) + " has no lowering");

    Emitter e;
    if (is_single_qubit_kind(g.kind)) {
        e.controlled_u(single_qubit_matrix(g), g.targets[0], g.controls);
        return e.gates;
    }

    // CNOTs from the pivot onto every other target make the two patterns agree
    // off the pivot, leaving a rotation on the pivot controlled on the rest.
    const U2Params b = excitation_block(g);
    if (b.distance_from_identity() < kExact) return {};
    const auto [src, tgt] = excitation_patterns(g);
    const int pivot = g.targets[0];
    const int p0 = src[0] - '0';
    std::vector<Control> controls;
    for (std::size_t i = 1; i < g.targets.size(); ++i)
        controls.push_back({g.targets[i], (src[i] - '0') ^ p0});
    controls.insert(controls.end(), g.controls.begin(), g.controls.end());

    Eigen::Matrix2cd u;
    if (p0 == 0)
        u << b.a, b.c, b.b, b.d;
    else
        u << b.d, b.b, b.c, b.a;

    for (std::size_t i = 1; i < g.targets.size(); ++i) e.cx(pivot, g.targets[i]);
    e.controlled_u(u, pivot, controls);
    for (std::size_t i = g.targets.size() - 1; i >= 1; --i) e.cx(pivot, g.targets[i]);
    return e.gates;
}

Circuit lower_to_cnot_ry(const Circuit& c) {
    Circuit out;
    out.n_primary = c.n_primary;
    out.ancillas = c.ancillas;
    for (const auto& g : c.gates) {
        auto lowered = lower_gate(g);
        out.gates.insert(out.gates.end(), lowered.begin(), lowered.end());
    }
    return out;
}

double lowering_error(const Gate& g) {
    std::vector<int> wires = g.wires();
    std::sort(wires.begin(), wires.end());
    const auto local = [&](int w) {
        return static_cast<int>(std::lower_bound(wires.begin(), wires.end(), w) - wires.begin());
    };
    const auto relabel = [&](Gate h) {
        for (auto& t : h.targets) t = local(t);
        for (auto& c : h.controls) c.wire = local(c.wire);
        return h;
    };
    Circuit c;
    c.n_primary = static_cast<int>(wires.size());
    for (const auto& h : lower_gate(g)) c.gates.push_back(relabel(h));
    return (circuit_unitary_full(c) - gate_matrix(relabel(g), c.n_primary)).cwiseAbs().maxCoeff();
}

}  // namespace givens
