#include "givens/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace givens {

namespace {

std::string repeat(char c, int count) { return std::string(static_cast<std::size_t>(count), c); }

std::uint64_t pattern_value(std::string_view p) {
    std::uint64_t v = 0;
    for (char ch : p) v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    return v;
}

Gate make(GateKind kind, std::vector<int> targets) {
    Gate g;
    g.kind = kind;
    g.targets = std::move(targets);
    return g;
}

Gate make_angle(GateKind kind, std::vector<int> targets, double angle) {
    Gate g = make(kind, std::move(targets));
    g.angle = angle;
    return g;
}

}  // namespace

Eigen::Matrix2cd U2Params::matrix() const {
    Eigen::Matrix2cd m;
    m << a, c, b, d;
    return m;
}

U2Params U2Params::from_matrix(const Eigen::Matrix2cd& m) {
    return {m(0, 0), m(1, 0), m(0, 1), m(1, 1)};
}

bool U2Params::is_unitary(double tol) const {
    const Eigen::Matrix2cd m = matrix();
    return (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

double U2Params::distance_from_identity() const {
    return (matrix() - Eigen::Matrix2cd::Identity()).norm();
}

U2Params givens_real(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c};
}

std::string_view kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::GivensReal: return "GivensReal";
        case GateKind::SingleExcitation: return "SingleExcitation";
        case GateKind::Excitation: return "Excitation";
        case GateKind::DoubleExcitation: return "DoubleExcitation";
        case GateKind::Swap: return "SWAP";
        case GateKind::Fredkin: return "Fredkin";
        case GateKind::CNOT: return "CNOT";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::Phase: return "Phase";
        case GateKind::Hadamard: return "Hadamard";
        case GateKind::PauliX: return "PauliX";
        case GateKind::PauliY: return "PauliY";
        case GateKind::PauliZ: return "PauliZ";
        case GateKind::GPlus: return "GPlus";
        case GateKind::GMinus: return "GMinus";
    }
    return "?";
}

GateKind kind_from_name(std::string_view name) {
    static constexpr std::array kinds = {
        GateKind::GivensReal, GateKind::SingleExcitation, GateKind::Excitation,
        GateKind::DoubleExcitation, GateKind::Swap, GateKind::Fredkin,
        GateKind::CNOT, GateKind::RY, GateKind::RZ,
        GateKind::Phase, GateKind::Hadamard, GateKind::PauliX,
        GateKind::PauliY, GateKind::PauliZ, GateKind::GPlus,
        GateKind::GMinus};
    for (auto k : kinds)
        if (kind_name(k) == name) return k;
    throw DomainError("unknown gate kind: " + std::string(name));
}

std::vector<int> Gate::wires() const {
    std::vector<int> w;
    w.reserve(controls.size() + targets.size());
    for (const auto& c : controls) w.push_back(c.wire);
    w.insert(w.end(), targets.begin(), targets.end());
    return w;
}

Gate givens_gate(double theta, int w0, int w1) {
    return make_angle(GateKind::GivensReal, {w0, w1}, theta);
}

Gate single_excitation(const U2Params& u, int w0, int w1) {
    Gate g = make(GateKind::SingleExcitation, {w0, w1});
    g.block = u;
    return g;
}

Gate excitation(const U2Params& u, std::vector<int> targets, std::string source,
                std::string target) {
    Gate g = make(GateKind::Excitation, std::move(targets));
    g.block = u;
    g.source = std::move(source);
    g.target = std::move(target);
    return g;
}

Gate double_excitation(double theta, int w0, int w1, int w2, int w3) {
    return make_angle(GateKind::DoubleExcitation, {w0, w1, w2, w3}, theta);
}

Gate swap_gate(int w0, int w1) { return make(GateKind::Swap, {w0, w1}); }

Gate fredkin(Control control, int w0, int w1) {
    Gate g = make(GateKind::Fredkin, {w0, w1});
    g.controls.push_back(control);
    return g;
}

Gate cnot(int control, int target) {
    Gate g = make(GateKind::CNOT, {target});
    g.controls.push_back({control, 1});
    return g;
}

Gate ry(double theta, int wire) { return make_angle(GateKind::RY, {wire}, theta); }
Gate rz(double theta, int wire) { return make_angle(GateKind::RZ, {wire}, theta); }
Gate phase(double phi, int wire) { return make_angle(GateKind::Phase, {wire}, phi); }
Gate hadamard(int wire) { return make(GateKind::Hadamard, {wire}); }
Gate pauli_x(int wire) { return make(GateKind::PauliX, {wire}); }
Gate pauli_y(int wire) { return make(GateKind::PauliY, {wire}); }
Gate pauli_z(int wire) { return make(GateKind::PauliZ, {wire}); }

Gate g_plus(double theta, std::vector<int> targets) {
    return make_angle(GateKind::GPlus, std::move(targets), theta);
}

Gate g_minus(double theta, std::vector<int> targets) {
    return make_angle(GateKind::GMinus, std::move(targets), theta);
}

Gate with_controls(Gate g, std::span<const Control> extra) {
    g.controls.insert(g.controls.end(), extra.begin(), extra.end());
    return g;
}

bool is_excitation_like(GateKind kind) {
    switch (kind) {
        case GateKind::GivensReal:
        case GateKind::SingleExcitation:
        case GateKind::Excitation:
        case GateKind::DoubleExcitation:
        case GateKind::Swap:
        case GateKind::Fredkin:
        case GateKind::GPlus:
        case GateKind::GMinus:
            return true;
        default:
            return false;
    }
}

bool is_single_qubit_kind(GateKind kind) { return !is_excitation_like(kind); }

bool is_particle_conserving(const Gate& g) {
    switch (g.kind) {
        case GateKind::RZ:
        case GateKind::Phase:
        case GateKind::PauliZ:
            return true;
        default:
            return is_excitation_like(g.kind);
    }
}

PatternPair excitation_patterns(const Gate& g) {
    if (!is_excitation_like(g.kind))
        throw DomainError(std::string(kind_name(g.kind)) + " is not an excitation gate");
    if (g.kind == GateKind::Excitation) return {g.source, g.target};
    const int l = static_cast<int>(g.targets.size()) / 2;
    return {repeat('0', l) + repeat('1', l), repeat('1', l) + repeat('0', l)};
}

U2Params excitation_block(const Gate& g) {
    switch (g.kind) {
        case GateKind::GivensReal:
        case GateKind::DoubleExcitation:
        case GateKind::GPlus:
        case GateKind::GMinus:
            return givens_real(g.angle);
        case GateKind::SingleExcitation:
        case GateKind::Excitation:
            return g.block;
        case GateKind::Swap:
        case GateKind::Fredkin:
            return {0.0, 1.0, 1.0, 0.0};
        default:
            throw DomainError(std::string(kind_name(g.kind)) + " is not an excitation gate");
    }
}

Eigen::Matrix2cd single_qubit_matrix(const Gate& g) {
    using std::numbers::sqrt2;
    const cplx i{0.0, 1.0};
    Eigen::Matrix2cd m;
    switch (g.kind) {
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            m << c, -s, s, c;
            break;
        }
        case GateKind::RZ:
            m << std::exp(-i * (g.angle / 2)), 0.0, 0.0, std::exp(i * (g.angle / 2));
            break;
        case GateKind::Phase:
            m << 1.0, 0.0, 0.0, std::exp(i * g.angle);
            break;
        case GateKind::Hadamard:
            m << 1.0 / sqrt2, 1.0 / sqrt2, 1.0 / sqrt2, -1.0 / sqrt2;
            break;
        case GateKind::PauliX:
        case GateKind::CNOT:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case GateKind::PauliY:
            m << 0.0, -i, i, 0.0;
            break;
        case GateKind::PauliZ:
            m << 1.0, 0.0, 0.0, -1.0;
            break;
        default:
            throw DomainError(std::string(kind_name(g.kind)) + " is not a single-qubit gate");
    }
    return m;
}

int excitation_order(const Gate& g) {
    return static_cast<int>(excitation_patterns(g).source.size()) / 2;
}

void validate(const Gate& g, int wire_count) {
    const auto name = std::string(kind_name(g.kind));
    const auto nt = g.targets.size();
    auto need_targets = [&](std::size_t count) {
        if (nt != count)
            throw DomainError(name + " needs " + std::to_string(count) + " target wires");
    };
    switch (g.kind) {
        case GateKind::GivensReal:
        case GateKind::SingleExcitation:
        case GateKind::Swap:
            need_targets(2);
            break;
        case GateKind::Fredkin:
            need_targets(2);
            if (g.controls.size() != 1) throw DomainError("Fredkin needs exactly one control");
            break;
        case GateKind::DoubleExcitation:
            need_targets(4);
            break;
        case GateKind::Excitation: {
            if (nt == 0 || nt % 2 != 0) throw DomainError("Excitation needs 2l target wires");
            if (g.source.size() != nt || g.target.size() != nt)
                throw DomainError("Excitation patterns must cover every target wire");
            for (char ch : g.source + g.target)
                if (ch != '0' && ch != '1') throw DomainError("Excitation pattern must be binary");
            const auto s = pattern_value(g.source), t = pattern_value(g.target);
            if (popcount(s) != popcount(t) || popcount(s ^ t) != static_cast<int>(nt))
                throw DomainError("Excitation patterns must have equal weight and differ everywhere");
            break;
        }
        case GateKind::GPlus:
        case GateKind::GMinus:
            if (nt == 0 || nt % 2 != 0) throw DomainError(name + " needs 2l target wires");
            if (!g.controls.empty()) throw DomainError(name + " does not take controls");
            break;
        case GateKind::CNOT:
            need_targets(1);
            if (g.controls.size() != 1 || g.controls[0].polarity != 1)
                throw DomainError("CNOT needs exactly one polarity-1 control");
            break;
        default:
            need_targets(1);
    }
    if (g.kind == GateKind::SingleExcitation || g.kind == GateKind::Excitation) {
        if (!g.block.is_unitary(1e-10)) throw DomainError(name + " block is not unitary");
    }
    std::set<int> seen;
    for (int w : g.wires()) {
        if (w < 0 || w >= wire_count)
            throw DomainError(name + " wire " + std::to_string(w) + " outside register of " +
                              std::to_string(wire_count));
        if (!seen.insert(w).second)
            throw DomainError(name + " uses wire " + std::to_string(w) + " more than once");
    }
    for (const auto& c : g.controls)
        if (c.polarity != 0 && c.polarity != 1) throw DomainError("control polarity must be 0 or 1");
}

namespace {

// Matrix on the gate's own wires, controls most significant, then targets.
Matrix local_matrix(const Gate& g) {
    const int m = static_cast<int>(g.controls.size());
    const int t = static_cast<int>(g.targets.size());
    const Eigen::Index tdim = Eigen::Index{1} << t;

    Matrix block = Matrix::Identity(tdim, tdim);
    cplx outside = 1.0;
    if (is_excitation_like(g.kind)) {
        const auto [src, tgt] = excitation_patterns(g);
        const auto s = static_cast<Eigen::Index>(pattern_value(src));
        const auto r = static_cast<Eigen::Index>(pattern_value(tgt));
        const U2Params u = excitation_block(g);
        if (g.kind == GateKind::GPlus || g.kind == GateKind::GMinus) {
            const double sign = g.kind == GateKind::GPlus ? 1.0 : -1.0;
            outside = std::exp(cplx{0.0, sign * g.angle});
            block *= outside;
        }
        block(s, s) = u.a;
        block(r, s) = u.b;
        block(s, r) = u.c;
        block(r, r) = u.d;
    } else {
        block = single_qubit_matrix(g);
    }

    const Eigen::Index dim = Eigen::Index{1} << (m + t);
    Matrix local = Matrix::Identity(dim, dim);
    std::uint64_t want = 0;
    for (int i = 0; i < m; ++i)
        want = (want << 1) | static_cast<std::uint64_t>(g.controls[static_cast<std::size_t>(i)].polarity);
    const Eigen::Index base = static_cast<Eigen::Index>(want) << t;
    local.block(base, base, tdim, tdim) = block;
    return local;
}

}  // namespace

Matrix gate_matrix(const Gate& g, int wire_count) {
    if (wire_count > kMaxFullWires)
        throw DomainError("dense gate matrix limited to " + std::to_string(kMaxFullWires) + " wires");
    validate(g, wire_count);
    const Matrix local = local_matrix(g);
    const std::vector<int> wires = g.wires();
    const int w = static_cast<int>(wires.size());

    // Packed positions of the gate wires, most significant local bit first.
    std::vector<std::uint64_t> pos(static_cast<std::size_t>(w));
    std::uint64_t gate_mask = 0;
    for (int i = 0; i < w; ++i) {
        pos[static_cast<std::size_t>(i)] = std::uint64_t{1} << (wire_count - 1 - wires[static_cast<std::size_t>(i)]);
        gate_mask |= pos[static_cast<std::size_t>(i)];
    }
    auto extract = [&](std::uint64_t full) {
        std::uint64_t l = 0;
        for (int i = 0; i < w; ++i) l = (l << 1) | static_cast<std::uint64_t>((full & pos[static_cast<std::size_t>(i)]) != 0);
        return l;
    };
    auto deposit = [&](std::uint64_t l) {
        std::uint64_t full = 0;
        for (int i = 0; i < w; ++i)
            if ((l >> (w - 1 - i)) & 1u) full |= pos[static_cast<std::size_t>(i)];
        return full;
    };

    const Eigen::Index dim = Eigen::Index{1} << wire_count;
    const Eigen::Index ldim = local.rows();
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const auto uj = static_cast<std::uint64_t>(j);
        const std::uint64_t rest = uj & ~gate_mask;
        const auto lj = static_cast<Eigen::Index>(extract(uj));
        for (Eigen::Index li = 0; li < ldim; ++li) {
            const cplx v = local(li, lj);
            if (v != cplx{0.0}) out(static_cast<Eigen::Index>(rest | deposit(static_cast<std::uint64_t>(li))), j) = v;
        }
    }
    return out;
}

Gate adjoint(const Gate& g) {
    Gate a = g;
    switch (g.kind) {
        case GateKind::GivensReal:
        case GateKind::DoubleExcitation:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::Phase:
        case GateKind::GPlus:
        case GateKind::GMinus:
            a.angle = -g.angle;
            break;
        case GateKind::SingleExcitation:
        case GateKind::Excitation:
            a.block = U2Params::from_matrix(g.block.matrix().adjoint());
            break;
        default:
            break;  // self-inverse
    }
    return a;
}

SpinLabeling parse_spin_labels(std::string_view s) {
    SpinLabeling labels;
    labels.reserve(s.size());
    for (char ch : s) {
        if (ch == 'u' || ch == 'U' || ch == 'a') labels.push_back(Spin::Up);
        else if (ch == 'd' || ch == 'D' || ch == 'b') labels.push_back(Spin::Down);
        else throw DomainError("spin labels must be u/d characters: " + std::string(s));
    }
    return labels;
}

SpinReport check_spin_conserving(std::span<const Gate> gates, const SpinLabeling& labels) {
    SpinReport report;
    auto violate = [&](std::size_t index, const Gate& g, const std::string& why) {
        std::ostringstream os;
        os << "gate " << index << " (" << kind_name(g.kind) << " on";
        for (int w : g.targets) os << ' ' << w;
        os << "): " << why;
        report.violations.push_back(os.str());
        report.conserving = false;
    };
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (!is_particle_conserving(g)) {
            violate(i, g, "not particle-conserving");
            continue;
        }
        if (!is_excitation_like(g.kind)) continue;
        const auto [src, tgt] = excitation_patterns(g);
        std::multiset<Spin> from, to;
        bool labelled = true;
        for (std::size_t j = 0; j < g.targets.size(); ++j) {
            const int w = g.targets[j];
            if (w < 0 || static_cast<std::size_t>(w) >= labels.size()) {
                labelled = false;
                break;
            }
            if (src[j] == '1') from.insert(labels[static_cast<std::size_t>(w)]);
            if (tgt[j] == '1') to.insert(labels[static_cast<std::size_t>(w)]);
        }
        if (!labelled) violate(i, g, "touches a wire without a spin label");
        else if (from != to) violate(i, g, "couples spin-orbitals of different spin");
    }
    return report;
}

}  // namespace givens
