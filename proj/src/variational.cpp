#include "givens/variational.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace givens {

namespace {

bool is_parametrizable(GateKind kind) {
    return kind == GateKind::GivensReal || kind == GateKind::DoubleExcitation;
}

std::size_t gate_of(const Circuit& c, const std::string& param) {
    for (std::size_t i = 0; i < c.gates.size(); ++i)
        if (c.gates[i].param == param) return i;
    throw DomainError("no gate carries parameter '" + param + "'");
}

double angle_of(const Binding& b, const std::string& param) {
    const auto it = b.find(param);
    if (it == b.end()) throw DomainError("parameter '" + param + "' is not bound");
    return it->second;
}

double z_string(const BasisState& x, const std::vector<int>& wires) {
    int parity = 0;
    for (int w : wires) parity ^= x.bit(w);
    return parity ? -1.0 : 1.0;
}

}  // namespace

Observable Observable::pauli_z(std::vector<PauliZTerm> terms) {
    Observable k;
    k.terms_ = std::move(terms);
    return k;
}

Observable Observable::dense(Matrix m) {
    if (m.rows() != m.cols()) throw DomainError("observable matrix must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("observable is not Hermitian");
    Observable k;
    k.dense_ = std::move(m);
    return k;
}

Matrix Observable::matrix(const SubspaceMap& map) const {
    const auto d = static_cast<Eigen::Index>(map.dim());
    if (dense_) {
        if (dense_->rows() != d) throw DomainError("observable dimension does not match subspace");
        return *dense_;
    }
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto x = map.state(static_cast<std::size_t>(i));
        double v = 0.0;
        for (const auto& t : terms_) {
            for (int w : t.wires)
                if (w < 0 || w >= map.n()) throw DomainError("Pauli term wire outside register");
            v += t.weight * z_string(x, t.wires);
        }
        m(i, i) = v;
    }
    return m;
}

double Observable::expectation(const SubspaceState& psi) const {
    const auto& a = psi.amps();
    const Eigen::Map<const Eigen::VectorXcd> v(a.data(), static_cast<Eigen::Index>(a.size()));
    const cplx e = v.dot(matrix(psi.map()) * v);
    const double scale = std::max(1.0, std::abs(e));
    if (std::abs(e.imag()) > 1e-12 * scale) throw ToleranceError("expectation value has an imaginary part");
    return e.real();
}

std::vector<std::string> parameters(const Circuit& c) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& g : c.gates) {
        if (g.param.empty()) continue;
        if (!is_parametrizable(g.kind))
            throw DomainError(std::string(kind_name(g.kind)) + " gates cannot carry a parameter");
        if (!seen.insert(g.param).second) throw DomainError("parameter '" + g.param + "' appears twice");
        names.push_back(g.param);
    }
    return names;
}

Circuit bind(const Circuit& c, const Binding& b) {
    parameters(c);
    Circuit out = c;
    for (auto& g : out.gates)
        if (!g.param.empty()) g.angle = angle_of(b, g.param);
    return out;
}

double expectation(const Circuit& c, const Binding& b, const Observable& k, const SubspaceState& psi) {
    return k.expectation(run(bind(c, b), psi));
}

double parameter_shift_grad(const Circuit& c, const Binding& b, const Observable& k, const SubspaceState& psi,
                            const std::string& param, double shift) {
    if (std::abs(std::sin(shift)) < 1e-12) throw DomainError("parameter shift needs sin(s) != 0");
    const Circuit bound = bind(c, b);
    const std::size_t at = gate_of(c, param);
    const Gate& g = bound.gates[at];
    if (!g.controls.empty()) throw DomainError("controlled parametrized gates have no generator split");
    const double theta = g.angle;

    // Replace the gate by U+(a/2) U-(b/2); the two factors commute.
    auto cost = [&](double plus, double minus) {
        Circuit split = bound;
        split.gates[at] = g_plus(plus / 2, g.targets);
        split.gates.insert(split.gates.begin() + static_cast<std::ptrdiff_t>(at) + 1, g_minus(minus / 2, g.targets));
        return k.expectation(run(split, psi));
    };
    const double d_plus = cost(theta + shift, theta) - cost(theta - shift, theta);
    const double d_minus = cost(theta, theta + shift) - cost(theta, theta - shift);
    return (d_plus + d_minus) / (2.0 * std::sin(shift));
}

double finite_diff_grad(const Circuit& c, const Binding& b, const Observable& k, const SubspaceState& psi,
                        const std::string& param, double h) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    Binding up = b, down = b;
    up[param] = angle_of(b, param) + h;
    down[param] = angle_of(b, param) - h;
    return (expectation(c, up, k, psi) - expectation(c, down, k, psi)) / (2.0 * h);
}

std::pair<Matrix, Matrix> g_plus_minus(double theta) {
    return {gate_matrix(g_plus(theta, {0, 1}), 2), gate_matrix(g_minus(theta, {0, 1}), 2)};
}

Matrix split_generator(int sign, int order) {
    if (sign != 1 && sign != -1) throw DomainError("generator sign must be +1 or -1");
    if (order < 1) throw DomainError("excitation order must be positive");
    // Source 0^l 1^l, target 1^l 0^l.
    const Eigen::Index s = (Eigen::Index{1} << order) - 1;
    const Eigen::Index t = s << order;
    const Eigen::Index dim = Eigen::Index{1} << (2 * order);
    Matrix h = Matrix::Identity(dim, dim) * static_cast<double>(sign);
    h(s, s) = 0.0;
    h(t, t) = 0.0;
    h(s, t) = cplx{0.0, 1.0};
    h(t, s) = cplx{0.0, -1.0};
    return h;
}

Circuit template_singles_doubles(int n, int k, const std::optional<SpinLabeling>& spin) {
    if (k < 0 || k > n) throw DomainError("template needs 0 <= k <= n");
    if (spin && static_cast<int>(spin->size()) != n) throw DomainError("spin labels must cover every wire");
    auto same = [&](int a, int b) { return !spin || (*spin)[static_cast<std::size_t>(a)] == (*spin)[static_cast<std::size_t>(b)]; };

    Circuit c;
    c.n_primary = n;
    for (int o = 0; o < k; ++o)
        for (int u = k; u < n; ++u) {
            if (!same(o, u)) continue;
            Gate g = givens_gate(0.0, o, u);
            g.param = "single_" + std::to_string(o) + "_" + std::to_string(u);
            c.gates.push_back(g);
        }
    for (int o1 = 0; o1 < k; ++o1)
        for (int o2 = o1 + 1; o2 < k; ++o2)
            for (int u1 = k; u1 < n; ++u1)
                for (int u2 = u1 + 1; u2 < n; ++u2) {
                    if (spin) {
                        std::multiset<Spin> from{(*spin)[static_cast<std::size_t>(o1)], (*spin)[static_cast<std::size_t>(o2)]};
                        std::multiset<Spin> to{(*spin)[static_cast<std::size_t>(u1)], (*spin)[static_cast<std::size_t>(u2)]};
                        if (from != to) continue;
                    }
                    Gate g = double_excitation(0.0, o1, o2, u1, u2);
                    g.param = "double_" + std::to_string(o1) + "_" + std::to_string(o2) + "_" + std::to_string(u1) +
                              "_" + std::to_string(u2);
                    c.gates.push_back(g);
                }
    return c;
}

AdaptiveResult adaptive_select(const Circuit& c, const Observable& k, const SubspaceState& psi, double threshold,
                               std::uint64_t seed) {
    if (!(threshold >= 0.0)) throw DomainError("threshold must be non-negative");
    // Explicit 53-bit mapping keeps the draw identical across standard libraries.
    std::mt19937_64 rng(seed);
    AdaptiveResult r;
    const auto names = parameters(c);
    for (const auto& p : names) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        r.initial[p] = -std::numbers::pi + 2.0 * std::numbers::pi * u;
    }
    std::set<std::string> keep;
    for (const auto& p : names) {
        const double grad = parameter_shift_grad(c, r.initial, k, psi, p);
        r.gradients.push_back(grad);
        if (std::abs(grad) > threshold) {
            keep.insert(p);
            r.selected.push_back(p);
        }
    }
    r.circuit.n_primary = c.n_primary;
    r.circuit.ancillas = c.ancillas;
    for (const auto& g : c.gates) {
        if (!g.param.empty() && !keep.count(g.param)) continue;
        Gate out = g;
        if (!g.param.empty()) out.angle = 0.0;
        r.circuit.gates.push_back(out);
    }
    return r;
}

}  // namespace givens
