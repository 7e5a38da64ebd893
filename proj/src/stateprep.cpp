#include "givens/stateprep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "givens/compiler.hpp"

namespace givens {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kZero = 1e-14;
constexpr double kMinimizeTolerance = 1e-10;

double max_diff(const Amplitudes& a, const Amplitudes& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Gate drop_control(Gate g, std::size_t index) {
    g.controls.erase(g.controls.begin() + static_cast<std::ptrdiff_t>(index));
    if (g.kind == GateKind::Fredkin && g.controls.empty()) g.kind = GateKind::Swap;
    if (g.kind == GateKind::Swap && g.controls.size() == 1) g.kind = GateKind::Fredkin;
    return g;
}

}  // namespace

U2Params complete_u2_real_a(double a, cplx c) {
    if (a < 0.0 || std::abs(a * a + std::norm(c) - 1.0) > kNormTolerance)
        throw DomainError("complete_u2_real_a needs a >= 0 and a^2 + |c|^2 = 1");
    // d = -sqrt(1 - |c|^2) = -a and b* = c sqrt(1 - |c|^2) / a = c.
    return {a, std::conj(c), c, -a};
}

PrepPlan plan_chain(const SubspaceState& target, const BasisState& start, const std::vector<ChainLink>& links) {
    const SubspaceMap& map = target.map();
    if (std::abs(target.norm() - 1.0) > kNormTolerance) throw DomainError("target state is not normalized");
    if (start.size() != map.n() || start.weight() != map.k()) throw DomainError("start state is outside the subspace");

    // Processing order: explicit links, then every other populated state off the start.
    std::vector<ChainLink> order;
    std::set<std::uint32_t> populated{start.bits()};
    for (const auto& l : links) {
        if (l.state.size() != map.n() || l.state.weight() != map.k() || l.reference.size() != map.n())
            throw DomainError("chain link outside the subspace");
        if (!populated.count(l.reference.bits()))
            throw DomainError("chain reference " + l.reference.to_string() + " is not populated before " +
                              l.state.to_string());
        if (!populated.insert(l.state.bits()).second)
            throw DomainError("chain populates " + l.state.to_string() + " twice");
        order.push_back(l);
    }
    for (std::size_t i = 0; i < map.dim(); ++i) {
        const auto x = map.state(i);
        if (std::abs(target.amps()[i]) > kZero && !populated.count(x.bits())) {
            populated.insert(x.bits());
            order.push_back({start, x});
        }
    }

    // Squared norm of each subtree, and the last link leaving each reference.
    std::map<std::uint32_t, double> weight;
    std::map<std::uint32_t, std::size_t> last_child;
    for (auto bits : populated) weight[bits] = std::norm(target.amplitude(BasisState(map.n(), bits)));
    for (std::size_t i = order.size(); i-- > 0;) {
        weight[order[i].reference.bits()] += weight[order[i].state.bits()];
        last_child.try_emplace(order[i].reference.bits(), i);
    }

    PrepPlan plan{map.n(), map.k(), start, {}};
    std::map<std::uint32_t, cplx> amp{{start.bits(), 1.0}};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& [r, x] = order[i];
        const cplx current = amp[r.bits()];
        const cplx want = last_child.count(x.bits()) ? cplx{std::sqrt(weight[x.bits()])} : target.amplitude(x);
        cplx beta = std::abs(current) > kZero ? want / current : cplx{0.0};
        cplx alpha;
        if (last_child[r.bits()] == i) {
            alpha = std::abs(current) > kZero ? target.amplitude(r) / current : cplx{1.0};
        } else {
            // Rounding can push |beta| a hair above one; clamp and renormalize.
            if (std::abs(beta) > 1.0) beta /= std::abs(beta);
            alpha = std::sqrt(std::max(0.0, 1.0 - std::norm(beta)));
        }
        const double scale = std::hypot(std::abs(alpha), std::abs(beta));
        alpha /= scale;
        beta /= scale;
        amp[r.bits()] = current * alpha;
        amp[x.bits()] = want;
        const U2Params block{alpha, beta, std::conj(beta), -std::conj(alpha)};
        if (block.distance_from_identity() < kZero) continue;
        plan.steps.push_back({r, x, block, alpha});
    }

    // A start state without children still has to pick up the phase of its coefficient.
    const cplx c_start = target.amplitude(start);
    if (!last_child.count(start.bits()) && std::abs(c_start - 1.0) > kZero) {
        if (map.dim() < 2) throw DomainError("a one-state subspace cannot carry a phase");
        const BasisState partner = map.state(map.rank(start) == 0 ? 1 : 0);
        plan.steps.push_back({start, partner, U2Params{c_start, 0.0, 0.0, 1.0}, c_start});
    }
    return plan;
}

PrepPlan plan_preparation(const SubspaceState& target) {
    return plan_chain(target, target.map().state(0), {});
}

Circuit plan_to_circuit(const PrepPlan& plan, const PrepOptions& options) {
    Circuit c;
    c.n_primary = plan.n;
    const SubspaceMap map(plan.n, plan.k);
    SubspaceState current = SubspaceState::basis(map, plan.start);
    for (const auto& step : plan.steps) {
        const TwoLevelRotation t{step.reference, step.state, step.block};
        const std::vector<Gate> gates =
            options.ladder ? compile_two_level(t).gates : std::vector<Gate>{lift_two_level(t)};
        for (Gate g : gates) {
            SubspaceState want = current;
            apply_gate(want, g);
            if (options.minimize_controls) {
                std::vector<int> wires;
                for (const auto& ctl : g.controls) wires.push_back(ctl.wire);
                std::sort(wires.rbegin(), wires.rend());
                for (int w : wires) {
                    const auto it = std::find_if(g.controls.begin(), g.controls.end(),
                                                 [w](const Control& ctl) { return ctl.wire == w; });
                    Gate candidate = drop_control(g, static_cast<std::size_t>(it - g.controls.begin()));
                    SubspaceState trial = current;
                    apply_gate(trial, candidate);
                    if (max_diff(trial.amps(), want.amps()) < kMinimizeTolerance) g = std::move(candidate);
                }
            }
            c.gates.push_back(std::move(g));
            current = std::move(want);
        }
    }
    return c;
}

Circuit prepare_chain(const SubspaceState& target, const BasisState& start, const std::vector<ChainLink>& links,
                      const PrepOptions& options) {
    return plan_to_circuit(plan_chain(target, start, links), options);
}

SubspaceState prepared_state(const Circuit& c, const BasisState& start, int k) {
    return run(c, SubspaceState::basis(SubspaceMap(c.n_primary, k), start));
}

}  // namespace givens
