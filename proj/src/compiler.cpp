#include "givens/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace givens {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kPruneTolerance = 1e-12;
constexpr double kZeroEntry = 1e-15;

std::vector<int> differing_wires(const BasisState& x, const BasisState& y) {
    std::vector<int> wires;
    for (int w = 0; w < x.size(); ++w)
        if (x.bit(w) != y.bit(w)) wires.push_back(w);
    return wires;
}

std::vector<Control> shared_controls(const BasisState& x, const BasisState& y) {
    std::vector<Control> controls;
    for (int w = 0; w < x.size(); ++w)
        if (x.bit(w) == y.bit(w)) controls.push_back({w, x.bit(w)});
    return controls;
}

Gate controlled_swap(std::vector<Control> controls, int w0, int w1) {
    Gate g = swap_gate(w0, w1);
    if (controls.size() == 1) g.kind = GateKind::Fredkin;
    g.controls = std::move(controls);
    return g;
}

// Hands out ancilla wires after the primary register, declaring each once.
class AncillaPool {
public:
    explicit AncillaPool(int n_primary) : next_(n_primary) {}

    /// First (logical-one) rail and second rail of dual-rail ancilla i.
    std::array<int, 2> dual_rail(std::size_t i) {
        while (rails_.size() <= i) {
            const std::array<int, 2> r{next_, next_ + 1};
            next_ += 2;
            rails_.push_back(r);
            decls_.push_back({{r[0], r[1]}, "01", "01", "dual-rail"});
        }
        return rails_[i];
    }

    int scratch(int init) {
        auto& slot = scratch_[static_cast<std::size_t>(init)];
        if (!slot) {
            slot = next_++;
            const std::string v(1, init ? '1' : '0');
            decls_.push_back({{*slot}, v, v, "scratch"});
        }
        return *slot;
    }

    const std::vector<AncillaDecl>& decls() const { return decls_; }

private:
    int next_;
    std::vector<std::array<int, 2>> rails_;
    std::array<std::optional<int>, 2> scratch_;
    std::vector<AncillaDecl> decls_;
};

void append_ccswap(std::vector<Gate>& out, const std::array<Control, 2>& controls,
                   const std::array<int, 2>& targets, AncillaPool& pool) {
    const int s = pool.scratch(ccswap_scratch_init(controls[1]));
    const auto gates = ccswap_gates(controls, targets, s);
    out.insert(out.end(), gates.begin(), gates.end());
}

void expand_into(const Gate& g, AncillaPool& pool, std::vector<Gate>& out) {
    const std::size_t m = g.controls.size();
    if (m < 2) {
        out.push_back(g);
        return;
    }
    if (g.kind != GateKind::SingleExcitation && g.kind != GateKind::GivensReal &&
        g.kind != GateKind::Swap && g.kind != GateKind::Fredkin)
        throw DomainError("multi-control expansion needs a single-excitation or SWAP base gate, got " +
                          std::string(kind_name(g.kind)));

    // The second control of the first CC-SWAP fixes its scratch value; prefer a
    // polarity-1 control there so one zero-initialized scratch serves everything.
    std::vector<Control> ctrl = g.controls;
    auto one = std::find_if(ctrl.begin(), ctrl.end(), [](const Control& c) { return c.polarity == 1; });
    if (one != ctrl.end() && one != ctrl.begin() + 1) std::iter_swap(ctrl.begin() + 1, one);

    std::vector<Gate> compute;
    auto rail = pool.dual_rail(0);
    append_ccswap(compute, {ctrl[0], ctrl[1]}, rail, pool);
    for (std::size_t i = 2; i < m; ++i) {
        const auto prev = rail;
        rail = pool.dual_rail(i - 1);
        append_ccswap(compute, {ctrl[i], Control{prev[0], 1}}, rail, pool);
    }

    out.insert(out.end(), compute.begin(), compute.end());
    Gate base = g;
    base.controls = {Control{rail[0], 1}};
    if (base.kind == GateKind::Swap) base.kind = GateKind::Fredkin;
    out.push_back(base);
    // Fredkin gates are self-inverse, so the uncompute is the mirror image.
    out.insert(out.end(), compute.rbegin(), compute.rend());
}

}  // namespace

double unitarity_defect(const Matrix& u) {
    if (u.rows() != u.cols()) return INFINITY;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

std::vector<TwoLevelRotation> two_level_decompose(const Matrix& u, const SubspaceMap& map) {
    const auto d = static_cast<Eigen::Index>(map.dim());
    if (u.rows() != d || u.cols() != d) throw DomainError("unitary dimension does not match subspace");
    if (unitarity_defect(u) > kUnitaryTolerance) throw DomainError("input matrix is not unitary");

    if (d == 1) {
        if (std::abs(u(0, 0) - 1.0) > kPruneTolerance)
            throw DomainError("a one-dimensional subspace only admits a global phase, which two-level "
                              "rotations cannot express");
        return {};
    }

    // Left-multiply by eliminators E_t until W = I; then U = E_1^dag ... E_K^dag.
    Matrix w = u;
    std::vector<TwoLevelRotation> eliminators;
    auto apply = [&](Eigen::Index j, Eigen::Index i, const Eigen::Matrix2cd& e) {
        for (Eigen::Index col = 0; col < d; ++col) {
            const cplx wj = w(j, col), wi = w(i, col);
            w(j, col) = e(0, 0) * wj + e(0, 1) * wi;
            w(i, col) = e(1, 0) * wj + e(1, 1) * wi;
        }
        eliminators.push_back({map.state(static_cast<std::size_t>(j)), map.state(static_cast<std::size_t>(i)),
                               U2Params::from_matrix(e)});
    };

    for (Eigen::Index j = 0; j + 2 < d; ++j) {
        bool eliminated = false;
        for (Eigen::Index i = j + 1; i < d; ++i) {
            const cplx beta = w(i, j);
            if (std::abs(beta) < kZeroEntry) continue;
            const cplx alpha = w(j, j);
            const double r = std::hypot(std::abs(alpha), std::abs(beta));
            Eigen::Matrix2cd e;
            e << std::conj(alpha) / r, std::conj(beta) / r, -beta / r, alpha / r;
            apply(j, i, e);
            eliminated = true;
        }
        if (!eliminated && std::abs(w(j, j) - 1.0) > kPruneTolerance) {
            Eigen::Matrix2cd e;
            e << std::conj(w(j, j)), 0.0, 0.0, 1.0;
            apply(j, j + 1, e);
        }
    }
    // The last 2x2 block is unitary on its own; its inverse finishes the job.
    const Eigen::Matrix2cd last = w.block(d - 2, d - 2, 2, 2);
    apply(d - 2, d - 1, last.adjoint());

    std::vector<TwoLevelRotation> out;
    for (auto it = eliminators.rbegin(); it != eliminators.rend(); ++it) {
        TwoLevelRotation t = *it;
        t.block = U2Params::from_matrix(it->block.matrix().adjoint());
        if (t.block.distance_from_identity() >= kPruneTolerance) out.push_back(t);
    }
    return out;
}

Gate lift_two_level(const TwoLevelRotation& t) {
    if (t.x.size() != t.y.size()) throw DomainError("two-level rotation on mismatched registers");
    const int l = excitation_order(t.x, t.y);
    if (l == 0) throw DomainError("two-level rotation needs distinct states");
    const std::vector<int> targets = differing_wires(t.x, t.y);
    const std::vector<Control> controls = shared_controls(t.x, t.y);

    Gate g;
    if (l == 1) {
        // Single excitations fix the source pattern to |01>; swap roles if x reads |10>.
        const U2Params& u = t.block;
        const U2Params block = t.x.bit(targets[0]) == 0 ? u : U2Params{u.d, u.c, u.b, u.a};
        g = single_excitation(block, targets[0], targets[1]);
    } else {
        std::string src, tgt;
        for (int w : targets) {
            src.push_back(t.x.bit(w) ? '1' : '0');
            tgt.push_back(t.y.bit(w) ? '1' : '0');
        }
        g = excitation(t.block, targets, src, tgt);
    }
    g.controls = controls;
    return g;
}

GraySequence gray_ladder(const BasisState& x, const BasisState& y) {
    if (x.size() != y.size() || x.weight() != y.weight())
        throw DomainError("Gray ladder needs two states of equal weight");
    if (x == y) throw DomainError("Gray ladder needs distinct states");
    std::vector<int> from, to;
    for (int w = 0; w < x.size(); ++w) {
        if (x.bit(w) && !y.bit(w)) from.push_back(w);
        if (!x.bit(w) && y.bit(w)) to.push_back(w);
    }
    GraySequence seq{x};
    for (std::size_t i = 0; i < from.size(); ++i)
        seq.push_back(seq.back().with_bit(from[i], 0).with_bit(to[i], 1));
    return seq;
}

Circuit compile_two_level(const TwoLevelRotation& t) {
    const GraySequence g = gray_ladder(t.x, t.y);
    const std::size_t l = g.size() - 1;
    std::vector<Gate> swaps;
    for (std::size_t i = 0; i + 1 < l; ++i) {
        const auto wires = differing_wires(g[i], g[i + 1]);
        swaps.push_back(controlled_swap(shared_controls(g[i], g[i + 1]), wires[0], wires[1]));
    }
    Circuit c;
    c.n_primary = t.x.size();
    c.gates = swaps;
    c.gates.push_back(lift_two_level({g[l - 1], t.y, t.block}));
    c.gates.insert(c.gates.end(), swaps.rbegin(), swaps.rend());
    return c;
}

int ccswap_scratch_init(const Control& second_control) { return 1 - second_control.polarity; }

std::vector<Gate> ccswap_gates(const std::array<Control, 2>& controls,
                               const std::array<int, 2>& targets, int scratch) {
    // The first Fredkin parks the second control's value in the scratch wire
    // (only when the first control fires), the second swaps the targets on it,
    // the third restores both wires.
    const Control& c0 = controls[0];
    const Control& c1 = controls[1];
    return {fredkin(c0, scratch, c1.wire), fredkin({scratch, c1.polarity}, targets[0], targets[1]),
            fredkin(c0, scratch, c1.wire)};
}

Circuit decompose_ccswap(const std::array<Control, 2>& controls, const std::array<int, 2>& targets,
                         int n_primary) {
    const int s = n_primary;
    const std::string v(1, ccswap_scratch_init(controls[1]) ? '1' : '0');
    Circuit c;
    c.n_primary = n_primary;
    c.ancillas.push_back({{s}, v, v, "scratch"});
    c.gates = ccswap_gates(controls, targets, s);
    c.validate();
    return c;
}

Circuit expand_multicontrol(const Gate& g, int n_primary) {
    AncillaPool pool(n_primary);
    Circuit c;
    c.n_primary = n_primary;
    expand_into(g, pool, c.gates);
    c.ancillas = pool.decls();
    c.validate();
    return c;
}

CompileStages compile_stages(const Matrix& u, int n, int k) {
    const SubspaceMap map(n, k);
    CompileStages s;
    s.rotations = two_level_decompose(u, map);
    s.excitations.n_primary = n;
    s.ladders.n_primary = n;
    AncillaPool pool(n);
    std::vector<Gate> expanded;
    for (const auto& t : s.rotations) {
        s.excitations.gates.push_back(lift_two_level(t));
        const Circuit ladder = compile_two_level(t);
        for (const auto& g : ladder.gates) {
            s.ladders.gates.push_back(g);
            expand_into(g, pool, expanded);
        }
    }
    s.expanded.n_primary = n;
    s.expanded.ancillas = pool.decls();
    s.expanded.gates = std::move(expanded);
    s.expanded.validate();
    return s;
}

Circuit compile_unitary(const Matrix& u, int n, int k) { return compile_stages(u, n, k).expanded; }

}  // namespace givens
