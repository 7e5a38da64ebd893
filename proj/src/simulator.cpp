#include "givens/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#include "givens/kernels.hpp"

namespace givens {

namespace {

constexpr double kAncillaTolerance = 1e-10;
constexpr double kLeakTolerance = 1e-10;

struct AncillaLayout {
    int n_primary = 0;
    int n_anc = 0;
    std::uint64_t init = 0;
    std::uint64_t final = 0;

    int total() const { return n_primary + n_anc; }
    std::uint64_t anc_mask() const { return (std::uint64_t{1} << n_anc) - 1; }
    std::uint64_t extend(std::uint64_t primary) const { return (primary << n_anc) | init; }
    std::uint64_t primary_of(std::uint64_t full) const { return full >> n_anc; }
    int init_weight() const { return popcount(init); }
};

AncillaLayout layout_of(const Circuit& c) {
    c.validate();
    AncillaLayout l;
    l.n_primary = c.n_primary;
    l.n_anc = c.ancilla_wire_count();
    const int total = l.total();
    for (const auto& a : c.ancillas) {
        for (std::size_t i = 0; i < a.wires.size(); ++i) {
            const auto m = wire_mask(total, a.wires[i]);
            if (a.init[i] == '1') l.init |= m;
            if (a.final[i] == '1') l.final |= m;
        }
    }
    return l;
}

std::vector<PairOp> compile_ops(const Circuit& c) {
    std::vector<PairOp> ops;
    ops.reserve(c.gates.size());
    for (const auto& g : c.gates) ops.push_back(make_pair_op(g, c.wire_count()));
    return ops;
}

void require_full_size(int wires) {
    if (wires > kMaxFullWires)
        throw DomainError("full-space simulation limited to " + std::to_string(kMaxFullWires) +
                          " wires, circuit needs " + std::to_string(wires));
}

// Columns of a circuit over weight-k primary inputs, run on the full space.
// Returns (matrix, max weight leak, max ancilla residual).
struct FullColumns {
    Matrix m;
    double leak = 0.0;
    double residual = 0.0;
};

FullColumns full_columns(const Circuit& c, int k) {
    const AncillaLayout l = layout_of(c);
    require_full_size(l.total());
    const SubspaceMap map(c.n_primary, k);
    const auto ops = compile_ops(c);
    const auto d = static_cast<std::int64_t>(map.dim());
    FullColumns out;
    out.m = Matrix::Zero(d, d);
    std::vector<double> leak(static_cast<std::size_t>(d)), resid(static_cast<std::size_t>(d));

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t col = 0; col < d; ++col) {
        FullState s = FullState::basis(l.total(), l.extend(map.packed()[static_cast<std::size_t>(col)]));
        for (const auto& op : ops) apply_pair_op(s.amps, s.n, op);
        double lk = 0.0, rs = 0.0;
        for (std::size_t i = 0; i < s.amps.size(); ++i) {
            const double p = std::norm(s.amps[i]);
            if (p == 0.0) continue;
            if ((i & l.anc_mask()) != l.final) {
                rs += p;
                continue;
            }
            const auto prim = static_cast<std::uint32_t>(l.primary_of(i));
            if (popcount(prim) != k) {
                lk += p;
                continue;
            }
            out.m(map.index_of(prim), col) = s.amps[i];
        }
        leak[static_cast<std::size_t>(col)] = lk;
        resid[static_cast<std::size_t>(col)] = rs;
    }
    out.leak = *std::max_element(leak.begin(), leak.end());
    out.residual = *std::max_element(resid.begin(), resid.end());
    return out;
}

}  // namespace

FullState FullState::zero(int n) {
    require_full_size(n);
    return FullState{n, Amplitudes(std::size_t{1} << n, cplx{0.0})};
}

FullState FullState::basis(int n, std::uint64_t packed) {
    FullState s = zero(n);
    s.amps.at(packed) = 1.0;
    return s;
}

double FullState::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

int Circuit::ancilla_wire_count() const {
    int count = 0;
    for (const auto& a : ancillas) count += static_cast<int>(a.wires.size());
    return count;
}

void Circuit::validate() const {
    if (n_primary < 1) throw DomainError("circuit needs at least one primary wire");
    const int total = wire_count();
    std::set<int> seen;
    for (const auto& a : ancillas) {
        if (a.init.size() != a.wires.size() || a.final.size() != a.wires.size())
            throw DomainError("ancilla patterns must cover every ancilla wire");
        for (char ch : a.init + a.final)
            if (ch != '0' && ch != '1') throw DomainError("ancilla pattern must be binary");
        for (int w : a.wires) {
            if (w < n_primary || w >= total || !seen.insert(w).second)
                throw DomainError("ancilla wires must be distinct and follow the primary wires");
        }
    }
    for (const auto& g : gates) givens::validate(g, total);
}

Circuit Circuit::adjoint() const {
    Circuit a = *this;
    a.gates.clear();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) a.gates.push_back(givens::adjoint(*it));
    for (auto& decl : a.ancillas) std::swap(decl.init, decl.final);
    return a;
}

Circuit concatenate(const Circuit& a, const Circuit& b) {
    if (a.n_primary != b.n_primary) throw DomainError("cannot concatenate different registers");
    Circuit out = a;
    for (const auto& decl : b.ancillas) {
        auto same = std::find_if(out.ancillas.begin(), out.ancillas.end(),
                                 [&](const AncillaDecl& x) { return x.wires == decl.wires; });
        if (same == out.ancillas.end()) {
            out.ancillas.push_back(decl);
        } else if (same->final != decl.init) {
            throw DomainError("ancilla patterns do not chain across concatenation");
        } else {
            same->final = decl.final;
        }
    }
    out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
    out.validate();
    return out;
}

bool is_particle_conserving(const Circuit& c) {
    return std::all_of(c.gates.begin(), c.gates.end(),
                       [](const Gate& g) { return is_particle_conserving(g); });
}

void apply_gate(SubspaceState& state, const Gate& g) {
    if (!is_particle_conserving(g))
        throw DomainError(std::string(kind_name(g.kind)) +
                          " changes particle number and cannot act on a fixed-weight state");
    apply_pair_op(state.amps(), state.map(), make_pair_op(g, state.map().n()));
}

void apply_gate(FullState& state, const Gate& g) {
    apply_pair_op(state.amps, state.n, make_pair_op(g, state.n));
}

void apply_circuit(const Circuit& c, FullState& state) {
    if (state.n != c.wire_count()) throw DomainError("state size does not match circuit wires");
    for (const auto& op : compile_ops(c)) apply_pair_op(state.amps, state.n, op);
}

SubspaceState run(const Circuit& c, const SubspaceState& input) {
    const AncillaLayout l = layout_of(c);
    if (input.map().n() != c.n_primary) throw DomainError("state size does not match circuit");
    if (!is_particle_conserving(c))
        throw DomainError("circuit contains gates that change particle number");
    if (l.n_anc == 0) {
        SubspaceState s = input;
        for (const auto& op : compile_ops(c)) apply_pair_op(s.amps(), s.map(), op);
        return s;
    }

    const int k = input.map().k();
    const SubspaceMap ext(l.total(), k + l.init_weight());
    Amplitudes amps(ext.dim(), cplx{0.0});
    for (std::size_t r = 0; r < input.amps().size(); ++r)
        amps[static_cast<std::size_t>(ext.index_of(static_cast<std::uint32_t>(l.extend(input.map().packed()[r]))))] =
            input.amps()[r];
    for (const auto& op : compile_ops(c)) apply_pair_op(amps, ext, op);

    Amplitudes out(input.map().dim(), cplx{0.0});
    double residual = 0.0;
    for (std::size_t r = 0; r < amps.size(); ++r) {
        if (amps[r] == cplx{0.0}) continue;
        const std::uint64_t x = ext.packed()[r];
        const auto prim = static_cast<std::uint32_t>(l.primary_of(x));
        if ((x & l.anc_mask()) != l.final || popcount(prim) != k) {
            residual += std::norm(amps[r]);
            continue;
        }
        out[static_cast<std::size_t>(input.map().index_of(prim))] = amps[r];
    }
    if (residual > kAncillaTolerance)
        throw IntegrityError("ancillas not restored; leaked norm " + std::to_string(residual), residual);
    return SubspaceState(input.map(), std::move(out));
}

FullState run(const Circuit& c, const FullState& input) {
    const AncillaLayout l = layout_of(c);
    if (input.n != c.n_primary) throw DomainError("state size does not match circuit");
    FullState s = FullState::zero(l.total());
    for (std::size_t i = 0; i < input.amps.size(); ++i) s.amps[l.extend(i)] = input.amps[i];
    apply_circuit(c, s);
    FullState out = FullState::zero(l.n_primary);
    double residual = 0.0;
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
        if ((i & l.anc_mask()) == l.final) out.amps[l.primary_of(i)] = s.amps[i];
        else residual += std::norm(s.amps[i]);
    }
    if (residual > kAncillaTolerance)
        throw IntegrityError("ancillas not restored; leaked norm " + std::to_string(residual), residual);
    return out;
}

Matrix circuit_unitary_full(const Circuit& c) {
    c.validate();
    const int n = c.wire_count();
    require_full_size(n);
    const auto ops = compile_ops(c);
    const auto dim = std::int64_t{1} << n;
    Matrix u(dim, dim);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t col = 0; col < dim; ++col) {
        FullState s = FullState::basis(n, static_cast<std::uint64_t>(col));
        for (const auto& op : ops) apply_pair_op(s.amps, n, op);
        for (std::int64_t row = 0; row < dim; ++row) u(row, col) = s.amps[static_cast<std::size_t>(row)];
    }
    return u;
}

Matrix circuit_unitary_primary(const Circuit& c) {
    const AncillaLayout l = layout_of(c);
    require_full_size(l.total());
    const auto ops = compile_ops(c);
    const auto dim = std::int64_t{1} << l.n_primary;
    Matrix u(dim, dim);
    std::vector<double> resid(static_cast<std::size_t>(dim), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t col = 0; col < dim; ++col) {
        FullState s = FullState::basis(l.total(), l.extend(static_cast<std::uint64_t>(col)));
        for (const auto& op : ops) apply_pair_op(s.amps, s.n, op);
        for (std::size_t i = 0; i < s.amps.size(); ++i) {
            if ((i & l.anc_mask()) == l.final) u(static_cast<std::int64_t>(l.primary_of(i)), col) = s.amps[i];
            else resid[static_cast<std::size_t>(col)] += std::norm(s.amps[i]);
        }
    }
    const double residual = *std::max_element(resid.begin(), resid.end());
    if (residual > kAncillaTolerance)
        throw IntegrityError("ancillas not restored; leaked norm " + std::to_string(residual), residual);
    return u;
}

Matrix restrict_to_subspace(const Circuit& c, int k) {
    const AncillaLayout l = layout_of(c);
    if (!is_particle_conserving(c) || l.total() > kMaxSubspaceWires) {
        FullColumns cols = full_columns(c, k);
        if (cols.residual > kAncillaTolerance)
            throw IntegrityError("ancillas not restored; leaked norm " + std::to_string(cols.residual),
                                 cols.residual);
        if (cols.leak > kLeakTolerance)
            throw ConservationError("circuit leaks out of the weight-" + std::to_string(k) +
                                        " subspace: " + std::to_string(cols.leak),
                                    cols.leak);
        return cols.m;
    }

    const SubspaceMap map(c.n_primary, k);
    const auto d = static_cast<std::int64_t>(map.dim());
    Matrix m(d, d);
    std::exception_ptr failure;
    // Columns are independent; the inner kernels stay serial inside this region.
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t col = 0; col < d; ++col) {
        try {
            const SubspaceState out =
                run(c, SubspaceState::basis(map, map.state(static_cast<std::size_t>(col))));
            for (std::int64_t row = 0; row < d; ++row) m(row, col) = out.amps()[static_cast<std::size_t>(row)];
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return m;
}

SectorReport sector_check(const Circuit& c, int k) {
    const bool conserving = is_particle_conserving(c);
    if (c.wire_count() <= kMaxFullWires && (!conserving || !c.ancillas.empty())) {
        const FullColumns f = full_columns(c, k);
        return {f.leak, f.residual};
    }
    if (!conserving) require_full_size(c.wire_count());
    SectorReport out;
    if (c.ancillas.empty()) return out;
    const SubspaceMap map(c.n_primary, k);
    for (std::size_t col = 0; col < map.dim(); ++col) {
        try {
            run(c, SubspaceState::basis(map, map.state(col)));
        } catch (const IntegrityError& e) {
            out.ancilla_residual = std::max(out.ancilla_residual, e.leaked_norm());
        }
    }
    return out;
}

double leakage(const Circuit& c, int k) { return sector_check(c, k).leakage; }

double ancilla_residual(const Circuit& c, int k) { return sector_check(c, k).ancilla_residual; }

}  // namespace givens
