#include "givens/kernels.hpp"

#include <array>
#include <vector>

namespace givens {

namespace {

constexpr std::int64_t kParallelThreshold = 1 << 12;

std::uint64_t pattern_bits(const std::string& p, const std::vector<int>& wires, int n) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < wires.size(); ++i)
        if (p[i] == '1') v |= wire_mask(n, wires[i]);
    return v;
}

inline void update_pair(cplx& lo, cplx& hi, const PairOp& op) {
    const cplx a = lo, b = hi;
    lo = op.m00 * a + op.m01 * b;
    hi = op.m10 * a + op.m11 * b;
}

}  // namespace

PairOp make_pair_op(const Gate& g, int wire_count) {
    validate(g, wire_count);
    PairOp op;
    for (const auto& c : g.controls) {
        const auto m = wire_mask(wire_count, c.wire);
        op.care |= m;
        if (c.polarity) op.match |= m;
    }
    if (is_excitation_like(g.kind)) {
        const auto [src, tgt] = excitation_patterns(g);
        std::uint64_t target_mask = 0;
        for (int w : g.targets) target_mask |= wire_mask(wire_count, w);
        op.care |= target_mask;
        op.match |= pattern_bits(src, g.targets, wire_count);
        op.flip = target_mask;
        const U2Params u = excitation_block(g);
        op.m00 = u.a;
        op.m01 = u.c;
        op.m10 = u.b;
        op.m11 = u.d;
        if (g.kind == GateKind::GPlus) op.outside = std::exp(cplx{0.0, g.angle});
        if (g.kind == GateKind::GMinus) op.outside = std::exp(cplx{0.0, -g.angle});
    } else {
        const auto t = wire_mask(wire_count, g.targets.front());
        op.care |= t;
        op.flip = t;
        const Eigen::Matrix2cd m = single_qubit_matrix(g);
        op.m00 = m(0, 0);
        op.m01 = m(0, 1);
        op.m10 = m(1, 0);
        op.m11 = m(1, 1);
    }
    return op;
}

void apply_pair_op(std::span<cplx> amps, int n, const PairOp& op) {
    const std::uint64_t hi_match = op.match ^ op.flip;
    if (op.has_outside()) {
        const auto dim = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for if (dim >= kParallelThreshold)
        for (std::int64_t i = 0; i < dim; ++i) {
            const auto u = static_cast<std::uint64_t>(i);
            const std::uint64_t key = u & op.care;
            if (key == op.match) {
                update_pair(amps[u], amps[u ^ op.flip], op);
            } else if (key != hi_match) {
                amps[u] *= op.outside;
            }
        }
        return;
    }

    // Enumerate the free bits and splice in the cared-for ones.
    std::array<std::uint64_t, 64> low{};
    int nc = 0;
    for (int b = 0; b < n; ++b)
        if ((op.care >> b) & 1u) low[static_cast<std::size_t>(nc++)] = (std::uint64_t{1} << b) - 1;
    const std::int64_t count = std::int64_t{1} << (n - nc);
    const std::uint64_t match = op.match, flip = op.flip;
    const cplx m00 = op.m00, m01 = op.m01, m10 = op.m10, m11 = op.m11;
    cplx* const a = amps.data();
    auto body = [&](std::int64_t j) {
        std::uint64_t i = static_cast<std::uint64_t>(j);
        for (int t = 0; t < nc; ++t) i = ((i & ~low[static_cast<std::size_t>(t)]) << 1) | (i & low[static_cast<std::size_t>(t)]);
        i |= match;
        const cplx lo = a[i], hi = a[i ^ flip];
        a[i] = m00 * lo + m01 * hi;
        a[i ^ flip] = m10 * lo + m11 * hi;
    };
    if (count < kParallelThreshold) {
        for (std::int64_t j = 0; j < count; ++j) body(j);
        return;
    }
#pragma omp parallel for
    for (std::int64_t j = 0; j < count; ++j) body(j);
}

void apply_pair_op(std::span<cplx> amps, const SubspaceMap& map, const PairOp& op) {
    const auto& packed = map.packed();
    const auto dim = static_cast<std::int64_t>(packed.size());
    const std::uint64_t care = op.care, match = op.match, flip = op.flip, hi_match = match ^ flip;
    const bool diag = op.diagonal(), outside = op.has_outside();
    if (!diag && !op.weight_preserving())
        throw DomainError("gate does not preserve Hamming weight");
    const cplx m00 = op.m00, m01 = op.m01, m10 = op.m10, m11 = op.m11, out = op.outside;
    cplx* const a = amps.data();
    auto body = [&](std::int64_t r) {
        const std::uint64_t x = packed[static_cast<std::size_t>(r)];
        const std::uint64_t key = x & care;
        if (key == match) {
            if (diag) {
                a[r] *= m00;
            } else {
                const auto s = map.index_of(static_cast<std::uint32_t>(x ^ flip));
                const cplx lo = a[r], hi = a[s];
                a[r] = m00 * lo + m01 * hi;
                a[s] = m10 * lo + m11 * hi;
            }
        } else if (key == hi_match) {
            if (diag) a[r] *= m11;
        } else if (outside) {
            a[r] *= out;
        }
    };
    if (dim < kParallelThreshold) {
        for (std::int64_t r = 0; r < dim; ++r) body(r);
        return;
    }
#pragma omp parallel for
    for (std::int64_t r = 0; r < dim; ++r) body(r);
}

}  // namespace givens
