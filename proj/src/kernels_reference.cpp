#include "givens/kernels.hpp"

#include <vector>

namespace givens::reference {

void apply_pair_op(std::span<cplx> amps, int n, const PairOp& op) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t hi_match = op.match ^ op.flip;
    const std::vector<cplx> in(amps.begin(), amps.end());
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t key = i & op.care;
        if (key == op.match) {
            amps[i] = op.m00 * in[i] + op.m01 * in[i ^ op.flip];
        } else if (key == hi_match) {
            amps[i] = op.m10 * in[i ^ op.flip] + op.m11 * in[i];
        } else {
            amps[i] = op.outside * in[i];
        }
    }
}

void apply_pair_op(std::span<cplx> amps, const SubspaceMap& map, const PairOp& op) {
    const auto& packed = map.packed();
    const std::uint64_t hi_match = op.match ^ op.flip;
    const std::vector<cplx> in(amps.begin(), amps.end());
    auto partner = [&](std::uint64_t x) -> cplx {
        const auto s = map.index_of(static_cast<std::uint32_t>(x ^ op.flip));
        if (s < 0) return 0.0;
        return in[static_cast<std::size_t>(s)];
    };
    for (std::size_t r = 0; r < packed.size(); ++r) {
        const std::uint64_t x = packed[r];
        const std::uint64_t key = x & op.care;
        if (key == op.match) {
            amps[r] = op.m00 * in[r] + op.m01 * partner(x);
        } else if (key == hi_match) {
            amps[r] = op.m10 * partner(x) + op.m11 * in[r];
        } else {
            amps[r] = op.outside * in[r];
        }
    }
}

}  // namespace givens::reference
