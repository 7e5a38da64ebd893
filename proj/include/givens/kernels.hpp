#pragma once

// Amplitude-pair kernels.
//
// Every gate species lowers to a PairOp: basis states whose `care` bits equal
// `match` are paired with the state obtained by toggling `flip`, and each pair
// is updated by a 2x2 matrix. States matching neither side are multiplied by
// `outside` (1 except for the G+/G- split gates). The parallel kernels only
// visit states that can be touched; the serial references in
// `givens::reference` scan every amplitude and exist for testing and
// benchmarking.

#include <cstdint>
#include <span>

#include "givens/basis.hpp"
#include "givens/common.hpp"
#include "givens/gates.hpp"

namespace givens {

struct PairOp {
    std::uint64_t care = 0;
    std::uint64_t match = 0;
    std::uint64_t flip = 0;
    cplx m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};
    cplx outside{1.0};

    bool diagonal() const { return m01 == cplx{0.0} && m10 == cplx{0.0}; }
    bool has_outside() const { return outside != cplx{1.0}; }
    /// Source and partner states carry the same Hamming weight.
    bool weight_preserving() const { return 2 * popcount(match & flip) == popcount(flip); }
};

PairOp make_pair_op(const Gate& g, int wire_count);

/// In-place update of a 2^n amplitude vector.
void apply_pair_op(std::span<cplx> amps, int n, const PairOp& op);

/// In-place update of amplitudes over a fixed-weight basis. The op must be
/// diagonal or weight-preserving.
void apply_pair_op(std::span<cplx> amps, const SubspaceMap& map, const PairOp& op);

namespace reference {

void apply_pair_op(std::span<cplx> amps, int n, const PairOp& op);
void apply_pair_op(std::span<cplx> amps, const SubspaceMap& map, const PairOp& op);

}  // namespace reference

}  // namespace givens
