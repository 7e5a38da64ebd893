#pragma once

// Compilation of particle-conserving unitaries into controlled single
// excitations.
//
// Pipeline: a d x d unitary on the weight-k subspace is factored into
// two-level rotations; each rotation becomes an excitation gate controlled on
// every wire it does not touch; each excitation is reduced to one controlled
// single excitation conjugated by a ladder of controlled SWAPs; finally every
// gate with two or more controls is rewritten with dual-rail ancillas and
// Fredkin gates so that no gate carries more than one control.

#include <array>
#include <vector>

#include "givens/basis.hpp"
#include "givens/gates.hpp"
#include "givens/simulator.hpp"

namespace givens {

/// U|x> = a|x> + b|y>, U|y> = c|x> + d|y>, identity on every other basis state.
struct TwoLevelRotation {
    BasisState x;
    BasisState y;
    U2Params block;
};

using GraySequence = std::vector<BasisState>;

/// Rotations in application order whose product is `u`. Elimination runs
/// column by column in lexicographic basis order; near-identity rotations are
/// dropped.
std::vector<TwoLevelRotation> two_level_decompose(const Matrix& u, const SubspaceMap& map);

/// Excitation gate on the wires where x and y differ, controlled on every
/// other wire with the polarity both states share there.
Gate lift_two_level(const TwoLevelRotation& t);

/// x = g_1, ..., g_{l+1} = y with one particle moved per step: the i-th
/// ascending wire occupied only in x moves to the i-th ascending wire occupied
/// only in y.
GraySequence gray_ladder(const BasisState& x, const BasisState& y);

/// Controlled-SWAP ladder, one controlled single excitation, reversed ladder.
Circuit compile_two_level(const TwoLevelRotation& t);

/// Rewrites a single-excitation or SWAP gate with m >= 2 controls using m-1
/// dual-rail ancillas (|0~> = |01>, |1~> = |10>) and CC-SWAPs built from
/// Fredkin gates. Gates with fewer than two controls are returned unchanged.
Circuit expand_multicontrol(const Gate& g, int n_primary);

/// CC-SWAP as three Fredkin gates plus one scratch ancilla. The scratch must
/// start (and is returned) in `ccswap_scratch_init(controls[1])`.
std::vector<Gate> ccswap_gates(const std::array<Control, 2>& controls,
                               const std::array<int, 2>& targets, int scratch);
int ccswap_scratch_init(const Control& second_control);

/// Standalone CC-SWAP on `n_primary` wires with the scratch ancilla declared
/// at wire n_primary.
Circuit decompose_ccswap(const std::array<Control, 2>& controls, const std::array<int, 2>& targets,
                         int n_primary);

struct CompileStages {
    std::vector<TwoLevelRotation> rotations;
    Circuit excitations;  // one multi-controlled excitation per rotation
    Circuit ladders;      // multi-controlled single excitations and SWAPs
    Circuit expanded;     // at most one control per gate, ancillas declared
};

CompileStages compile_stages(const Matrix& u, int n, int k);

/// Full pipeline; equal to compile_stages(...).expanded.
Circuit compile_unitary(const Matrix& u, int n, int k);

/// Max |entry| of U^dagger U - I.
double unitarity_defect(const Matrix& u);

}  // namespace givens
