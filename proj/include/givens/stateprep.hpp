#pragma once

// Preparation of fixed-weight states by sequential two-level rotations.
//
// Every rotation moves amplitude from an already populated reference state to
// a fresh basis state: |r> -> alpha |r> + beta |x>. By default every state is
// split off the start state x_1 (the lexicographic minimum) in lexicographic
// order, with alpha real and non-negative except on the last rotation, which
// carries the phase of c_1. Chains let a rotation use any earlier state as its
// reference instead.

#include <vector>

#include "givens/basis.hpp"
#include "givens/gates.hpp"
#include "givens/simulator.hpp"

namespace givens {

struct PrepStep {
    BasisState reference;
    BasisState state;
    U2Params block;  // |reference> -> a|reference> + b|state>
    cplx alpha;      // residual factor left on the reference (= block.a)
};

struct PrepPlan {
    int n = 0;
    int k = 0;
    BasisState start;
    std::vector<PrepStep> steps;
};

/// One link of a chain: `state` is split off `reference`.
struct ChainLink {
    BasisState reference;
    BasisState state;
};

PrepPlan plan_preparation(const SubspaceState& target);

/// Plan from `start` following `links` in order; populated states absent from
/// the links are split off `start` afterwards, in lexicographic order. Throws
/// DomainError when a link's reference has not been populated yet.
PrepPlan plan_chain(const SubspaceState& target, const BasisState& start, const std::vector<ChainLink>& links);

/// Unitary block with real first entry: (a, c*, c, -a) in column-first order,
/// so U|0> = a|0> + c*|1> and U|1> = c|0> - a|1>. With a = 0 this is the
/// swap-like block [[0, c], [c*, 0]].
U2Params complete_u2_real_a(double a, cplx c);

struct PrepOptions {
    bool minimize_controls = false;
    /// Emit each rotation as a SWAP ladder around a controlled single
    /// excitation instead of one multi-controlled excitation.
    bool ladder = false;
};

/// Circuit on plan.n wires that maps |plan.start> to the target. With
/// minimize_controls, each control is dropped (highest wire first) whenever
/// the gate still produces the same intermediate state to 1e-10.
Circuit plan_to_circuit(const PrepPlan& plan, const PrepOptions& options = {});

/// plan_chain followed by plan_to_circuit.
Circuit prepare_chain(const SubspaceState& target, const BasisState& start, const std::vector<ChainLink>& links,
                      const PrepOptions& options = {});

/// Simulated output of the circuit from |start>.
SubspaceState prepared_state(const Circuit& c, const BasisState& start, int k);

}  // namespace givens
