#pragma once

// Exact circuit execution on fixed-weight subspaces and on the full 2^n space.
//
// A Circuit acts on `n_primary` logical wires followed by declared ancilla
// wires. Runs that take primary-register states append the ancillas in their
// init patterns, and require them to end in their final patterns: any
// amplitude elsewhere is an IntegrityError, never silently dropped.

#include <string>
#include <vector>

#include "givens/basis.hpp"
#include "givens/common.hpp"
#include "givens/gates.hpp"

namespace givens {

struct FullState {
    int n = 0;
    Amplitudes amps;

    static FullState zero(int n);
    static FullState basis(int n, std::uint64_t packed);
    double norm() const;
};

struct AncillaDecl {
    std::vector<int> wires;
    std::string init;   // pattern over `wires`
    std::string final;  // required pattern after the circuit
    std::string role;   // free-form tag, e.g. "dual-rail" or "scratch"

    friend bool operator==(const AncillaDecl&, const AncillaDecl&) = default;
};

struct Circuit {
    int n_primary = 0;
    std::vector<AncillaDecl> ancillas;
    std::vector<Gate> gates;

    int ancilla_wire_count() const;
    int wire_count() const { return n_primary + ancilla_wire_count(); }

    /// Throws DomainError if gate wires or ancilla declarations are inconsistent.
    void validate() const;

    Circuit adjoint() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Gates of `b` appended after those of `a`; ancilla declarations must agree
/// on shared wires.
Circuit concatenate(const Circuit& a, const Circuit& b);

bool is_particle_conserving(const Circuit& c);

void apply_gate(SubspaceState& state, const Gate& g);
void apply_gate(FullState& state, const Gate& g);

/// Applies every gate to a state over all wires, ancillas included, with no
/// ancilla bookkeeping.
void apply_circuit(const Circuit& c, FullState& state);

/// Runs on a primary-register state; ancillas are appended and checked.
SubspaceState run(const Circuit& c, const SubspaceState& input);
FullState run(const Circuit& c, const FullState& input);

/// Dense 2^w unitary over every wire (w = wire_count()).
Matrix circuit_unitary_full(const Circuit& c);

/// Dense 2^n_primary block with ancillas prepared in their init patterns and
/// required to return to their final patterns.
Matrix circuit_unitary_primary(const Circuit& c);

/// d x d matrix with M[rank(y), rank(x)] = <y|C|x> over weight-k primary
/// states. Particle-conserving circuits run on the subspace; anything else is
/// simulated on the full space and must not leak out of weight k.
Matrix restrict_to_subspace(const Circuit& c, int k);

/// Largest squared norm leaving weight k (on the primary wires) over all
/// weight-k basis inputs, from full-space simulation.
double leakage(const Circuit& c, int k);

/// Largest squared norm found outside the ancilla final patterns over all
/// weight-k basis inputs.
double ancilla_residual(const Circuit& c, int k);

struct SectorReport {
    double leakage = 0.0;
    double ancilla_residual = 0.0;
};

/// Both of the above from one simulation pass.
SectorReport sector_check(const Circuit& c, int k);

}  // namespace givens
