#pragma once

// Lowering of excitation gates to CNOTs and single-qubit rotations.
//
// An excitation on 2l target wires is conjugated by CNOTs from its first
// target (the pivot) onto the others, which turns it into a single-qubit
// rotation on the pivot controlled on the remaining targets. That rotation is
// emitted as a uniformly controlled RY/RZ sequence. The result is exact,
// global phase included: a real single excitation becomes 4 CNOTs and 2 RY
// gates, a real double excitation 14 CNOTs and 8 RY gates.

#include <vector>

#include "givens/gates.hpp"
#include "givens/simulator.hpp"

namespace givens {

/// CNOT, RY, RZ, Phase, Hadamard and uncontrolled Pauli gates.
bool is_hardware_gate(const Gate& g);

/// Hardware gates equal to `g`, global phase included.
std::vector<Gate> lower_gate(const Gate& g);

/// Gate-by-gate lowering; ancilla declarations are kept.
Circuit lower_to_cnot_ry(const Circuit& c);

/// Max entry error between `g` and its lowering, both simulated on the
/// gate's own wires. Lowered circuits of compiled unitaries are too wide to
/// simulate whole; this checks them one gate at a time.
double lowering_error(const Gate& g);

}  // namespace givens
