#pragma once

// Gate species and their exact matrix semantics.
//
// Every gate is a value: a kind, ordered target wires, and controls carrying
// their own polarity. Dense matrices use wire 0 as the most significant
// tensor factor, matching the printed occupation strings.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "givens/common.hpp"

namespace givens {

/// 2x2 block stored column-first: column one is (a, b), column two is (c, d).
/// On an excitation gate with source pattern s and target pattern t this means
///   G|s> = a|s> + b|t>,   G|t> = c|s> + d|t>.
struct U2Params {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Eigen::Matrix2cd matrix() const;
    static U2Params from_matrix(const Eigen::Matrix2cd& m);
    static U2Params identity() { return {}; }

    bool is_unitary(double tol = 1e-12) const;
    /// Frobenius distance from the identity block.
    double distance_from_identity() const;

    friend bool operator==(const U2Params&, const U2Params&) = default;
};

/// Real Givens rotation: (cos t, sin t, -sin t, cos t).
U2Params givens_real(double theta);

enum class GateKind {
    GivensReal,        // real single excitation, angle
    SingleExcitation,  // general U(2) on |01>,|10>
    Excitation,        // order-l excitation on 2l wires with explicit patterns
    DoubleExcitation,  // real order-2 excitation |0011> <-> |1100>, angle
    Swap,
    Fredkin,           // SWAP with exactly one control
    CNOT,              // X with exactly one polarity-1 control
    RY,
    RZ,
    Phase,             // diag(1, e^{i angle})
    Hadamard,
    PauliX,
    PauliY,
    PauliZ,
    GPlus,   // e^{+i angle} outside the rotated pair, rotation inside
    GMinus,  // e^{-i angle} outside the rotated pair, rotation inside
};

std::string_view kind_name(GateKind kind);
GateKind kind_from_name(std::string_view name);

struct Control {
    int wire = 0;
    int polarity = 1;
    friend bool operator==(const Control&, const Control&) = default;
};

struct Gate {
    GateKind kind = GateKind::PauliZ;
    std::vector<int> targets;
    std::vector<Control> controls;
    U2Params block;      // SingleExcitation, Excitation
    double angle = 0.0;  // GivensReal, DoubleExcitation, RY, RZ, Phase, GPlus, GMinus
    std::string source;  // Excitation only; printed pattern over targets
    std::string target;  // Excitation only
    std::string param;   // variational parameter name, empty when fixed

    /// All wires the gate touches: controls first, then targets.
    std::vector<int> wires() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

Gate givens_gate(double theta, int w0, int w1);
Gate single_excitation(const U2Params& u, int w0, int w1);
Gate excitation(const U2Params& u, std::vector<int> targets, std::string source,
                std::string target);
Gate double_excitation(double theta, int w0, int w1, int w2, int w3);
Gate swap_gate(int w0, int w1);
Gate fredkin(Control control, int w0, int w1);
Gate cnot(int control, int target);
Gate ry(double theta, int wire);
Gate rz(double theta, int wire);
Gate phase(double phi, int wire);
Gate hadamard(int wire);
Gate pauli_x(int wire);
Gate pauli_y(int wire);
Gate pauli_z(int wire);
Gate g_plus(double theta, std::vector<int> targets);
Gate g_minus(double theta, std::vector<int> targets);

/// Copy of `g` with extra controls appended.
Gate with_controls(Gate g, std::span<const Control> extra);

/// True for gates whose action pairs basis states of equal weight or is diagonal.
bool is_particle_conserving(const Gate& g);

/// True for kinds that rotate a pair of target patterns (SWAP and Fredkin included).
bool is_excitation_like(GateKind kind);

/// True for kinds acting on a single target wire with a 2x2 matrix.
bool is_single_qubit_kind(GateKind kind);

struct PatternPair {
    std::string source;
    std::string target;
};

/// Source/target patterns of an excitation-like gate.
PatternPair excitation_patterns(const Gate& g);

/// The 2x2 block of an excitation-like gate, in (source, target) order.
U2Params excitation_block(const Gate& g);

/// The 2x2 matrix of a single-qubit kind in the (|0>, |1>) basis.
Eigen::Matrix2cd single_qubit_matrix(const Gate& g);

/// Excitation order of an excitation-like gate.
int excitation_order(const Gate& g);

/// Throws DomainError on overlapping or out-of-range wires and malformed gates.
void validate(const Gate& g, int wire_count);

/// Dense unitary on 2^wire_count, built by embedding the gate's local matrix.
Matrix gate_matrix(const Gate& g, int wire_count);

/// Inverse gate.
Gate adjoint(const Gate& g);

enum class Spin { Up, Down };
using SpinLabeling = std::vector<Spin>;

/// Parses a string of 'u'/'d' (or 'a'/'b') characters, one per wire.
SpinLabeling parse_spin_labels(std::string_view s);

struct SpinReport {
    bool conserving = true;
    std::vector<std::string> violations;
};

/// Every excitation must move particles between wires carrying the same spin
/// labels; non-conserving gates are reported as violations too.
SpinReport check_spin_conserving(std::span<const Gate> gates, const SpinLabeling& labels);

}  // namespace givens
