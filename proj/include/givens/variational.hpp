#pragma once

// Parametrized Givens circuits: expectation values, parameter-shift gradients
// through the G+/G- generator split, the singles-and-doubles template and
// gradient-threshold gate selection.
//
// A parametrized gate is a GivensReal or DoubleExcitation gate with a
// non-empty `param` name; its angle is taken from a Binding at evaluation
// time. Each name may appear on one gate only.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "givens/basis.hpp"
#include "givens/gates.hpp"
#include "givens/simulator.hpp"

namespace givens {

using Binding = std::map<std::string, double>;

/// weight * prod_{w in wires} Z_w, with Z|0> = +|0>.
struct PauliZTerm {
    std::vector<int> wires;
    double weight = 0.0;
    friend bool operator==(const PauliZTerm&, const PauliZTerm&) = default;
};

/// Hermitian operator on a weight-k subspace: a sum of Z strings, or a dense
/// matrix in SubspaceMap order.
class Observable {
public:
    static Observable pauli_z(std::vector<PauliZTerm> terms);
    /// Throws DomainError unless `m` is Hermitian to 1e-12.
    static Observable dense(Matrix m);

    bool is_diagonal() const { return !dense_.has_value(); }
    const std::vector<PauliZTerm>& terms() const { return terms_; }

    /// Matrix in the order of `map`.
    Matrix matrix(const SubspaceMap& map) const;
    double expectation(const SubspaceState& psi) const;

private:
    std::vector<PauliZTerm> terms_;
    std::optional<Matrix> dense_;
};

/// Parameter names in gate order; throws DomainError on a repeated name.
std::vector<std::string> parameters(const Circuit& c);

/// Copy of `c` with every named angle taken from `b`; throws DomainError on an
/// unbound name.
Circuit bind(const Circuit& c, const Binding& b);

/// <psi|U^dag K U|psi> with U the bound circuit.
double expectation(const Circuit& c, const Binding& b, const Observable& k, const SubspaceState& psi);

/// dC/dtheta from U(theta) = U+(theta/2) U-(theta/2): one shift rule per
/// factor, four evaluations. The shift `s` is in units of theta, so each
/// factor's half-angle argument moves by s/2.
double parameter_shift_grad(const Circuit& c, const Binding& b, const Observable& k, const SubspaceState& psi,
                            const std::string& param, double shift = 1.5707963267948966);

/// (C(theta + h) - C(theta - h)) / 2h
double finite_diff_grad(const Circuit& c, const Binding& b, const Observable& k, const SubspaceState& psi,
                        const std::string& param, double h = 1e-5);

/// G+(theta) and G-(theta) as 4x4 matrices on wires (0, 1).
std::pair<Matrix, Matrix> g_plus_minus(double theta);

/// H+ (sign = +1) or H- (sign = -1) for an order-l excitation: sign times the
/// identity off the rotated pair, [[0, i], [-i, 0]] on (source, target).
Matrix split_generator(int sign, int order);

/// Every GivensReal (occupied, unoccupied) and DoubleExcitation (occupied
/// pair, unoccupied pair) on the reference 1^k 0^(n-k), singles first, each in
/// ascending wire order, angles zero. With labels, only gates moving particles
/// between equal spins are kept.
Circuit template_singles_doubles(int n, int k, const std::optional<SpinLabeling>& spin = std::nullopt);

struct AdaptiveResult {
    Circuit circuit;              // selected gates, angles reset to zero
    Binding initial;              // random starting point
    std::vector<double> gradients;  // one per parameter of the input, gate order
    std::vector<std::string> selected;
};

/// Angles drawn uniformly from [-pi, pi) with a seeded mt19937_64; keeps
/// parametrized gates whose |gradient| exceeds `threshold`. Fixed gates are
/// kept as they are.
AdaptiveResult adaptive_select(const Circuit& c, const Observable& k, const SubspaceState& psi, double threshold,
                               std::uint64_t seed);

}  // namespace givens
