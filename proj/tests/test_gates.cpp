#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "givens/gates.hpp"
#include "givens/simulator.hpp"
#include "oracle.hpp"

using namespace givens;
using std::numbers::pi;

namespace {

U2Params random_u2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-pi, pi);
    const double t = u(rng), p1 = u(rng), p2 = u(rng), p3 = u(rng);
    const cplx i{0.0, 1.0};
    // Columns (a, b) and (c, d) of a generic U(2).
    const cplx a = std::exp(i * p1) * std::cos(t), b = std::exp(i * p2) * std::sin(t);
    const cplx ph = std::exp(i * p3);
    return {a, b, -ph * std::conj(b), ph * std::conj(a)};
}

std::vector<Gate> sample_gates(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-pi, pi);
    return {
        givens_gate(u(rng), 0, 2),
        single_excitation(random_u2(rng), 3, 1),
        excitation(random_u2(rng), {0, 1, 2, 3}, "0101", "1010"),
        double_excitation(u(rng), 0, 1, 2, 3),
        swap_gate(1, 3),
        fredkin({2, 0}, 0, 3),
        cnot(1, 2),
        ry(u(rng), 0),
        rz(u(rng), 1),
        phase(u(rng), 2),
        hadamard(3),
        pauli_x(0),
        pauli_y(1),
        pauli_z(2),
        g_plus(u(rng), {0, 3}),
        g_minus(u(rng), {1, 2}),
        g_plus(u(rng), {0, 1, 2, 3}),
        with_controls(givens_gate(u(rng), 1, 3), std::vector<Control>{{0, 1}, {2, 0}}),
        with_controls(single_excitation(random_u2(rng), 0, 1), std::vector<Control>{{3, 0}}),
        with_controls(ry(u(rng), 3), std::vector<Control>{{0, 1}, {1, 1}}),
    };
}

}  // namespace

TEST(Gates, GivensRealValues) {
    const U2Params z = givens_real(0.0);
    EXPECT_EQ(z.a, cplx{1.0});
    EXPECT_EQ(z.d, cplx{1.0});
    EXPECT_EQ(z.b, cplx{0.0});
    const U2Params q = givens_real(pi / 2);
    EXPECT_NEAR(std::abs(q.a), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(q.b - 1.0), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(q.c + 1.0), 0.0, 1e-16);
    const U2Params h = givens_real(pi / 4);
    for (cplx v : {h.a, h.b, h.c, h.d}) EXPECT_NEAR(std::abs(v), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Gates, EquationFourMatrix) {
    for (double t : {0.1, 0.7, pi / 3, 2.5}) {
        Matrix want = Matrix::Identity(4, 4);
        want(1, 1) = std::cos(t);
        want(1, 2) = -std::sin(t);
        want(2, 1) = std::sin(t);
        want(2, 2) = std::cos(t);
        EXPECT_LT(oracle::max_abs(gate_matrix(givens_gate(t, 0, 1), 2) - want), 1e-15);
    }
}

TEST(Gates, QuarterTurnSendsTenToMinusZeroOne) {
    const SubspaceMap m(2, 1);
    SubspaceState s = SubspaceState::basis(m, BasisState::from_string("10"));
    apply_gate(s, givens_gate(pi / 2, 0, 1));
    EXPECT_NEAR(std::abs(s.amplitude(BasisState::from_string("01")) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(BasisState::from_string("10"))), 0.0, 1e-15);
}

TEST(Gates, ControlledSingleExcitationMatchesEquationTwo) {
    std::mt19937_64 rng(5);
    const U2Params u = random_u2(rng);
    const Gate g = with_controls(single_excitation(u, 1, 2), std::vector<Control>{{0, 1}});
    Matrix want = Matrix::Identity(8, 8);
    want(5, 5) = u.a;  // |101>
    want(6, 5) = u.b;  // |110>
    want(5, 6) = u.c;
    want(6, 6) = u.d;
    EXPECT_LT(oracle::max_abs(gate_matrix(g, 3) - want), 1e-15);
}

TEST(Gates, FredkinIsPermutation) {
    Matrix want = Matrix::Identity(8, 8);
    want(5, 5) = want(6, 6) = 0.0;
    want(5, 6) = want(6, 5) = 1.0;
    EXPECT_LT(oracle::max_abs(gate_matrix(fredkin({0, 1}, 1, 2), 3) - want), 0.0 + 1e-16);
}

TEST(Gates, DoubleExcitationAction) {
    std::mt19937_64 rng(9);
    const U2Params u = random_u2(rng);
    const SubspaceMap m(4, 2);
    SubspaceState s = SubspaceState::basis(m, BasisState::from_string("0011"));
    apply_gate(s, excitation(u, {0, 1, 2, 3}, "0011", "1100"));
    EXPECT_NEAR(std::abs(s.amplitude(BasisState::from_string("0011")) - u.a), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(BasisState::from_string("1100")) - u.b), 0.0, 1e-15);
}

TEST(Gates, ZeroPolarityControl) {
    const Gate g = with_controls(givens_gate(0.4, 1, 2), std::vector<Control>{{0, 0}});
    const Matrix m = gate_matrix(g, 3);
    // Control wire forced to 1: the block on |1xx> is the identity.
    EXPECT_LT(oracle::max_abs(m.block(4, 4, 4, 4) - Matrix::Identity(4, 4)), 1e-16);
    const SubspaceMap map(3, 2);
    SubspaceState s = SubspaceState::basis(map, BasisState::from_string("101"));
    apply_gate(s, g);
    EXPECT_EQ(s.amplitude(BasisState::from_string("101")), cplx{1.0});
}

TEST(Gates, MatricesAreUnitaryAndMatchOracle) {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 5; ++rep)
        for (const Gate& g : sample_gates(rng)) {
            const Matrix m = gate_matrix(g, 4);
            EXPECT_LT(oracle::max_abs(m * m.adjoint() - Matrix::Identity(16, 16)), 1e-12) << kind_name(g.kind);
            EXPECT_LT(oracle::max_abs(m - oracle::gate(g, 4)), 1e-14) << kind_name(g.kind);
        }
}

TEST(Gates, ConservingKindsNeverChangeWeight) {
    std::mt19937_64 rng(21);
    for (const Gate& g : sample_gates(rng)) {
        if (!is_particle_conserving(g)) continue;
        const Matrix m = gate_matrix(g, 4);
        for (Eigen::Index c = 0; c < 16; ++c)
            for (Eigen::Index r = 0; r < 16; ++r)
                if (popcount(static_cast<std::uint64_t>(r)) != popcount(static_cast<std::uint64_t>(c)))
                    ASSERT_LT(std::abs(m(r, c)), 1e-14) << kind_name(g.kind);
    }
}

TEST(Gates, NonConservingKindsAreFlagged) {
    for (const Gate& g : {pauli_x(0), pauli_y(0), hadamard(0), ry(0.3, 0), cnot(0, 1)})
        EXPECT_FALSE(is_particle_conserving(g)) << kind_name(g.kind);
    for (const Gate& g : {pauli_z(0), rz(0.3, 0), phase(0.2, 1), swap_gate(0, 1)})
        EXPECT_TRUE(is_particle_conserving(g)) << kind_name(g.kind);
}

TEST(Gates, ApplyOnFullStateMatchesMatrix) {
    std::mt19937_64 rng(33);
    const int n = 6;
    for (const Gate& base : sample_gates(rng)) {
        Gate g = base;
        for (auto& t : g.targets) t += 2;
        for (auto& c : g.controls) c.wire += 2;
        const Matrix m = oracle::gate(g, n);
        for (std::uint64_t x = 0; x < (1u << n); ++x) {
            FullState s = FullState::basis(n, x);
            apply_gate(s, g);
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                ASSERT_LT(std::abs(s.amps[static_cast<std::size_t>(r)] - m(r, static_cast<Eigen::Index>(x))), 1e-14)
                    << kind_name(g.kind) << " input " << x;
        }
    }
}

TEST(Gates, SubspaceRejectsNonConservingGates) {
    SubspaceState s = SubspaceState::basis(SubspaceMap(2, 1), BasisState::from_string("01"));
    EXPECT_THROW(apply_gate(s, pauli_x(0)), DomainError);
    EXPECT_THROW(apply_gate(s, hadamard(1)), DomainError);
    EXPECT_THROW(apply_gate(s, ry(0.1, 1)), DomainError);
}

TEST(Gates, GivensComposition) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int i = 0; i < 20; ++i) {
        const double t1 = u(rng), t2 = u(rng);
        const Matrix prod = gate_matrix(givens_gate(t1, 0, 1), 2) * gate_matrix(givens_gate(t2, 0, 1), 2);
        EXPECT_LT(oracle::max_abs(prod - gate_matrix(givens_gate(t1 + t2, 0, 1), 2)), 1e-14);
    }
}

TEST(Gates, AdjointInverts) {
    std::mt19937_64 rng(8);
    for (const Gate& g : sample_gates(rng)) {
        const Matrix p = gate_matrix(adjoint(g), 4) * gate_matrix(g, 4);
        EXPECT_LT(oracle::max_abs(p - Matrix::Identity(16, 16)), 1e-14) << kind_name(g.kind);
    }
}

TEST(Gates, Validation) {
    EXPECT_THROW(validate(givens_gate(0.1, 0, 0), 2), DomainError);
    EXPECT_THROW(validate(givens_gate(0.1, 0, 2), 2), DomainError);
    EXPECT_THROW(validate(with_controls(givens_gate(0.1, 0, 1), std::vector<Control>{{1, 1}}), 3), DomainError);
    EXPECT_THROW(validate(single_excitation({1.0, 1.0, 0.0, 1.0}, 0, 1), 2), DomainError);
    EXPECT_THROW(validate(excitation({}, {0, 1, 2, 3}, "0011", "0110"), 4), DomainError);
    EXPECT_THROW(validate(excitation({}, {0, 1, 2, 3}, "0011", "1101"), 4), DomainError);
    Gate f = swap_gate(0, 1);
    f.kind = GateKind::Fredkin;
    EXPECT_THROW(validate(f, 2), DomainError);
    EXPECT_THROW(validate(with_controls(g_plus(0.1, {0, 1}), std::vector<Control>{{2, 1}}), 3), DomainError);
    EXPECT_THROW(gate_matrix(pauli_x(0), 15), DomainError);
}

TEST(Gates, KindNamesRoundTrip) {
    for (auto k : {GateKind::GivensReal, GateKind::SingleExcitation, GateKind::Excitation, GateKind::DoubleExcitation,
                   GateKind::Swap, GateKind::Fredkin, GateKind::CNOT, GateKind::RY, GateKind::RZ, GateKind::Phase,
                   GateKind::Hadamard, GateKind::PauliX, GateKind::PauliY, GateKind::PauliZ, GateKind::GPlus,
                   GateKind::GMinus})
        EXPECT_EQ(kind_from_name(kind_name(k)), k);
    EXPECT_THROW(kind_from_name("Toffoli"), DomainError);
}

TEST(Gates, SpinConservation) {
    const SpinLabeling labels = parse_spin_labels("udud");
    const std::vector<Gate> ok{givens_gate(0.1, 0, 2), double_excitation(0.2, 0, 1, 2, 3)};
    EXPECT_TRUE(check_spin_conserving(ok, labels).conserving);

    const std::vector<Gate> bad{givens_gate(0.1, 0, 1)};
    const SpinReport r = check_spin_conserving(bad, labels);
    EXPECT_FALSE(r.conserving);
    EXPECT_EQ(r.violations.size(), 1u);

    // Moves down+down into up+down: spins do not match as multisets.
    const std::vector<Gate> mixed{excitation({}, {0, 1, 2, 3}, "0011", "1100")};
    EXPECT_FALSE(check_spin_conserving(mixed, parse_spin_labels("uddd")).conserving);
    // Same pair with a reordered target list is fine.
    const std::vector<Gate> reordered{excitation({}, {0, 2, 1, 3}, "0011", "1100")};
    EXPECT_TRUE(check_spin_conserving(reordered, parse_spin_labels("uudd")).conserving);

    const std::vector<Gate> flip{pauli_x(0)};
    EXPECT_FALSE(check_spin_conserving(flip, labels).conserving);
    EXPECT_THROW(parse_spin_labels("ux"), DomainError);
}
