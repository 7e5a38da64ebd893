#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "givens/compiler.hpp"
#include "givens/io.hpp"
#include "givens/random.hpp"

using namespace givens;

namespace {

Gate named(Gate g, std::string name) {
    g.param = std::move(name);
    return g;
}

}  // namespace

TEST(Io, StateRoundTrip) {
    std::mt19937_64 rng(1);
    const SubspaceState s = random_state(SubspaceMap(6, 3), rng);
    const SubspaceState back = state_from_json(json::parse(state_to_json(s).dump()));
    EXPECT_EQ(back.map(), s.map());
    EXPECT_EQ(back.amps(), s.amps());
}

TEST(Io, StateFormat) {
    const json j = json::parse(R"({"n": 3, "k": 2, "amplitudes": [{"bits": "110", "re": 0.6, "im": 0.0},
                                                                     {"bits": "011", "re": 0.0, "im": -0.8}]})");
    const SubspaceState s = state_from_json(j);
    EXPECT_EQ(s.amplitude(BasisState::from_string("110")), cplx(0.6, 0.0));
    EXPECT_EQ(s.amplitude(BasisState::from_string("011")), cplx(0.0, -0.8));
    EXPECT_EQ(s.amplitude(BasisState::from_string("101")), cplx(0.0));
    EXPECT_THROW(state_from_json(json::parse(R"({"n": 3, "k": 2, "amplitudes": [{"bits": "100", "re": 1, "im": 0}]})")),
                 DomainError);
    EXPECT_THROW(state_from_json(json::parse(R"({"n": 3, "amplitudes": []})")), DomainError);
}

TEST(Io, CircuitRoundTrip) {
    std::mt19937_64 rng(2);
    const Matrix u = random_unitary(10, rng);
    Circuit c = compile_unitary(u, 5, 2);
    c.gates.push_back(named(givens_gate(0.25, 0, 3), "p"));
    c.gates.push_back(named(double_excitation(-0.5, 0, 1, 2, 3), "q"));
    c.gates.push_back(excitation(givens_real(0.3), {4, 1, 0, 2}, "0110", "1001"));
    c.gates.push_back(with_controls(rz(1.5, 2), std::vector<Control>{{0, 0}}));
    c.gates.push_back(g_minus(0.1, {2, 3}));
    c.gates.push_back(phase(0.2, 4));
    c.gates.push_back(fredkin({1, 0}, 2, 4));
    const Circuit back = circuit_from_json(json::parse(circuit_to_json(c).dump(2)));
    EXPECT_EQ(back, c);
}

TEST(Io, CircuitValidation) {
    EXPECT_THROW(circuit_from_json(json::parse(
                     R"({"n": 2, "gates": [{"kind": "GivensReal", "targets": [0, 2], "params": {"theta": 0.1}}]})")),
                 DomainError);
    EXPECT_THROW(circuit_from_json(json::parse(R"({"n": 2, "gates": [{"kind": "Toffoli", "targets": [0]}]})")),
                 DomainError);
    EXPECT_THROW(circuit_from_json(json::parse(R"({"gates": []})")), DomainError);
}

TEST(Io, UnitaryRoundTrip) {
    std::mt19937_64 rng(3);
    const Matrix u = random_unitary(20, rng);
    const UnitaryFile f = unitary_from_json(json::parse(unitary_to_json(u, 6, 3).dump()));
    EXPECT_EQ(f.n, 6);
    EXPECT_EQ(f.k, 3);
    EXPECT_EQ(f.u, u);
    // Sparse listing: omitted entries are zero.
    const UnitaryFile id = unitary_from_json(json::parse(R"({"n": 2, "k": 1, "entries": [[0, 0, 1, 0], [1, 1, 1, 0]]})"));
    EXPECT_EQ(id.u, Matrix::Identity(2, 2));
    EXPECT_THROW(unitary_from_json(json::parse(R"({"n": 2, "k": 1, "entries": [[2, 0, 1, 0]]})")), DomainError);
}

TEST(Io, ObservableRoundTrip) {
    const SubspaceMap map(4, 2);
    const Observable z = Observable::pauli_z({{{0}, 0.5}, {{1, 3}, -1.25}});
    const Observable zb = observable_from_json(json::parse(observable_to_json(z, map).dump()), map);
    EXPECT_TRUE(zb.is_diagonal());
    EXPECT_EQ(zb.terms(), z.terms());

    std::mt19937_64 rng(4);
    const Matrix r = random_unitary(6, rng);
    const Observable d = Observable::dense(r + r.adjoint());
    const Observable db = observable_from_json(json::parse(observable_to_json(d, map).dump()), map);
    EXPECT_EQ(db.matrix(map), d.matrix(map));
    EXPECT_THROW(observable_from_json(json::parse(R"({"weights": []})"), map), DomainError);
}

TEST(Io, Files) {
    const auto dir = std::filesystem::temp_directory_path() / "givens_io_test";
    std::filesystem::create_directories(dir);
    const json j = {{"format", 1}, {"x", 0.1}};
    write_json(dir / "a.json", j);
    EXPECT_EQ(read_json(dir / "a.json"), j);
    EXPECT_THROW(read_json(dir / "missing.json"), DomainError);
    std::filesystem::remove_all(dir);
}
