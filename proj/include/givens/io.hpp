#pragma once

// JSON file formats. Every document carries "format": 1.
//
//   state:      {"n", "k", "amplitudes": [{"bits", "re", "im"}]}, omitted states are 0
//   circuit:    {"n", "ancillas": [{"wires", "init", "final", "role"}],
//                "gates": [{"kind", "targets", "controls": [{"wire", "polarity"}], "params"}]}
//   unitary:    {"n", "k", "entries": [[row, col, re, im]]}, omitted entries are 0
//   observable: {"diag_paulis": [{"wires", "weight"}]} or {"entries": [[row, col, re, im]]}
//
// Doubles are written with round-trip precision, so re-reading a file gives
// back identical values.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "givens/basis.hpp"
#include "givens/simulator.hpp"
#include "givens/variational.hpp"

namespace givens {

using json = nlohmann::json;

json state_to_json(const SubspaceState& s);
SubspaceState state_from_json(const json& j);

json gate_to_json(const Gate& g);
Gate gate_from_json(const json& j);

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

struct UnitaryFile {
    int n = 0;
    int k = 0;
    Matrix u;
};

json unitary_to_json(const Matrix& u, int n, int k);
UnitaryFile unitary_from_json(const json& j);

json observable_to_json(const Observable& o, const SubspaceMap& map);
/// Entry-list observables take their dimension from `map`.
Observable observable_from_json(const json& j, const SubspaceMap& map);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace givens
