#include "givens/io.hpp"

#include <fstream>

namespace givens {

namespace {

constexpr int kFormat = 1;

void check_format(const json& j) {
    if (!j.is_object()) throw DomainError("expected a JSON object");
    if (j.contains("format") && j.at("format") != kFormat)
        throw DomainError("unsupported format version " + j.at("format").dump());
}

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw DomainError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// Wraps nlohmann parse/type errors so they surface as domain errors.
template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed ") + what + ": " + e.what());
    }
}

json entries_to_json(const Matrix& m) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (m(r, c) != cplx{0.0}) entries.push_back({r, c, m(r, c).real(), m(r, c).imag()});
    return entries;
}

Matrix entries_from_json(const json& entries, Eigen::Index dim) {
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 4) throw DomainError("matrix entry must be [row, col, re, im]");
        const auto r = e[0].get<Eigen::Index>(), c = e[1].get<Eigen::Index>();
        if (r < 0 || c < 0 || r >= dim || c >= dim) throw DomainError("matrix entry index out of range");
        m(r, c) = {e[2].get<double>(), e[3].get<double>()};
    }
    return m;
}

}  // namespace

json state_to_json(const SubspaceState& s) {
    json amps = json::array();
    for (std::size_t i = 0; i < s.amps().size(); ++i) {
        const cplx a = s.amps()[i];
        if (a == cplx{0.0}) continue;
        amps.push_back({{"bits", s.map().state(i).to_string()}, {"re", a.real()}, {"im", a.imag()}});
    }
    return {{"format", kFormat}, {"n", s.map().n()}, {"k", s.map().k()}, {"amplitudes", amps}};
}

SubspaceState state_from_json(const json& j) {
    return guarded("state", [&] {
        check_format(j);
        const SubspaceMap map(j.at("n").get<int>(), j.at("k").get<int>());
        Amplitudes amps(map.dim(), 0.0);
        for (const auto& a : j.at("amplitudes")) {
            const auto x = BasisState::from_string(a.at("bits").get<std::string>());
            if (x.size() != map.n() || x.weight() != map.k())
                throw DomainError("amplitude on " + x.to_string() + " is outside the declared subspace");
            amps[map.rank(x)] += cplx{a.at("re").get<double>(), a.value("im", 0.0)};
        }
        return SubspaceState(map, std::move(amps));
    });
}

json gate_to_json(const Gate& g) {
    json controls = json::array();
    for (const auto& c : g.controls) controls.push_back({{"wire", c.wire}, {"polarity", c.polarity}});
    json params = json::object();
    switch (g.kind) {
        case GateKind::SingleExcitation:
        case GateKind::Excitation:
            params["a"] = complex_pair(g.block.a);
            params["b"] = complex_pair(g.block.b);
            params["c"] = complex_pair(g.block.c);
            params["d"] = complex_pair(g.block.d);
            if (g.kind == GateKind::Excitation) {
                params["source"] = g.source;
                params["target"] = g.target;
            }
            break;
        case GateKind::GivensReal:
        case GateKind::DoubleExcitation:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::Phase:
        case GateKind::GPlus:
        case GateKind::GMinus:
            params["theta"] = g.angle;
            break;
        default:
            break;
    }
    if (!g.param.empty()) params["name"] = g.param;
    return {{"kind", kind_name(g.kind)}, {"targets", g.targets}, {"controls", controls}, {"params", params}};
}

Gate gate_from_json(const json& j) {
    return guarded("gate", [&] {
        Gate g;
        g.kind = kind_from_name(j.at("kind").get<std::string>());
        g.targets = j.at("targets").get<std::vector<int>>();
        for (const auto& c : j.value("controls", json::array()))
            g.controls.push_back({c.at("wire").get<int>(), c.value("polarity", 1)});
        const json params = j.value("params", json::object());
        if (params.contains("a")) {
            g.block = {complex_from(params.at("a")), complex_from(params.at("b")), complex_from(params.at("c")),
                       complex_from(params.at("d"))};
        }
        if (params.contains("theta")) g.angle = params.at("theta").get<double>();
        if (params.contains("source")) g.source = params.at("source").get<std::string>();
        if (params.contains("target")) g.target = params.at("target").get<std::string>();
        if (params.contains("name")) g.param = params.at("name").get<std::string>();
        return g;
    });
}

json circuit_to_json(const Circuit& c) {
    json ancillas = json::array();
    for (const auto& a : c.ancillas)
        ancillas.push_back({{"wires", a.wires}, {"init", a.init}, {"final", a.final}, {"role", a.role}});
    json gates = json::array();
    for (const auto& g : c.gates) gates.push_back(gate_to_json(g));
    return {{"format", kFormat}, {"n", c.n_primary}, {"ancillas", ancillas}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
    return guarded("circuit", [&] {
        check_format(j);
        Circuit c;
        c.n_primary = j.at("n").get<int>();
        for (const auto& a : j.value("ancillas", json::array())) {
            const auto init = a.at("init").get<std::string>();
            c.ancillas.push_back({a.at("wires").get<std::vector<int>>(), init, a.value("final", init),
                                  a.value("role", std::string{})});
        }
        for (const auto& g : j.at("gates")) c.gates.push_back(gate_from_json(g));
        c.validate();
        return c;
    });
}

json unitary_to_json(const Matrix& u, int n, int k) {
    return {{"format", kFormat}, {"n", n}, {"k", k}, {"entries", entries_to_json(u)}};
}

UnitaryFile unitary_from_json(const json& j) {
    return guarded("unitary", [&] {
        check_format(j);
        UnitaryFile f;
        f.n = j.at("n").get<int>();
        f.k = j.at("k").get<int>();
        const SubspaceMap map(f.n, f.k);
        f.u = entries_from_json(j.at("entries"), static_cast<Eigen::Index>(map.dim()));
        return f;
    });
}

json observable_to_json(const Observable& o, const SubspaceMap& map) {
    if (!o.is_diagonal()) return {{"format", kFormat}, {"entries", entries_to_json(o.matrix(map))}};
    json terms = json::array();
    for (const auto& t : o.terms()) terms.push_back({{"wires", t.wires}, {"weight", t.weight}});
    return {{"format", kFormat}, {"diag_paulis", terms}};
}

Observable observable_from_json(const json& j, const SubspaceMap& map) {
    return guarded("observable", [&] {
        check_format(j);
        if (j.contains("diag_paulis")) {
            std::vector<PauliZTerm> terms;
            for (const auto& t : j.at("diag_paulis"))
                terms.push_back({t.at("wires").get<std::vector<int>>(), t.at("weight").get<double>()});
            return Observable::pauli_z(std::move(terms));
        }
        if (j.contains("entries"))
            return Observable::dense(entries_from_json(j.at("entries"), static_cast<Eigen::Index>(map.dim())));
        throw DomainError("observable needs diag_paulis or entries");
    });
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace givens
