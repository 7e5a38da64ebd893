#include "givens/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "givens/compiler.hpp"
#include "givens/io.hpp"
#include "givens/lowering.hpp"
#include "givens/random.hpp"
#include "givens/simulator.hpp"
#include "givens/stateprep.hpp"
#include "givens/variational.hpp"

namespace givens {

namespace {

constexpr double kReconstructionTolerance = 1e-8;
constexpr double kLoweringTolerance = 1e-10;
constexpr double kFidelityTolerance = 1e-10;
constexpr double kNormInputTolerance = 1e-6;
constexpr double kLeakTolerance = 1e-12;
constexpr double kAncillaTolerance = 1e-10;
constexpr double kGradientTolerance = 1e-6;

std::string num(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::map<std::string, int> kind_counts(const Circuit& c) {
    std::map<std::string, int> counts;
    for (const auto& g : c.gates) {
        std::string key(kind_name(g.kind));
        if (!g.controls.empty() && g.kind != GateKind::Fredkin && g.kind != GateKind::CNOT)
            key += "[" + std::to_string(g.controls.size()) + " ctrl]";
        ++counts[key];
    }
    return counts;
}

void report_circuit(std::ostream& out, const Circuit& c) {
    out << "gates: " << c.gates.size() << '\n';
    for (const auto& [kind, count] : kind_counts(c)) out << "  " << kind << ": " << count << '\n';
    out << "ancilla wires: " << c.ancilla_wire_count() << " (" << c.ancillas.size() << " declarations)\n";
}

double max_entry_error(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

SubspaceState normalized_input(const SubspaceState& s) {
    const double norm = s.norm();
    if (std::abs(norm - 1.0) > kNormInputTolerance)
        throw DomainError("state norm " + num(norm) + " differs from 1 by more than " + num(kNormInputTolerance));
    Amplitudes amps = s.amps();
    for (auto& a : amps) a /= norm;
    return SubspaceState(s.map(), std::move(amps));
}

// Runs any circuit on a weight-k state; non-conserving circuits go through
// the full space and must come back to weight k.
SubspaceState simulate(const Circuit& c, const SubspaceState& input, double& leak) {
    leak = 0.0;
    if (is_particle_conserving(c)) return run(c, input);
    const SubspaceMap& map = input.map();
    FullState full = FullState::zero(c.n_primary);
    for (std::size_t i = 0; i < map.dim(); ++i) full.amps[map.packed()[i]] = input.amps()[i];
    const FullState result = run(c, full);
    Amplitudes amps(map.dim());
    for (std::uint64_t x = 0; x < result.amps.size(); ++x) {
        const auto r = map.index_of(static_cast<std::uint32_t>(x));
        if (r >= 0)
            amps[static_cast<std::size_t>(r)] = result.amps[x];
        else
            leak += std::norm(result.amps[x]);
    }
    if (leak > kLeakTolerance) throw ConservationError("output leaves the weight-" + std::to_string(map.k()) + " sector", leak);
    return SubspaceState(map, std::move(amps));
}

struct Options {
    std::string unitary, state, circuit, observable, out;
    bool lower = false;
    bool minimize = false;
    bool ladder = false;
    std::string start;
    std::vector<std::string> chain;
    std::optional<int> k;
    std::string spin;
    double shift = std::numbers::pi / 2;
    bool fd_check = false;
    double fd_step = 1e-5;
    int n = 0;
    int kk = 0;
    std::uint64_t seed = 1;
    double threshold = 0.0;
};

int cmd_compile(const Options& o, std::ostream& out) {
    const UnitaryFile f = unitary_from_json(read_json(o.unitary));
    out << "input: n=" << f.n << " k=" << f.k << " d=" << f.u.rows() << '\n';
    out << "unitarity defect: " << num(unitarity_defect(f.u)) << '\n';
    const CompileStages stages = compile_stages(f.u, f.n, f.k);
    out << "two-level rotations: " << stages.rotations.size() << '\n';

    const double err = max_entry_error(restrict_to_subspace(stages.expanded, f.k), f.u);
    Circuit result = stages.expanded;
    double lower_err = 0.0;
    if (o.lower) {
        result = lower_to_cnot_ry(stages.expanded);
        for (const auto& g : stages.expanded.gates) lower_err = std::max(lower_err, lowering_error(g));
    }
    report_circuit(out, result);
    out << "reconstruction error: " << num(err) << " (tolerance " << num(kReconstructionTolerance) << ")\n";
    if (o.lower)
        out << "lowering error (per gate): " << num(lower_err) << " (tolerance " << num(kLoweringTolerance) << ")\n";
    if (!o.out.empty()) write_json(o.out, circuit_to_json(result));
    if (err > kReconstructionTolerance || lower_err > kLoweringTolerance) return kExitTolerance;
    return kExitOk;
}

int cmd_prepare(const Options& o, std::ostream& out) {
    const SubspaceState target = normalized_input(state_from_json(read_json(o.state)));
    const SubspaceMap& map = target.map();
    const BasisState start = o.start.empty() ? map.state(0) : BasisState::from_string(o.start);
    std::vector<ChainLink> links;
    for (const auto& link : o.chain) {
        const auto colon = link.find(':');
        if (colon == std::string::npos) throw DomainError("chain link must read REFERENCE:STATE, got " + link);
        links.push_back({BasisState::from_string(link.substr(0, colon)), BasisState::from_string(link.substr(colon + 1))});
    }
    const PrepPlan plan = plan_chain(target, start, links);
    const Circuit c = plan_to_circuit(plan, {o.minimize, o.ladder});
    const SubspaceState result = prepared_state(c, start, map.k());

    double diff = 0.0;
    for (std::size_t i = 0; i < map.dim(); ++i) diff = std::max(diff, std::abs(result.amps()[i] - target.amps()[i]));
    const double overlap = std::abs(inner(target, result));

    out << "start: " << start.to_string() << '\n';
    out << "rotations: " << plan.steps.size() << '\n';
    for (const auto& s : plan.steps)
        out << "  " << s.reference.to_string() << " -> " << s.state.to_string() << "  alpha=" << num(s.alpha.real())
            << (s.alpha.imag() != 0.0 ? (s.alpha.imag() < 0 ? "-" : "+") + num(std::abs(s.alpha.imag())) + "i" : "")
            << '\n';
    report_circuit(out, c);
    out << "fidelity |<target|out>|: " << num(overlap) << " (tolerance " << num(kFidelityTolerance) << ")\n";
    out << "max amplitude error: " << num(diff) << '\n';
    if (!o.out.empty()) write_json(o.out, circuit_to_json(c));
    return overlap < 1.0 - kFidelityTolerance ? kExitTolerance : kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const Circuit c = circuit_from_json(read_json(o.circuit));
    const SubspaceState input = state_from_json(read_json(o.state));
    if (input.map().n() != c.n_primary) throw DomainError("state and circuit register sizes differ");
    double leak = 0.0;
    const SubspaceState result = simulate(c, input, leak);
    out << "wires: " << c.n_primary << " primary + " << c.ancilla_wire_count() << " ancilla\n";
    out << "output norm: " << num(result.norm()) << '\n';
    out << "leakage: " << num(leak) << " (tolerance " << num(kLeakTolerance) << ")\n";
    out << "ancillas restored within " << num(kAncillaTolerance) << '\n';
    if (!o.out.empty()) write_json(o.out, state_to_json(result));
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Circuit c = circuit_from_json(read_json(o.circuit));
    const bool conserving = is_particle_conserving(c);
    out << "gate-level particle conservation: " << (conserving ? "yes" : "no") << '\n';
    int code = kExitOk;
    const int lo = o.k ? *o.k : 0, hi = o.k ? *o.k : c.n_primary;
    for (int k = lo; k <= hi; ++k) {
        const SectorReport r = sector_check(c, k);
        const double leak = r.leakage, resid = r.ancilla_residual;
        std::string resid_text;
        if (!c.ancillas.empty()) resid_text = "  ancilla residual " + num(resid);
        out << "k=" << k << ": leakage " << num(leak) << resid_text << '\n';
        if (leak > kLeakTolerance || resid > kAncillaTolerance) code = kExitTolerance;
    }
    out << "tolerances: leakage " << num(kLeakTolerance) << ", ancilla " << num(kAncillaTolerance) << '\n';
    report_circuit(out, c);
    if (!o.spin.empty()) {
        const SpinReport r = check_spin_conserving(c.gates, parse_spin_labels(o.spin));
        out << "spin conserving: " << (r.conserving ? "yes" : "no") << '\n';
        for (const auto& v : r.violations) out << "  " << v << '\n';
        if (!r.conserving) code = kExitTolerance;
    }
    return code;
}

int cmd_grad(const Options& o, std::ostream& out) {
    const Circuit c = circuit_from_json(read_json(o.circuit));
    const SubspaceState psi = normalized_input(state_from_json(read_json(o.state)));
    const Observable k = observable_from_json(read_json(o.observable), psi.map());
    Binding b;
    for (const auto& g : c.gates)
        if (!g.param.empty()) b[g.param] = g.angle;

    out << "cost: " << num(expectation(c, b, k, psi)) << '\n';
    out << "shift: " << num(o.shift) << '\n';
    out << std::left << std::setw(24) << "parameter" << std::setw(26) << "theta" << std::setw(26) << "parameter-shift";
    if (o.fd_check) out << "finite-difference";
    out << '\n';
    double worst = 0.0;
    for (const auto& p : parameters(c)) {
        const double ps = parameter_shift_grad(c, b, k, psi, p, o.shift);
        out << std::setw(24) << p << std::setw(26) << num(b[p]) << std::setw(26) << num(ps);
        if (o.fd_check) {
            const double fd = finite_diff_grad(c, b, k, psi, p, o.fd_step);
            worst = std::max(worst, std::abs(ps - fd));
            out << num(fd);
        }
        out << '\n';
    }
    if (o.fd_check) {
        out << "max |ps - fd|: " << num(worst) << " (h " << num(o.fd_step) << ", tolerance " << num(kGradientTolerance)
            << ")\n";
        if (worst > kGradientTolerance) return kExitTolerance;
    }
    return kExitOk;
}

int cmd_select(const Options& o, std::ostream& out) {
    const Circuit c = circuit_from_json(read_json(o.circuit));
    const SubspaceState psi = normalized_input(state_from_json(read_json(o.state)));
    const Observable k = observable_from_json(read_json(o.observable), psi.map());
    const AdaptiveResult r = adaptive_select(c, k, psi, o.threshold, o.seed);
    const auto names = parameters(c);
    out << "seed: " << o.seed << "  threshold: " << num(o.threshold) << '\n';
    for (std::size_t i = 0; i < names.size(); ++i)
        out << "  " << std::left << std::setw(24) << names[i] << num(r.gradients[i])
            << (std::abs(r.gradients[i]) > o.threshold ? "  kept" : "") << '\n';
    out << "selected: " << r.selected.size() << " of " << names.size() << '\n';
    if (!o.out.empty()) write_json(o.out, circuit_to_json(r.circuit));
    return kExitOk;
}

int cmd_gen_unitary(const Options& o, std::ostream& out) {
    const SubspaceMap map(o.n, o.kk);
    std::mt19937_64 rng(o.seed);
    const Matrix u = random_unitary(static_cast<Eigen::Index>(map.dim()), rng);
    write_json(o.out, unitary_to_json(u, o.n, o.kk));
    out << "wrote " << map.dim() << "x" << map.dim() << " unitary to " << o.out << '\n';
    return kExitOk;
}

int cmd_gen_state(const Options& o, std::ostream& out) {
    const SubspaceMap map(o.n, o.kk);
    std::mt19937_64 rng(o.seed);
    write_json(o.out, state_to_json(random_state(map, rng)));
    out << "wrote " << map.dim() << "-amplitude state to " << o.out << '\n';
    return kExitOk;
}

int cmd_template(const Options& o, std::ostream& out) {
    std::optional<SpinLabeling> spin;
    if (!o.spin.empty()) spin = parse_spin_labels(o.spin);
    const Circuit c = template_singles_doubles(o.n, o.kk, spin);
    write_json(o.out, circuit_to_json(c));
    out << "wrote " << c.gates.size() << " parametrized gates to " << o.out << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compiler and exact simulator for particle-conserving circuits"};
    app.require_subcommand(1);
    Options o;

    auto* compile = app.add_subcommand("compile", "Compile a subspace unitary into controlled single excitations");
    compile->add_option("unitary", o.unitary, "Unitary file")->required()->check(CLI::ExistingFile);
    compile->add_option("-o,--out", o.out, "Circuit output file");
    compile->add_flag("--lower", o.lower, "Lower to CNOT and single-qubit rotations");

    auto* prepare = app.add_subcommand("prepare", "Synthesize a state-preparation circuit");
    prepare->add_option("state", o.state, "Target state file")->required()->check(CLI::ExistingFile);
    prepare->add_option("-o,--out", o.out, "Circuit output file");
    prepare->add_flag("--minimize-controls", o.minimize, "Drop controls that do not change the prepared state");
    prepare->add_flag("--ladder", o.ladder, "Emit SWAP ladders instead of multi-controlled excitations");
    prepare->add_option("--start", o.start, "Initial basis state (default: lexicographic minimum)");
    prepare->add_option("--chain", o.chain, "REFERENCE:STATE links, applied in order");

    auto* simulate_cmd = app.add_subcommand("simulate", "Run a circuit on a state");
    simulate_cmd->add_option("circuit", o.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
    simulate_cmd->add_option("state", o.state, "Input state file")->required()->check(CLI::ExistingFile);
    simulate_cmd->add_option("-o,--out", o.out, "Output state file");

    auto* verify = app.add_subcommand("verify", "Report leakage per weight sector and spin violations");
    verify->add_option("circuit", o.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
    verify->add_option("--k", o.k, "Only check this weight");
    verify->add_option("--spin-labels", o.spin, "One of u/d per wire");

    auto* grad = app.add_subcommand("grad", "Parameter-shift gradients of <psi|U^dag K U|psi>");
    grad->add_option("circuit", o.circuit, "Parametrized circuit file")->required()->check(CLI::ExistingFile);
    grad->add_option("observable", o.observable, "Observable file")->required()->check(CLI::ExistingFile);
    grad->add_option("state", o.state, "Input state file")->required()->check(CLI::ExistingFile);
    grad->add_option("--shift", o.shift, "Shift s in radians");
    grad->add_flag("--fd-check", o.fd_check, "Compare against central finite differences");
    grad->add_option("--fd-step", o.fd_step, "Finite-difference step");

    auto* select = app.add_subcommand("select", "Keep parametrized gates whose gradient exceeds a threshold");
    select->add_option("circuit", o.circuit, "Parametrized circuit file")->required()->check(CLI::ExistingFile);
    select->add_option("observable", o.observable, "Observable file")->required()->check(CLI::ExistingFile);
    select->add_option("state", o.state, "Input state file")->required()->check(CLI::ExistingFile);
    select->add_option("--threshold", o.threshold, "Gradient magnitude threshold")->required();
    select->add_option("--seed", o.seed, "Seed for the random initial angles");
    select->add_option("-o,--out", o.out, "Circuit output file");

    auto* gen_unitary = app.add_subcommand("gen-unitary", "Write a Haar-random subspace unitary");
    auto* gen_state = app.add_subcommand("gen-state", "Write a random normalized state");
    auto* tmpl = app.add_subcommand("template", "Write the singles-and-doubles template");
    for (auto* sub : {gen_unitary, gen_state, tmpl}) {
        sub->add_option("--n", o.n, "Wires")->required();
        sub->add_option("--k", o.kk, "Particles")->required();
        sub->add_option("-o,--out", o.out, "Output file")->required();
    }
    gen_unitary->add_option("--seed", o.seed, "Random seed");
    gen_state->add_option("--seed", o.seed, "Random seed");
    tmpl->add_option("--spin-labels", o.spin, "One of u/d per wire");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*compile) return cmd_compile(o, out);
        if (*prepare) return cmd_prepare(o, out);
        if (*simulate_cmd) return cmd_simulate(o, out);
        if (*verify) return cmd_verify(o, out);
        if (*grad) return cmd_grad(o, out);
        if (*select) return cmd_select(o, out);
        if (*gen_unitary) return cmd_gen_unitary(o, out);
        if (*gen_state) return cmd_gen_state(o, out);
        if (*tmpl) return cmd_template(o, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const IntegrityError& e) {
        err << "ancilla violation: " << e.what() << " (leaked norm " << num(e.leaked_norm()) << ")\n";
        return kExitTolerance;
    } catch (const ConservationError& e) {
        err << "conservation violation: " << e.what() << " (leakage " << num(e.leakage()) << ")\n";
        return kExitTolerance;
    } catch (const ToleranceError& e) {
        err << "tolerance failure: " << e.what() << '\n';
        return kExitTolerance;
    }
    return kExitUsage;
}

}  // namespace givens
