// gme: command-line front end.
//
//   gme compute --state w:3
//   gme witness --state ghz:3 [--lambda2 0.7] [--out witness.json]
//   gme scan    --nx 101 --ny 101 [--out grid.csv]
//   gme verify  --witness witness.json --state w:3 [--samples 10000] [--seed 7]
//
// Exit codes: 0 success, 1 bad input or I/O failure, 2 solver did not
// converge, 3 lambda2 outside the witness window, 4 sampled violation of
// condition (i), 5 condition (ii) fails on the target.

#include "gme/io.hpp"
#include "gme/mixed.hpp"
#include "gme/solver.hpp"
#include "gme/witness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum ExitCode : int {
    kOk = 0,
    kBadInput = 1,
    kNotConverged = 2,
    kOutsideWindow = 3,
    kViolatesSeparable = 4,
    kFailsTarget = 5,
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
    return buf;
}

std::string complex_str(gme::Complex z) { return "(" + num(z.real()) + ", " + num(z.imag()) + ")"; }

void print_product(std::ostream& os, const gme::ProductState& phi) {
    for (std::size_t i = 0; i < phi.shape().parties(); ++i) {
        os << "  party " << i << ":";
        const auto& c = phi.factor(i);
        for (Eigen::Index p = 0; p < c.size(); ++p) os << ' ' << complex_str(c[p]);
        os << '\n';
    }
}

std::string dims_str(const gme::PartyShape& shape) {
    std::string s;
    for (std::size_t i = 0; i < shape.parties(); ++i) s += (i ? " " : "") + std::to_string(shape.dim(i));
    return s;
}

struct SolverFlags {
    gme::SolverConfig config;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tol", config.tol, "convergence tolerance")->capture_default_str();
        cmd->add_option("--max-iters", config.max_iters, "sweeps per start")->capture_default_str();
        cmd->add_option("--restarts", config.restarts, "random starts")->capture_default_str();
        cmd->add_option("--seed", config.seed, "seed for random starts")->capture_default_str();
    }

    void record(gme::RunManifest& m) const {
        m.parameters["tol"] = num(config.tol);
        m.parameters["max_iters"] = std::to_string(config.max_iters);
        m.parameters["restarts"] = std::to_string(config.restarts);
        m.seed = config.seed;
    }
};

void write_manifest(const std::optional<std::string>& path, gme::RunManifest m) {
    if (!path) return;
    m.tool_version = gme::version();
    gme::write_json_file(*path, m.to_json());
}

void print_solution(const std::string& label, const gme::PureState& psi, const gme::GmeResult& r) {
    std::cout << "state: " << label << '\n'
              << "dims: " << dims_str(psi.shape()) << '\n'
              << "lambda_max: " << num(r.lambda_max) << '\n'
              << "lambda_max2: " << num(r.lambda_max * r.lambda_max) << '\n'
              << "e_sin2: " << num(r.e_sin2) << '\n'
              << "converged: " << (r.converged ? "yes" : "NO") << '\n'
              << "iterations: " << r.iterations << '\n'
              << "starts_agreeing: " << r.starts_agreeing << " of " << r.starts << '\n'
              << "closest product state:\n";
    print_product(std::cout, r.closest);
}

int run_compute(const std::string& state, const SolverFlags& flags, const std::optional<std::string>& manifest) {
    const gme::PureState psi = gme::load_state(state);
    const gme::GmeResult r = gme::entanglement_eigenvalue(psi, flags.config);
    print_solution(state, psi, r);
    if (!r.converged) std::cout << "warning: no start converged within max-iters\n";

    gme::RunManifest m{"compute", {{"state", state}}, 0, "", {}};
    flags.record(m);
    m.results = {{"lambda_max", r.lambda_max},
                 {"lambda_max2", r.lambda_max * r.lambda_max},
                 {"e_sin2", r.e_sin2},
                 {"converged", r.converged ? 1.0 : 0.0}};
    write_manifest(manifest, m);
    return r.converged ? kOk : kNotConverged;
}

int run_witness(const std::string& state, std::optional<double> lambda2_arg, const SolverFlags& flags,
                const std::optional<std::string>& out, const std::optional<std::string>& manifest) {
    const gme::PureState psi = gme::load_state(state);
    const gme::GmeResult r = gme::entanglement_eigenvalue(psi, flags.config);
    const double lambda_max2 = r.lambda_max * r.lambda_max;
    std::cout << "state: " << state << '\n'
              << "lambda_max2: " << num(lambda_max2) << '\n'
              << "window: [" << num(lambda_max2) << ", 1)\n";

    const double lambda2 = lambda2_arg.value_or(lambda_max2);
    const gme::Witness w = gme::make_witness(psi, lambda2, lambda_max2);
    const double d = gme::detector_pure(w, psi);
    std::cout << "lambda2: " << num(w.as_structured().lambda2) << (lambda2_arg ? "" : " (optimal)") << '\n'
              << "detector: " << num(d) << '\n';
    if (out) {
        gme::write_json_file(*out, gme::witness_to_json(w));
        std::cout << "witness: " << *out << '\n';
    }
    if (!r.converged) std::cout << "warning: no start converged within max-iters\n";

    gme::RunManifest m{"witness", {{"state", state}}, 0, "", {}};
    flags.record(m);
    if (lambda2_arg) m.parameters["lambda2"] = num(*lambda2_arg);
    m.results = {{"lambda_max2", lambda_max2}, {"lambda2", lambda2}, {"detector", d}};
    write_manifest(manifest, m);
    return r.converged ? kOk : kNotConverged;
}

int run_scan(int nx, int ny, const std::optional<std::string>& out, const std::optional<std::string>& manifest) {
    const gme::DetectorGrid grid = gme::scan_grid(nx, ny);

    std::ofstream file;
    if (out) {
        file.open(*out);
        if (!file) throw std::runtime_error("cannot write " + *out);
    }
    std::ostream& csv = out ? static_cast<std::ostream&>(file) : std::cout;
    std::ostream& summary = out ? std::cout : std::cerr;

    csv << "x,y,detector\n";
    char line[96];
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.xs.size(); ++i) {
        for (std::size_t j = 0; j < grid.ys.size(); ++j) {
            const std::size_t k = i * grid.ys.size() + j;
            std::snprintf(line, sizeof line, "%.12e,%.12e,%.12e\n", grid.xs[i], grid.ys[j], grid.values[k] + 0.0);
            csv << line;
            if (grid.values[k] < grid.values[best]) best = k;
        }
    }
    if (out) {
        file.close();
        if (!file) throw std::runtime_error("write failed for " + *out);
    }
    const double bx = grid.xs[best / grid.ys.size()];
    const double by = grid.ys[best % grid.ys.size()];
    summary << "min=" << num(grid.values[best]) << " at x=" << num(bx) << " y=" << num(by) << '\n';

    gme::RunManifest m{"scan", {{"nx", std::to_string(nx)}, {"ny", std::to_string(ny)}}, 0, "", {}};
    if (out) m.parameters["out"] = *out;
    m.results = {{"min_detector", grid.values[best]}, {"min_x", bx}, {"min_y", by}};
    write_manifest(manifest, m);
    return kOk;
}

int run_verify(const std::string& witness_file, const std::string& state, int samples, std::uint64_t seed,
               const std::optional<std::string>& manifest) {
    const gme::Witness w = gme::witness_from_json(gme::read_json_file(witness_file));
    const gme::PureState psi = gme::load_state(state);
    const gme::DensityMatrix target = gme::from_pure(psi);
    const gme::VerifyReport report = gme::verify_conditions(w, target, samples, seed);

    std::cout << "witness: " << witness_file << '\n'
              << "target: " << state << '\n'
              << "samples: " << report.samples << '\n'
              << "min_sampled_detector: " << num(report.min_sampled_detector) << '\n'
              << "argmin product state:\n";
    print_product(std::cout, report.argmin);
    std::cout << "target_detector: " << num(report.target_detector) << '\n'
              << "verdict: " << gme::verdict_label(report.verdict) << '\n';

    gme::RunManifest m{"verify", {{"witness", witness_file}, {"state", state}, {"samples", std::to_string(samples)}},
                       seed, "", {}};
    m.results = {{"min_sampled_detector", report.min_sampled_detector},
                 {"target_detector", report.target_detector}};
    write_manifest(manifest, m);

    switch (report.verdict) {
        case gme::Verdict::kConsistent: return kOk;
        case gme::Verdict::kViolatesSeparable: return kViolatesSeparable;
        case gme::Verdict::kFailsTarget: return kFailsTarget;
    }
    return kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric measure of entanglement and entanglement witnesses"};
    app.set_version_flag("--version", std::string(gme::version()));
    app.require_subcommand(1);

    std::optional<std::string> manifest;
    auto add_manifest = [&](CLI::App* cmd) {
        cmd->add_option("--manifest", manifest, "write a JSON run manifest to this path");
    };

    std::string state;
    SolverFlags compute_flags;
    auto* compute = app.add_subcommand("compute", "entanglement eigenvalue and geometric measure of a state");
    compute->add_option("--state", state, "builtin (ghz:n, w:n, dicke:n:k, bell) or state file")->required();
    compute_flags.attach(compute);
    add_manifest(compute);

    std::optional<double> lambda2;
    std::optional<std::string> witness_out;
    SolverFlags witness_flags;
    auto* witness = app.add_subcommand("witness", "build a witness lambda2*I - |psi><psi|");
    witness->add_option("--state", state, "builtin or state file")->required();
    witness->add_option("--lambda2", lambda2, "lambda^2; defaults to the optimal Lambda_max^2");
    witness->add_option("--out", witness_out, "write the witness document here");
    witness_flags.attach(witness);
    add_manifest(witness);

    int nx = 101;
    int ny = 101;
    std::optional<std::string> scan_out;
    auto* scan = app.add_subcommand("scan", "detector grid Tr(W(y) rho(x)) for the W / W~ family");
    scan->add_option("--nx", nx, "x grid points")->capture_default_str();
    scan->add_option("--ny", ny, "y grid points")->capture_default_str();
    scan->add_option("--out", scan_out, "CSV path (stdout if omitted)");
    add_manifest(scan);

    std::string witness_file;
    int samples = 10000;
    std::uint64_t verify_seed = gme::SolverConfig{}.seed;
    auto* verify = app.add_subcommand("verify", "sampled check of the witness conditions");
    verify->add_option("--witness", witness_file, "witness document")->required();
    verify->add_option("--state", state, "target state (builtin or file)")->required();
    verify->add_option("--samples", samples, "random product states")->capture_default_str();
    verify->add_option("--seed", verify_seed, "sampling seed")->capture_default_str();
    add_manifest(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kBadInput;
    }

    try {
        if (*compute) return run_compute(state, compute_flags, manifest);
        if (*witness) return run_witness(state, lambda2, witness_flags, witness_out, manifest);
        if (*scan) return run_scan(nx, ny, scan_out, manifest);
        if (*verify) return run_verify(witness_file, state, samples, verify_seed, manifest);
    } catch (const gme::WitnessWindowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOutsideWindow;
    } catch (const gme::FormatError& e) {
        std::cerr << "error: invalid input at " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}
