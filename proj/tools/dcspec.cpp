// Command-line front end: parses flags into a RunConfig, runs it and
// prints one line per check.
//
// Exit codes: 0 all checks passed (or a rerun reproduced its report),
// 1 a check failed (or a rerun differed), 2 usage or parameter error,
// 3 any other runtime error.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcspec/field.hpp"
#include "dcspec/runner.hpp"

namespace {

using dcspec::json;

struct Command {
    CLI::App* app = nullptr;
    json params = json::object();
};

class Flags {
public:
    Flags(CLI::App* app, json& params) : app_(app), params_(params) {}

    template <class T>
    Flags& opt(const std::string& flag, const std::string& key, const std::string& help) {
        json& p = params_;
        app_->add_option_function<T>(flag, [&p, key](const T& v) { p[key] = v; }, help);
        return *this;
    }
    template <class T>
    Flags& list(const std::string& flag, const std::string& key, const std::string& help) {
        json& p = params_;
        app_->add_option_function<std::vector<T>>(flag, [&p, key](const std::vector<T>& v) { p[key] = v; }, help)
            ->delimiter(',');
        return *this;
    }
    Flags& vec3(const std::string& flag, const std::string& key, const std::string& help) {
        json& p = params_;
        app_->add_option_function<std::vector<double>>(flag, [&p, key](const std::vector<double>& v) { p[key] = v; },
                                                       help)
            ->delimiter(',')
            ->expected(3);
        return *this;
    }
    Flags& flag(const std::string& flag, const std::string& key, bool value, const std::string& help) {
        json& p = params_;
        app_->add_flag_function(flag, [&p, key, value](std::int64_t) { p[key] = value; }, help);
        return *this;
    }
    Flags& grid() {
        opt<int>("--grid", "grid", "points per axis");
        opt<double>("--box", "box", "box side length L");
        flag("--zero-nyquist", "zeroNyquist", true, "use a zero derivative symbol on the Nyquist mode");
        return *this;
    }
    Flags& potential() {
        opt<double>("--k", "k", "one-body Coulomb coupling (negative attracts)");
        opt<double>("--k0", "k0", "interaction coupling");
        opt<std::string>("--reg", "reg", "singularity policy bn:<n> or cap:<v>");
        return *this;
    }
    Flags& scan() {
        list<double>("--kappas", "kappas", "kappa values");
        list<double>("--lambdas", "lambdas", "curve constants lambda");
        flag("--no-adversarial", "adversarial", false, "skip the lambda chosen to hit a branch");
        opt<double>("--localized-fraction", "localizedFraction", "norm fraction that counts as localized");
        opt<double>("--overlap-threshold", "overlapThreshold", "eigenvector overlap that continues a branch");
        opt<double>("--match-tolerance", "matchTolerance", "distance counted as tracking the curve");
        opt<double>("--region-radius", "regionRadius", "central ball radius (default L/4)");
        return *this;
    }

private:
    CLI::App* app_;
    json& params_;
};

void print_report(const dcspec::ProbeReport& r, const std::string& outDir) {
    for (const auto& c : r.checks)
        std::printf("[%s] %-32s deviation %.3e  tolerance %.1e\n", dcspec::to_string(c.status), c.name.c_str(),
                    c.deviation, c.tolerance);
    for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
    if (r.results.contains("verdict")) std::printf("%s\n", r.results["verdict"].get<std::string>().c_str());
    std::printf("%s: %d of %zu checks failed, %.2f s, report %s/%s.json\n", r.command.c_str(), r.failures(),
                r.checks.size(), r.seconds, outDir.c_str(), r.command.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-body Dirac-Coulomb operator numerics: identities, eigenvalues and spectral probes"};
    app.require_subcommand(1);

    std::string outDir = "dcspec-out";
    std::uint64_t seed = 1;
    std::vector<std::string> tolerances;
    bool quiet = false;
    std::map<std::string, Command> cmds;

    auto add = [&](const std::string& name, const std::string& help) -> Flags {
        Command& c = cmds[name];
        c.app = app.add_subcommand(name, help);
        c.app->add_option("--out", outDir, "output directory")->capture_default_str();
        c.app->add_option("--seed", seed, "random seed")->capture_default_str();
        c.app->add_option("--tolerance", tolerances, "override a check tolerance, name=value (repeatable)");
        c.app->add_flag("--quiet,-q", quiet, "print only the summary line");
        return Flags(c.app, c.params);
    };

    add("verify", "exact identities and small-grid oracle checks")
        .flag("--perturb-beta", "perturbBeta", true, "negative control: replace beta by diag(1, 1, -1, 1)")
        .opt<int>("--symbol-samples", "symbolSamples", "random momenta for the two-body symbol check")
        .opt<int>("--dense-vectors", "denseVectors", "random vectors for the dense-oracle checks")
        .opt<int>("--form-pairs", "formPairs", "antisymmetric pairs for the form-equality checks");

    add("assemble", "two-body free symbol in both basis orders")
        .vec3("--xi1", "xi1", "momentum of particle 1, a,b,c")
        .vec3("--xi2", "xi2", "momentum of particle 2, a,b,c")
        .opt<double>("--mass", "mass", "mass m")
        .opt<std::string>("--dump-symbol", "dumpSymbol", "JSON file for the symbol (inside --out)");

    add("eig", "eigenvalues of a discretized operator")
        .opt<std::string>("--op", "op", "hdc, hdc-plus, hdc-minus, y-frame or model")
        .grid()
        .potential()
        .opt<double>("--mass", "mass", "mass m")
        .opt<int>("--how-many", "howMany", "number of eigenpairs")
        .opt<double>("--tol", "tol", "residual tolerance")
        .opt<double>("--sigma", "sigma", "shift for --target nearest")
        .opt<std::string>("--target", "target", "lowest, highest or nearest")
        .opt<std::string>("--solver", "solver", "lanczos or lobpcg")
        .opt<std::string>("--dense-check", "denseCheck", "auto, on or off")
        .opt<std::string>("--sector", "sector", "y-frame block: full, pp or mm")
        .vec3("--y2", "y2", "fibre parameter y2, a,b,c")
        .opt<double>("--k1", "k1", "model: first well coupling")
        .opt<double>("--k2", "k2", "model: second well coupling")
        .flag("--save-vectors", "saveVectors", true, "write eigenvectors as field files");

    add("weyl-probe", "residual ladder of antisymmetrized Weyl sequences")
        .list<int>("--n", "n", "sequence indices, e.g. 4,8,16")
        .opt<double>("--lambda", "lambda", "energy of the positive-energy factor")
        .opt<double>("--mu", "mu", "minus the energy of the negative-energy factor")
        .opt<double>("--mass", "mass", "mass m")
        .opt<int>("--grid", "grid", "points per axis")
        .opt<double>("--box-per-n", "boxPerN", "box side length divided by n")
        .potential()
        .opt<int>("--cross-check-grid", "crossCheckGrid", "also evaluate the first n on a full 6D grid of this size");

    add("hardy", "weighted Hardy-type inequalities on a trial family")
        .opt<std::string>("--which", "which", "win or ha")
        .grid()
        .opt<int>("--trials", "trials", "size of the trial family")
        .list<double>("--mu-hat", "muHat", "multiplier strengths for ha")
        .list<std::string>("--multipliers", "multipliers", "zero, plus-radial, minus-radial, spin-radial");

    add("square-check", "squares of the decoupled free blocks")
        .grid()
        .opt<double>("--mass", "mass", "mass m")
        .opt<int>("--samples", "samples", "random fields");

    add("hydrogenic", "3D grid ground state against the radial oracle")
        .list<int>("--grid", "grid", "points per axis, one or more, e.g. 16,32,48")
        .opt<double>("--box", "box", "box side length L")
        .opt<double>("--k", "k", "Coulomb coupling")
        .opt<double>("--mass", "mass", "mass m")
        .opt<double>("--tol", "tol", "eigensolver tolerance")
        .opt<std::string>("--reg", "reg", "singularity policy bn:<n> or cap:<v>");

    add("kappa-scan", "eigenvalue branches of the scaled fibre operator")
        .vec3("--y2", "y2", "fibre parameter y2, a,b,c")
        .opt<double>("--mass", "mass", "mass m")
        .grid()
        .potential()
        .opt<int>("--how-many", "howMany", "eigenpairs per sector and kappa")
        .opt<double>("--tol", "tol", "eigensolver tolerance")
        .scan();

    add("model", "two-centre model operator checks")
        .opt<double>("--k1", "k1", "first well coupling")
        .opt<double>("--k2", "k2", "second well coupling")
        .opt<double>("--k0", "k0", "interaction coupling")
        .opt<double>("--mass", "mass", "mass m")
        .vec3("--y2", "y2", "section parameter y2, a,b,c")
        .grid()
        .opt<std::string>("--reg", "reg", "singularity policy bn:<n> or cap:<v>")
        .list<std::string>("--checks", "checks", "shift, mirror, single-well, weyl, scan, spectrum")
        .opt<int>("--how-many", "howMany", "eigenpairs")
        .opt<double>("--tol", "tol", "eigensolver tolerance")
        .opt<double>("--sigma", "sigma", "spectral shift")
        .opt<double>("--separation", "separation", "single-well: distance between the wells")
        .opt<double>("--single-well-tol", "singleWellTol", "single-well: tolerance")
        .opt<double>("--weyl-momentum", "weylMomentum", "weyl: momentum of the y1 wave")
        .flag("--weyl-negative", "weylNegative", true, "weyl: use the negative-energy branch")
        .list<int>("--n", "n", "weyl: sequence indices")
        .opt<int>("--weyl-grid", "weylGrid", "weyl: points per axis")
        .opt<double>("--box-per-n", "boxPerN", "weyl: box side length divided by n")
        .scan();

    std::string reportPath, rerunOut;
    CLI::App* rerunApp = app.add_subcommand("rerun", "repeat the run recorded in a report and compare");
    rerunApp->add_option("report", reportPath, "report JSON written by an earlier run")->required();
    rerunApp->add_option("--out", rerunOut, "output directory (default <original>/rerun)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }

    try {
        if (rerunApp->parsed()) {
            const dcspec::RerunResult rr = dcspec::rerun(reportPath, rerunOut);
            print_report(rr.repeated, rr.repeated.config.value("outDir", std::string{}));
            if (!rr.threadsMatch)
                std::printf("note: thread count differs from the original run (DCSPEC_THREADS)\n");
            for (const auto& d : rr.differences) std::printf("differs: %s\n", d.c_str());
            std::printf("rerun %s\n", rr.differences.empty() ? "reproduced every check and result exactly"
                                                             : "did not reproduce the report");
            return rr.differences.empty() ? 0 : 1;
        }

        for (auto& [name, cmd] : cmds) {
            if (!cmd.app->parsed()) continue;
            dcspec::RunConfig cfg;
            cfg.command = name;
            cfg.outDir = outDir;
            cfg.seed = seed;
            cfg.params = cmd.params;
            for (const auto& t : tolerances) {
                const auto eq = t.find('=');
                if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--tolerance expects name=value");
                cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
            }
            const dcspec::ProbeReport r = dcspec::run(cfg);
            if (quiet)
                std::printf("%s: %d of %zu checks failed\n", r.command.c_str(), r.failures(), r.checks.size());
            else
                print_report(r, outDir);
            return r.all_passed() ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
