#include "dcspec/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dcspec/field_io.hpp"
#include "dcspec/hamiltonians.hpp"
#include "dcspec/kron.hpp"
#include "dcspec/model.hpp"
#include "dcspec/probes.hpp"
#include "dcspec/verify.hpp"

namespace dcspec {

namespace fs = std::filesystem;

void to_json(json& j, const RunConfig& c) {
    j = json{{"command", c.command},
             {"outDir", c.outDir},
             {"seed", c.seed},
             {"params", c.params},
             {"tolerances", c.tolerances}};
}

void from_json(const json& j, RunConfig& c) {
    c.command = j.at("command").get<std::string>();
    c.outDir = j.value("outDir", std::string("dcspec-out"));
    c.seed = j.value("seed", std::uint64_t{1});
    c.params = j.value("params", json::object());
    c.tolerances = j.value("tolerances", std::map<std::string, double>{});
}

namespace {

// Reads parameters with defaults, remembers the value actually used and
// rejects keys nobody asked for.
class Params {
public:
    explicit Params(const json& in) : in_(in.is_null() ? json::object() : in) {
        if (!in_.is_object()) throw std::invalid_argument("params must be a JSON object");
    }

    template <class T>
    T get(const std::string& key, const T& def) {
        T v = def;
        if (in_.contains(key)) {
            try {
                v = in_.at(key).get<T>();
            } catch (const json::exception&) {
                throw std::invalid_argument("parameter '" + key + "' has the wrong type");
            }
        }
        out_[key] = v;
        used_.insert(key);
        return v;
    }

    Vec3 vec3(const std::string& key, const Vec3& def) {
        const auto a = get<std::vector<double>>(key, {def[0], def[1], def[2]});
        if (a.size() != 3) throw std::invalid_argument("parameter '" + key + "' needs three components");
        return {a[0], a[1], a[2]};
    }

    void finish(const std::string& command) const {
        for (const auto& [k, v] : in_.items())
            if (!used_.count(k)) throw std::invalid_argument("unknown parameter '" + k + "' for " + command);
    }

    const json& resolved() const { return out_; }

private:
    json in_;
    json out_ = json::object();
    std::set<std::string> used_;
};

struct Context {
    const RunConfig& cfg;
    Params& p;
    ProbeReport& rep;
    fs::path out;

    void artifact(const fs::path& path) { rep.artifacts.push_back(fs::relative(path, out).generic_string()); }
    void csv(const std::string& name, const CsvTable& t) {
        const fs::path path = out / name;
        t.write(path);
        artifact(path);
    }
};

GridSpec grid_params(Params& p, int n, double l) {
    GridSpec g;
    g.N = p.get("grid", n);
    g.L = p.get("box", l);
    g.offset = p.get("offset", true);
    g.zeroNyquist = p.get("zeroNyquist", false);
    return g;
}

// "bn:<n>" or "cap:<value>"
void regularization_params(Params& p, GridSpec& g, PotentialSpec& pot) {
    const std::string reg = p.get<std::string>("reg", "bn:4");
    const auto colon = reg.find(':');
    const std::string kind = reg.substr(0, colon);
    const std::string value = colon == std::string::npos ? std::string{} : reg.substr(colon + 1);
    try {
        if (kind == "bn") {
            g.regularization = RegularizationKind::Bn;
            if (!value.empty()) pot.cutoffIndex = std::stoi(value);
            if (pot.cutoffIndex < 1) throw std::invalid_argument("bn");
            return;
        }
        if (kind == "cap") {
            g.regularization = RegularizationKind::Cap;
            if (!value.empty()) pot.capValue = std::stod(value);
            if (!(pot.capValue > 0.0)) throw std::invalid_argument("cap");
            return;
        }
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("--reg expects bn:<n> with n >= 1 or cap:<v> with v > 0, got '" + reg + "'");
}

PotentialSpec potential_params(Params& p, GridSpec& g, double k, double k0) {
    PotentialSpec pot;
    pot.k = p.get("k", k);
    pot.k0 = p.get("k0", k0);
    regularization_params(p, g, pot);
    return pot;
}

double slope_tolerance() { return 0.2; }

CheckRecord decreasing_record(const std::string& name, const std::vector<double>& r) {
    double worst = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) worst = std::max(worst, r[i] - r[i - 1]);
    CheckRecord c = make_check(name, "residual ladder strictly decreasing in n", worst, 0.0);
    if (r.size() > 1 && worst == 0.0) {
        bool strict = true;
        for (std::size_t i = 1; i < r.size(); ++i) strict = strict && r[i] < r[i - 1];
        if (!strict) c.status = CheckStatus::Fail;
    }
    if (r.size() < 2) c.status = CheckStatus::Vacuous;
    return c;
}

json matrix_json(const Eigen::MatrixXcd& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array(), ii = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return json{{"re", re}, {"im", im}};
}

// ------------------------------------------------------------------ verify

void cmd_verify(Context& c) {
    VerifyOptions o;
    o.seed = c.cfg.seed;
    o.perturbBeta = c.p.get("perturbBeta", false);
    o.symbolSamples = c.p.get("symbolSamples", 100);
    o.denseVectors = c.p.get("denseVectors", 5);
    o.formPairs = c.p.get("formPairs", 3);
    c.p.finish("verify");
    const ProbeReport r = verify_all(o);
    c.rep.label = r.label;
    c.rep.checks = r.checks;
    c.rep.results = r.results;
}

// ---------------------------------------------------------------- assemble

void cmd_assemble(Context& c) {
    const Vec3 xi1 = c.p.vec3("xi1", Vec3(0.3, -0.2, 0.5));
    const Vec3 xi2 = c.p.vec3("xi2", Vec3(-0.1, 0.4, 0.7));
    const double m = c.p.get("mass", 1.0);
    const std::string dump = c.p.get<std::string>("dumpSymbol", "symbol.json");
    c.p.finish("assemble");
    c.rep.label = "identity";

    const TwoBodySymbol s = two_body_free_symbol(xi1, xi2, m);
    c.rep.add(make_check("two-body-symbol", "P^t (H0(xi1) (x) I4 + I4 (x) H0(xi2)) P = block form",
                         s.permutationDeviation, 1e-12));

    const double e1 = std::sqrt(xi1.squaredNorm() + m * m), e2 = std::sqrt(xi2.squaredNorm() + m * m);
    std::vector<double> expect;
    for (double a : {-1.0, 1.0})
        for (double b : {-1.0, 1.0})
            for (int rep = 0; rep < 4; ++rep) expect.push_back(a * e1 + b * e2);
    std::sort(expect.begin(), expect.end());
    const DenseEig eig = dense_eig(s.llss);
    double specDev = 0.0;
    for (int i = 0; i < 16; ++i) specDev = std::max(specDev, std::abs(eig.values[i] - expect[i]));
    c.rep.add(make_check("symbol-spectrum", "spectrum = {+-E1 +- E2}, each fourfold, E_j = sqrt(|xi_j|^2 + m^2)",
                         specDev, 1e-12 * std::max(1.0, e1 + e2) * 10.0));

    double pattern = 0.0;
    auto blk = [&](int i, int j) { return s.llss.block(4 * i, 4 * j, 4, 4); };
    for (auto [i, j] : {std::pair{0, 3}, {3, 0}, {1, 2}, {2, 1}, {1, 1}, {2, 2}})
        pattern = std::max(pattern, blk(i, j).cwiseAbs().maxCoeff());
    pattern = std::max(pattern, (blk(0, 0) - 2.0 * m * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff());
    pattern = std::max(pattern, (blk(3, 3) + 2.0 * m * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff());
    c.rep.add(make_check("symbol-block-pattern", "corner blocks +-2m I4, zero blocks at (1,4), (4,1), (2,3), (3,2)",
                         pattern, 0.0));

    const Eigen::MatrixXcd conj = conjugate(build_T(), plus_form_symbol(xi1, xi2, m, 0.0));
    const double offDiag = std::max(conj.block(0, 8, 8, 8).cwiseAbs().maxCoeff(), conj.block(8, 0, 8, 8).cwiseAbs().maxCoeff());
    c.rep.add(make_check("canonical-off-diagonal", "off-diagonal 8x8 blocks of T^t H+ T vanish", offDiag, 1e-12));

    json sym{{"xi1", vec3_json(xi1)},
             {"xi2", vec3_json(xi2)},
             {"mass", m},
             {"plainKron", matrix_json(s.plainKron)},
             {"llss", matrix_json(s.llss)},
             {"llssToPlain", llss_to_plain_permutation()},
             {"eigenvalues", std::vector<double>(eig.values.data(), eig.values.data() + eig.values.size())}};
    const fs::path path = c.out / dump;
    write_json(path, sym);
    c.artifact(path);
    c.rep.results = json{{"energies", {e1, e2}}, {"permutationDeviation", s.permutationDeviation}};
}

// --------------------------------------------------------------------- eig

EigTarget parse_target(const std::string& t) {
    if (t == "lowest") return EigTarget::Lowest;
    if (t == "highest") return EigTarget::Highest;
    if (t == "nearest") return EigTarget::Nearest;
    throw std::invalid_argument("--target must be lowest, highest or nearest, got '" + t + "'");
}

void cmd_eig(Context& c) {
    const std::string op = c.p.get<std::string>("op", "hdc");
    const bool sixD = op == "hdc" || op == "hdc-plus" || op == "hdc-minus";
    if (!sixD && op != "y-frame" && op != "model")
        throw std::invalid_argument("--op must be hdc, hdc-plus, hdc-minus, y-frame or model, got '" + op + "'");
    GridSpec g = grid_params(c.p, sixD ? 2 : 16, sixD ? 4.0 : 12.0);
    const double m = c.p.get("mass", 1.0);
    const int howMany = c.p.get("howMany", 4);
    const double tol = c.p.get("tol", 1e-9);
    const EigTarget target = parse_target(c.p.get<std::string>("target", sixD ? "lowest" : "nearest"));
    double sigma = 0.0;
    const bool saveVectors = c.p.get("saveVectors", false);
    const std::string dense = c.p.get<std::string>("denseCheck", "auto");
    if (dense != "auto" && dense != "on" && dense != "off")
        throw std::invalid_argument("--dense-check must be auto, on or off");
    if (howMany < 1) throw std::invalid_argument("--how-many must be at least 1");

    c.rep.label = "evidence";
    std::vector<double> values, residuals;
    std::vector<CVec> vectors;
    bool converged = false;
    int applications = 0;
    StructuredOperator oper;
    Lattice lat{g, sixD ? 6 : 3};

    if (op == "model") {
        ModelSpec ms;
        ms.k1 = c.p.get("k1", ms.k1);
        ms.k2 = c.p.get("k2", ms.k2);
        ms.k0 = c.p.get("k0", ms.k0);
        ms.m = m;
        ms.y2 = c.p.vec3("y2", ms.y2);
        PotentialSpec pot;
        regularization_params(c.p, g, pot);
        ms.cutoffIndex = pot.cutoffIndex;
        ms.capValue = pot.capValue;
        sigma = c.p.get("sigma", 0.0);
        c.p.finish("eig");
        ms.validate();
        if (target != EigTarget::Nearest) throw std::invalid_argument("--op model supports --target nearest only");
        if (saveVectors) c.rep.warnings.push_back("--save-vectors is not available for --op model");
        lat = Lattice{g, 3};
        const ModelSpectrum s = model_eigenvalues(ms, g, sigma, howMany, tol, c.cfg.seed);
        values = s.values;
        residuals = s.residuals;
        converged = s.converged;
        applications = s.applications;
        oper = build_model_y(lat, ms);
    } else {
        const PotentialSpec pot = potential_params(c.p, g, -0.5, sixD ? 1.0 : 0.0);
        lat = Lattice{g, sixD ? 6 : 3};
        std::string sector = "full";
        Vec3 y2 = Vec3::Zero();
        if (!sixD) {
            y2 = c.p.vec3("y2", Vec3(1.0, 0.0, 0.0));
            sector = c.p.get<std::string>("sector", "pp");
            if (sector != "full" && sector != "pp" && sector != "mm")
                throw std::invalid_argument("--sector must be full, pp or mm");
            // The ++ and -- blocks have gaps (0, 2m) and (-2m, 0); the full
            // fibre operator has none, so every shift lies in its continuum.
            sigma = c.p.get("sigma", sector == "pp" ? m : sector == "mm" ? -m : 0.0);
        } else {
            sigma = c.p.get("sigma", 0.0);
        }
        const std::string solver = c.p.get<std::string>("solver", sixD ? "lanczos" : "lobpcg");
        if (solver != "lanczos" && solver != "lobpcg") throw std::invalid_argument("--solver must be lanczos or lobpcg");
        c.p.finish("eig");
        lat.validate();
        if (op == "hdc")
            oper = build_hdc(lat, pot, m);
        else if (op == "hdc-plus")
            oper = build_hdc_plus(lat, pot, m);
        else if (op == "hdc-minus")
            oper = build_hdc_minus(lat, pot, m);
        else if (sector == "full")
            oper = build_y_operator(lat, pot, m, y2);
        else
            oper = build_y_sector(lat, pot, m, y2, sector == "pp" ? YSector::PlusPlus : YSector::MinusMinus);

        LanczosOptions o;
        o.howMany = howMany;
        o.target = target;
        o.sigma = sigma;
        o.tol = tol;
        o.seed = c.cfg.seed;
        o.blockSize = std::min(howMany, 4);
        o.maxIter = 20000;
        o.keepVectors = saveVectors;
        EigResult r;
        if (solver == "lanczos") {
            r = lanczos(as_apply(oper), oper.dim(), o);
        } else {
            const double kinetic = sixD ? 1.0 : 2.0;
            const ApplyFn pre = fourier_preconditioner(lat, oper.ncomp(), kinetic, std::max(m * m, 1e-2));
            r = lobpcg(as_apply(oper), pre, oper.dim(), o);
        }
        values = r.ritzValues;
        residuals = r.residualNorms;
        converged = r.all_converged();
        applications = r.iterations;
        vectors = r.vectors;
    }

    c.rep.add(make_check("eig-residuals", "max ||H v - theta v|| over returned pairs",
                         residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end()), tol));

    std::vector<double> denseValues;
    const bool doDense = dense == "on" || (dense == "auto" && oper.dim() <= 4096);
    if (doDense) {
        const DenseEig d = dense_eig(oper.build_dense(std::max<std::size_t>(oper.dim(), 4096)));
        std::vector<double> all(d.values.data(), d.values.data() + d.values.size());
        if (target == EigTarget::Lowest) {
            denseValues.assign(all.begin(), all.begin() + std::min<std::size_t>(howMany, all.size()));
        } else if (target == EigTarget::Highest) {
            denseValues.assign(all.end() - std::min<std::size_t>(howMany, all.size()), all.end());
        } else {
            std::vector<double> byDist = all;
            std::stable_sort(byDist.begin(), byDist.end(),
                             [&](double a, double b) { return std::abs(a - sigma) < std::abs(b - sigma); });
            byDist.resize(std::min<std::size_t>(howMany, byDist.size()));
            std::sort(byDist.begin(), byDist.end());
            denseValues = byDist;
        }
        double dev = 0.0;
        std::vector<double> got = values;
        std::sort(got.begin(), got.end());
        if (got.size() != denseValues.size())
            dev = INFINITY;
        else
            for (std::size_t i = 0; i < got.size(); ++i) dev = std::max(dev, std::abs(got[i] - denseValues[i]));
        c.rep.add(make_check("eig-dense-oracle", "iterative eigenvalues = dense eigenvalues of the assembled matrix, " +
                                                     describe(g),
                             dev, std::max(tol, 1e-10)));
    }

    CsvTable t({"index", "value", "residual", "dense"});
    for (std::size_t i = 0; i < values.size(); ++i)
        t.add_row({static_cast<long long>(i), values[i], i < residuals.size() ? residuals[i] : NAN,
                   i < denseValues.size() ? denseValues[i] : NAN});
    c.csv("eig.csv", t);

    if (saveVectors) {
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            Field f(lat, oper.ncomp());
            f.vector() = vectors[i];
            const FieldFiles files = write_field(c.out / ("eig_vector_" + std::to_string(i)), f,
                                                 json{{"op", op}, {"value", values[i]}, {"residual", residuals[i]}});
            c.artifact(files.data);
            c.artifact(files.sidecar);
        }
    }
    c.rep.results = json{{"values", values},
                         {"residuals", residuals},
                         {"converged", converged},
                         {"applications", applications},
                         {"dim", oper.dim()},
                         {"denseValues", denseValues}};
}

// -------------------------------------------------------------- weyl-probe

void cmd_weyl(Context& c) {
    WeylProbeSpec s;
    s.nValues = c.p.get("n", s.nValues);
    s.lambda = c.p.get("lambda", s.lambda);
    s.mu = c.p.get("mu", s.mu);
    s.m = c.p.get("mass", s.m);
    s.gridPoints = c.p.get("grid", s.gridPoints);
    s.boxPerN = c.p.get("boxPerN", s.boxPerN);
    s.pot.k = c.p.get("k", -0.5);
    s.pot.k0 = c.p.get("k0", 1.0);
    GridSpec g;
    regularization_params(c.p, g, s.pot);
    s.regularization = g.regularization;
    s.seed = c.cfg.seed;
    const int cross = c.p.get("crossCheckGrid", 0);
    c.p.finish("weyl-probe");
    c.rep.label = "evidence";

    const WeylProbeResult r = weyl_probe(s);
    c.rep.warnings.insert(c.rep.warnings.end(), r.warnings.begin(), r.warnings.end());

    CsvTable t({"n", "L", "u_shell", "cap_binds", "residual", "gradient_residual", "gradient_scale", "w_norm",
                "overlap", "pair_defect"});
    std::vector<double> res;
    double normDev = 0.0, pairDev = 0.0, overlap = 0.0;
    json rows = json::array();
    for (const WeylRow& w : r.rows) {
        t.add_row({static_cast<long long>(w.n), w.L, w.uShell, static_cast<long long>(w.capBinds), w.residual,
                   w.gradientResidual, w.gradientScale, w.wNorm, w.overlap, w.pairDefect});
        res.push_back(w.residual);
        normDev = std::max(normDev, std::abs(w.wNorm - 1.0));
        pairDev = std::max(pairDev, w.pairDefect);
        overlap = std::max(overlap, w.overlap);
        rows.push_back(json{{"n", w.n}, {"L", w.L}, {"residual", w.residual}, {"wNorm", w.wNorm}});
    }
    c.csv("weyl.csv", t);

    c.rep.add(decreasing_record("weyl-decreasing", res));
    c.rep.add(make_check("weyl-slope", "log-log slope of the residual ladder = -1 +- 0.2", std::abs(r.slope + 1.0),
                         slope_tolerance()));
    c.rep.add(make_check("weyl-unit-norm", "||w_n|| = 1", normDev, 1e-10));
    c.rep.add(make_check("weyl-antisymmetric", "w_n(x2, x1) relations of the antisymmetric space", pairDev, 1e-12));

    json results{{"lambda", r.lambda},
                 {"mu", r.mu},
                 {"target", r.target},
                 {"xi", vec3_json(r.xi)},
                 {"eta", vec3_json(r.eta)},
                 {"slope", r.slope},
                 {"strictlyDecreasing", r.strictlyDecreasing},
                 {"maxOverlap", overlap},
                 {"rows", rows}};
    if (cross > 0) {
        const WeylCrossCheck x = weyl_cross_check(s, s.nValues.front(), cross);
        c.rep.add(make_check("weyl-cross-check", "reduced residual formula = residual of the assembled 6D field",
                             std::abs(x.reducedResidual - x.fullResidual) / std::max(x.fullResidual, 1e-300), 1e-10));
        results["crossCheck"] = json{{"reduced", x.reducedResidual},
                                     {"full", x.fullResidual},
                                     {"norm", x.fullNorm},
                                     {"antisymmetryDefect", x.antisymmetryDefect}};
    }
    c.rep.results = results;
}

// ------------------------------------------------------------------- hardy

HardyMultiplier parse_multiplier(const std::string& s) {
    for (auto q : {HardyMultiplier::Zero, HardyMultiplier::PlusRadial, HardyMultiplier::MinusRadial,
                   HardyMultiplier::SpinRadial})
        if (to_string(q) == s) return q;
    throw std::invalid_argument("unknown multiplier '" + s + "'");
}

void cmd_hardy(Context& c) {
    const std::string which = c.p.get<std::string>("which", "win");
    if (which != "win" && which != "ha") throw std::invalid_argument("--which must be win or ha");
    const GridSpec g = grid_params(c.p, 32, 16.0);
    const int trials = c.p.get("trials", 100);
    std::vector<double> muHats;
    std::vector<std::string> mults;
    if (which == "ha") {
        muHats = c.p.get("muHat", std::vector<double>{0.0, 0.25, 0.5});
        mults = c.p.get("multipliers",
                        std::vector<std::string>{"zero", "plus-radial", "minus-radial", "spin-radial"});
    }
    c.p.finish("hardy");
    if (trials < 1) throw std::invalid_argument("--trials must be at least 1");
    c.rep.label = "evidence";

    const std::vector<Field> family = hardy_trial_family(g, trials, c.cfg.seed);
    if (which == "win") {
        CsvTable t({"trial", "ratio"});
        double lo = INFINITY, hi = 0.0;
        for (std::size_t i = 0; i < family.size(); ++i) {
            const double q = hardy_win(family[i]);
            t.add_row({static_cast<long long>(i), q});
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        c.csv("hardy_win.csv", t);
        c.rep.add(make_check("hardy-win", "|| |y|^(1/2) H00 u || >= || |y|^(-1/2) u ||, ratio >= 1 - 1e-3",
                             std::max(0.0, 1.0 - lo), 1e-3));
        c.rep.results = json{{"minRatio", lo}, {"maxRatio", hi}, {"trials", trials}};
        return;
    }

    CsvTable t({"mu_hat", "multiplier", "trial", "lhs", "rhs", "factor", "norm", "margin", "holds"});
    json per = json::array();
    double qExcess = -INFINITY;
    for (double mu : muHats) {
        double worst = 0.0, minMargin = INFINITY;
        bool vacuous = false;
        for (const std::string& name : mults) {
            const HardyMultiplier q = parse_multiplier(name);
            for (std::size_t i = 0; i < family.size(); ++i) {
                const HardyHaResult r = hardy_ha(family[i], q, mu);
                const double margin = (r.factor * r.rhs - r.lhs) / std::max(r.norm, 1e-300);
                t.add_row({mu, name, static_cast<long long>(i), r.lhs, r.rhs, r.factor, r.norm, margin,
                           static_cast<long long>(r.holds)});
                worst = std::max(worst, -margin);
                minMargin = std::min(minMargin, margin);
                vacuous = vacuous || r.vacuous;
                qExcess = std::max(qExcess, r.qBoundExcess);
            }
        }
        std::ostringstream name;
        name << "hardy-ha-mu-" << mu;
        CheckRecord rec = make_check(name.str(),
                                     "||sqrt2 |y|^-1 v|| <= (1 - a)^-1 ||(H00 + Q) v||, a = sqrt(muHat^2 + 1/4), "
                                     "|Q| <= sqrt2 muHat / |y|",
                                     worst, 1e-3);
        if (vacuous) rec.status = CheckStatus::Vacuous;
        c.rep.add(rec);
        per.push_back(json{{"muHat", mu}, {"minMargin", minMargin}, {"vacuous", vacuous}});
    }
    c.rep.add(make_check("hardy-ha-multiplier-bound", "max over sites of |Q(y)| - sqrt2 muHat / |y| <= 0",
                         std::max(0.0, qExcess), 1e-12));
    c.csv("hardy_ha.csv", t);
    c.rep.results = json{{"perMuHat", per}, {"trials", trials}, {"maxMultiplierExcess", qExcess}};
}

// ------------------------------------------------------------ square-check

void cmd_square(Context& c) {
    const GridSpec g = grid_params(c.p, 16, 10.0);
    const double m = c.p.get("mass", 1.0);
    const int samples = c.p.get("samples", 3);
    c.p.finish("square-check");
    c.rep.label = "identity";
    const SquareIdentityResult r = square_identity_check(m, g, c.cfg.seed, samples);
    c.rep.add(make_check("square-plus", "(H++ - m I8)^2 = 2|p|^2 + m^2, relative", r.plusDeviation, 1e-12));
    c.rep.add(make_check("square-minus", "(H-- + m I8)^2 = 2|p|^2 + m^2, relative", r.minusDeviation, 1e-12));
    c.rep.add(make_check("square-h00", "H00^2 = 2|p|^2, relative", r.h00Deviation, 1e-12));
    c.rep.results = json{{"grid", g}, {"mass", m}};
}

// -------------------------------------------------------------- hydrogenic

void cmd_hydrogenic(Context& c) {
    const std::vector<int> grids = c.p.get("grid", std::vector<int>{16, 32});
    const double box = c.p.get("box", 20.0);
    const double k = c.p.get("k", -0.5);
    const double m = c.p.get("mass", 1.0);
    const double tol = c.p.get("tol", 1e-6);
    GridSpec base;
    base.L = box;
    PotentialSpec unused;
    regularization_params(c.p, base, unused);
    c.p.finish("hydrogenic");
    if (grids.empty()) throw std::invalid_argument("--grid needs at least one value");
    c.rep.label = "evidence";

    CsvTable t({"N", "h", "eigenvalue", "oracle", "relative_error", "residual", "applications"});
    std::vector<double> errors;
    json rows = json::array();
    double oracle = 0.0;
    for (int n : grids) {
        GridSpec g = base;
        g.N = n;
        const HydrogenicResult r = hydrogenic_validation(k, m, g, c.cfg.seed, tol);
        if (!r.found) throw std::runtime_error("hydrogenic: no gap eigenvalue found at N = " + std::to_string(n));
        oracle = r.oracle;
        errors.push_back(r.relativeError);
        t.add_row({static_cast<long long>(n), g.h(), r.eigenvalue, r.oracle, r.relativeError, r.residual,
                   static_cast<long long>(r.applications)});
        rows.push_back(json{{"N", n}, {"eigenvalue", r.eigenvalue}, {"relativeError", r.relativeError},
                            {"residual", r.residual}, {"computed", r.computed}});
    }
    c.csv("hydrogenic.csv", t);
    const double closed = m * std::sqrt(1.0 - k * k);
    c.rep.add(make_check("hydrogenic-oracle", "radial ground level = m sqrt(1 - k^2)", std::abs(oracle - closed) / closed,
                         1e-6));
    c.rep.add(make_check("hydrogenic-accuracy", "finest-grid relative error against the radial oracle <= 1e-2",
                         errors.back(), 1e-2));
    CheckRecord mono = decreasing_record("hydrogenic-monotone", errors);
    mono.anchor = "relative error decreases with N";
    c.rep.add(mono);
    c.rep.results = json{{"oracle", oracle}, {"closedForm", closed}, {"rows", rows}};
}

// -------------------------------------------------------------- kappa scan

std::vector<double> default_kappas() {
    std::vector<double> ks;
    for (int i = 0; i <= 6; ++i) ks.push_back(0.8 + 0.2 * i);
    return ks;
}

void scan_settings_params(Params& p, ScanSettings& st, std::uint64_t seed) {
    st.kappas = p.get("kappas", default_kappas());
    st.lambdas = p.get("lambdas", std::vector<double>{0.5, 1.0, 1.5});
    st.adversarialLambda = p.get("adversarial", true);
    st.howMany = p.get("howMany", st.howMany);
    st.tol = p.get("tol", st.tol);
    st.localizedFraction = p.get("localizedFraction", st.localizedFraction);
    st.overlapThreshold = p.get("overlapThreshold", st.overlapThreshold);
    st.matchTolerance = p.get("matchTolerance", st.matchTolerance);
    st.regionRadius = p.get("regionRadius", 0.0);
    st.seed = seed;
    if (st.kappas.empty()) throw std::invalid_argument("--kappas needs at least one value");
}

void report_scan(Context& c, const KappaScanResult& r, double k0, double y2Norm) {
    c.rep.label = r.label;
    CsvTable states({"kappa", "sector", "value", "residual", "localization", "localized"});
    for (std::size_t i = 0; i < r.kappas.size(); ++i)
        for (const ScanState& s : r.states[i])
            states.add_row({r.kappas[i], static_cast<long long>(s.sector), s.value, s.residual, s.localization,
                            static_cast<long long>(s.localized)});
    c.csv("kappa_states.csv", states);

    CsvTable branches({"branch", "sector", "kappa", "value", "overlap"});
    for (std::size_t b = 0; b < r.branches.size(); ++b)
        for (const BranchPoint& pt : r.branches[b].points)
            branches.add_row({static_cast<long long>(b), static_cast<long long>(r.branches[b].sector), pt.kappa,
                              pt.value, pt.overlap});
    c.csv("kappa_branches.csv", branches);

    CsvTable curves({"lambda", "kappa", "curve"});
    for (const CurveMatch& cm : r.matches)
        for (double kap : r.kappas) curves.add_row({cm.lambda, kap, cm.lambda - k0 / (std::sqrt(2.0) * kap * y2Norm)});
    c.csv("kappa_curves.csv", curves);

    int longest = 0;
    json matches = json::array();
    for (const CurveMatch& cm : r.matches) {
        longest = std::max(longest, cm.longestRun);
        matches.push_back(json{{"lambda", cm.lambda}, {"longestRun", cm.longestRun}, {"matched", cm.matched}});
    }
    c.rep.add(make_check("scan-confinement", "localized branch values stay in (-2m, 0) u (0, 2m)",
                         r.worstConfinementViolation, 0.0));
    CheckRecord track = make_check("scan-no-tracking",
                                   "no branch follows lambda - k0 / (sqrt2 kappa |y2|) over 3 consecutive kappa",
                                   static_cast<double>(longest), 2.0);
    if (r.localizedCount == 0) track.status = CheckStatus::Vacuous;
    c.rep.add(track);
    c.rep.results = json{{"kappas", r.kappas},
                         {"localizedCount", r.localizedCount},
                         {"branchCount", r.branches.size()},
                         {"confined", r.confined},
                         {"anyMatch", r.anyMatch},
                         {"matches", matches},
                         {"verdict", r.verdict}};
}

void cmd_kappa_scan(Context& c) {
    KappaScanSpec s;
    s.y2 = c.p.vec3("y2", s.y2);
    s.m = c.p.get("mass", 1.0);
    s.grid = grid_params(c.p, 16, 16.0);
    s.pot = potential_params(c.p, s.grid, -0.5, 1.0);
    scan_settings_params(c.p, s.settings, c.cfg.seed);
    c.p.finish("kappa-scan");
    if (!s.pot.subcritical()) c.rep.warnings.push_back("|k| >= sqrt(3)/2: outside the range covered by the theory");
    const KappaScanResult r = kappa_scan(s);
    report_scan(c, r, s.pot.k0, s.y2.norm());
}

// ------------------------------------------------------------------- model

void cmd_model(Context& c) {
    ModelSpec ms;
    ms.k1 = c.p.get("k1", -0.5);
    ms.k2 = c.p.get("k2", -0.3);
    ms.k0 = c.p.get("k0", 1.0);
    ms.m = c.p.get("mass", 1.0);
    ms.y2 = c.p.vec3("y2", ms.y2);
    GridSpec g = grid_params(c.p, 16, 12.0);
    {
        PotentialSpec pot;
        regularization_params(c.p, g, pot);
        ms.cutoffIndex = pot.cutoffIndex;
        ms.capValue = pot.capValue;
    }
    const std::vector<std::string> checks = c.p.get("checks", std::vector<std::string>{"shift", "mirror"});
    const int howMany = c.p.get("howMany", 4);
    const double tol = c.p.get("tol", 1e-9);
    const double sigma = c.p.get("sigma", 0.0);
    const auto has = [&](const char* name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };
    for (const auto& name : checks)
        if (name != "shift" && name != "mirror" && name != "single-well" && name != "weyl" && name != "scan" &&
            name != "spectrum")
            throw std::invalid_argument("unknown model check '" + name +
                                        "' (expected shift, mirror, single-well, weyl, scan or spectrum)");
    double separation = 0.0, singleTol = 0.0;
    if (has("single-well")) {
        separation = c.p.get("separation", 12.0);
        singleTol = c.p.get("singleWellTol", 1e-3);
    }
    ModelWeylSpec ws;
    if (has("weyl")) {
        ws.momentum = c.p.get("weylMomentum", ws.momentum);
        ws.negativeBranch = c.p.get("weylNegative", ws.negativeBranch);
        ws.nValues = c.p.get("n", ws.nValues);
        ws.gridPoints = c.p.get("weylGrid", ws.gridPoints);
        ws.boxPerN = c.p.get("boxPerN", ws.boxPerN);
    }
    ScanSettings st;
    if (has("scan")) scan_settings_params(c.p, st, c.cfg.seed);
    c.p.finish("model");
    ms.validate();
    c.rep.label = "evidence";
    if (!ms.subcritical()) c.rep.warnings.push_back("|k1| or |k2| >= sqrt(3)/2: outside the range covered by the theory");

    json results = json::object();
    if (has("spectrum")) {
        const ModelSpectrum s = model_eigenvalues(ms, g, sigma, howMany, tol, c.cfg.seed);
        CsvTable t({"index", "value", "residual"});
        for (std::size_t i = 0; i < s.values.size(); ++i)
            t.add_row({static_cast<long long>(i), s.values[i], s.residuals[i]});
        c.csv("model_spectrum.csv", t);
        c.rep.add(make_check("model-residuals", "max ||H v - theta v|| over returned pairs",
                             *std::max_element(s.residuals.begin(), s.residuals.end()), tol));
        results["spectrum"] = json{{"values", s.values}, {"residuals", s.residuals}, {"converged", s.converged}};
    }
    if (has("shift")) {
        const ModelShiftCheck s = model_k0_shift_check(ms, g, sigma, howMany, tol);
        c.rep.add(make_check("model-k0-shift", "spec(H with k0) = spec(H without k0) + k0 / (sqrt2 |y2|)", s.deviation,
                             s.tolerance));
        results["shift"] = json{{"shift", s.shift}, {"without", s.without}, {"with", s.with}};
    }
    if (has("mirror")) {
        GridSpec gm = g;
        gm.zeroNyquist = true;
        const ModelMirrorCheck s = model_mirror_check(ms, gm, howMany, std::min(tol, 1e-10), c.cfg.seed);
        c.rep.add(make_check("model-mirror-operator", "P H(k1, k2) P^-1 = H(k2, k1), P f(y) = beta f(-y)",
                             s.operatorDeviation, 1e-12));
        c.rep.add(make_check("model-mirror-spectrum", "spec H(k1, k2) = spec H(k2, k1)", s.spectralDeviation, 1e-8));
        results["mirror"] = json{{"grid", gm}, {"original", s.original}, {"swapped", s.swapped}};
    }
    if (has("single-well")) {
        const SingleWellCheck s = model_single_well_check(ms, g, separation, 1e-7, c.cfg.seed);
        c.rep.add(make_check("model-single-well",
                             "k0 = 0, wells far apart: lowest level = single-well level + sqrt2 k2 / separation",
                             s.deviation, singleTol));
        results["singleWell"] = json{{"closedForm", s.closedForm},
                                     {"singleWell", s.singleWell},
                                     {"doubleWell", s.doubleWell},
                                     {"tail", s.tail}};
    }
    if (has("weyl")) {
        const ModelWeylResult r = model_weyl_ladder(ms, ws);
        CsvTable t({"n", "L", "residual", "bump_width"});
        std::vector<double> res;
        for (const ModelWeylRow& row : r.rows) {
            t.add_row({static_cast<long long>(row.n), row.L, row.residual, row.bumpWidth});
            res.push_back(row.residual);
        }
        c.csv("model_weyl.csv", t);
        c.rep.add(decreasing_record("model-weyl-decreasing", res));
        c.rep.add(make_check("model-weyl-slope", "log-log slope of the residual ladder = -1 +- 0.2",
                             std::abs(r.slope + 1.0), slope_tolerance()));
        results["weyl"] = json{{"lambda", r.lambda}, {"target", r.target}, {"slope", r.slope}, {"residuals", res}};
    }
    if (has("scan")) {
        ModelScanSpec s{ms, g, st};
        const KappaScanResult r = model_kappa_scan(s);
        report_scan(c, r, ms.k0, ms.y2.norm());
        results["scan"] = c.rep.results;
        c.rep.label = r.label;
    }
    c.rep.results = results;
}

using Handler = std::function<void(Context&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h = {
        {"verify", cmd_verify},         {"assemble", cmd_assemble},         {"eig", cmd_eig},
        {"weyl-probe", cmd_weyl},       {"hardy", cmd_hardy},               {"square-check", cmd_square},
        {"hydrogenic", cmd_hydrogenic}, {"kappa-scan", cmd_kappa_scan},     {"model", cmd_model}};
    return h;
}

}  // namespace

const std::vector<std::string>& run_commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : handlers()) n.push_back(name);
        return n;
    }();
    return names;
}

ProbeReport run(const RunConfig& cfg) {
    const auto it = std::find_if(handlers().begin(), handlers().end(),
                                 [&](const auto& h) { return h.first == cfg.command; });
    if (it == handlers().end()) throw std::invalid_argument("unknown command '" + cfg.command + "'");

    const auto start = std::chrono::steady_clock::now();
    ProbeReport rep;
    rep.command = cfg.command;
    Params params(cfg.params);
    const fs::path out = cfg.outDir.empty() ? fs::path(".") : fs::path(cfg.outDir);
    fs::create_directories(out);
    Context ctx{cfg, params, rep, out};
    it->second(ctx);

    for (auto& c : rep.checks) {
        const auto o = cfg.tolerances.find(c.name);
        if (o == cfg.tolerances.end()) continue;
        c.tolerance = o->second;
        if (c.status != CheckStatus::Vacuous) c.status = c.deviation <= c.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    }
    for (const auto& [name, value] : cfg.tolerances)
        if (!rep.find(name)) rep.warnings.push_back("tolerance override for unknown check '" + name + "'");

    RunConfig resolved = cfg;
    resolved.params = params.resolved();
    rep.config = resolved;
    rep.config["threads"] = thread_count();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path reportPath = out / (cfg.command + ".json");
    rep.artifacts.insert(rep.artifacts.begin(), reportPath.filename().string());
    write_report(reportPath, rep);
    return rep;
}

std::vector<std::string> compare_reports(const ProbeReport& a, const ProbeReport& b) {
    std::vector<std::string> diff;
    if (a.command != b.command) diff.push_back("command: " + a.command + " vs " + b.command);
    if (a.checks.size() != b.checks.size()) {
        diff.push_back("number of checks differs");
    } else {
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            const CheckRecord &x = a.checks[i], &y = b.checks[i];
            if (x.name != y.name || x.status != y.status || x.deviation != y.deviation || x.tolerance != y.tolerance) {
                std::ostringstream os;
                os.precision(17);
                os << "check " << x.name << ": " << to_string(x.status) << " " << x.deviation << " vs "
                   << to_string(y.status) << " " << y.deviation;
                diff.push_back(os.str());
            }
        }
    }
    // Round-trip both through text so that a report read from disk and one
    // built in memory compare on the same representation.
    if (json::parse(a.results.dump()) != json::parse(b.results.dump())) diff.push_back("results differ");
    return diff;
}

RerunResult rerun(const fs::path& reportPath, const std::string& outDir) {
    RerunResult rr;
    rr.original = read_report(reportPath);
    RunConfig cfg = rr.original.config.get<RunConfig>();
    cfg.outDir = outDir.empty() ? (fs::path(cfg.outDir) / "rerun").string() : outDir;
    rr.threadsMatch = rr.original.config.value("threads", thread_count()) == thread_count();
    rr.repeated = run(cfg);
    rr.differences = compare_reports(rr.original, rr.repeated);
    return rr;
}

}  // namespace dcspec
