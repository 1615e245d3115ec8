// End-to-end acceptance run: one line per criterion, exit code 1 if any
// criterion fails. Tolerances and problem sizes are fixed here on purpose so
// that the output is comparable between builds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dcspec/model.hpp"
#include "dcspec/probes.hpp"
#include "dcspec/verify.hpp"

using namespace dcspec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budgetSeconds;
    std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

GridSpec grid(int n, double l) {
    GridSpec g;
    g.N = n;
    g.L = l;
    return g;
}

PotentialSpec coulomb() {
    PotentialSpec p;
    p.k = -0.5;
    p.k0 = 1.0;
    return p;
}

double worst(const std::vector<CheckRecord>& recs) {
    double w = 0.0;
    for (const auto& r : recs) w = std::max(w, r.deviation);
    return w;
}

bool all_pass(const std::vector<CheckRecord>& recs) {
    return std::all_of(recs.begin(), recs.end(), [](const CheckRecord& r) { return r.passed(); });
}

// 1. Exact identities with zero deviation.
Outcome exact_identities() {
    const auto recs = exact_identity_suite(1, false);
    const double dev = worst(recs);
    return {all_pass(recs) && dev == 0.0, fmt("%zu records, max deviation %.3g (tol 0)", recs.size(), dev)};
}

// 2. Plain Kronecker symbol against the block form.
Outcome symbol_consistency() {
    constexpr double tol = 1e-12;
    const CheckRecord r = two_body_symbol_consistency(100, 1);
    return {r.deviation <= tol, fmt("100 samples, max deviation %.3g (tol %.0e)", r.deviation, tol)};
}

// 3. Matrix-free operators against assembled matrices at N = 2.
Outcome dense_oracle() {
    constexpr double tol = 1e-12;
    const auto recs = dense_oracle_suite(grid(2, 4.0), coulomb(), 1.0, 50, 1);
    const double dev = worst(recs);
    return {dev <= tol && recs.size() == 3, fmt("H_DC, H+, H- on 50 vectors, max rel. deviation %.3g (tol %.0e)", dev, tol)};
}

// 4. Exchange invariance at N = 8 and the quadratic-form identity on
// antisymmetric pairs.
Outcome antisymmetric_invariance() {
    constexpr double exchangeTol = 1e-10, formTol = 1e-9;
    const CheckRecord ex = exchange_invariance_check(grid(8, 8.0), coulomb(), 1.0, 3, 1);
    const FormEqualityResult form = form_equality_check(grid(8, 8.0), coulomb(), 1.0, 3, 1);
    const double formDev = std::max(form.plus.deviation, form.minus.deviation);
    const bool pass = ex.deviation <= exchangeTol && formDev <= formTol;
    return {pass, fmt("exchange %.3g (tol %.0e); form plus %.3g, minus %.3g (tol %.0e)", ex.deviation, exchangeTol,
                      form.plus.deviation, form.minus.deviation, formTol)};
}

// 5. Squared-operator identities.
Outcome square_identities() {
    constexpr double tol = 1e-12;
    const SquareIdentityResult r = square_identity_check(1.0, grid(16, 10.0), 1, 3);
    const double dev = std::max({r.plusDeviation, r.minusDeviation, r.h00Deviation});
    return {dev <= tol, fmt("plus %.3g, minus %.3g, H00 %.3g (tol %.0e)", r.plusDeviation, r.minusDeviation,
                            r.h00Deviation, tol)};
}

// 6. Weyl residual ladders for three targets around and beyond the mass gap.
Outcome weyl_ladders() {
    constexpr double slopeTol = 0.2;
    const double m = 0.15;
    struct Target {
        double lambda, mu;
    };
    const std::vector<Target> targets{{0.42, 0.8}, {0.8, 0.42}, {0.42, 0.42}};
    bool pass = true, below = false, above = false;
    std::ostringstream os;
    for (const Target& t : targets) {
        WeylProbeSpec s;
        s.lambda = t.lambda;
        s.mu = t.mu;
        s.m = m;
        s.nValues = {4, 8, 16};
        s.gridPoints = 32;
        s.boxPerN = 4.0;
        s.pot = coulomb();
        const WeylProbeResult r = weyl_probe(s);
        const bool ok = r.strictlyDecreasing && std::abs(r.slope + 1.0) <= slopeTol && r.rows.size() == 3;
        pass = pass && ok;
        below = below || r.target < 0.0;
        above = above || r.target > 2.0 * m;
        os << fmt("target %.3f slope %.3f%s; ", r.target, r.slope, r.strictlyDecreasing ? "" : " (not decreasing)");
    }
    pass = pass && below && above;
    os << fmt("m %.2f, slope tol %.1f", m, slopeTol);
    return {pass, os.str()};
}

// 7. Weighted Hardy inequalities on a 100-function family.
Outcome hardy() {
    constexpr double winTol = 1e-3;
    const GridSpec g = grid(32, 16.0);
    const std::vector<Field> family = hardy_trial_family(g, 100, 1);
    double minRatio = 1e300;
    for (const Field& u : family) minRatio = std::min(minRatio, hardy_win(u));
    bool haHolds = true;
    double worstMargin = -1e300;
    for (double muHat : {0.0, 0.25, 0.5})
        for (HardyMultiplier q : {HardyMultiplier::Zero, HardyMultiplier::PlusRadial, HardyMultiplier::MinusRadial,
                                  HardyMultiplier::SpinRadial})
            for (const Field& v : family) {
                const HardyHaResult r = hardy_ha(v, q, muHat);
                haHolds = haHolds && r.holds && r.qBoundExcess <= 1e-12;
                worstMargin = std::max(worstMargin, (r.lhs - r.factor * r.rhs) / r.norm);
            }
    const bool pass = minRatio >= 1.0 - winTol && haHolds;
    return {pass, fmt("WIN min ratio %.4f (>= %.3f); HA worst (lhs - rhs)/|v| %.3g over 3 constants x 4 multipliers",
                      minRatio, 1.0 - winTol, worstMargin)};
}

// 8. Hydrogenic ground state on refining grids.
Outcome hydrogenic() {
    constexpr double tol = 1e-2;
    const std::vector<int> ns{16, 32, 48};
    std::vector<double> errors;
    double oracle = 0.0;
    bool found = true;
    for (int n : ns) {
        const HydrogenicResult r = hydrogenic_validation(-0.5, 1.0, grid(n, 20.0), 1, 1e-6);
        found = found && r.found;
        errors.push_back(r.relativeError);
        oracle = r.oracle;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < errors.size(); ++i) monotone = monotone && errors[i] < errors[i - 1];
    const double closed = std::sqrt(0.75);
    const bool pass = found && monotone && errors.back() <= tol && std::abs(oracle - closed) <= 1e-6;
    return {pass, fmt("oracle %.6f (closed form %.6f); rel. errors N=16 %.3g, N=32 %.3g, N=48 %.3g (tol %.0e)", oracle,
                      closed, errors[0], errors[1], errors[2], tol)};
}

// 9. Kappa scan: confinement and no tracking of the interaction curve.
Outcome kappa_scan_evidence() {
    KappaScanSpec s;
    s.y2 = Vec3(1.0, 0.0, 0.0);
    s.m = 1.0;
    s.grid = grid(24, 16.0);
    s.pot = coulomb();
    for (int i = 0; i <= 6; ++i) s.settings.kappas.push_back(0.8 + 0.2 * i);
    s.settings.lambdas = {0.5, 1.0, 1.5};
    s.settings.adversarialLambda = true;
    const KappaScanResult r = kappa_scan(s);
    int longest = 0;
    for (const CurveMatch& c : r.matches) longest = std::max(longest, c.longestRun);
    const bool pass = r.localizedCount > 0 && r.confined && longest < 3 && r.label == "evidence";
    return {pass, fmt("label '%s', %d localized states, %zu branches, confinement violation %.3g, longest run %d (< 3)",
                      r.label.c_str(), r.localizedCount, r.branches.size(), r.worstConfinementViolation, longest)};
}

// 10. Model operator: constant k0 shift and mirror symmetry.
Outcome model() {
    constexpr double mirrorTol = 1e-8;
    ModelSpec s;
    s.k1 = -0.5;
    s.k2 = -0.3;
    s.k0 = 1.0;
    s.m = 1.0;
    const GridSpec g = grid(16, 12.0);
    const ModelShiftCheck shift = model_k0_shift_check(s, g, 0.0, 4, 1e-9);
    GridSpec gm = g;
    gm.zeroNyquist = true;
    const ModelMirrorCheck mirror = model_mirror_check(s, gm, 4, 1e-10, 1);
    const bool pass = shift.deviation <= shift.tolerance && mirror.spectralDeviation <= mirrorTol;
    return {pass, fmt("shift deviation %.3g (solver tol %.0e); mirror spectra %.3g (tol %.0e)", shift.deviation,
                      shift.tolerance, mirror.spectralDeviation, mirrorTol)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "exact identities", 1.0, exact_identities},
        {2, "two-body symbol consistency", 5.0, symbol_consistency},
        {3, "dense oracle equivalence", 30.0, dense_oracle},
        {4, "antisymmetric invariance", 120.0, antisymmetric_invariance},
        {5, "squared-operator identities", 60.0, square_identities},
        {6, "Weyl residual ladders", 600.0, weyl_ladders},
        {7, "Hardy inequalities", 120.0, hardy},
        {8, "hydrogenic validation", 600.0, hydrogenic},
        {9, "kappa scan evidence", 1800.0, kappa_scan_evidence},
        {10, "model operator", 300.0, model},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool inTime = secs <= c.budgetSeconds;
        const bool pass = o.pass && inTime;
        if (!pass) ++failures;
        std::printf("[%s] %2d %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.c_str(), secs, c.budgetSeconds, inTime ? "" : " over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
