#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dcspec/probes.hpp"
#include "test_util.hpp"

using namespace dcspec;

namespace {

GridSpec grid(int n, double l) {
    GridSpec g;
    g.N = n;
    g.L = l;
    return g;
}

Field gaussian(const GridSpec& g, double width, const Eigen::Vector4cd& spinor) {
    const Lattice lat{g, 3};
    Field f(lat, 4);
    int idx[3];
    for (std::size_t s = 0; s < f.sites(); ++s) {
        lat.unravel(s, idx);
        const Vec3 y(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
        const double a = std::exp(-y.squaredNorm() / (2 * width * width));
        for (int c = 0; c < 4; ++c) f.at(s, c) = a * spinor(c);
    }
    return f;
}

}  // namespace

TEST(ShellProfile, SupportAndSmoothness) {
    EXPECT_EQ(shell_profile(1.0, 1.0), 0.0);
    EXPECT_EQ(shell_profile(2.0, 1.0), 0.0);
    EXPECT_EQ(shell_profile(0.5, 1.0), 0.0);
    EXPECT_GT(shell_profile(1.5, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(shell_profile(6.0, 4.0), shell_profile(1.5, 1.0));
    for (double r = 1.01; r < 2.0; r += 0.05) {
        const double fd = (shell_profile(r + 1e-6, 1.0) - shell_profile(r - 1e-6, 1.0)) / 2e-6;
        EXPECT_NEAR(shell_profile_derivative(r, 1.0), fd, 1e-5);
    }
    EXPECT_THROW(shell_profile(1.0, 0.0), std::invalid_argument);
}

TEST(Weyl, FreeResidualIsCutoffGradientOnly) {
    WeylProbeSpec spec;  // k = k0 = 0
    spec.nValues = {4, 8, 16};
    const WeylProbeResult r = weyl_probe(spec);
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_DOUBLE_EQ(r.xi.dot(r.eta), 0.0);
    EXPECT_NEAR(r.target, r.lambda - r.mu, 1e-15);
    for (const WeylRow& row : r.rows) {
        EXPECT_NEAR(row.residual, row.gradientResidual, 1e-12 * row.gradientResidual);
        EXPECT_LE(row.residual, 2.0 * row.gradientScale);
        EXPECT_GE(row.residual, 0.1 * row.gradientScale);
        EXPECT_NEAR(row.wNorm, 1.0, 1e-10);
        EXPECT_LE(row.pairDefect, 1e-12);
    }
    EXPECT_TRUE(r.strictlyDecreasing);
    EXPECT_NEAR(r.slope, -1.0, 0.2);
}

TEST(Weyl, CoulombLadderDecaysAtRateOne) {
    WeylProbeSpec spec;
    spec.pot.k = -0.5;
    spec.pot.k0 = 1.0;
    const WeylProbeResult r = weyl_probe(spec);
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_TRUE(r.strictlyDecreasing);
    EXPECT_NEAR(r.slope, -1.0, 0.2);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        const double ratio = r.rows[i].residual / r.rows[i - 1].residual;
        EXPECT_GE(ratio, 0.4);
        EXPECT_LE(ratio, 0.6);
    }
}

TEST(Weyl, RejectsInvalidLadders) {
    WeylProbeSpec spec;
    spec.nValues = {8, 4};
    EXPECT_THROW(weyl_probe(spec), std::invalid_argument);
    spec.nValues = {4};
    spec.boxPerN = 2.0;
    EXPECT_THROW(weyl_probe(spec), std::invalid_argument);
    spec.boxPerN = 4.0;
    spec.lambda = 0.1;  // below the mass
    EXPECT_THROW(weyl_probe(spec), std::invalid_argument);
}

TEST(Weyl, ReducedFormulaMatchesFullLattice) {
    WeylProbeSpec spec;
    spec.pot.k = -0.5;
    spec.pot.k0 = 1.0;
    const WeylCrossCheck c = weyl_cross_check(spec, 1, 8);
    EXPECT_NEAR(c.fullNorm, 1.0, 1e-8);
    EXPECT_LE(c.antisymmetryDefect, 1e-12);
    EXPECT_NEAR(c.reducedResidual, c.fullResidual, 1e-8 * c.fullResidual);
}

TEST(Hardy, GaussianRatioAboveOne) {
    const GridSpec g = grid(24, 12.0);
    const Field u = gaussian(g, 1.0, Eigen::Vector4cd(1.0, 0.0, 0.5, cplx(0, 0.5)));
    EXPECT_GT(hardy_win(u), 1.0);
}

TEST(Hardy, TrialFamilyAndDilation) {
    const GridSpec g = grid(24, 12.0);
    const std::vector<Field> fam = hardy_trial_family(g, 20, 3);
    ASSERT_EQ(fam.size(), 20u);
    for (const Field& u : fam) EXPECT_GE(hardy_win(u), 1.0 - 1e-3);
    // Both weighted norms scale as s^-2 under u(y) -> u(s y); wider Gaussians
    // stay above the bound.
    const Eigen::Vector4cd spinor(1.0, 0.0, 0.0, 0.0);
    for (double width : {0.6, 0.9, 1.2}) EXPECT_GE(hardy_win(gaussian(g, width, spinor)), 1.0 - 1e-3);
    EXPECT_THROW(hardy_win(Field(Lattice{g, 3}, 4)), std::invalid_argument);
}

TEST(Hardy, HaConstants) {
    const GridSpec g = grid(16, 12.0);
    const Field v = gaussian(g, 1.0, Eigen::Vector4cd(1.0, 0.2, 0.0, 0.3));
    const HardyHaResult r0 = hardy_ha(v, HardyMultiplier::Zero, 0.0);
    EXPECT_DOUBLE_EQ(r0.a, 0.5);
    EXPECT_DOUBLE_EQ(r0.factor, 2.0);
    EXPECT_TRUE(r0.holds);
    const HardyHaResult r5 = hardy_ha(v, HardyMultiplier::SpinRadial, 0.5);
    EXPECT_NEAR(r5.a, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(r5.factor, 1.0 / (1.0 - std::sqrt(0.5)), 1e-12);
    EXPECT_LE(r5.qBoundExcess, 1e-12);
    EXPECT_TRUE(r5.holds);
    const HardyHaResult near = hardy_ha(v, HardyMultiplier::PlusRadial, std::sqrt(3.0) / 2.0 - 1e-13);
    EXPECT_TRUE(near.vacuous);
    EXPECT_THROW(hardy_ha(v, HardyMultiplier::Zero, std::sqrt(3.0) / 2.0), std::invalid_argument);
    EXPECT_THROW(hardy_ha(v, HardyMultiplier::Zero, -0.1), std::invalid_argument);
}

TEST(SquareIdentities, HoldToRoundoff) {
    for (double m : {0.0, 1.0, 2.5}) {
        const SquareIdentityResult r = square_identity_check(m, grid(8, 6.0), 2);
        EXPECT_LE(r.plusDeviation, 1e-12);
        EXPECT_LE(r.minusDeviation, 1e-12);
        EXPECT_LE(r.h00Deviation, 1e-12);
    }
}

TEST(RadialOracle, ClosedFormLevels) {
    const RadialSpectrum s = radial_dirac_oracle(-0.5, 1.0);
    ASSERT_FALSE(s.gapEigenvalues.empty());
    EXPECT_NEAR(s.gapEigenvalues.front(), std::sqrt(0.75), 1e-6);
    const RadialSpectrum w = radial_dirac_oracle(-0.1, 1.0, -1, 0.01, 150.0);
    ASSERT_FALSE(w.gapEigenvalues.empty());
    EXPECT_GT(w.gapEigenvalues.front(), 0.99);
    EXPECT_LT(w.gapEigenvalues.front(), 1.0);
    EXPECT_NEAR(w.gapEigenvalues.front(), std::sqrt(0.99), 1e-5);
    EXPECT_TRUE(radial_dirac_oracle(0.0, 1.0).gapEigenvalues.empty());
    EXPECT_THROW(radial_dirac_oracle(-1.5, 1.0), std::invalid_argument);
}

TEST(Hydrogenic, CoarseGridApproachesOracle) {
    const HydrogenicResult r = hydrogenic_validation(-0.5, 1.0, grid(12, 12.0));
    ASSERT_TRUE(r.found);
    EXPECT_NEAR(r.oracle, std::sqrt(0.75), 1e-6);
    EXPECT_LT(r.relativeError, 0.1);
    EXPECT_GT(r.eigenvalue, -1.0);
    EXPECT_LT(r.eigenvalue, 1.0);
    EXPECT_THROW(hydrogenic_validation(-0.9, 1.0, grid(8, 8.0)), std::invalid_argument);
}

TEST(KappaScan, FreeBlocksHaveNoBranches) {
    KappaScanSpec spec;
    spec.pot.k = 0.0;
    spec.grid = grid(8, 10.0);
    spec.settings.kappas = {1.0, 1.5};
    spec.settings.lambdas = {0.5};
    spec.settings.howMany = 2;
    const KappaScanResult r = kappa_scan(spec);
    EXPECT_EQ(r.localizedCount, 0);
    EXPECT_TRUE(r.branches.empty());
    EXPECT_FALSE(r.anyMatch);
    EXPECT_EQ(r.label, "evidence");
}

TEST(KappaScan, RejectsBadInput) {
    KappaScanSpec spec;
    spec.grid = grid(8, 10.0);
    spec.settings.kappas = {};
    EXPECT_THROW(kappa_scan(spec), std::invalid_argument);
    spec.settings.kappas = {1.0, -1.0};
    EXPECT_THROW(kappa_scan(spec), std::invalid_argument);
    spec.settings.kappas = {1.0};
    spec.y2 = Vec3::Zero();
    EXPECT_THROW(kappa_scan(spec), std::invalid_argument);
}

TEST(KappaScan, BranchesStayInsideTheGap) {
    KappaScanSpec spec;
    spec.pot.k = -0.5;
    spec.pot.k0 = 1.0;
    spec.grid = grid(12, 12.0);
    spec.settings.kappas = {1.0, 1.4, 1.8};
    spec.settings.lambdas = {0.5, 1.0};
    const KappaScanResult r = kappa_scan(spec);
    EXPECT_TRUE(r.confined);
    for (const auto& perKappa : r.states)
        for (const ScanState& s : perKappa)
            if (s.localized) {
                EXPECT_GT(std::abs(s.value), 0.0);
                EXPECT_LT(std::abs(s.value), 2.0 * spec.m);
            }
    for (const Branch& b : r.branches)
        for (std::size_t i = 1; i < b.points.size(); ++i) EXPECT_GE(b.points[i].overlap, 0.9);
    for (const CurveMatch& c : r.matches)
        if (!c.matched) {
            EXPECT_LT(c.longestRun, 3);
        }
}
