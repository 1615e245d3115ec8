#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "dcspec/clifford.hpp"
#include "test_util.hpp"

using namespace dcspec;

TEST(Pauli, Displays) {
    EXPECT_EQ(pauli(1), ExactMatrix(2, 2, {0, 1, 1, 0}));
    EXPECT_EQ(pauli(3), ExactMatrix(2, 2, {1, 0, 0, -1}));
    EXPECT_EQ(pauli(2), ExactMatrix(2, 2, {0, -ExactComplex::i(), ExactComplex::i(), 0}));
    for (int j = 1; j <= 3; ++j) EXPECT_EQ(pauli(j) * pauli(j), ExactMatrix::identity(2));
    EXPECT_THROW(pauli(0), std::out_of_range);
    EXPECT_THROW(pauli(4), std::out_of_range);
}

TEST(DiracRep, StandardMatrices) {
    const DiracRep rep = standard_dirac_rep();
    EXPECT_EQ(rep.beta, ExactMatrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1}));
    EXPECT_TRUE((rep.alpha[0] * rep.beta + rep.beta * rep.alpha[0]).is_zero());
    EXPECT_EQ(rep.alpha[1] * rep.alpha[1], ExactMatrix::identity(4));
    for (const auto& m : rep.all()) EXPECT_TRUE(m.is_hermitian());
}

TEST(DiracRep, AllAnticommutatorsExact) {
    const auto recs = check_clifford(standard_dirac_rep());
    ASSERT_EQ(recs.size(), 10u);
    for (const auto& r : recs) {
        EXPECT_TRUE(r.passed()) << r.name;
        EXPECT_EQ(r.deviation, 0.0) << r.name;
        EXPECT_EQ(r.tolerance, 0.0);
    }
}

TEST(DiracRep, IdentityBetaFailsAgainstAlpha) {
    DiracRep rep = standard_dirac_rep();
    rep.beta = ExactMatrix::identity(4);
    const auto recs = check_clifford(rep);
    int failures = 0;
    for (const auto& r : recs) {
        if (!r.passed()) ++failures;
        if (r.name == "clifford.{alpha1,beta}") {
            EXPECT_FALSE(r.passed());
        }
    }
    EXPECT_EQ(failures, 3);
}

TEST(DiracRep, ScaledAlphaUsesMaxEntryMetric) {
    DiracRep rep = standard_dirac_rep();
    rep.alpha[0] = rep.alpha[0].scaled(ExactComplex(2));
    for (const auto& r : check_clifford(rep)) {
        if (r.name == "clifford.{alpha1,alpha1}") {
            EXPECT_FALSE(r.passed());
            EXPECT_EQ(r.deviation, 6.0);  // {2a, 2a} = 8 I against 2 I, largest entry
        } else {
            EXPECT_TRUE(r.passed()) << r.name;
        }
    }
}

TEST(FreeSymbol, Examples) {
    EXPECT_TRUE(free_symbol(Vec3::Zero(), 1.0).matrix.isApprox(beta_d()));
    const Eigen::Matrix4cd s = free_symbol(Vec3(0, 0, 1), 0.0).matrix;
    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected.block<2, 2>(0, 2) = pauli_d(3);
    expected.block<2, 2>(2, 0) = pauli_d(3);
    EXPECT_EQ((s - expected).norm(), 0.0);
    const Eigen::Matrix4cd q = free_symbol(Vec3(1, 2, 2), 3.0).matrix;
    EXPECT_LE((q * q - 18.0 * Eigen::Matrix4cd::Identity()).norm(), 1e-12);
}

TEST(FreeSymbol, SquareIsEnergySquaredForRandomInputs) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mass(0.0, 3.0);
    for (int t = 0; t < 100; ++t) {
        const Vec3 xi = testutil::random_vec3(rng, 2.0);
        const double m = mass(rng);
        const Eigen::Matrix4cd s = free_symbol(xi, m).matrix;
        const Eigen::Matrix4cd target = (xi.squaredNorm() + m * m) * Eigen::Matrix4cd::Identity();
        EXPECT_LE((s * s - target).norm(), 1e-12 * target.norm());
        EXPECT_LE((s - s.adjoint()).norm(), 0.0);
    }
}

TEST(PlaneWaves, RestFrameGivesStandardBasis) {
    const PlaneWaveBasis b = plane_wave_eigenvectors(Vec3::Zero(), 1.0);
    EXPECT_DOUBLE_EQ(b.energy, 1.0);
    // Positive energy spans e1, e2 and negative energy spans e3, e4.
    for (const auto& v : b.positive) EXPECT_NEAR(v.tail<2>().norm(), 0.0, 1e-15);
    for (const auto& v : b.negative) EXPECT_NEAR(v.head<2>().norm(), 0.0, 1e-15);
}

TEST(PlaneWaves, MasslessUnitMomentum) {
    const PlaneWaveBasis b = plane_wave_eigenvectors(Vec3(0, 0, 1), 0.0);
    EXPECT_NEAR(b.energy, 1.0, 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(free_symbol(Vec3(0, 0, 1), 0.0).matrix);
    EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(3), 1.0, 1e-14);
}

TEST(PlaneWaves, OrthonormalEigenbasis) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mass(0.0, 2.0);
    std::vector<std::pair<Vec3, double>> cases{{Vec3(0.3, -0.7, 1.1), 0.5}, {Vec3(0, 0, -2), 0.0}};
    for (int t = 0; t < 50; ++t) cases.emplace_back(testutil::random_vec3(rng), mass(rng));
    for (const auto& [xi, m] : cases) {
        const PlaneWaveBasis b = plane_wave_eigenvectors(xi, m);
        const Eigen::Matrix4cd h = free_symbol(xi, m).matrix;
        Eigen::Matrix4cd u;
        u << b.positive[0], b.positive[1], b.negative[0], b.negative[1];
        EXPECT_LE((u.adjoint() * u - Eigen::Matrix4cd::Identity()).norm(), 1e-12);
        for (const auto& v : b.positive) EXPECT_LE((h * v - b.energy * v).norm(), 1e-12);
        for (const auto& v : b.negative) EXPECT_LE((h * v + b.energy * v).norm(), 1e-12);
        // Deterministic phase: first nonzero component real and positive.
        for (int c = 0; c < 4; ++c) {
            const Eigen::Vector4cd& v = c < 2 ? b.positive[c] : b.negative[c - 2];
            int first = 0;
            while (std::abs(v(first)) < 1e-12) ++first;
            EXPECT_GT(v(first).real(), 0.0);
            EXPECT_NEAR(v(first).imag(), 0.0, 1e-14);
        }
    }
}

TEST(PlaneWaves, DegenerateSymbolRejected) {
    EXPECT_THROW(plane_wave_eigenvectors(Vec3::Zero(), 0.0), std::domain_error);
    EXPECT_THROW(plane_wave_eigenvectors(Vec3(1, 0, 0), -1.0), std::invalid_argument);
}
