#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dcspec/hamiltonians.hpp"
#include "dcspec/operator.hpp"
#include "dcspec/potentials.hpp"
#include "test_util.hpp"

using namespace dcspec;

namespace {

Lattice lat3(int n, double l) {
    GridSpec g;
    g.N = n;
    g.L = l;
    return {g, 3};
}

}  // namespace

TEST(Cutoff, ProfileValuesAndSmoothness) {
    EXPECT_EQ(cutoff_profile(0.5), 0.0);
    EXPECT_EQ(cutoff_profile(1.0), 0.0);
    EXPECT_EQ(cutoff_profile(2.0), 1.0);
    EXPECT_EQ(cutoff_profile(7.0), 1.0);
    EXPECT_DOUBLE_EQ(cutoff_profile(1.5), 0.5);
    double prev = 0.0;
    for (double t = 1.0; t <= 2.0; t += 0.01) {
        const double v = cutoff_profile(t);
        EXPECT_GE(v, prev - 1e-15);
        prev = v;
        const double fd = (cutoff_profile(t + 1e-6) - cutoff_profile(t - 1e-6)) / 2e-6;
        EXPECT_NEAR(cutoff_profile_derivative(t), fd, 1e-6);
    }
    EXPECT_EQ(cutoff_profile_derivative(1.0), 0.0);
    EXPECT_EQ(cutoff_profile_derivative(2.0), 0.0);
}

TEST(Potentials, InteractionKernelPolicies) {
    PotentialSpec pot;
    pot.k0 = 2.0;
    pot.cutoffIndex = 4;
    EXPECT_EQ(interaction_kernel(pot, RegularizationKind::Bn, 0.0), 0.0);
    EXPECT_EQ(interaction_kernel(pot, RegularizationKind::Bn, 0.2), 0.0);  // n d <= 1
    EXPECT_DOUBLE_EQ(interaction_kernel(pot, RegularizationKind::Bn, 1.0), 2.0);
    const double b = cutoff_profile(4 * 0.375);
    EXPECT_DOUBLE_EQ(interaction_kernel(pot, RegularizationKind::Bn, 0.375), b * b * 2.0 / 0.375);
    pot.capValue = 10.0;
    EXPECT_EQ(interaction_kernel(pot, RegularizationKind::Cap, 0.0), 10.0);
    EXPECT_EQ(interaction_kernel(pot, RegularizationKind::Cap, 0.01), 10.0);
    EXPECT_DOUBLE_EQ(interaction_kernel(pot, RegularizationKind::Cap, 0.5), 4.0);
    pot.k0 = 0.0;
    EXPECT_EQ(interaction_kernel(pot, RegularizationKind::Cap, 0.5), 0.0);
}

TEST(Potentials, TwoBodyPotentialIsSwapSymmetricAndFinite) {
    GridSpec g;
    g.N = 4;
    g.L = 6.0;
    const Lattice lat{g, 6};
    PotentialSpec pot;
    pot.k = -0.5;
    pot.k0 = 1.0;
    for (RegularizationKind reg : {RegularizationKind::Bn, RegularizationKind::Cap}) {
        Lattice l = lat;
        l.grid.regularization = reg;
        const ScalarField v = two_body_potential(pot, l);
        int idx[6], sw[6];
        for (std::size_t s = 0; s < v.size(); ++s) {
            ASSERT_TRUE(std::isfinite(v[s]));
            l.unravel(s, idx);
            for (int a = 0; a < 3; ++a) {
                sw[a] = idx[a + 3];
                sw[a + 3] = idx[a];
            }
            EXPECT_NEAR(v[s], v[l.ravel(sw)], 1e-14 * (1.0 + std::abs(v[s])));
        }
    }
}

TEST(Potentials, OffsetGridAvoidsOriginAndYFrameIsMirrorSymmetric) {
    PotentialSpec pot;
    pot.k = -0.5;
    const Lattice lat = lat3(8, 8.0);
    const ScalarField v = coulomb_field(pot, lat, CoulombTerm::YFrame, Vec3(1, 0, 0));
    int idx[3], mir[3];
    for (std::size_t s = 0; s < v.size(); ++s) {
        ASSERT_TRUE(std::isfinite(v[s]));
        EXPECT_LT(v[s], 0.0);
        lat.unravel(s, idx);
        for (int a = 0; a < 3; ++a) mir[a] = 7 - idx[a];  // y -> -y on the offset grid
        EXPECT_NEAR(v[s], v[lat.ravel(mir)], 1e-14);
    }
    EXPECT_THROW(coulomb_field(pot, lat, CoulombTerm::YFrame, Vec3::Zero()), std::invalid_argument);
    EXPECT_THROW(coulomb_field(pot, lat, CoulombTerm::OneBody1), std::invalid_argument);
}

TEST(Potentials, CentersSumCoulombTerms) {
    const Lattice lat = lat3(4, 4.0);
    PotentialSpec pot;
    const ScalarField v = coulomb_centers(lat, {Vec3(0.3, 0, 0), Vec3(-0.3, 0, 0)}, {-1.0, 0.5}, pot);
    int idx[3];
    for (std::size_t s = 0; s < v.size(); ++s) {
        lat.unravel(s, idx);
        const Vec3 y(lat.grid.coord(idx[0]), lat.grid.coord(idx[1]), lat.grid.coord(idx[2]));
        EXPECT_NEAR(v[s], -1.0 / (y - Vec3(0.3, 0, 0)).norm() + 0.5 / (y + Vec3(0.3, 0, 0)).norm(), 1e-13);
    }
    PotentialSpec weak;
    weak.k = 0.5;
    EXPECT_TRUE(weak.subcritical());
    weak.k = 0.9;
    EXPECT_FALSE(weak.subcritical());
}

TEST(SpectralDerivative, ExactOnResolvedPlaneWaves) {
    GridSpec g;
    g.N = 8;
    g.L = 3.0;
    const Eigen::MatrixXcd d = spectral_derivative_matrix(g);
    EXPECT_LE((d - d.adjoint()).norm(), 1e-13);
    for (int q = -3; q <= 3; ++q) {
        Eigen::VectorXcd w(8);
        const double k = q * g.momentum_unit();
        for (int j = 0; j < 8; ++j) w(j) = std::polar(1.0, k * g.coord(j));
        EXPECT_LE((d * w - k * w).norm(), 1e-12 * (1 + std::abs(k)) * w.norm());
    }
}

TEST(StructuredOperator, MatrixFreeMatchesDense) {
    const Lattice lat = lat3(4, 2.5);
    StructuredOperator op(lat, 2);
    std::mt19937_64 rng(3);
    for (int a = 0; a < 3; ++a) {
        OperatorTerm t;
        t.coefficient = 0.7 + a;
        Eigen::Matrix2cd s = testutil::random_hermitian(2, rng);
        t.spin = SpinPair::left(s);
        t.routing = Eigen::MatrixXd::Identity(2, 2);
        t.routing(0, 1) = t.routing(1, 0) = 1.0;
        t.derivativeAxis = a;
        op.add_term(t);
    }
    OperatorTerm v;
    auto field = std::make_shared<ScalarField>(lat.sites());
    std::uniform_real_distribution<double> u(-1, 1);
    for (double& x : *field) x = u(rng);
    v.potential = field;
    op.add_term(v);
    OperatorTerm mix;
    mix.spin = SpinPair::right_transpose(pauli_d(2));
    mix.routing = Eigen::MatrixXd::Identity(2, 2);
    op.add_term(mix);
    op.add_constant(-0.25);

    const Eigen::MatrixXcd dense = op.build_dense();
    ASSERT_EQ(static_cast<std::size_t>(dense.rows()), op.dim());
    EXPECT_LE((dense - dense.adjoint()).norm(), 1e-12 * dense.norm());
    for (int t = 0; t < 5; ++t) {
        const Field f = random_field(lat, op.ncomp(), 10 + t);
        const Field g = op.apply(f);
        const Eigen::VectorXcd ref = dense * testutil::to_eigen(f);
        EXPECT_LE((testutil::to_eigen(g) - ref).norm(), 1e-12 * ref.norm());
    }
}

TEST(StructuredOperator, RejectsMalformedTerms) {
    const Lattice lat = lat3(4, 1.0);
    StructuredOperator op(lat, 2);
    OperatorTerm bad;
    bad.routing = Eigen::MatrixXd::Identity(3, 3);
    EXPECT_THROW(op.add_term(bad), std::invalid_argument);
    OperatorTerm both;
    both.derivativeAxis = 0;
    both.potential = std::make_shared<ScalarField>(lat.sites(), 1.0);
    EXPECT_THROW(op.add_term(both), std::invalid_argument);
    OperatorTerm axis;
    axis.derivativeAxis = 3;
    EXPECT_THROW(op.add_term(axis), std::invalid_argument);
    EXPECT_THROW(StructuredOperator(lat, 5), std::invalid_argument);
    Field wrong(lat, 3);
    EXPECT_THROW(op.apply(wrong), std::invalid_argument);
}

TEST(StructuredOperator, ApplyIsLinear) {
    const Lattice lat = lat3(6, 3.0);
    PotentialSpec pot;
    pot.k = -0.4;
    const StructuredOperator op =
        build_dirac3d(lat, 1.0, std::make_shared<const ScalarField>(coulomb_centers(lat, {Vec3::Zero()}, {-0.4}, pot)));
    const Field f = random_field(lat, 4, 1), g = random_field(lat, 4, 2);
    const cplx a(0.5, 1.5), b(-2.0, 0.25);
    const Field lhs = op.apply(a * f + b * g);
    const Field rhs = a * op.apply(f) + b * op.apply(g);
    EXPECT_LE(testutil::rel_diff(lhs, rhs), 1e-13);
}
