#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dcspec/model.hpp"
#include "test_util.hpp"

using namespace dcspec;

namespace {

GridSpec grid(int n, double l, bool zeroNyquist = false) {
    GridSpec g;
    g.N = n;
    g.L = l;
    g.zeroNyquist = zeroNyquist;
    return g;
}

}  // namespace

TEST(Model, FreeSpectrumFromSymbol) {
    ModelSpec spec;
    spec.k1 = spec.k2 = spec.k0 = 0.0;
    spec.m = 0.8;
    const GridSpec g = grid(4, 5.0);
    const StructuredOperator op = build_model_y(Lattice{g, 3}, spec);
    const DenseEig de = dense_eig(op.build_dense());
    std::vector<double> expected;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                const double p2 = std::pow(g.momentum(a), 2) + std::pow(g.momentum(b), 2) + std::pow(g.momentum(c), 2);
                const double e = std::sqrt(2.0 * p2 + 4.0 * spec.m * spec.m);
                for (int k = 0; k < 2; ++k) {
                    expected.push_back(e);
                    expected.push_back(-e);
                }
            }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(static_cast<std::size_t>(de.values.size()), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(de.values(i), expected[i], 1e-10);
}

TEST(Model, K0TermIsAConstantShift) {
    ModelSpec spec;
    spec.k0 = 1.3;
    spec.y2 = Vec3(0.6, 0.8, 0.0);
    EXPECT_DOUBLE_EQ(model_k0_shift(spec), 1.3 / std::sqrt(2.0));
    const Lattice lat{grid(6, 8.0), 3};
    const Field f = random_field(lat, 4, 1);
    const Field diff = build_model_y(lat, spec).apply(f) - build_model_fibre(lat, spec).apply(f);
    EXPECT_LE(testutil::rel_diff(diff, model_k0_shift(spec) * f), 1e-14);
    spec.k0 = 0.0;
    EXPECT_EQ(model_k0_shift(spec), 0.0);
}

TEST(Model, HermitianOnRandomFields) {
    ModelSpec spec;
    spec.k1 = -0.5;
    spec.k2 = -0.3;
    const StructuredOperator op = build_model_y(Lattice{grid(8, 8.0), 3}, spec);
    EXPECT_LE(hermiticity_defect(as_apply(op), op.dim(), 3, 5), 1e-10);
}

TEST(Model, ValidationErrors) {
    ModelSpec spec;
    spec.y2 = Vec3::Zero();
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.k0 = 0.0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);  // centres coincide
    spec = ModelSpec{};
    spec.m = -1.0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = ModelSpec{};
    EXPECT_TRUE(spec.subcritical());
    spec.k2 = -0.9;
    EXPECT_FALSE(spec.subcritical());
    EXPECT_THROW(build_model_y(Lattice{grid(4, 4.0), 6}, ModelSpec{}), std::invalid_argument);
}

TEST(Model, ShiftCheckOnSmallGrid) {
    ModelSpec spec;
    spec.k1 = -0.5;
    spec.k2 = -0.3;
    const ModelShiftCheck c = model_k0_shift_check(spec, grid(8, 8.0), 0.0, 3, 1e-9);
    ASSERT_EQ(c.with.size(), 3u);
    EXPECT_NEAR(c.shift, 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_LE(c.deviation, c.tolerance);
}

TEST(Model, MirrorSymmetryOnSmallGrid) {
    ModelSpec spec;
    spec.k1 = -0.5;
    spec.k2 = -0.3;
    EXPECT_THROW(model_mirror_check(spec, grid(8, 8.0, false)), std::invalid_argument);
    const ModelMirrorCheck c = model_mirror_check(spec, grid(8, 8.0, true), 3, 1e-10);
    EXPECT_LE(c.operatorDeviation, 1e-12);
    ASSERT_EQ(c.original.size(), c.swapped.size());
    EXPECT_LE(c.spectralDeviation, 1e-8);
}

TEST(Model, EigenvaluesHaveSmallResiduals) {
    ModelSpec spec;
    const ModelSpectrum s = model_eigenvalues(spec, grid(8, 8.0), 0.0, 2, 1e-9);
    EXPECT_TRUE(s.converged);
    ASSERT_EQ(s.values.size(), 2u);
    for (double r : s.residuals) EXPECT_LE(r, 1e-9);
    EXPECT_TRUE(std::is_sorted(s.values.begin(), s.values.end()));
}
