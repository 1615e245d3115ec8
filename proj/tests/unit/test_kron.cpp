#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dcspec/kron.hpp"
#include "test_util.hpp"

using namespace dcspec;
using testutil::random_matrix;

namespace {

// Textbook Kronecker product, written out entry by entry.
Eigen::MatrixXcd naive_kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

Eigen::Matrix2cd m2(cplx a, cplx b, cplx c, cplx d) {
    Eigen::Matrix2cd m;
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST(Kron, SmallExamples) {
    const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_EQ(kron(id2, id2), Eigen::MatrixXcd::Identity(4, 4));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected.diagonal() << 1, 1, -1, -1;
    EXPECT_EQ(kron(pauli_d(3), id2), expected);
}

TEST(Kron, MatchesNaiveAndMixedProduct) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        const Eigen::MatrixXcd a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng);
        const Eigen::MatrixXcd c = random_matrix(2, 2, rng), d = random_matrix(2, 2, rng);
        EXPECT_LE((kron(a, b) - naive_kron(a, b)).norm(), 1e-14);
        EXPECT_LE((kron(a, b) * kron(c, d) - kron(a * c, b * d)).norm(), 1e-12 * (1 + kron(a * c, b * d).norm()));
    }
    const Eigen::MatrixXcd r = random_matrix(3, 2, rng), s = random_matrix(2, 5, rng);
    EXPECT_LE((kron(r, s) - naive_kron(r, s)).norm(), 1e-14);
}

TEST(Vec, ColumnMajorPacking) {
    const Eigen::Vector4cd v = vec(m2(1, 3, 2, 4));
    EXPECT_EQ(v, Eigen::Vector4cd(1, 2, 3, 4));
    EXPECT_EQ(mat(Eigen::Vector4cd(1, 2, 3, 4)), m2(1, 3, 2, 4));
    const ExactMatrix em(2, 2, {1, 3, 2, 4});
    EXPECT_EQ(vec(em), ExactMatrix(4, 1, {1, 2, 3, 4}));
    EXPECT_EQ(mat(vec(em)), em);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const Eigen::Matrix2cd m = random_matrix(2, 2, rng);
        EXPECT_EQ(mat(vec(m)), m);
    }
}

TEST(Vec, LeftAndRightActionsAgreeWithKron) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd m0 = m2(1, 0, 0, 0);
    EXPECT_EQ(apply_left(id, m0), m0);
    EXPECT_EQ(apply_right(pauli_d(1), m0), m2(0, 0, 1, 0));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Matrix2cd a = random_matrix(2, 2, rng), m = random_matrix(2, 2, rng);
        const Eigen::Vector4cd left = naive_kron(a, id) * vec(m);
        const Eigen::Vector4cd right = naive_kron(id, a) * vec(m);
        EXPECT_LE((mat(left) - apply_left(a, m)).norm(), 1e-12);
        EXPECT_LE((apply_left(a, m) - m * a.transpose()).norm(), 1e-12);
        EXPECT_LE((mat(right) - apply_right(a, m)).norm(), 1e-12);
        EXPECT_LE((apply_right(a, m) - a * m).norm(), 1e-12);
    }
}

TEST(KronSumBlocks, ScalarExamples) {
    Eigen::MatrixXcd b(1, 1), z(1, 1);
    b << 1.0;
    z << 0.0;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected.diagonal() << 2, 0, 0, -2;
    EXPECT_EQ(kron_sum_blocks(b, z, z), expected);

    std::mt19937_64 rng(4);
    std::normal_distribution<double> n;
    for (int t = 0; t < 20; ++t) {
        Eigen::MatrixXcd bb(1, 1), a1(1, 1), a2(1, 1);
        bb << n(rng);
        a1 << n(rng);
        a2 << n(rng);
        Eigen::MatrixXcd m1(2, 2), mm2(2, 2);
        m1 << bb(0, 0), a1(0, 0), a1(0, 0), -bb(0, 0);
        mm2 << bb(0, 0), a2(0, 0), a2(0, 0), -bb(0, 0);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
        const Eigen::MatrixXcd blocks = kron_sum_blocks(bb, a1, a2);
        EXPECT_LE((blocks - (naive_kron(m1, id) + naive_kron(id, mm2))).norm(), 1e-14);
        EXPECT_EQ(blocks(1, 1), cplx(0));
        EXPECT_EQ(blocks(1, 2), cplx(0));
        EXPECT_EQ(blocks(2, 1), cplx(0));
        EXPECT_EQ(blocks(2, 2), cplx(0));
    }
    Eigen::MatrixXcd wrong = Eigen::MatrixXcd::Zero(2, 2);
    EXPECT_THROW(kron_sum_blocks(b, wrong, z), std::invalid_argument);
}

TEST(TwoBodySymbol, RestFrameBlocks) {
    const TwoBodySymbol s = two_body_free_symbol(Vec3::Zero(), Vec3::Zero(), 1.0);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(16, 16);
    expected.diagonal().head(4).setConstant(2.0);
    expected.diagonal().tail(4).setConstant(-2.0);
    EXPECT_EQ(s.llss, expected);
    EXPECT_STREQ(to_string(BasisOrder::Llss), "llss");
    EXPECT_STREQ(to_string(BasisOrder::PlainKron), "plain-kron");
}

TEST(TwoBodySymbol, PermutationIsFixedBijection) {
    const auto& perm = llss_to_plain_permutation();
    std::array<int, 16> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 16; ++i) EXPECT_EQ(sorted[i], i);
    // Independent derivation from the label formulas.
    for (int a1 = 0; a1 < 2; ++a1)
        for (int i1 = 0; i1 < 2; ++i1)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int i2 = 0; i2 < 2; ++i2)
                    EXPECT_EQ(perm[8 * a1 + 4 * a2 + 2 * i1 + i2], 8 * a1 + 4 * i1 + 2 * a2 + i2);
}

TEST(TwoBodySymbol, SpectrumIsSumsOfOneBodyEnergies) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> mass(0.1, 2.0);
    for (int t = 0; t < 20; ++t) {
        const Vec3 x1 = testutil::random_vec3(rng), x2 = testutil::random_vec3(rng);
        const double m = mass(rng);
        const TwoBodySymbol s = two_body_free_symbol(x1, x2, m);
        EXPECT_LE(s.permutationDeviation, 1e-12);
        const double e1 = std::sqrt(x1.squaredNorm() + m * m), e2 = std::sqrt(x2.squaredNorm() + m * m);
        std::vector<double> expected;
        for (double s1 : {-1.0, 1.0})
            for (double s2 : {-1.0, 1.0})
                for (int k = 0; k < 4; ++k) expected.push_back(s1 * e1 + s2 * e2);
        std::sort(expected.begin(), expected.end());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.llss);
        for (int i = 0; i < 16; ++i) EXPECT_NEAR(es.eigenvalues()(i), expected[i], 1e-12);
        // Block zeros of the reordered matrix.
        EXPECT_EQ(s.llss.block(0, 12, 4, 4).norm(), 0.0);
        EXPECT_EQ(s.llss.block(4, 8, 4, 4).norm(), 0.0);
    }
}

TEST(OrthoTransforms, SAndT) {
    const ExactMatrix s = build_S().matrix;
    EXPECT_EQ(s.transpose() * s, ExactMatrix::identity(8));
    const ExactMatrix t = build_T().matrix;
    EXPECT_EQ(t.transpose() * t, ExactMatrix::identity(16));
    EXPECT_EQ(t, direct_sum(s, s));

    // S^-1 diag(a, b) S = 1/2 [[a + b, a - b], [a - b, a + b]] for random integer a, b.
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> d(-5, 5);
    ExactMatrix a(4, 4), b(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a(i, j) = ExactComplex(Surd(d(rng)), Surd(d(rng)));
            b(i, j) = ExactComplex(Surd(d(rng)), Surd(d(rng)));
        }
    const ExactComplex h(Surd(Dyadic(1, 1)));
    const ExactMatrix sum = (a + b).scaled(h), diff = (a - b).scaled(h);
    ExactMatrix expected(8, 8);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            expected(i, j) = sum(i, j);
            expected(i, j + 4) = diff(i, j);
            expected(i + 4, j) = diff(i, j);
            expected(i + 4, j + 4) = sum(i, j);
        }
    EXPECT_EQ(conjugate(build_S(), direct_sum(a, b)), expected);
}

TEST(OrthoTransforms, CanonicalFormOfPlusSymbol) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    const OrthoTransform t = build_T();
    const OrthoTransform td{t.matrix * lower_sign_flip(), "TD"};
    for (int k = 0; k < 20; ++k) {
        const Vec3 x1 = testutil::random_vec3(rng), x2 = testutil::random_vec3(rng);
        const double m = std::abs(n(rng)), v = n(rng);
        const Eigen::MatrixXcd plus = plus_form_symbol(x1, x2, m, v);
        EXPECT_LE((conjugate(t, plus) - canonical_form_symbol(x1, x2, m, v, true)).norm(), 1e-12);
        EXPECT_LE((conjugate(td, plus) - canonical_form_symbol(x1, x2, m, v, false)).norm(), 1e-12);
        // The negative lower coupling is not what T alone produces when m != 0.
        EXPECT_GT((conjugate(t, plus) - canonical_form_symbol(x1, x2, m, v, false)).norm(), 1e-3 * m);
        // Both reduced forms are unitarily equivalent to the original.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e0(plus), e1(canonical_form_symbol(x1, x2, m, v, false));
        EXPECT_LE((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(OrthoTransforms, MinusFormSharesSpectrumWithPlusForm) {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 10; ++k) {
        const Vec3 x1 = testutil::random_vec3(rng), x2 = testutil::random_vec3(rng);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ep(plus_form_symbol(x1, x2, 0.7, 0.1));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> em(minus_form_symbol(x1, x2, 0.7, 0.1));
        EXPECT_LE((ep.eigenvalues() - em.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
    }
}
