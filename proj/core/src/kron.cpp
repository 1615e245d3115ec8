#include "dcspec/kron.hpp"

#include <stdexcept>

namespace dcspec {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd r(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            r.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return r;
}

Eigen::Vector4cd vec(const Eigen::Matrix2cd& m) { return {m(0, 0), m(1, 0), m(0, 1), m(1, 1)}; }

Eigen::Matrix2cd mat(const Eigen::Vector4cd& v) {
    Eigen::Matrix2cd m;
    m << v[0], v[2], v[1], v[3];
    return m;
}

ExactMatrix vec(const ExactMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("vec expects a 2x2 matrix");
    return ExactMatrix(4, 1, {m(0, 0), m(1, 0), m(0, 1), m(1, 1)});
}

ExactMatrix mat(const ExactMatrix& v) {
    if (v.rows() != 4 || v.cols() != 1) throw std::invalid_argument("mat expects a 4-vector");
    return ExactMatrix(2, 2, {v(0, 0), v(2, 0), v(1, 0), v(3, 0)});
}

Eigen::Matrix2cd apply_left(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& m) { return m * a.transpose(); }
Eigen::Matrix2cd apply_right(const Eigen::Matrix2cd& b, const Eigen::Matrix2cd& m) { return b * m; }
ExactMatrix apply_left(const ExactMatrix& a, const ExactMatrix& m) { return m * a.transpose(); }
ExactMatrix apply_right(const ExactMatrix& b, const ExactMatrix& m) { return b * m; }

namespace {

void require_square_same(Eigen::Index n, const Eigen::MatrixXcd& x) {
    if (x.rows() != n || x.cols() != n) throw std::invalid_argument("kron_sum_blocks: block size mismatch");
}

}  // namespace

Eigen::MatrixXcd kron_sum_blocks(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& a1,
                                 const Eigen::MatrixXcd& a2) {
    const Eigen::Index n = b.rows();
    require_square_same(n, b);
    require_square_same(n, a1);
    require_square_same(n, a2);
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
    auto blk = [&](int i, int j) { return r.block(i * n, j * n, n, n); };
    blk(0, 0) = 2.0 * b;
    blk(0, 1) = a2;
    blk(0, 2) = a1;
    blk(1, 0) = a2;
    blk(1, 3) = a1;
    blk(2, 0) = a1;
    blk(2, 3) = a2;
    blk(3, 1) = a1;
    blk(3, 2) = a2;
    blk(3, 3) = -2.0 * b;
    return r;
}

ExactMatrix kron_sum_blocks(const ExactMatrix& b, const ExactMatrix& a1, const ExactMatrix& a2) {
    const int n = b.rows();
    for (const ExactMatrix* x : {&b, &a1, &a2})
        if (x->rows() != n || x->cols() != n) throw std::invalid_argument("kron_sum_blocks: block size mismatch");
    ExactMatrix r(4 * n, 4 * n);
    auto put = [&](int bi, int bj, const ExactMatrix& x) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(bi * n + i, bj * n + j) = x(i, j);
    };
    put(0, 0, b + b);
    put(0, 1, a2);
    put(0, 2, a1);
    put(1, 0, a2);
    put(1, 3, a1);
    put(2, 0, a1);
    put(2, 3, a2);
    put(3, 1, a1);
    put(3, 2, a2);
    put(3, 3, -(b + b));
    return r;
}

const char* to_string(BasisOrder b) { return b == BasisOrder::PlainKron ? "plain-kron" : "llss"; }

const std::array<int, 16>& llss_to_plain_permutation() {
    static const std::array<int, 16> perm = [] {
        struct Label {
            int a1, i1, a2, i2;
        };
        std::array<Label, 16> plain{}, llss{};
        for (int a1 = 0; a1 < 2; ++a1)
            for (int i1 = 0; i1 < 2; ++i1)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int i2 = 0; i2 < 2; ++i2) {
                        plain[8 * a1 + 4 * i1 + 2 * a2 + i2] = {a1, i1, a2, i2};
                        llss[8 * a1 + 4 * a2 + 2 * i1 + i2] = {a1, i1, a2, i2};
                    }
        std::array<int, 16> p{};
        for (int s = 0; s < 16; ++s) {
            int found = -1;
            for (int t = 0; t < 16; ++t) {
                const Label& x = llss[s];
                const Label& y = plain[t];
                if (x.a1 == y.a1 && x.i1 == y.i1 && x.a2 == y.a2 && x.i2 == y.i2) found = t;
            }
            p[s] = found;
        }
        return p;
    }();
    return perm;
}

Eigen::MatrixXcd permutation_matrix_llss_to_plain() {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(16, 16);
    const auto& perm = llss_to_plain_permutation();
    for (int s = 0; s < 16; ++s) p(perm[s], s) = 1.0;
    return p;
}

namespace {

Eigen::Matrix2cd sigma_dot(const Vec3& xi) {
    return xi[0] * pauli_d(1) + xi[1] * pauli_d(2) + xi[2] * pauli_d(3);
}

}  // namespace

TwoBodySymbol two_body_free_symbol(const Vec3& xi1, const Vec3& xi2, double m) {
    TwoBodySymbol s;
    s.xi1 = xi1;
    s.xi2 = xi2;
    s.mass = m;
    const Eigen::MatrixXcd id4 = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
    s.plainKron = kron(free_symbol(xi1, m).matrix, id4) + kron(id4, free_symbol(xi2, m).matrix);

    const Eigen::MatrixXcd h1 = kron(sigma_dot(xi1), id2);
    const Eigen::MatrixXcd h2 = kron(id2, sigma_dot(xi2));
    s.llss = Eigen::MatrixXcd::Zero(16, 16);
    auto blk = [&](int i, int j) { return s.llss.block(4 * i, 4 * j, 4, 4); };
    blk(0, 0) = 2.0 * m * id4;
    blk(0, 1) = h2;
    blk(0, 2) = h1;
    blk(1, 0) = h2;
    blk(1, 3) = h1;
    blk(2, 0) = h1;
    blk(2, 3) = h2;
    blk(3, 1) = h1;
    blk(3, 2) = h2;
    blk(3, 3) = -2.0 * m * id4;

    const Eigen::MatrixXcd p = permutation_matrix_llss_to_plain();
    s.permutationDeviation = (p.transpose() * s.plainKron * p - s.llss).cwiseAbs().maxCoeff();
    if (s.permutationDeviation > 1e-12)
        throw std::logic_error("two_body_free_symbol: Kronecker and block constructions disagree");
    return s;
}

OrthoTransform build_S() {
    const ExactMatrix id4 = ExactMatrix::identity(4);
    ExactMatrix s(8, 8);
    const ExactComplex c(Surd::inv_sqrt2());
    for (int i = 0; i < 4; ++i) {
        s(i, i) = c;
        s(i, 4 + i) = c;
        s(4 + i, i) = c;
        s(4 + i, 4 + i) = -c;
    }
    if (!(s.transpose() * s == ExactMatrix::identity(8))) throw std::logic_error("S is not orthogonal");
    return {s, "S"};
}

OrthoTransform build_T() {
    const ExactMatrix s = build_S().matrix;
    ExactMatrix t = direct_sum(s, s);
    if (!(t.transpose() * t == ExactMatrix::identity(16))) throw std::logic_error("T is not orthogonal");
    return {t, "T"};
}

ExactMatrix conjugate(const OrthoTransform& t, const ExactMatrix& m) {
    return t.matrix.transpose() * m * t.matrix;
}

Eigen::MatrixXcd conjugate(const OrthoTransform& t, const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd tm = to_eigen(t.matrix);
    return tm.transpose() * m * tm;
}

Eigen::MatrixXcd plus_form_symbol(const Vec3& xi1, const Vec3& xi2, double m, double v) {
    const Eigen::MatrixXcd id4 = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd h12 = kron(Eigen::MatrixXcd::Identity(2, 2), sigma_dot(xi1 + xi2));
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(16, 16);
    auto blk = [&](int i, int j) { return r.block(4 * i, 4 * j, 4, 4); };
    blk(0, 0) = (v + 2.0 * m) * id4;
    blk(0, 1) = h12;
    blk(1, 0) = h12;
    blk(1, 1) = v * id4;
    blk(2, 2) = v * id4;
    blk(2, 3) = h12;
    blk(3, 2) = h12;
    blk(3, 3) = (v - 2.0 * m) * id4;
    return r;
}

Eigen::MatrixXcd minus_form_symbol(const Vec3& xi1, const Vec3& xi2, double m, double v) {
    const Eigen::MatrixXcd id4 = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd h21 = kron(sigma_dot(xi1 + xi2), Eigen::MatrixXcd::Identity(2, 2));
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(16, 16);
    auto blk = [&](int i, int j) { return r.block(4 * i, 4 * j, 4, 4); };
    blk(0, 0) = (v + 2.0 * m) * id4;
    blk(0, 2) = h21;
    blk(2, 0) = h21;
    blk(1, 1) = v * id4;
    blk(1, 3) = h21;
    blk(3, 1) = h21;
    blk(2, 2) = v * id4;
    blk(3, 3) = (v - 2.0 * m) * id4;
    return r;
}

Eigen::MatrixXcd canonical_form_symbol(const Vec3& xi1, const Vec3& xi2, double m, double v,
                                       bool lowerCouplingPositive) {
    const Eigen::MatrixXcd id4 = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd h00 = kron(Eigen::MatrixXcd::Identity(2, 2), sigma_dot(xi1 + xi2));
    Eigen::MatrixXcd r = v * Eigen::MatrixXcd::Identity(16, 16);
    auto blk = [&](int i, int j) { return r.block(4 * i, 4 * j, 4, 4); };
    const double s = lowerCouplingPositive ? 1.0 : -1.0;
    blk(0, 0) += h00 + m * id4;
    blk(1, 1) += -h00 + m * id4;
    blk(2, 2) += h00 - m * id4;
    blk(3, 3) += -h00 - m * id4;
    blk(0, 1) += m * id4;
    blk(1, 0) += m * id4;
    blk(2, 3) += s * m * id4;
    blk(3, 2) += s * m * id4;
    return r;
}

ExactMatrix lower_sign_flip() {
    ExactMatrix d = ExactMatrix::identity(16);
    for (int i = 12; i < 16; ++i) d(i, i) = ExactComplex(-1);
    return d;
}

}  // namespace dcspec
