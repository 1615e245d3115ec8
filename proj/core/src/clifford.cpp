#include "dcspec/clifford.hpp"

#include <cmath>
#include <stdexcept>

namespace dcspec {

ExactMatrix pauli(int j) {
    const ExactComplex I = ExactComplex::i();
    switch (j) {
        case 1: return ExactMatrix(2, 2, {0, 1, 1, 0});
        case 2: return ExactMatrix(2, 2, {0, -I, I, 0});
        case 3: return ExactMatrix(2, 2, {1, 0, 0, -1});
        default: throw std::out_of_range("pauli index must be 1, 2 or 3");
    }
}

DiracRep standard_dirac_rep() {
    const ExactMatrix s1(2, 2, {0, 1, 1, 0});
    DiracRep rep;
    for (int j = 0; j < 3; ++j) rep.alpha[j] = kron(s1, pauli(j + 1));
    rep.beta = kron(pauli(3), ExactMatrix::identity(2));
    return rep;
}

std::vector<CheckRecord> check_clifford(const DiracRep& rep) {
    static const char* names[4] = {"alpha1", "alpha2", "alpha3", "beta"};
    const auto mats = rep.all();
    const ExactMatrix id4 = ExactMatrix::identity(4);
    std::vector<CheckRecord> out;
    for (int j = 0; j < 4; ++j)
        for (int k = j; k < 4; ++k) {
            const ExactMatrix ac = mats[j] * mats[k] + mats[k] * mats[j];
            const ExactMatrix expected = (j == k) ? id4 + id4 : ExactMatrix::zero(4, 4);
            const double dev = ac.max_abs_deviation(expected);
            CheckRecord rec;
            rec.name = std::string("clifford.{") + names[j] + "," + names[k] + "}";
            rec.anchor = std::string("{") + names[j] + "," + names[k] + "} = " + (j == k ? "2 I4" : "0");
            rec.deviation = dev;
            rec.tolerance = 0.0;
            rec.status = (ac == expected) ? CheckStatus::Pass : CheckStatus::Fail;
            out.push_back(rec);
        }
    return out;
}

Eigen::MatrixXcd to_eigen(const ExactMatrix& m) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
    return r;
}

Eigen::Matrix2cd pauli_d(int j) { return to_eigen(pauli(j)); }

std::array<Eigen::Matrix4cd, 3> alpha_d() {
    const DiracRep rep = standard_dirac_rep();
    return {to_eigen(rep.alpha[0]), to_eigen(rep.alpha[1]), to_eigen(rep.alpha[2])};
}

Eigen::Matrix4cd beta_d() { return to_eigen(standard_dirac_rep().beta); }

FreeSymbol free_symbol(const Vec3& xi, double m) {
    static const auto alpha = alpha_d();
    static const Eigen::Matrix4cd beta = beta_d();
    FreeSymbol s;
    s.xi = xi;
    s.mass = m;
    s.matrix = m * beta;
    for (int j = 0; j < 3; ++j) s.matrix += xi[j] * alpha[j];
    return s;
}

namespace {

using Spinor = Eigen::Vector2cd;

// Eigenvectors of sigma.n for a unit vector n: {+1, -1}.
std::array<Spinor, 2> helicity_spinors(const Vec3& n) {
    using C = std::complex<double>;
    Spinor plus, minus;
    if (n[2] >= 0.0) {
        plus << C(1.0 + n[2], 0.0), C(n[0], n[1]);
        minus << C(-n[0], n[1]), C(1.0 + n[2], 0.0);
    } else {
        plus << C(n[0], -n[1]), C(1.0 - n[2], 0.0);
        minus << C(1.0 - n[2], 0.0), C(-n[0], -n[1]);
    }
    return {plus.normalized(), minus.normalized()};
}

Eigen::Vector4cd fix_phase(Eigen::Vector4cd v) {
    v.normalize();
    for (int i = 0; i < 4; ++i) {
        const double a = std::abs(v[i]);
        if (a > 1e-12) {
            v *= std::conj(v[i]) / a;
            v[i] = a;
            break;
        }
    }
    return v;
}

}  // namespace

PlaneWaveBasis plane_wave_eigenvectors(const Vec3& xi, double m) {
    if (m < 0.0) throw std::invalid_argument("plane_wave_eigenvectors: mass must be nonnegative");
    const double p = xi.norm();
    if (p == 0.0 && m == 0.0)
        throw std::domain_error("plane_wave_eigenvectors: degenerate symbol at xi = 0, m = 0");
    PlaneWaveBasis b;
    b.energy = std::sqrt(p * p + m * m);
    if (p == 0.0) {
        const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
        b.positive = {id.col(0), id.col(1)};
        b.negative = {id.col(2), id.col(3)};
        return b;
    }
    const auto chi = helicity_spinors(xi / p);
    const double E = b.energy;
    for (int s = 0; s < 2; ++s) {
        const double h = (s == 0) ? 1.0 : -1.0;
        Eigen::Vector4cd u, v;
        u << (E + m) * chi[s], h * p * chi[s];
        v << -h * p * chi[s], (E + m) * chi[s];
        b.positive[s] = fix_phase(u);
        b.negative[s] = fix_phase(v);
    }
    return b;
}

}  // namespace dcspec
