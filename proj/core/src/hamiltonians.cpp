#include "dcspec/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

namespace dcspec {

namespace {

Eigen::MatrixXd route(std::initializer_list<std::pair<int, int>> links, int blocks = 4) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(blocks, blocks);
    for (auto [out, in] : links) r(out, in) = 1.0;
    return r;
}

Eigen::MatrixXd diag4(double a, double b, double c, double d) { return Eigen::Vector4d(a, b, c, d).asDiagonal(); }

void require6(const Lattice& lat) {
    if (lat.dims != 6) throw std::invalid_argument("two-body operators need a 6D lattice");
}

void require3(const Lattice& lat) {
    if (lat.dims != 3) throw std::invalid_argument("one-particle operators need a 3D lattice");
}

// Kinetic terms sum_a p_a on the given particles with a common spin
// builder and routing.
template <class SpinOf>
void add_kinetic(StructuredOperator& op, std::initializer_list<int> particles, const SpinOf& spinOf,
                 const Eigen::MatrixXd& routing, double coefficient, const std::string& label) {
    for (int particle : particles)
        for (int a = 0; a < 3; ++a) {
            OperatorTerm t;
            t.coefficient = coefficient;
            t.spin = spinOf(a);
            t.routing = routing;
            t.derivativeAxis = 3 * particle + a;
            t.label = label;
            op.add_term(std::move(t));
        }
}

void add_mass_and_potential(StructuredOperator& op, const Lattice& lat6, const PotentialSpec& pot, double m) {
    OperatorTerm mass;
    mass.coefficient = 2.0 * m;
    mass.routing = diag4(1, 0, 0, -1);
    mass.label = "mass";
    op.add_term(std::move(mass));
    if (pot.k != 0.0 || pot.k0 != 0.0) {
        OperatorTerm v;
        v.potential = std::make_shared<const ScalarField>(two_body_potential(pot, lat6));
        v.label = "coulomb";
        op.add_term(std::move(v));
    }
}

auto right_sigma = [](int a) { return SpinPair::right_transpose(pauli_d(a + 1)); };
auto left_sigma = [](int a) { return SpinPair::left(pauli_d(a + 1)); };

}  // namespace

SpinPair alpha_spin(int axis) { return {pauli_d(1), pauli_d(axis + 1)}; }
SpinPair beta_spin() { return {pauli_d(3), Eigen::Matrix2cd::Identity()}; }

StructuredOperator build_h1_block(const Lattice& lat6) {
    require6(lat6);
    StructuredOperator op(lat6, 1);
    add_kinetic(op, {0}, right_sigma, Eigen::MatrixXd::Ones(1, 1), 1.0, "h1");
    return op;
}

StructuredOperator build_h2_block(const Lattice& lat6) {
    require6(lat6);
    StructuredOperator op(lat6, 1);
    add_kinetic(op, {1}, left_sigma, Eigen::MatrixXd::Ones(1, 1), 1.0, "h2");
    return op;
}

StructuredOperator build_hdc(const Lattice& lat6, const PotentialSpec& pot, double m) {
    require6(lat6);
    StructuredOperator op(lat6, 4);
    add_mass_and_potential(op, lat6, pot, m);
    // h1 flips the particle-1 large/small label: 11 <-> 21, 12 <-> 22.
    add_kinetic(op, {0}, right_sigma, route({{0, 2}, {1, 3}, {2, 0}, {3, 1}}), 1.0, "h1");
    // h2 flips the particle-2 label: 11 <-> 12, 21 <-> 22.
    add_kinetic(op, {1}, left_sigma, route({{0, 1}, {1, 0}, {2, 3}, {3, 2}}), 1.0, "h2");
    return op;
}

StructuredOperator build_hdc_plus(const Lattice& lat6, const PotentialSpec& pot, double m) {
    require6(lat6);
    StructuredOperator op(lat6, 4);
    add_mass_and_potential(op, lat6, pot, m);
    add_kinetic(op, {0, 1}, left_sigma, route({{0, 1}, {1, 0}, {2, 3}, {3, 2}}), 1.0, "h12");
    return op;
}

StructuredOperator build_hdc_minus(const Lattice& lat6, const PotentialSpec& pot, double m) {
    require6(lat6);
    StructuredOperator op(lat6, 4);
    add_mass_and_potential(op, lat6, pot, m);
    add_kinetic(op, {0, 1}, right_sigma, route({{0, 2}, {2, 0}, {1, 3}, {3, 1}}), 1.0, "h21");
    return op;
}

StructuredOperator build_dirac3d(const Lattice& lat3, double m, ScalarFieldPtr potential) {
    require3(lat3);
    StructuredOperator op(lat3, 1);
    add_kinetic(op, {0}, alpha_spin, Eigen::MatrixXd::Ones(1, 1), 1.0, "alpha.p");
    OperatorTerm mass;
    mass.coefficient = m;
    mass.spin = beta_spin();
    mass.label = "mass";
    op.add_term(std::move(mass));
    if (potential) {
        OperatorTerm v;
        v.potential = std::move(potential);
        v.label = "potential";
        op.add_term(std::move(v));
    }
    return op;
}

StructuredOperator build_h00(const Lattice& lat3) {
    require3(lat3);
    StructuredOperator op(lat3, 1);
    add_kinetic(op, {0}, left_sigma, Eigen::MatrixXd::Ones(1, 1), std::sqrt(2.0), "H00");
    return op;
}

namespace {

StructuredOperator y_operator_impl(const Lattice& lat3, const PotentialSpec& pot, double m, const Vec3& y2,
                                   int blocks, const Eigen::MatrixXd& kineticSigns, const Eigen::MatrixXd& massRouting) {
    require3(lat3);
    if (y2.norm() == 0.0) throw std::invalid_argument("y-frame operator: y2 = 0 makes the two centers coincide");
    StructuredOperator op(lat3, blocks);
    add_kinetic(op, {0}, left_sigma, kineticSigns, std::sqrt(2.0), "H00");
    OperatorTerm mass;
    mass.coefficient = m;
    mass.routing = massRouting;
    mass.label = "mass";
    op.add_term(std::move(mass));
    if (pot.k != 0.0) {
        OperatorTerm v;
        v.potential = std::make_shared<const ScalarField>(coulomb_field(pot, lat3, CoulombTerm::YFrame, y2));
        v.label = "V_y2";
        op.add_term(std::move(v));
    }
    return op;
}

}  // namespace

StructuredOperator build_y_operator(const Lattice& lat3, const PotentialSpec& pot, double m, const Vec3& y2) {
    Eigen::MatrixXd massRouting(4, 4);
    massRouting << 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, -1, -1, 0, 0, -1, -1;
    return y_operator_impl(lat3, pot, m, y2, 4, diag4(1, -1, 1, -1), massRouting);
}

StructuredOperator build_y_sector(const Lattice& lat3, const PotentialSpec& pot, double m, const Vec3& y2,
                                  YSector sector) {
    const double s = sector == YSector::PlusPlus ? 1.0 : -1.0;
    Eigen::MatrixXd signs(2, 2);
    signs << 1, 0, 0, -1;
    return y_operator_impl(lat3, pot, m, y2, 2, signs, s * Eigen::MatrixXd::Ones(2, 2));
}

}  // namespace dcspec
