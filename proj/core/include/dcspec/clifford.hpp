#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "dcspec/check.hpp"
#include "dcspec/exact.hpp"

namespace dcspec {

using Vec3 = Eigen::Vector3d;

ExactMatrix pauli(int j);

struct DiracRep {
    std::array<ExactMatrix, 3> alpha;
    ExactMatrix beta;

    // alpha_1..alpha_3 followed by beta
    std::array<ExactMatrix, 4> all() const { return {alpha[0], alpha[1], alpha[2], beta}; }
};

// alpha_j = [[0, s_j], [s_j, 0]], beta = diag(I2, -I2)
DiracRep standard_dirac_rep();

// All ten anticommutators {A, B} = 2 delta I4 over the set (alpha_1..3, beta),
// compared exactly. The deviation is the largest absolute entry of the
// difference matrix.
std::vector<CheckRecord> check_clifford(const DiracRep& rep);

struct FreeSymbol {
    Vec3 xi = Vec3::Zero();
    double mass = 0.0;
    Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Zero();
};

FreeSymbol free_symbol(const Vec3& xi, double m);

// Orthonormal eigenbasis of alpha.xi + m beta. Within each energy the two
// vectors carry helicity +1 then -1; each vector's first nonzero component is
// real and positive.
struct PlaneWaveBasis {
    double energy = 0.0;
    std::array<Eigen::Vector4cd, 2> positive;  // eigenvalue +E
    std::array<Eigen::Vector4cd, 2> negative;  // eigenvalue -E
};

PlaneWaveBasis plane_wave_eigenvectors(const Vec3& xi, double m);

// Floating-point copies of the standard matrices.
Eigen::Matrix2cd pauli_d(int j);
std::array<Eigen::Matrix4cd, 3> alpha_d();
Eigen::Matrix4cd beta_d();

Eigen::MatrixXcd to_eigen(const ExactMatrix& m);

}  // namespace dcspec
