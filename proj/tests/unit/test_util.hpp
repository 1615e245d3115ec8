#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "dcspec/field.hpp"

namespace testutil {

inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = {n(rng), n(rng)};
    return m;
}

inline Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
    Eigen::MatrixXcd a = random_matrix(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

inline Eigen::Vector3d random_vec3(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n;
    return {scale * n(rng), scale * n(rng), scale * n(rng)};
}

inline Eigen::VectorXcd to_eigen(const dcspec::Field& f) {
    return Eigen::Map<const Eigen::VectorXcd>(f.data(), static_cast<Eigen::Index>(f.size()));
}

inline double rel_diff(const dcspec::Field& a, const dcspec::Field& b) {
    return dcspec::norm(a - b) / std::max(dcspec::norm(b), 1e-300);
}

}  // namespace testutil
