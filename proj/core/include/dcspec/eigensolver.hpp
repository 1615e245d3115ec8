#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dcspec/field.hpp"

namespace dcspec {

using ApplyFn = std::function<void(std::span<const cplx>, std::span<cplx>)>;

enum class EigTarget { Lowest, Highest, Nearest };

struct LanczosOptions {
    int howMany = 1;
    EigTarget target = EigTarget::Lowest;
    double sigma = 0.0;      // shift for EigTarget::Nearest
    double tol = 1e-8;       // on ||O v - theta v|| for unit v
    int maxIter = 5000;      // operator applications of the iterated operator
    std::uint64_t seed = 1;
    int blockSize = 1;       // vectors added per expansion step
    int maxBasis = 0;        // 0 picks a size from howMany and blockSize
    bool keepVectors = true;
    bool checkHermitian = true;
    std::vector<CVec> start;  // optional initial vectors (completed with random ones)
};

struct EigResult {
    std::vector<double> ritzValues;     // ascending
    std::vector<double> residualNorms;  // ||O v_i - theta_i v_i||, recomputed after the iteration
    std::vector<bool> converged;
    int iterations = 0;                 // applications of the iterated operator
    int restarts = 0;
    std::vector<CVec> vectors;          // unit Ritz vectors (if requested)
    std::vector<double> lowestRitzHistory;  // smallest Ritz value of the iterated operator per step

    bool all_converged() const;
};

class NonHermitianError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thick-restart block Lanczos with full reorthogonalization. For
// EigTarget::Nearest the iterated operator is (O - sigma)^2; the final
// vectors are re-extracted by a Rayleigh-Ritz step on O itself.
EigResult lanczos(const ApplyFn& apply, std::size_t dim, const LanczosOptions& opts);

// Locally optimal block preconditioned conjugate gradient for the same
// targets. `precond` approximates the inverse of the iterated operator
// ((O - sigma)^2 for EigTarget::Nearest); the block carries
// howMany + max(2, blockSize) vectors. Convergence is judged on the
// residual of O itself after a Rayleigh-Ritz step inside the block.
EigResult lobpcg(const ApplyFn& apply, const ApplyFn& precond, std::size_t dim, const LanczosOptions& opts);

// Largest |<O x, y> - <x, O y>| / (|x| |y|) over `pairs` random pairs.
double hermiticity_defect(const ApplyFn& apply, std::size_t dim, std::uint64_t seed, int pairs = 3);

struct DenseEig {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXcd vectors;
    double reconstructionError = 0.0;  // ||M - V diag V^*|| / ||M||
};

DenseEig dense_eig(const Eigen::MatrixXcd& m, std::size_t maxDim = 4096);

}  // namespace dcspec
