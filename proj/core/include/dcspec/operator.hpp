#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dcspec/field.hpp"
#include "dcspec/potentials.hpp"

namespace dcspec {

// Kronecker spin action on one 2x2 block: vec(M) -> (A (x) B) vec(M),
// i.e. M -> B M A^T.
struct SpinPair {
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd b = Eigen::Matrix2cd::Identity();

    static SpinPair left(const Eigen::Matrix2cd& b);             // M -> B M
    static SpinPair right_transpose(const Eigen::Matrix2cd& a);  // M -> M A^T
    Eigen::Matrix4cd matrix() const;
};

struct OperatorTerm {
    double coefficient = 1.0;
    std::optional<SpinPair> spin;    // identity when empty
    Eigen::MatrixXd routing;         // blocks x blocks, [out, in]
    int derivativeAxis = -1;         // lattice axis carrying p = -i d/dx, or -1
    ScalarFieldPtr potential;        // site multiplier, or null
    std::string label;

    Eigen::MatrixXcd component_matrix() const;  // coefficient * routing (x) spin
};

// Sum of structured terms applied without forming a matrix. Derivative
// terms are accumulated in Fourier space between one forward and one
// inverse transform; the remaining terms act site by site.
class StructuredOperator {
public:
    StructuredOperator() = default;
    StructuredOperator(const Lattice& lat, int blocks);

    void add_term(OperatorTerm t);
    // Adds c * identity.
    void add_constant(double c, const std::string& label = "constant");

    const Lattice& lattice() const { return lat_; }
    int blocks() const { return blocks_; }
    int ncomp() const { return 4 * blocks_; }
    std::size_t dim() const { return lat_.sites() * static_cast<std::size_t>(ncomp()); }
    const std::vector<OperatorTerm>& terms() const { return terms_; }

    Field make_field() const { return Field(lat_, ncomp()); }
    void apply(const Field& in, Field& out) const;
    Field apply(const Field& in) const;
    void apply(std::span<const cplx> in, std::span<cplx> out) const;

    // Assembled from the term list with explicit Fourier-sum derivative
    // matrices; independent of the transform path used by apply().
    Eigen::MatrixXcd build_dense(std::size_t maxDim = 4096) const;

private:
    struct Entry {
        int row, col;
        cplx value;
    };
    struct PotentialGroup {
        ScalarFieldPtr field;
        std::vector<Entry> entries;
    };
    static std::vector<Entry> sparsify(const Eigen::MatrixXcd& m);
    void compile();

    Lattice lat_;
    int blocks_ = 1;
    std::vector<OperatorTerm> terms_;
    std::vector<std::vector<Entry>> derivative_;  // per axis
    std::vector<Entry> constant_;
    std::vector<PotentialGroup> potentials_;
    bool hasDerivative_ = false;
};

// Dense matrix of -i d/dx on one periodic axis from the explicit Fourier sum.
Eigen::MatrixXcd spectral_derivative_matrix(const GridSpec& g);

}  // namespace dcspec
