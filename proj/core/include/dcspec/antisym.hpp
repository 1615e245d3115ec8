#pragma once

#include <array>

#include <Eigen/Dense>

#include "dcspec/field.hpp"
#include "dcspec/operator.hpp"

namespace dcspec {

// Sixteen-component two-particle field on a 6D lattice. Components are
// grouped into four 2x2 blocks psi_11, psi_12, psi_21, psi_22 (block index
// 2(j-1) + (k-1)); inside a block the four entries are vec(psi_jk), so
// component 4 b + 2 i1 + i2 holds row i2, column i1 of block b.
class TwoBodyField {
public:
    TwoBodyField() = default;
    explicit TwoBodyField(const GridSpec& g);
    explicit TwoBodyField(Field f);

    Field& field() { return f_; }
    const Field& field() const { return f_; }
    const GridSpec& grid() const { return f_.grid(); }
    std::size_t sites() const { return f_.sites(); }
    std::size_t sites_per_particle() const;

    Eigen::Map<Eigen::Matrix2cd> block(int b, std::size_t site) { return Eigen::Map<Eigen::Matrix2cd>(&f_.at(site, 4 * b)); }
    Eigen::Map<const Eigen::Matrix2cd> block(int b, std::size_t site) const {
        return Eigen::Map<const Eigen::Matrix2cd>(&f_.at(site, 4 * b));
    }

    // Field of a single block (4 components on the same lattice) and back.
    Field extract_block(int b) const;
    void insert_block(int b, const Field& blk);

    // (f (x) g)(x1, x2) for 4-spinor fields f, g on the 3D lattice of the
    // same grid; spinor component 2 a + i (a = large/small, i = spin).
    static TwoBodyField product(const Field& f, const Field& g);

private:
    Field f_;
};

Lattice two_body_lattice(const GridSpec& g);

using TwoBodyValue = std::array<cplx, 16>;

// Components of (f (x) g) at (x1, x2) = (site s1, site s2) of the 3D lattice.
TwoBodyValue product_at(const Field& f, const Field& g, std::size_t s1, std::size_t s2);

// Largest deviation of the block relations psi_jk(x2,x1) = sign psi_kj(x1,x2)^T
// between the values of a field at (x1,x2) and at (x2,x1).
double pair_relation_defect(const TwoBodyValue& at12, const TwoBodyValue& at21, double sign);

// (Pi psi)_jk(x1, x2) = psi_kj(x2, x1)^T
TwoBodyField exchange(const TwoBodyField& psi);
TwoBodyField antisymmetrize(const TwoBodyField& psi);
TwoBodyField symmetrize(const TwoBodyField& psi);

// sum_ij int tr(F_ij conj(G_ij)^T), evaluated block by block.
cplx inner_product(const TwoBodyField& f, const TwoBodyField& g);
double norm(const TwoBodyField& f);

// Largest deviation in the three block relations that characterize the
// antisymmetric space: psi_11(x2,x1) = -psi_11(x1,x2)^T,
// psi_22(x2,x1) = -psi_22(x1,x2)^T, psi_12(x2,x1) = -psi_21(x1,x2)^T.
double antisymmetry_defect(const TwoBodyField& psi);
double symmetry_defect(const TwoBodyField& psi);

// sigma.p_particle acting on one block from the left (M -> sigma M) or from
// the right through the transpose (M -> M sigma^T).
StructuredOperator sigma_p_block(const Lattice& lat6, int particle, bool fromRight);

struct TransposeIdentityReport {
    double potentialDeviation = 0.0;   // max_ij |<V F_ij, G_ij> - <V F_ji, G_ji>| / (|V F| |G|)
    double statedDeviation = 0.0;      // <(s.p_t (x) I) F_ij, G_kl> vs <(I (x) s.p_t) F_ji, G_lk>
    double exchangedDeviation = 0.0;   // same with the momentum index swapped on the right side
    double traceDeviation = 0.0;       // tr(AB) vs tr(B^T A^T) on the sampled blocks
};

// Evaluates the block identities for a fixed potential V on the 6D lattice.
// Deviations are relative to the product of the norms of the two arguments
// of each inner product.
TransposeIdentityReport check_transpose_identities(const TwoBodyField& f, const TwoBodyField& g, int tau, const ScalarField& v);

}  // namespace dcspec
