#include "dcspec/antisym.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcspec/clifford.hpp"

namespace dcspec {

namespace {

constexpr int kTranspose[4] = {0, 2, 1, 3};  // vec index of M^T entries

int swapped_block(int b) { return 2 * (b % 2) + b / 2; }

}  // namespace

Lattice two_body_lattice(const GridSpec& g) { return Lattice{g, 6}; }

double pair_relation_defect(const TwoBodyValue& at12, const TwoBodyValue& at21, double sign) {
    // psi_jk(x2,x1) = sign * psi_kj(x1,x2)^T for (jk) in {11, 22, 12}
    double worst = 0.0;
    for (auto [j, k] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}}) {
        const int lhsBlock = 2 * j + k, rhsBlock = 2 * k + j;
        for (int e = 0; e < 4; ++e)
            worst = std::max(worst, std::abs(at21[4 * lhsBlock + e] - sign * at12[4 * rhsBlock + kTranspose[e]]));
    }
    return worst;
}

TwoBodyField::TwoBodyField(const GridSpec& g) : f_(two_body_lattice(g), 16) {}

TwoBodyField::TwoBodyField(Field f) : f_(std::move(f)) {
    if (f_.lattice().dims != 6 || f_.ncomp() != 16)
        throw std::invalid_argument("two-body field needs 16 components on a 6D lattice");
}

std::size_t TwoBodyField::sites_per_particle() const {
    const std::size_t n = grid().N;
    return n * n * n;
}

Field TwoBodyField::extract_block(int b) const {
    Field out(f_.lattice(), 4);
    for (std::size_t s = 0; s < sites(); ++s)
        for (int e = 0; e < 4; ++e) out.at(s, e) = f_.at(s, 4 * b + e);
    return out;
}

void TwoBodyField::insert_block(int b, const Field& blk) {
    if (blk.lattice() != f_.lattice() || blk.ncomp() != 4) throw std::invalid_argument("insert_block: shape mismatch");
    for (std::size_t s = 0; s < sites(); ++s)
        for (int e = 0; e < 4; ++e) f_.at(s, 4 * b + e) = blk.at(s, e);
}

TwoBodyValue product_at(const Field& f, const Field& g, std::size_t s1, std::size_t s2) {
    TwoBodyValue out;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int i1 = 0; i1 < 2; ++i1)
                for (int i2 = 0; i2 < 2; ++i2)
                    out[4 * (2 * a1 + a2) + 2 * i1 + i2] = f.at(s1, 2 * a1 + i1) * g.at(s2, 2 * a2 + i2);
    return out;
}

TwoBodyField TwoBodyField::product(const Field& f, const Field& g) {
    if (f.lattice().dims != 3 || g.lattice().dims != 3 || f.ncomp() != 4 || g.ncomp() != 4)
        throw std::invalid_argument("product: factors must be 4-spinor fields on a 3D lattice");
    if (f.grid() != g.grid()) throw std::invalid_argument("product: factors live on different grids");
    TwoBodyField psi(f.grid());
    const std::size_t n3 = f.sites();
    for (std::size_t s1 = 0; s1 < n3; ++s1)
        for (std::size_t s2 = 0; s2 < n3; ++s2) {
            const TwoBodyValue v = product_at(f, g, s1, s2);
            std::copy(v.begin(), v.end(), &psi.f_.at(s1 * n3 + s2, 0));
        }
    return psi;
}

TwoBodyField exchange(const TwoBodyField& psi) {
    TwoBodyField out(psi.grid());
    const std::size_t n3 = psi.sites_per_particle();
    const Field& in = psi.field();
    Field& o = out.field();
    for (std::size_t s1 = 0; s1 < n3; ++s1)
        for (std::size_t s2 = 0; s2 < n3; ++s2) {
            const cplx* src = &in.at(s2 * n3 + s1, 0);
            cplx* dst = &o.at(s1 * n3 + s2, 0);
            for (int b = 0; b < 4; ++b)
                for (int e = 0; e < 4; ++e) dst[4 * b + e] = src[4 * swapped_block(b) + kTranspose[e]];
        }
    return out;
}

TwoBodyField antisymmetrize(const TwoBodyField& psi) {
    Field f = psi.field() - exchange(psi).field();
    f *= 0.5;
    return TwoBodyField(std::move(f));
}

TwoBodyField symmetrize(const TwoBodyField& psi) {
    Field f = psi.field() + exchange(psi).field();
    f *= 0.5;
    return TwoBodyField(std::move(f));
}

cplx inner_product(const TwoBodyField& f, const TwoBodyField& g) {
    if (f.grid() != g.grid()) throw std::invalid_argument("inner_product: fields live on different grids");
    CVec partial(f.sites());
    for (std::size_t s = 0; s < f.sites(); ++s) {
        cplx acc{};
        for (int b = 0; b < 4; ++b) acc += (f.block(b, s) * g.block(b, s).conjugate().transpose()).trace();
        partial[s] = acc;
    }
    CVec ones(partial.size(), cplx(1.0, 0.0));
    return f.field().weight() * la::dot(ones, partial);
}

double norm(const TwoBodyField& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

namespace {

double relation_defect(const TwoBodyField& psi, double sign) {
    const std::size_t n3 = psi.sites_per_particle();
    const Field& f = psi.field();
    double worst = 0.0;
    TwoBodyValue a, b;
    for (std::size_t s1 = 0; s1 < n3; ++s1)
        for (std::size_t s2 = 0; s2 < n3; ++s2) {
            std::copy_n(&f.at(s1 * n3 + s2, 0), 16, a.begin());
            std::copy_n(&f.at(s2 * n3 + s1, 0), 16, b.begin());
            worst = std::max(worst, pair_relation_defect(a, b, sign));
        }
    return worst;
}

}  // namespace

double antisymmetry_defect(const TwoBodyField& psi) { return relation_defect(psi, -1.0); }
double symmetry_defect(const TwoBodyField& psi) { return relation_defect(psi, +1.0); }

StructuredOperator sigma_p_block(const Lattice& lat6, int particle, bool fromRight) {
    if (lat6.dims != 6) throw std::invalid_argument("sigma_p_block: needs a 6D lattice");
    if (particle != 1 && particle != 2) throw std::invalid_argument("sigma_p_block: particle must be 1 or 2");
    StructuredOperator op(lat6, 1);
    for (int a = 0; a < 3; ++a) {
        OperatorTerm t;
        t.spin = fromRight ? SpinPair::right_transpose(pauli_d(a + 1)) : SpinPair::left(pauli_d(a + 1));
        t.derivativeAxis = 3 * (particle - 1) + a;
        t.label = fromRight ? "sigma.p (x) I" : "I (x) sigma.p";
        op.add_term(std::move(t));
    }
    return op;
}

namespace {

// int tr(A conj(B)^T) over the lattice for two 4-component block fields.
cplx block_inner(const Field& a, const Field& b) { return std::conj(inner(a, b)); }

Field multiply(const Field& f, const ScalarField& v) {
    Field out = f;
    for (std::size_t s = 0; s < f.sites(); ++s)
        for (int e = 0; e < f.ncomp(); ++e) out.at(s, e) *= v[s];
    return out;
}

}  // namespace

TransposeIdentityReport check_transpose_identities(const TwoBodyField& f, const TwoBodyField& g, int tau, const ScalarField& v) {
    if (f.grid() != g.grid()) throw std::invalid_argument("check_transpose_identities: grid mismatch");
    if (tau != 1 && tau != 2) throw std::invalid_argument("check_transpose_identities: tau must be 1 or 2");
    const Lattice lat = f.field().lattice();
    TransposeIdentityReport rep;

    Field fb[4], gb[4];
    for (int b = 0; b < 4; ++b) {
        fb[b] = f.extract_block(b);
        gb[b] = g.extract_block(b);
    }
    auto blk = [](int i, int j) { return 2 * i + j; };

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Field vf = multiply(fb[blk(i, j)], v);
            const Field vft = multiply(fb[blk(j, i)], v);
            const double scale = std::max(norm(vf) * norm(gb[blk(i, j)]), 1e-300);
            rep.potentialDeviation = std::max(
                rep.potentialDeviation,
                std::abs(block_inner(vf, gb[blk(i, j)]) - block_inner(vft, gb[blk(j, i)])) / scale);
        }

    const StructuredOperator leftOp = sigma_p_block(lat, tau, true);        // sigma.p_tau (x) I2
    const StructuredOperator rightSame = sigma_p_block(lat, tau, false);     // I2 (x) sigma.p_tau
    const StructuredOperator rightSwap = sigma_p_block(lat, 3 - tau, false);  // I2 (x) sigma.p_(3-tau)
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Field lf = leftOp.apply(fb[blk(i, j)]);
            const Field rs = rightSame.apply(fb[blk(j, i)]);
            const Field rx = rightSwap.apply(fb[blk(j, i)]);
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    const cplx lhs = block_inner(lf, gb[blk(k, l)]);
                    const double scale = std::max(norm(lf) * norm(gb[blk(k, l)]), 1e-300);
                    rep.statedDeviation =
                        std::max(rep.statedDeviation, std::abs(lhs - block_inner(rs, gb[blk(l, k)])) / scale);
                    rep.exchangedDeviation =
                        std::max(rep.exchangedDeviation, std::abs(lhs - block_inner(rx, gb[blk(l, k)])) / scale);
                }
        }

    // tr(AB) = tr((AB)^T) = tr(B^T A^T) sampled on the blocks of f and g.
    for (std::size_t s = 0; s < f.sites(); s += std::max<std::size_t>(1, f.sites() / 64)) {
        const Eigen::Matrix2cd a = f.block(0, s), b = g.block(3, s);
        rep.traceDeviation =
            std::max(rep.traceDeviation, std::abs((a * b).trace() - (b.transpose() * a.transpose()).trace()));
    }
    return rep;
}

}  // namespace dcspec
