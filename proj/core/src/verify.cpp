#include "dcspec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "dcspec/antisym.hpp"
#include "dcspec/hamiltonians.hpp"
#include "dcspec/kron.hpp"
#include "dcspec/probes.hpp"

namespace dcspec {

namespace {

// Gaussian integers with parts in [-range, range].
class ExactSampler {
public:
    explicit ExactSampler(std::uint64_t seed) : rng_(seed) {}
    std::int64_t integer(int range) { return std::uniform_int_distribution<int>(-range, range)(rng_); }
    ExactComplex gaussian_integer(int range = 3) { return {Surd(integer(range)), Surd(integer(range))}; }
    ExactMatrix matrix(int rows, int cols, int range = 3) {
        ExactMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = gaussian_integer(range);
        return m;
    }

private:
    std::mt19937_64 rng_;
};

ExactMatrix sigma_dot_exact(const std::array<std::int64_t, 3>& q) {
    ExactMatrix s(2, 2);
    for (int a = 0; a < 3; ++a) s = s + pauli(a + 1).scaled(ExactComplex(q[a]));
    return s;
}

ExactMatrix free_symbol_exact(const DiracRep& rep, const std::array<std::int64_t, 3>& q, std::int64_t m) {
    ExactMatrix h = rep.beta.scaled(ExactComplex(m));
    for (int a = 0; a < 3; ++a) h = h + rep.alpha[a].scaled(ExactComplex(q[a]));
    return h;
}

ExactMatrix permutation_exact() {
    ExactMatrix p(16, 16);
    const auto& perm = llss_to_plain_permutation();
    for (int s = 0; s < 16; ++s) p(perm[s], s) = ExactComplex(1);
    return p;
}

void put_block(ExactMatrix& r, int bi, int bj, const ExactMatrix& x) {
    const int n = x.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(bi * n + i, bj * n + j) = r(bi * n + i, bj * n + j) + x(i, j);
}

// Plus form in llss order with integer total momentum q, mass m and
// constant potential v.
ExactMatrix plus_form_exact(const std::array<std::int64_t, 3>& q, std::int64_t m, std::int64_t v) {
    const ExactMatrix id4 = ExactMatrix::identity(4);
    const ExactMatrix h12 = kron(ExactMatrix::identity(2), sigma_dot_exact(q));
    ExactMatrix r(16, 16);
    put_block(r, 0, 0, id4.scaled(ExactComplex(v + 2 * m)));
    put_block(r, 0, 1, h12);
    put_block(r, 1, 0, h12);
    put_block(r, 1, 1, id4.scaled(ExactComplex(v)));
    put_block(r, 2, 2, id4.scaled(ExactComplex(v)));
    put_block(r, 2, 3, h12);
    put_block(r, 3, 2, h12);
    put_block(r, 3, 3, id4.scaled(ExactComplex(v - 2 * m)));
    return r;
}

ExactMatrix canonical_exact(const std::array<std::int64_t, 3>& q, std::int64_t m, std::int64_t v, int lowerSign) {
    const ExactMatrix id4 = ExactMatrix::identity(4);
    const ExactMatrix h00 = kron(ExactMatrix::identity(2), sigma_dot_exact(q));
    ExactMatrix r = ExactMatrix::identity(16).scaled(ExactComplex(v));
    put_block(r, 0, 0, h00 + id4.scaled(ExactComplex(m)));
    put_block(r, 1, 1, -h00 + id4.scaled(ExactComplex(m)));
    put_block(r, 2, 2, h00 - id4.scaled(ExactComplex(m)));
    put_block(r, 3, 3, -h00 - id4.scaled(ExactComplex(m)));
    put_block(r, 0, 1, id4.scaled(ExactComplex(m)));
    put_block(r, 1, 0, id4.scaled(ExactComplex(m)));
    put_block(r, 2, 3, id4.scaled(ExactComplex(lowerSign * m)));
    put_block(r, 3, 2, id4.scaled(ExactComplex(lowerSign * m)));
    return r;
}

CheckRecord exact_record(std::string name, std::string anchor, double deviation) {
    return make_check(std::move(name), std::move(anchor), deviation, 0.0);
}

}  // namespace

std::vector<CheckRecord> exact_identity_suite(std::uint64_t seed, bool perturbBeta) {
    ExactSampler rnd(seed);
    std::vector<CheckRecord> out;

    DiracRep rep = standard_dirac_rep();
    if (perturbBeta) rep.beta(3, 3) = ExactComplex(1);
    {
        double dev = 0.0;
        for (const auto& r : check_clifford(rep)) dev = std::max(dev, r.deviation);
        out.push_back(exact_record("anticommutation",
                                   "alpha_j alpha_k + alpha_k alpha_j = 2 delta_jk I4, alpha_j beta + beta alpha_j = 0, "
                                   "beta^2 = I4",
                                   dev));
    }

    {
        double dev = 0.0;
        for (int t = 0; t < 20; ++t) {
            const ExactMatrix b = rnd.matrix(1, 1), a1 = rnd.matrix(1, 1), a2 = rnd.matrix(1, 1);
            const ExactMatrix m1(2, 2, {b(0, 0), a1(0, 0), a1(0, 0), -b(0, 0)});
            const ExactMatrix m2(2, 2, {b(0, 0), a2(0, 0), a2(0, 0), -b(0, 0)});
            const ExactMatrix id2 = ExactMatrix::identity(2);
            const ExactMatrix direct = kron(m1, id2) + kron(id2, m2);
            dev = std::max(dev, direct.max_abs_deviation(kron_sum_blocks(b, a1, a2)));
        }
        out.push_back(exact_record("kron-sum-blocks",
                                   "M1 (x) I2 + I2 (x) M2 = [[2B, A2, A1, 0], [A2, 0, 0, A1], [A1, 0, 0, A2], "
                                   "[0, A1, A2, -2B]] for M_j = [[B, A_j], [A_j, -B]]",
                                   dev));
    }

    {
        double dev = 0.0;
        const ExactMatrix id2 = ExactMatrix::identity(2);
        const ExactMatrix shown(2, 2, {1, 3, 2, 4});
        dev = std::max(dev, vec(shown).max_abs_deviation(ExactMatrix(4, 1, {1, 2, 3, 4})));
        for (int t = 0; t < 20; ++t) {
            const ExactMatrix a = rnd.matrix(2, 2), b = rnd.matrix(2, 2), m = rnd.matrix(2, 2);
            dev = std::max(dev, mat(vec(m)).max_abs_deviation(m));
            dev = std::max(dev, mat(kron(a, id2) * vec(m)).max_abs_deviation(m * a.transpose()));
            dev = std::max(dev, mat(kron(id2, b) * vec(m)).max_abs_deviation(b * m));
            dev = std::max(dev, mat(kron(a, id2) * vec(m)).max_abs_deviation(apply_left(a, m)));
            dev = std::max(dev, mat(kron(id2, b) * vec(m)).max_abs_deviation(apply_right(b, m)));
        }
        out.push_back(exact_record("vec-mat", "Mat[(A (x) I2) vec M] = M A^t, Mat[(I2 (x) B) vec M] = B M", dev));
    }

    {
        double dev = 0.0;
        const ExactMatrix p = permutation_exact();
        const ExactMatrix id4 = ExactMatrix::identity(4), id2 = ExactMatrix::identity(2);
        for (int t = 0; t < 20; ++t) {
            const std::array<std::int64_t, 3> q1{rnd.integer(3), rnd.integer(3), rnd.integer(3)};
            const std::array<std::int64_t, 3> q2{rnd.integer(3), rnd.integer(3), rnd.integer(3)};
            const std::int64_t m = rnd.integer(3);
            const ExactMatrix plain = kron(free_symbol_exact(rep, q1, m), id4) + kron(id4, free_symbol_exact(rep, q2, m));
            const ExactMatrix blocks = kron_sum_blocks(id4.scaled(ExactComplex(m)), kron(sigma_dot_exact(q1), id2),
                                                       kron(id2, sigma_dot_exact(q2)));
            dev = std::max(dev, (p.transpose() * plain * p).max_abs_deviation(blocks));
        }
        out.push_back(exact_record("two-body-symbol-exact",
                                   "H0(xi1) (x) I4 + I4 (x) H0(xi2) = P [[2m I4, h2, h1, 0], [h2, 0, 0, h1], "
                                   "[h1, 0, 0, h2], [0, h1, h2, -2m I4]] P^t, integer momenta",
                                   dev));
    }

    {
        const ExactMatrix s = build_S().matrix;
        double dev = (s.transpose() * s).max_abs_deviation(ExactMatrix::identity(8));
        const ExactComplex half(Surd(Dyadic(1, 1)));
        for (int t = 0; t < 10; ++t) {
            const ExactMatrix a = rnd.matrix(4, 4), b = rnd.matrix(4, 4);
            ExactMatrix expect(8, 8);
            put_block(expect, 0, 0, (a + b).scaled(half));
            put_block(expect, 0, 1, (a - b).scaled(half));
            put_block(expect, 1, 0, (a - b).scaled(half));
            put_block(expect, 1, 1, (a + b).scaled(half));
            dev = std::max(dev, (s.transpose() * direct_sum(a, b) * s).max_abs_deviation(expect));
        }
        out.push_back(exact_record("orthogonal-S",
                                   "S^t S = I8, S^-1 [[a, 0], [0, b]] S = 1/2 [[a+b, a-b], [a-b, a+b]]", dev));
    }

    {
        const OrthoTransform t = build_T();
        const ExactMatrix d = lower_sign_flip();
        double devT = (t.matrix.transpose() * t.matrix).max_abs_deviation(ExactMatrix::identity(16));
        double devTD = 0.0;
        for (int k = 0; k < 10; ++k) {
            const std::array<std::int64_t, 3> q{rnd.integer(3), rnd.integer(3), rnd.integer(3)};
            const std::int64_t m = rnd.integer(3), v = rnd.integer(3);
            const ExactMatrix conj = conjugate(t, plus_form_exact(q, m, v));
            devT = std::max(devT, conj.max_abs_deviation(canonical_exact(q, m, v, +1)));
            devTD = std::max(devTD, (d * conj * d).max_abs_deviation(canonical_exact(q, m, v, -1)));
        }
        out.push_back(exact_record("block-canonical-form",
                                   "T^t H+ T = diag(H00, -H00, H00, -H00) + m [[I, I, 0, 0], [I, I, 0, 0], "
                                   "[0, 0, -I, I], [0, 0, I, -I]] + v I16",
                                   devT));
        out.push_back(exact_record("block-canonical-form-flipped",
                                   "(T D)^t H+ (T D) = diag(H00, -H00, H00, -H00) + m [[I, I, 0, 0], [I, I, 0, 0], "
                                   "[0, 0, -I, -I], [0, 0, -I, -I]] + v I16, D = diag(I4, I4, I4, -I4)",
                                   devTD));
    }
    return out;
}

CheckRecord two_body_symbol_consistency(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.0, 3.0);
    const Eigen::MatrixXcd p = permutation_matrix_llss_to_plain();
    const Eigen::MatrixXcd id4 = Eigen::MatrixXcd::Identity(4, 4), id2 = Eigen::MatrixXcd::Identity(2, 2);
    auto sigma_dot = [](const Vec3& x) {
        Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
        for (int a = 0; a < 3; ++a) s += x[a] * pauli_d(a + 1);
        return s;
    };
    double dev = 0.0;
    for (int t = 0; t < samples; ++t) {
        const Vec3 xi1(nd(rng), nd(rng), nd(rng)), xi2(nd(rng), nd(rng), nd(rng));
        const double m = ud(rng);
        const Eigen::MatrixXcd plain = kron(free_symbol(xi1, m).matrix, id4) + kron(id4, free_symbol(xi2, m).matrix);
        const Eigen::MatrixXcd blocks =
            kron_sum_blocks(m * id4, kron(sigma_dot(xi1), id2), kron(id2, sigma_dot(xi2)));
        dev = std::max(dev, (p.transpose() * plain * p - blocks).cwiseAbs().maxCoeff());
    }
    return make_check("two-body-symbol",
                      "H0(xi1) (x) I4 + I4 (x) H0(xi2) = P [[2m I4, h2, h1, 0], [h2, 0, 0, h1], [h1, 0, 0, h2], "
                      "[0, h1, h2, -2m I4]] P^t",
                      dev, 1e-12);
}

std::vector<CheckRecord> dense_oracle_suite(const GridSpec& g, const PotentialSpec& pot, double m, int vectors,
                                            std::uint64_t seed) {
    const Lattice lat{g, 6};
    std::vector<CheckRecord> out;
    const std::pair<const char*, StructuredOperator> ops[] = {{"dense-oracle-hdc", build_hdc(lat, pot, m)},
                                                               {"dense-oracle-plus", build_hdc_plus(lat, pot, m)},
                                                               {"dense-oracle-minus", build_hdc_minus(lat, pot, m)}};
    for (const auto& [name, op] : ops) {
        const Eigen::MatrixXcd dense = op.build_dense();
        double dev = 0.0;
        for (int i = 0; i < vectors; ++i) {
            const Field v = random_field(lat, op.ncomp(), seed + 97ULL * static_cast<std::uint64_t>(i));
            const Field av = op.apply(v);
            const Eigen::Map<const Eigen::VectorXcd> vv(v.data(), static_cast<Eigen::Index>(v.size()));
            const Eigen::Map<const Eigen::VectorXcd> aa(av.data(), static_cast<Eigen::Index>(av.size()));
            const Eigen::VectorXcd dv = dense * vv;
            dev = std::max(dev, (aa - dv).norm() / std::max(dv.norm(), 1e-300));
        }
        out.push_back(make_check(name, "matrix-free apply = assembled matrix, " + describe(g), dev, 1e-12));
    }
    return out;
}

CheckRecord exchange_invariance_check(const GridSpec& g, const PotentialSpec& pot, double m, int samples,
                                      std::uint64_t seed, int maxFreq) {
    const Lattice lat{g, 6};
    const StructuredOperator h = build_hdc(lat, pot, m);
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
        const TwoBodyField psi(random_band_limited(lat, 16, seed + 13ULL * static_cast<std::uint64_t>(i), maxFreq));
        const TwoBodyField hpsi(h.apply(psi.field()));
        const TwoBodyField lhs = exchange(hpsi);
        const TwoBodyField rhs(h.apply(exchange(psi).field()));
        dev = std::max(dev, norm(lhs.field() - rhs.field()) / std::max(norm(hpsi.field()), 1e-300));
    }
    return make_check("exchange-invariance", "||[Pi, H_DC] Psi|| / ||H_DC Psi|| = 0, " + describe(g), dev, 1e-10);
}

FormEqualityResult form_equality_check(const GridSpec& g, const PotentialSpec& pot, double m, int pairs,
                                       std::uint64_t seed, int maxFreq) {
    const Lattice lat{g, 6};
    const StructuredOperator h = build_hdc(lat, pot, m);
    const StructuredOperator hp = build_hdc_plus(lat, pot, m);
    const StructuredOperator hm = build_hdc_minus(lat, pot, m);
    FormEqualityResult res;
    double devPlus = 0.0, devMinus = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const std::uint64_t s = seed + 7919ULL * static_cast<std::uint64_t>(i);
        const TwoBodyField psi = antisymmetrize(TwoBodyField(random_band_limited(lat, 16, s, maxFreq)));
        const TwoBodyField phi = antisymmetrize(TwoBodyField(random_band_limited(lat, 16, s ^ 0x5bd1e995ULL, maxFreq)));
        res.antisymmetryDefect = std::max({res.antisymmetryDefect, antisymmetry_defect(psi), antisymmetry_defect(phi)});
        const TwoBodyField hpsi(h.apply(psi.field()));
        const double scale = std::max(norm(hpsi) * norm(phi), 1e-300);
        const cplx ref = inner_product(hpsi, phi);
        devPlus = std::max(devPlus, std::abs(inner_product(TwoBodyField(hp.apply(psi.field())), phi) - ref) / scale);
        devMinus = std::max(devMinus, std::abs(inner_product(TwoBodyField(hm.apply(psi.field())), phi) - ref) / scale);
    }
    res.plus = make_check("form-equality-plus", "<H_DC Psi, Phi> = <H+_DC Psi, Phi> for antisymmetric Psi, Phi, " +
                                                    describe(g),
                          devPlus, 1e-9);
    res.minus = make_check("form-equality-minus", "<H_DC Psi, Phi> = <H-_DC Psi, Phi> for antisymmetric Psi, Phi, " +
                                                      describe(g),
                           devMinus, 1e-9);
    return res;
}

CheckRecord square_identity_record(double m, const GridSpec& g, std::uint64_t seed, double tol) {
    const SquareIdentityResult r = square_identity_check(m, g, seed);
    return make_check("square-identity",
                      "(H++ - m I8)^2 = (H-- + m I8)^2 = 2|p|^2 + m^2, H00^2 = 2|p|^2, relative, " + describe(g),
                      std::max({r.plusDeviation, r.minusDeviation, r.h00Deviation}), tol);
}

ProbeReport verify_all(const VerifyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    ProbeReport rep;
    rep.command = "verify";
    rep.label = "identity";
    rep.config = json{{"seed", opts.seed},
                      {"perturbBeta", opts.perturbBeta},
                      {"symbolSamples", opts.symbolSamples},
                      {"denseVectors", opts.denseVectors},
                      {"formPairs", opts.formPairs}};

    rep.add(exact_identity_suite(opts.seed, opts.perturbBeta));
    rep.add(two_body_symbol_consistency(opts.symbolSamples, opts.seed));

    PotentialSpec pot;
    pot.k = -0.5;
    pot.k0 = 1.0;
    const double m = 1.0;
    GridSpec tiny;
    tiny.N = 2;
    tiny.L = 4.0;
    rep.add(dense_oracle_suite(tiny, pot, m, opts.denseVectors, opts.seed));

    GridSpec small;
    small.N = 4;
    small.L = 8.0;
    rep.add(exchange_invariance_check(small, pot, m, 2, opts.seed, 1));
    const FormEqualityResult form = form_equality_check(small, pot, m, opts.formPairs, opts.seed);
    rep.add(form.plus);
    rep.add(form.minus);
    rep.results["formAntisymmetryDefect"] = form.antisymmetryDefect;

    GridSpec sq;
    sq.N = 8;
    sq.L = 10.0;
    rep.add(square_identity_record(m, sq, opts.seed));

    rep.results["potential"] = json{{"k", pot.k}, {"k0", pot.k0}, {"cutoffIndex", pot.cutoffIndex}};
    rep.results["mass"] = m;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace dcspec
