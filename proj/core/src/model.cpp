#include "dcspec/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcspec {

bool ModelSpec::subcritical() const {
    const double bound = std::sqrt(3.0) / 2.0;
    return std::abs(k1) < bound && std::abs(k2) < bound;
}

void ModelSpec::validate() const {
    if (!(m >= 0.0)) throw std::invalid_argument("model: mass must be nonnegative");
    if (k0 != 0.0 && y2.norm() == 0.0)
        throw std::invalid_argument("model: y2 = 0 with k0 != 0 puts the interaction at its singularity");
    if (y2.norm() == 0.0 && (k1 != 0.0 || k2 != 0.0))
        throw std::invalid_argument("model: y2 = 0 makes the two centres coincide");
}

double model_k0_shift(const ModelSpec& spec) {
    if (spec.k0 == 0.0) return 0.0;
    return spec.k0 / (std::sqrt(2.0) * spec.y2.norm());
}

namespace {

PotentialSpec regularization_of(const ModelSpec& spec) {
    PotentialSpec p;
    p.cutoffIndex = spec.cutoffIndex;
    p.capValue = spec.capValue;
    return p;
}

StructuredOperator model_impl(const Lattice& lat3, const ModelSpec& spec, bool withK0) {
    spec.validate();
    if (lat3.dims != 3) throw std::invalid_argument("model: needs a 3D lattice");
    StructuredOperator op(lat3, 1);
    for (int a = 0; a < 3; ++a) {
        OperatorTerm t;
        t.coefficient = std::sqrt(2.0);
        t.spin = alpha_spin(a);
        t.derivativeAxis = a;
        t.label = "sqrt2 alpha.p";
        op.add_term(std::move(t));
    }
    OperatorTerm mass;
    mass.coefficient = 2.0 * spec.m;
    mass.spin = beta_spin();
    mass.label = "mass";
    op.add_term(std::move(mass));
    if (spec.k1 != 0.0 || spec.k2 != 0.0) {
        OperatorTerm v;
        v.potential = std::make_shared<const ScalarField>(coulomb_centers(
            lat3, {-spec.y2, spec.y2}, {std::sqrt(2.0) * spec.k1, std::sqrt(2.0) * spec.k2}, regularization_of(spec)));
        v.label = "wells";
        op.add_term(std::move(v));
    }
    if (withK0 && spec.k0 != 0.0) op.add_constant(model_k0_shift(spec), "k0 / (sqrt2 |y2|)");
    return op;
}

ApplyFn model_preconditioner(const Lattice& lat, double m) {
    // (sqrt2 alpha.p + 2 m beta)^2 = 2 |p|^2 + 4 m^2
    return fourier_preconditioner(lat, 4, 2.0, std::max(4.0 * m * m, 1e-2));
}

}  // namespace

StructuredOperator build_model_y(const Lattice& lat3, const ModelSpec& spec) { return model_impl(lat3, spec, true); }

StructuredOperator build_model_fibre(const Lattice& lat3, const ModelSpec& spec) {
    return model_impl(lat3, spec, false);
}

ModelSpectrum model_eigenvalues(const ModelSpec& spec, const GridSpec& g, double sigma, int howMany, double tol,
                                std::uint64_t seed) {
    const Lattice lat{g, 3};
    lat.validate();
    const StructuredOperator op = build_model_y(lat, spec);
    LanczosOptions opts;
    opts.target = EigTarget::Nearest;
    opts.sigma = sigma;
    opts.howMany = howMany;
    opts.blockSize = 2;
    opts.tol = tol;
    opts.seed = seed;
    opts.maxIter = 8000;
    opts.keepVectors = false;
    const EigResult r = lobpcg(as_apply(op), model_preconditioner(lat, spec.m), op.dim(), opts);
    ModelSpectrum out;
    out.values = r.ritzValues;
    out.residuals = r.residualNorms;
    out.converged = r.all_converged();
    out.applications = r.iterations;
    return out;
}

ModelShiftCheck model_k0_shift_check(const ModelSpec& spec, const GridSpec& g, double sigma, int howMany, double tol) {
    ModelShiftCheck res;
    res.shift = model_k0_shift(spec);
    res.tolerance = tol;
    ModelSpec bare = spec;
    bare.k0 = 0.0;
    res.without = model_eigenvalues(bare, g, sigma, howMany, tol).values;
    res.with = model_eigenvalues(spec, g, sigma + res.shift, howMany, tol).values;
    if (res.with.size() != res.without.size()) throw std::runtime_error("model: eigensolver returned unequal counts");
    for (std::size_t i = 0; i < res.with.size(); ++i)
        res.deviation = std::max(res.deviation, std::abs(res.with[i] - res.without[i] - res.shift));
    return res;
}

ModelMirrorCheck model_mirror_check(const ModelSpec& spec, const GridSpec& g, int howMany, double tol,
                                    std::uint64_t seed) {
    if (!g.zeroNyquist)
        throw std::invalid_argument("model mirror check: the grid must zero the Nyquist symbol");
    if (!g.offset) throw std::invalid_argument("model mirror check: needs the offset grid (symmetric under y -> -y)");
    const Lattice lat{g, 3};
    lat.validate();
    ModelSpec swapped = spec;
    std::swap(swapped.k1, swapped.k2);
    const StructuredOperator a = build_model_y(lat, spec);
    const StructuredOperator b = build_model_y(lat, swapped);

    // (P f)(j) = beta f(N - 1 - j) on the offset grid.
    const Eigen::Matrix4cd beta = beta_d();
    auto reflect = [&](const Field& f) {
        Field out(lat, 4);
        int idx[3], mir[3];
        for (std::size_t s = 0; s < lat.sites(); ++s) {
            lat.unravel(s, idx);
            for (int k = 0; k < 3; ++k) mir[k] = g.N - 1 - idx[k];
            const std::size_t t = lat.ravel(mir);
            for (int r = 0; r < 4; ++r) {
                cplx acc{};
                for (int c = 0; c < 4; ++c) acc += beta(r, c) * f.at(t, c);
                out.at(s, r) = acc;
            }
        }
        return out;
    };
    ModelMirrorCheck res;
    for (int t = 0; t < 3; ++t) {
        const Field f = random_field(lat, 4, seed + 17ULL * static_cast<std::uint64_t>(t));
        // P is an involution, so P^-1 = P.
        const Field lhs = reflect(a.apply(reflect(f)));
        const Field rhs = b.apply(f);
        res.operatorDeviation = std::max(res.operatorDeviation, norm(lhs - rhs) / std::max(norm(rhs), 1e-300));
    }
    res.original = model_eigenvalues(spec, g, model_k0_shift(spec), howMany, tol, seed).values;
    res.swapped = model_eigenvalues(swapped, g, model_k0_shift(spec), howMany, tol, seed).values;
    for (std::size_t i = 0; i < std::min(res.original.size(), res.swapped.size()); ++i)
        res.spectralDeviation = std::max(res.spectralDeviation, std::abs(res.original[i] - res.swapped[i]));
    return res;
}

SingleWellCheck model_single_well_check(const ModelSpec& spec, const GridSpec& g, double separation, double tol,
                                        std::uint64_t seed) {
    if (!(separation > 0.0)) throw std::invalid_argument("single-well check: separation must be positive");
    if (!(spec.k1 < 0.0)) throw std::invalid_argument("single-well check: k1 must be attractive");
    SingleWellCheck res;
    res.closedForm = 2.0 * spec.m * std::sqrt(1.0 - spec.k1 * spec.k1);
    // Smallest positive gap value among a few levels near the expected one.
    auto lowest_positive = [&](const ModelSpec& s) {
        const ModelSpectrum sp = model_eigenvalues(s, g, 0.5 * res.closedForm, 4, tol, seed);
        double best = 0.0;
        bool found = false;
        for (double e : sp.values)
            if (e > 0.0 && e < 2.0 * spec.m && (!found || e < best)) {
                best = e;
                found = true;
            }
        if (!found) throw std::runtime_error("single-well check: no positive gap level found");
        return best;
    };
    ModelSpec both = spec;
    both.k0 = 0.0;
    both.y2 = Vec3(0.5 * separation, 0.0, 0.0);
    ModelSpec one = both;
    one.k2 = 0.0;
    res.singleWell = lowest_positive(one);
    res.doubleWell = lowest_positive(both);
    res.tail = std::sqrt(2.0) * spec.k2 / separation;
    res.deviation = std::abs(res.doubleWell - res.singleWell - res.tail);
    return res;
}

namespace {

// Probabilists' Gauss-Hermite nodes and weights for weight exp(-x^2/2) / sqrt(2 pi)
// via the Golub-Welsch eigenproblem.
void gauss_hermite(int q, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(q, q);
    for (int i = 1; i < q; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(static_cast<double>(i));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(q);
    weights.resize(q);
    for (int i = 0; i < q; ++i) {
        nodes[i] = es.eigenvalues()[i];
        const double v = es.eigenvectors()(0, i);
        weights[i] = v * v;
    }
}

}  // namespace

ModelWeylResult model_weyl_ladder(const ModelSpec& spec, const ModelWeylSpec& ws) {
    spec.validate();
    if (ws.nValues.size() < 2) throw std::invalid_argument("model Weyl ladder: needs at least two n values");
    for (std::size_t i = 1; i < ws.nValues.size(); ++i)
        if (ws.nValues[i] <= ws.nValues[i - 1]) throw std::invalid_argument("model Weyl ladder: n values must increase");
    if (ws.boxPerN < 4.0) throw std::invalid_argument("model Weyl ladder: the shell n < |y| < 2n needs L >= 4 n");
    if (ws.centre.norm() == 0.0) throw std::invalid_argument("model Weyl ladder: the y2 bump must avoid y2 = 0");
    if (!(ws.bumpWidth > 0.0) || ws.quadraturePoints < 1)
        throw std::invalid_argument("model Weyl ladder: invalid bump width or quadrature order");
    const double nyquist = M_PI * ws.gridPoints / (ws.boxPerN * ws.nValues.back());
    if (ws.momentum >= nyquist) throw std::invalid_argument("model Weyl ladder: momentum exceeds grid resolution");

    ModelWeylResult res;
    res.centre = ws.centre;
    const Vec3 xi(0.0, 0.0, ws.momentum);
    const PlaneWaveBasis pw = plane_wave_eigenvectors(xi, std::sqrt(2.0) * spec.m);
    const double energy = std::sqrt(2.0) * pw.energy;  // sqrt(2 |xi|^2 + 4 m^2)
    res.lambda = ws.negativeBranch ? -energy : energy;
    const Eigen::Vector4cd spinor = ws.negativeBranch ? pw.negative[0] : pw.positive[0];
    const double c = spec.k0 / (std::sqrt(2.0) * ws.centre.norm());
    res.target = res.lambda + c;

    std::vector<double> x, w;
    gauss_hermite(ws.quadraturePoints, x, w);
    const int q = ws.quadraturePoints;

    for (int n : ws.nValues) {
        GridSpec g;
        g.N = ws.gridPoints;
        g.L = ws.boxPerN * n;
        g.validate();
        const Lattice lat{g, 3};
        Field u(lat, 4);
        int idx[3];
        for (std::size_t s = 0; s < lat.sites(); ++s) {
            lat.unravel(s, idx);
            const Vec3 y(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
            const double chi = shell_profile(y.norm(), n);
            const cplx phase = std::polar(chi, xi.dot(y));
            for (int k = 0; k < 4; ++k) u.at(s, k) = phase * spinor[k];
        }
        u *= 1.0 / norm(u);

        // |g_n(y2)|^2 is a normal density with standard deviation width / sqrt2
        // per axis, so E|.|^2 is a Gauss-Hermite sum.
        const double width = ws.bumpWidth / n;
        const double sd = width / std::sqrt(2.0);
        double total = 0.0;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                for (int d = 0; d < q; ++d) {
                    const Vec3 y2 = ws.centre + sd * Vec3(x[a], x[b], x[d]);
                    ModelSpec local = spec;
                    local.y2 = y2;
                    const StructuredOperator op = build_model_y(lat, local);
                    Field r = op.apply(u);
                    r += cplx(-res.target) * u;
                    const double rn = norm(r);
                    total += w[a] * w[b] * w[d] * rn * rn;
                }
        ModelWeylRow row;
        row.n = n;
        row.L = g.L;
        row.bumpWidth = width;
        row.residual = std::sqrt(total);
        res.rows.push_back(row);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(res.rows.size());
    res.strictlyDecreasing = true;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const double lx = std::log(static_cast<double>(res.rows[i].n)), ly = std::log(res.rows[i].residual);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        if (i > 0 && !(res.rows[i].residual < res.rows[i - 1].residual)) res.strictlyDecreasing = false;
    }
    res.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return res;
}

KappaScanResult model_kappa_scan(const ModelScanSpec& spec) {
    spec.model.validate();
    if (spec.model.y2.norm() == 0.0) throw std::invalid_argument("model kappa scan: y2 must be nonzero");
    if (!(spec.model.m > 0.0)) throw std::invalid_argument("model kappa scan: mass must be positive");
    const Lattice lat{spec.grid, 3};
    lat.validate();
    const double m = spec.model.m;
    SectorFactory factory = [&](double kappa) {
        ModelSpec local = spec.model;
        local.y2 = kappa * spec.model.y2;
        std::vector<ScanSector> out(1);
        out[0].op = build_model_fibre(lat, local);
        out[0].sigma = 0.0;
        out[0].gapLow = -2.0 * m;
        out[0].gapHigh = 2.0 * m;
        out[0].kineticScale = 2.0;
        out[0].constant = 4.0 * m * m;
        return out;
    };
    ScanSettings st = spec.settings;
    st.k0 = spec.model.k0;
    st.y2Norm = spec.model.y2.norm();
    st.excludedPoint = 0.0;
    if (st.regionRadius <= 0.0) st.regionRadius = spec.grid.L / 4.0;
    return scan_branches(factory, {spec.model.y2, -spec.model.y2}, st);
}

}  // namespace dcspec
