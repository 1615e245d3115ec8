#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "dcspec/probes.hpp"

namespace dcspec {

RadialSpectrum radial_dirac_oracle(double k, double m, int kappa, double h, double R, int howMany) {
    if (!(m > 0.0)) throw std::invalid_argument("radial oracle: mass must be positive");
    if (kappa == 0) throw std::invalid_argument("radial oracle: kappa must be nonzero");
    if (std::abs(k) >= std::abs(static_cast<double>(kappa)))
        throw std::invalid_argument("radial oracle: coupling outside the regular range |k| < |kappa|");
    // Bound states decay like exp(-m |k| r); without a coupling there is nothing to resolve.
    if (R <= 0.0) R = k == 0.0 ? 40.0 / m : std::max(40.0 / m, 30.0 / (m * std::max(std::abs(k), 1e-3)));
    if (h <= 0.0) h = std::max(2e-3 / m, R / 3e4);
    const int M = static_cast<int>(std::ceil(R / h));

    // Unknowns interleaved: G_i at 2(i-1), F_i at 2(i-1)+1, i = 1..M.
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(8 * M));
    auto G = [](int i) { return 2 * (i - 1); };
    auto F = [](int i) { return 2 * (i - 1) + 1; };
    for (int i = 1; i <= M; ++i) {
        const double rg = i * h, rf = (i - 0.5) * h;
        trip.emplace_back(G(i), G(i), m + k / rg);
        trip.emplace_back(F(i), F(i), -m + k / rf);
        // (B G)_i = (G_i - G_{i-1}) / h + kappa / r_f (G_i + G_{i-1}) / 2, G_0 = 0
        const double diag = 1.0 / h + 0.5 * kappa / rf;
        trip.emplace_back(F(i), G(i), diag);
        trip.emplace_back(G(i), F(i), diag);
        if (i > 1) {
            const double off = -1.0 / h + 0.5 * kappa / rf;
            trip.emplace_back(F(i), G(i - 1), off);
            trip.emplace_back(G(i - 1), F(i), off);
        }
    }
    const int n = 2 * M;
    Eigen::SparseMatrix<double> H(n, n);
    H.setFromTriplets(trip.begin(), trip.end());
    H.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(H);  // shift 0: the gap center
    if (lu.info() != Eigen::Success) throw std::runtime_error("radial oracle: factorization failed");

    auto inverse = [&](std::span<const cplx> x, std::span<cplx> y) {
        Eigen::VectorXd re(n), im(n);
        for (int i = 0; i < n; ++i) {
            re[i] = x[i].real();
            im[i] = x[i].imag();
        }
        const Eigen::VectorXd sr = lu.solve(re), si = lu.solve(im);
        for (int i = 0; i < n; ++i) y[i] = cplx(sr[i], si[i]);
    };
    // An attractive coupling (k < 0) binds at positive energies, a repulsive one at negative energies.
    LanczosOptions opts;
    opts.howMany = howMany;
    opts.target = k <= 0.0 ? EigTarget::Highest : EigTarget::Lowest;
    opts.tol = 1e-10;
    opts.blockSize = 2;
    opts.keepVectors = false;
    const EigResult found = lanczos(inverse, static_cast<std::size_t>(n), opts);

    RadialSpectrum out;
    out.h = h;
    out.R = R;
    out.points = M;
    for (double theta : found.ritzValues) {
        if (theta == 0.0) continue;
        const double e = 1.0 / theta;
        if (std::abs(e) < m) out.gapEigenvalues.push_back(e);
    }
    std::sort(out.gapEigenvalues.begin(), out.gapEigenvalues.end());
    out.gapEigenvalues.erase(std::unique(out.gapEigenvalues.begin(), out.gapEigenvalues.end(),
                                         [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                             out.gapEigenvalues.end());
    return out;
}

HydrogenicResult hydrogenic_validation(double k, double m, const GridSpec& g, std::uint64_t seed, double tol) {
    if (!(k > -std::sqrt(3.0) / 2.0) || k > 0.0)
        throw std::invalid_argument("hydrogenic: coupling must satisfy -sqrt(3)/2 < k <= 0");
    if (!(m > 0.0)) throw std::invalid_argument("hydrogenic: mass must be positive");
    g.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Lattice lat{g, 3};
    PotentialSpec pot;
    pot.k = k;
    ScalarFieldPtr v;
    if (k != 0.0) v = std::make_shared<const ScalarField>(coulomb_centers(lat, {Vec3::Zero()}, {k}, pot));
    const StructuredOperator op = build_dirac3d(lat, m, v);

    LanczosOptions opts;
    opts.target = EigTarget::Nearest;
    opts.sigma = 0.0;
    opts.howMany = 2;  // the ground level is a Kramers pair
    opts.blockSize = 2;
    opts.tol = tol;
    opts.seed = seed;
    opts.maxIter = 4000;
    opts.keepVectors = false;
    const EigResult r = lobpcg(as_apply(op), fourier_preconditioner(lat, 4, 1.0, m * m), op.dim(), opts);

    HydrogenicResult res;
    res.computed = r.ritzValues;
    res.applications = r.iterations;
    for (std::size_t i = 0; i < r.ritzValues.size(); ++i) {
        const double e = r.ritzValues[i];
        if (std::abs(e) < m - 10.0 * tol && r.converged[i] && (!res.found || e < res.eigenvalue)) {
            res.found = true;
            res.eigenvalue = e;
            res.residual = r.residualNorms[i];
        }
    }
    if (k < 0.0) {
        const RadialSpectrum rs = radial_dirac_oracle(k, m);
        if (!rs.gapEigenvalues.empty()) res.oracle = rs.gapEigenvalues.front();
        if (res.found && res.oracle != 0.0) res.relativeError = std::abs(res.eigenvalue - res.oracle) / std::abs(res.oracle);
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace dcspec
