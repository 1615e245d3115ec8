#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dcspec/antisym.hpp"
#include "dcspec/probes.hpp"

namespace dcspec {

double shell_profile(double r, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("shell_profile: scale must be positive");
    const double t = r / s;
    // cutoff_profile rises from 0 at 1 to 1 at 2; stretch it over half a shell.
    return cutoff_profile(1.0 + 2.0 * (t - 1.0)) * cutoff_profile(1.0 + 2.0 * (2.0 - t));
}

double shell_profile_derivative(double r, double s) {
    const double t = r / s;
    const double a = 1.0 + 2.0 * (t - 1.0), b = 1.0 + 2.0 * (2.0 - t);
    return (2.0 * cutoff_profile_derivative(a) * cutoff_profile(b) -
            2.0 * cutoff_profile(a) * cutoff_profile_derivative(b)) / s;
}

ApplyFn as_apply(const StructuredOperator& op) {
    return [&op](std::span<const cplx> x, std::span<cplx> y) { op.apply(x, y); };
}

ApplyFn fourier_preconditioner(const Lattice& lat, int ncomp, double kineticScale, double constant) {
    if (!(constant > 0.0)) throw std::invalid_argument("fourier_preconditioner: constant must be positive");
    auto mult = std::make_shared<std::vector<double>>(momentum_squared(lat));
    for (double& v : *mult) v = 1.0 / (kineticScale * v + constant);
    auto work = std::make_shared<Field>(lat, ncomp);
    return [mult, work](std::span<const cplx> x, std::span<cplx> y) {
        std::copy(x.begin(), x.end(), work->vector().begin());
        fourier_multiply(*work, *mult);
        std::copy(work->vector().begin(), work->vector().end(), y.begin());
    };
}

namespace {

struct Snapped {
    Vec3 xi, eta;
    double lambda, mu;
    std::vector<std::string> warnings;
};

Snapped snap_targets(const WeylProbeSpec& spec) {
    if (!(spec.lambda > spec.m) || !(spec.mu > spec.m))
        throw std::invalid_argument("weyl_probe: targets lambda and mu must exceed the mass");
    if (spec.nValues.empty()) throw std::invalid_argument("weyl_probe: empty n ladder");
    for (std::size_t i = 0; i < spec.nValues.size(); ++i) {
        if (spec.nValues[i] < 1) throw std::invalid_argument("weyl_probe: n values must be positive");
        if (i > 0 && spec.nValues[i] <= spec.nValues[i - 1])
            throw std::invalid_argument("weyl_probe: n values must be increasing");
    }
    if (spec.boxPerN < 4.0)
        throw std::invalid_argument("weyl_probe: the shell n < |x| < 2n does not fit the box (need L >= 4 n)");
    const double lmin = spec.boxPerN * spec.nValues.front();
    const double lmax = spec.boxPerN * spec.nValues.back();
    const double unit = 2.0 * M_PI / lmin;
    const double nyquist = M_PI * spec.gridPoints / lmax;

    Snapped s;
    auto snap = [&](double energy, const char* name) {
        const double want = std::sqrt(energy * energy - spec.m * spec.m);
        const double got = std::round(want / unit) * unit;
        if (std::abs(got - want) > 1e-12) {
            std::ostringstream os;
            os << name << " snapped from |p| = " << want << " to " << got << " on the momentum lattice";
            s.warnings.push_back(os.str());
        }
        if (got >= nyquist)
            throw std::invalid_argument("weyl_probe: momentum exceeds the resolution of the largest box");
        return got;
    };
    const double xiAbs = snap(spec.lambda, "xi");
    const double etaAbs = snap(spec.mu, "eta");
    s.xi = Vec3(0.0, 0.0, xiAbs);
    s.eta = Vec3(etaAbs, 0.0, 0.0);
    s.lambda = std::sqrt(xiAbs * xiAbs + spec.m * spec.m);
    s.mu = std::sqrt(etaAbs * etaAbs + spec.m * spec.m);
    return s;
}

GridSpec ladder_grid(const WeylProbeSpec& spec, int n, int points) {
    GridSpec g;
    g.N = points;
    g.L = spec.boxPerN * n;
    g.regularization = spec.regularization;
    g.validate();
    return g;
}

// chi_s(|x|) e^{i k.x} spinor, normalized; also returns the analytic
// |grad chi|^2 / |chi|^2 by quadrature.
Field shell_wave(const Lattice& lat, double s, const Vec3& k, const Eigen::Vector4cd& spinor, double* gradRatio) {
    Field f(lat, 4);
    const GridSpec& g = lat.grid;
    int idx[3];
    double num = 0.0, den = 0.0;
    for (std::size_t site = 0; site < f.sites(); ++site) {
        lat.unravel(site, idx);
        const Vec3 x(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
        const double r = x.norm();
        const double chi = shell_profile(r, s);
        const double dchi = shell_profile_derivative(r, s);
        num += dchi * dchi;
        den += chi * chi;
        const cplx phase = std::polar(1.0, k.dot(x));
        for (int c = 0; c < 4; ++c) f.at(site, c) = chi * phase * spinor[c];
    }
    if (!(den > 0.0)) throw std::invalid_argument("weyl_probe: shell misses every grid point");
    f *= 1.0 / norm(f);
    if (gradRatio) *gradRatio = num / den;
    return f;
}

// Density conj(f) . g per site.
CVec density(const Field& f, const Field& g) {
    CVec out(f.sites());
    for (std::size_t s = 0; s < f.sites(); ++s) {
        cplx acc{};
        for (int c = 0; c < f.ncomp(); ++c) acc += std::conj(f.at(s, c)) * g.at(s, c);
        out[s] = acc;
    }
    return out;
}

// h^6 sum_{x1,x2} rho1(x1) K(x1 - x2)^e rho2(x2) by zero-padded FFT.
class PairIntegrator {
public:
    PairIntegrator(const GridSpec& g, const PotentialSpec& pot) : g_(g), m_(2 * g.N) {
        const std::size_t total = static_cast<std::size_t>(m_) * m_ * m_;
        for (int e = 0; e < 2; ++e) kernel_[e].assign(total, cplx{});
        for (int a = 0; a < m_; ++a)
            for (int b = 0; b < m_; ++b)
                for (int c = 0; c < m_; ++c) {
                    const Vec3 d(wrap(a) * g.h(), wrap(b) * g.h(), wrap(c) * g.h());
                    const double k = interaction_kernel(pot, g.regularization, d.norm());
                    const std::size_t i = (static_cast<std::size_t>(a) * m_ + b) * m_ + c;
                    kernel_[0][i] = k;
                    kernel_[1][i] = k * k;
                }
        for (int e = 0; e < 2; ++e) fft_forward(kernel_[e].data(), 3, m_, 1);
    }

    cplx integrate(const CVec& rho1, const CVec& rho2, int power) const {
        const int n = g_.N;
        const std::size_t total = static_cast<std::size_t>(m_) * m_ * m_;
        CVec pad(total, cplx{});
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    pad[(static_cast<std::size_t>(a) * m_ + b) * m_ + c] =
                        rho2[(static_cast<std::size_t>(a) * n + b) * n + c];
        fft_forward(pad.data(), 3, m_, 1);
        const CVec& kf = kernel_[power - 1];
        for (std::size_t i = 0; i < total; ++i) pad[i] *= kf[i];
        fft_inverse(pad.data(), 3, m_, 1);
        CVec prod(rho1.size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    const std::size_t s = (static_cast<std::size_t>(a) * n + b) * n + c;
                    prod[s] = rho1[s] * pad[(static_cast<std::size_t>(a) * m_ + b) * m_ + c];
                }
        const CVec ones(prod.size(), cplx(1.0, 0.0));
        const double h3 = std::pow(g_.h(), 3);
        return h3 * h3 * la::dot(ones, prod);
    }

private:
    int wrap(int a) const { return a < g_.N ? a : a - m_; }
    GridSpec g_;
    int m_;
    CVec kernel_[2];
};

// One term (f (x) g) K^e of the unsymmetrized residual r.
struct Term {
    const Field* f;
    const Field* g;
    int e;
};

// <(f1 (x) g1) K^e1, (f2 (x) g2) K^e2>
cplx pair_inner(const PairIntegrator& pi, const Field& f1, const Field& g1, const Field& f2, const Field& g2,
                int e) {
    if (e == 0) return inner(f1, f2) * inner(g1, g2);
    return pi.integrate(density(f1, f2), density(g1, g2), e);
}

struct Pieces {
    double residual = 0.0;
    double wNorm = 0.0;
    double overlap = 0.0;
};

// ||(H_DC - (lambda - mu)) w|| for w = (u (x) v - v (x) u)/sqrt2. With
// A = (D + V1 - lambda) u, B = (D + V1 + mu) v and r = A(x)v + u(x)B + K u(x)v,
// the residual is sqrt2 times the antisymmetric part of r, whose squared
// norm is ||r||^2 - Re <r, Pi r> with Pi (f (x) g) = g (x) f.
Pieces reduced_residual(const Lattice& lat, const Field& u, const Field& v, double lambda, double mu, double m,
                        const PotentialSpec& pot) {
    ScalarFieldPtr v1;
    if (pot.k != 0.0)
        v1 = std::make_shared<const ScalarField>(coulomb_centers(lat, {Vec3::Zero()}, {pot.k}, pot));
    const StructuredOperator d = build_dirac3d(lat, m, v1);
    Field a = d.apply(u), b = d.apply(v);
    a -= lambda * u;
    b += mu * v;
    PairIntegrator pi(lat.grid, pot);

    std::vector<Term> terms{{&a, &v, 0}, {&u, &b, 0}};
    if (pot.k0 != 0.0) terms.push_back({&u, &v, 1});
    double total = 0.0;
    for (const Term& s : terms)
        for (const Term& t : terms) {
            const int e = s.e + t.e;
            total += pair_inner(pi, *s.f, *s.g, *t.f, *t.g, e).real();
            total -= pair_inner(pi, *s.f, *s.g, *t.g, *t.f, e).real();
        }
    Pieces out;
    out.residual = std::sqrt(std::max(total, 0.0));
    const double ov = std::abs(inner(u, v));
    out.overlap = ov;
    out.wNorm = std::sqrt(std::max(0.0, norm(u) * norm(u) * norm(v) * norm(v) - ov * ov));
    return out;
}

struct Spinors {
    Eigen::Vector4cd u, v;
};

// u in the +lambda eigenspace at xi; v in the -mu eigenspace at eta,
// orthogonal to u.
Spinors pick_spinors(const Vec3& xi, const Vec3& eta, double m) {
    const PlaneWaveBasis pu = plane_wave_eigenvectors(xi, m);
    const PlaneWaveBasis pv = plane_wave_eigenvectors(eta, m);
    Spinors s;
    s.u = pu.positive[0];
    const cplx c0 = s.u.dot(pv.negative[0]);
    const cplx c1 = s.u.dot(pv.negative[1]);
    // v = a n0 + b n1 with <u, v> = a c0 + b c1 = 0.
    Eigen::Vector4cd v = std::abs(c1) < 1e-14 ? pv.negative[1] : Eigen::Vector4cd(c1 * pv.negative[0] - c0 * pv.negative[1]);
    s.v = v / v.norm();
    return s;
}

struct LadderFields {
    Lattice lat;
    Field u, v;
    double s = 0.0;
    bool capBinds = false;
    double gradScale = 0.0;
};

LadderFields ladder_fields(const WeylProbeSpec& spec, const Snapped& sn, int n, int points) {
    LadderFields lf;
    lf.lat = Lattice{ladder_grid(spec, n, points), 3};
    const double cap = lf.lat.grid.L / 4.0;  // 2 s <= L / 2
    const double want = static_cast<double>(n) * n;
    lf.s = std::min(want, cap);
    lf.capBinds = want > cap;
    const Spinors sp = pick_spinors(sn.xi, sn.eta, spec.m);
    double gu = 0.0, gv = 0.0;
    lf.u = shell_wave(lf.lat, lf.s, sn.xi, sp.u, &gu);
    lf.v = shell_wave(lf.lat, n, sn.eta, sp.v, &gv);
    lf.gradScale = std::sqrt(gu + gv);
    return lf;
}

double sampled_pair_defect(const Field& u, const Field& v, std::uint64_t seed, int samples) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, u.sites() - 1);
    const double r2 = 1.0 / std::sqrt(2.0);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < samples; ++i) {
        const std::size_t s1 = pick(rng), s2 = pick(rng);
        TwoBodyValue w12 = product_at(u, v, s1, s2), w21 = product_at(u, v, s2, s1);
        const TwoBodyValue x12 = product_at(v, u, s1, s2), x21 = product_at(v, u, s2, s1);
        for (int c = 0; c < 16; ++c) {
            w12[c] = r2 * (w12[c] - x12[c]);
            w21[c] = r2 * (w21[c] - x21[c]);
            scale = std::max({scale, std::abs(w12[c]), std::abs(w21[c])});
        }
        worst = std::max(worst, pair_relation_defect(w12, w21, -1.0));
    }
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace

WeylProbeResult weyl_probe(const WeylProbeSpec& spec) {
    const Snapped sn = snap_targets(spec);
    WeylProbeResult res;
    res.xi = sn.xi;
    res.eta = sn.eta;
    res.lambda = sn.lambda;
    res.mu = sn.mu;
    res.target = sn.lambda - sn.mu;
    res.warnings = sn.warnings;

    PotentialSpec free = spec.pot;
    free.k = 0.0;
    free.k0 = 0.0;
    for (int n : spec.nValues) {
        const LadderFields lf = ladder_fields(spec, sn, n, spec.gridPoints);
        WeylRow row;
        row.n = n;
        row.uShell = lf.s;
        row.capBinds = lf.capBinds;
        row.L = lf.lat.grid.L;
        const Pieces full = reduced_residual(lf.lat, lf.u, lf.v, sn.lambda, sn.mu, spec.m, spec.pot);
        const Pieces grad = reduced_residual(lf.lat, lf.u, lf.v, sn.lambda, sn.mu, spec.m, free);
        row.residual = full.residual;
        row.gradientResidual = grad.residual;
        row.gradientScale = lf.gradScale;
        row.wNorm = full.wNorm;
        row.overlap = full.overlap;
        row.pairDefect = sampled_pair_defect(lf.u, lf.v, spec.seed + static_cast<std::uint64_t>(n), 4096);
        res.rows.push_back(row);
    }

    res.strictlyDecreasing = true;
    for (std::size_t i = 1; i < res.rows.size(); ++i)
        if (!(res.rows[i].residual < res.rows[i - 1].residual)) res.strictlyDecreasing = false;
    if (res.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double k = static_cast<double>(res.rows.size());
        for (const WeylRow& r : res.rows) {
            const double x = std::log(static_cast<double>(r.n)), y = std::log(r.residual);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        res.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }
    return res;
}

WeylCrossCheck weyl_cross_check(const WeylProbeSpec& spec, int n, int gridPoints) {
    WeylProbeSpec local = spec;
    local.nValues = {n};
    local.gridPoints = gridPoints;
    const Snapped sn = snap_targets(local);
    const LadderFields lf = ladder_fields(local, sn, n, gridPoints);

    WeylCrossCheck out;
    out.reducedResidual = reduced_residual(lf.lat, lf.u, lf.v, sn.lambda, sn.mu, spec.m, spec.pot).residual;

    const TwoBodyField uv = TwoBodyField::product(lf.u, lf.v);
    Field w = uv.field() - exchange(uv).field();
    w *= 1.0 / std::sqrt(2.0);
    const TwoBodyField wf(w);
    out.antisymmetryDefect = antisymmetry_defect(wf);
    out.fullNorm = norm(wf);
    const Lattice lat6 = two_body_lattice(lf.lat.grid);
    const StructuredOperator h = build_hdc(lat6, spec.pot, spec.m);
    Field r = h.apply(w);
    r -= (sn.lambda - sn.mu) * w;
    out.fullResidual = norm(r);
    return out;
}

}  // namespace dcspec
