#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <tuple>

#include "dcspec/probes.hpp"

namespace dcspec {

namespace {

void require_spinor3(const Field& f, const char* who) {
    if (f.lattice().dims != 3 || f.ncomp() != 4)
        throw std::invalid_argument(std::string(who) + ": needs a 4-component field on a 3D lattice");
}

std::vector<double> radii(const Lattice& lat) {
    std::vector<double> r(lat.sites());
    int idx[3];
    const GridSpec& g = lat.grid;
    for (std::size_t s = 0; s < r.size(); ++s) {
        lat.unravel(s, idx);
        r[s] = Vec3(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2])).norm();
    }
    return r;
}

// h^3 sum_s w(s) |f(s)|^2
double weighted_norm2(const Field& f, const std::vector<double>& w) {
    std::vector<double> parts(f.sites());
    for (std::size_t s = 0; s < f.sites(); ++s) {
        double a = 0.0;
        for (int c = 0; c < f.ncomp(); ++c) a += std::norm(f.at(s, c));
        parts[s] = w[s] * a;
    }
    return f.weight() * la::pairwise_sum(parts);
}

}  // namespace

std::vector<Field> hardy_trial_family(const GridSpec& g, int count, std::uint64_t seed) {
    g.validate();
    const Lattice lat{g, 3};
    const double L = g.L;
    const std::vector<double> r = radii(lat);
    std::vector<Field> out;
    out.reserve(count);
    int idx[3];
    for (int t = 0; t < count; ++t) {
        std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::normal_distribution<double> nd;
        Vec3 c(uni(rng), uni(rng), uni(rng));
        c *= (L / 16.0) * std::abs(uni(rng)) / std::max(c.norm(), 1e-12);
        const double width = L / 16.0 * (1.0 + std::abs(uni(rng)));
        const int degree = t % 3;
        const Vec3 lin(nd(rng), nd(rng), nd(rng));
        Eigen::Matrix3d quad;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) quad(i, j) = nd(rng);
        Eigen::Vector4cd spinor;
        for (int k = 0; k < 4; ++k) spinor[k] = cplx(nd(rng), nd(rng));
        spinor /= spinor.norm();

        Field noise = random_band_limited(lat, 4, seed * 7919ULL + static_cast<std::uint64_t>(t), 2);
        double peak = 0.0;
        for (const cplx& z : noise.vector()) peak = std::max(peak, std::abs(z));
        if (peak > 0.0) noise *= 1.0 / peak;

        Field u(lat, 4);
        for (std::size_t s = 0; s < u.sites(); ++s) {
            lat.unravel(s, idx);
            const Vec3 y(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
            const Vec3 d = (y - c) / width;
            double poly = 1.0;
            if (degree >= 1) poly += lin.dot(d);
            if (degree >= 2) poly += d.dot(quad * d);
            const double window = 1.0 - cutoff_profile(r[s] / (L / 8.0));
            const double env = std::exp(-0.5 * d.squaredNorm()) * poly * window;
            for (int k = 0; k < 4; ++k) u.at(s, k) = env * (spinor[k] + 0.5 * noise.at(s, k));
        }
        u *= 1.0 / norm(u);
        out.push_back(std::move(u));
    }
    return out;
}

double hardy_win(const Field& u) {
    require_spinor3(u, "hardy_win");
    if (norm(u) == 0.0) throw std::invalid_argument("hardy_win: trial function vanishes identically");
    const std::vector<double> r = radii(u.lattice());
    std::vector<double> inv(r.size());
    for (std::size_t s = 0; s < r.size(); ++s) inv[s] = 1.0 / r[s];
    const Field hu = build_h00(u.lattice()).apply(u);
    return std::sqrt(weighted_norm2(hu, r) / weighted_norm2(u, inv));
}

std::string to_string(HardyMultiplier q) {
    switch (q) {
        case HardyMultiplier::Zero: return "zero";
        case HardyMultiplier::PlusRadial: return "plus-radial";
        case HardyMultiplier::MinusRadial: return "minus-radial";
        case HardyMultiplier::SpinRadial: return "spin-radial";
    }
    return "unknown";
}

HardyHaResult hardy_ha(const Field& v, HardyMultiplier q, double muHat) {
    require_spinor3(v, "hardy_ha");
    if (!(muHat >= 0.0) || !(muHat < std::sqrt(3.0) / 2.0))
        throw std::invalid_argument("hardy_ha: bound constant must lie in [0, sqrt(3)/2)");
    const double vnorm = norm(v);
    if (vnorm == 0.0) throw std::invalid_argument("hardy_ha: trial function vanishes identically");

    HardyHaResult res;
    res.a = std::sqrt(muHat * muHat + 0.25);
    res.factor = 1.0 / (1.0 - res.a);
    res.vacuous = res.factor > 1e6;
    res.norm = vnorm;

    const Lattice& lat = v.lattice();
    const GridSpec& g = lat.grid;
    Field out = build_h00(lat).apply(v);
    const double c = std::sqrt(2.0) * muHat;
    res.qBoundExcess = -std::numeric_limits<double>::infinity();
    int idx[3];
    std::vector<double> inv2(lat.sites());
    for (std::size_t s = 0; s < lat.sites(); ++s) {
        lat.unravel(s, idx);
        const Vec3 y(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
        const double r = y.norm();
        inv2[s] = 2.0 / (r * r);
        Eigen::Matrix4cd Q = Eigen::Matrix4cd::Zero();
        switch (q) {
            case HardyMultiplier::Zero: break;
            case HardyMultiplier::PlusRadial: Q = (c / r) * Eigen::Matrix4cd::Identity(); break;
            case HardyMultiplier::MinusRadial: Q = (-c / r) * Eigen::Matrix4cd::Identity(); break;
            case HardyMultiplier::SpinRadial: {
                const Vec3 yh = y / r;
                const Eigen::Matrix2cd sy = yh[0] * pauli_d(1) + yh[1] * pauli_d(2) + yh[2] * pauli_d(3);
                // I2 (x) sigma.y acting on vec(M): M -> (sigma.y) M
                Q.topLeftCorner<2, 2>() = (c / r) * sy;
                Q.bottomRightCorner<2, 2>() = (c / r) * sy;
                break;
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(Q, Eigen::EigenvaluesOnly);
        const double qn = es.eigenvalues().cwiseAbs().maxCoeff();
        res.qBoundExcess = std::max(res.qBoundExcess, qn - c / r);
        if (q != HardyMultiplier::Zero) {
            Eigen::Map<const Eigen::Vector4cd> vin(&v.at(s, 0));
            Eigen::Map<Eigen::Vector4cd> o(&out.at(s, 0));
            o += Q * vin;
        }
    }
    res.lhs = std::sqrt(weighted_norm2(v, inv2));
    res.rhs = norm(out);
    res.holds = res.lhs <= res.factor * res.rhs + 1e-3 * vnorm;
    return res;
}

SquareIdentityResult square_identity_check(double m, const GridSpec& g, std::uint64_t seed, int samples) {
    g.validate();
    const Lattice lat{g, 3};
    const PotentialSpec free;
    const Vec3 y2(1.0, 0.0, 0.0);  // irrelevant without potential
    const StructuredOperator hpp = build_y_sector(lat, free, m, y2, YSector::PlusPlus);
    const StructuredOperator hmm = build_y_sector(lat, free, m, y2, YSector::MinusMinus);
    const StructuredOperator h00 = build_h00(lat);
    std::vector<double> sym = momentum_squared(lat);
    std::vector<double> symMass(sym.size());
    for (std::size_t i = 0; i < sym.size(); ++i) {
        sym[i] *= 2.0;
        symMass[i] = sym[i] + m * m;
    }
    auto relative = [](const Field& a, const Field& b) {
        const double scale = std::max(norm(b), 1e-300);
        return norm(a - b) / scale;
    };
    SquareIdentityResult res;
    for (int t = 0; t < samples; ++t) {
        const std::uint64_t sd = seed + 31ULL * static_cast<std::uint64_t>(t);
        const Field f8 = random_field(lat, 8, sd);
        Field expect8 = f8;
        fourier_multiply(expect8, symMass);
        for (auto [op, shift, slot] : {std::tuple{&hpp, -m, &res.plusDeviation}, std::tuple{&hmm, m, &res.minusDeviation}}) {
            Field once = op->apply(f8);
            once += shift * f8;
            Field twice = op->apply(once);
            twice += shift * once;
            *slot = std::max(*slot, relative(twice, expect8));
        }
        const Field f4 = random_field(lat, 4, sd ^ 0xabcdefULL);
        Field expect4 = f4;
        fourier_multiply(expect4, sym);
        res.h00Deviation = std::max(res.h00Deviation, relative(h00.apply(h00.apply(f4)), expect4));
    }
    return res;
}

}  // namespace dcspec
