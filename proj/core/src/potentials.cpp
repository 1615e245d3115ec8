#include "dcspec/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace dcspec {

bool PotentialSpec::subcritical() const { return std::abs(k) < std::sqrt(3.0) / 2.0; }

double cutoff_profile(double t) {
    if (t <= 1.0) return 0.0;
    if (t >= 2.0) return 1.0;
    const double s = t - 1.0;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double cutoff_profile_derivative(double t) {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double s = t - 1.0;
    return 30.0 * s * s * (1.0 - s) * (1.0 - s);
}

namespace {

double capped(double coupling, double r, const PotentialSpec& pot, RegularizationKind reg) {
    if (r == 0.0) return coupling == 0.0 ? 0.0 : std::copysign(pot.capValue, coupling);
    const double v = coupling / r;
    if (reg == RegularizationKind::Cap && std::abs(v) > pot.capValue) return std::copysign(pot.capValue, v);
    return v;
}

}  // namespace

double interaction_kernel(const PotentialSpec& pot, RegularizationKind reg, double d) {
    if (pot.k0 == 0.0) return 0.0;
    if (reg == RegularizationKind::Bn) {
        const double b = cutoff_profile(pot.cutoffIndex * d);
        return b == 0.0 ? 0.0 : b * b * pot.k0 / d;
    }
    return capped(pot.k0, d, pot, reg);
}

ScalarField coulomb_field(const PotentialSpec& pot, const Lattice& lat, CoulombTerm which, const Vec3& y2) {
    lat.validate();
    const GridSpec& g = lat.grid;
    const bool yframe = which == CoulombTerm::YFrame;
    if (yframe && lat.dims != 3) throw std::invalid_argument("coulomb_field: y-frame term needs a 3D lattice");
    if (!yframe && lat.dims != 6) throw std::invalid_argument("coulomb_field: two-body terms need a 6D lattice");
    if (yframe && y2.norm() == 0.0)
        throw std::invalid_argument("coulomb_field: y2 = 0 makes the two centers coincide");

    ScalarField v(lat.sites());
    int idx[6];
    const double s2k = std::sqrt(2.0) * pot.k;
    for (std::size_t s = 0; s < v.size(); ++s) {
        lat.unravel(s, idx);
        if (yframe) {
            const Vec3 y(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
            v[s] = capped(s2k, (y + y2).norm(), pot, g.regularization) +
                   capped(s2k, (y - y2).norm(), pot, g.regularization);
            continue;
        }
        const Vec3 x1(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
        const Vec3 x2(g.coord(idx[3]), g.coord(idx[4]), g.coord(idx[5]));
        switch (which) {
            case CoulombTerm::OneBody1: v[s] = capped(pot.k, x1.norm(), pot, g.regularization); break;
            case CoulombTerm::OneBody2: v[s] = capped(pot.k, x2.norm(), pot, g.regularization); break;
            case CoulombTerm::Interaction: v[s] = interaction_kernel(pot, g.regularization, (x1 - x2).norm()); break;
            default: break;
        }
    }
    return v;
}

ScalarField two_body_potential(const PotentialSpec& pot, const Lattice& lat) {
    ScalarField v = coulomb_field(pot, lat, CoulombTerm::OneBody1);
    const ScalarField v2 = coulomb_field(pot, lat, CoulombTerm::OneBody2);
    const ScalarField v0 = coulomb_field(pot, lat, CoulombTerm::Interaction);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += v2[i] + v0[i];
    return v;
}

ScalarField coulomb_centers(const Lattice& lat, const std::vector<Vec3>& centers,
                            const std::vector<double>& couplings, const PotentialSpec& pot) {
    if (lat.dims != 3) throw std::invalid_argument("coulomb_centers: needs a 3D lattice");
    if (centers.size() != couplings.size()) throw std::invalid_argument("coulomb_centers: size mismatch");
    const GridSpec& g = lat.grid;
    ScalarField v(lat.sites(), 0.0);
    int idx[3];
    for (std::size_t s = 0; s < v.size(); ++s) {
        lat.unravel(s, idx);
        const Vec3 y(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2]));
        for (std::size_t c = 0; c < centers.size(); ++c)
            if (couplings[c] != 0.0) v[s] += capped(couplings[c], (y - centers[c]).norm(), pot, g.regularization);
    }
    return v;
}

}  // namespace dcspec
