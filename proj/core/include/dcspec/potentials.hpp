#pragma once

#include <memory>
#include <vector>

#include "dcspec/clifford.hpp"
#include "dcspec/grid.hpp"

namespace dcspec {

struct PotentialSpec {
    double k = 0.0;         // one-body coupling (signed; negative attracts)
    double k0 = 0.0;        // interaction coupling
    int cutoffIndex = 4;    // n of the coincidence cutoff B_n
    double capValue = 1e3;  // bound on |V| used by the cap policy and at exact singular samples

    bool subcritical() const;  // |k| < sqrt(3)/2
};

// Quintic smoothstep: 0 for t <= 1, 1 for t >= 2, C^2 in between.
double cutoff_profile(double t);
double cutoff_profile_derivative(double t);

enum class CoulombTerm { OneBody1, OneBody2, Interaction, YFrame };

using ScalarField = std::vector<double>;
using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

// Samples one Coulomb term on the lattice (dims 6 for the two-body terms,
// dims 3 for the y-frame term, which needs y2).
ScalarField coulomb_field(const PotentialSpec& pot, const Lattice& lat, CoulombTerm which,
                          const Vec3& y2 = Vec3::Zero());

// V(x1) + V(x2) + V0(x1, x2) on a six-dimensional lattice.
ScalarField two_body_potential(const PotentialSpec& pot, const Lattice& lat);

// Sum over centers c of coupling / |y - c| on a three-dimensional lattice.
ScalarField coulomb_centers(const Lattice& lat, const std::vector<Vec3>& centers,
                            const std::vector<double>& couplings, const PotentialSpec& pot);

// Regularized interaction kernel value k0 * K(d) for a separation d, with
// the policy selected by the grid.
double interaction_kernel(const PotentialSpec& pot, RegularizationKind reg, double distance);

}  // namespace dcspec
