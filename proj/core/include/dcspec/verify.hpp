#pragma once

#include <cstdint>
#include <vector>

#include "dcspec/check.hpp"
#include "dcspec/potentials.hpp"
#include "dcspec/report.hpp"

namespace dcspec {

// Exact-arithmetic identities: anticommutation of the Dirac matrices, the
// Kronecker-sum block formula, vec/Mat actions, the two-body symbol with
// integer momenta, orthogonality of S and the block canonical form under T.
// `perturbBeta` replaces beta by diag(1, 1, -1, 1) (negative control).
std::vector<CheckRecord> exact_identity_suite(std::uint64_t seed = 1, bool perturbBeta = false);

// Plain Kronecker symbol against the block form for `samples` random
// (xi1, xi2, m) in floating point.
CheckRecord two_body_symbol_consistency(int samples, std::uint64_t seed);

// Matrix-free H_DC, H+ and H- against their assembled matrices on random
// vectors; relative deviation max ||A v - D v|| / ||D v||.
std::vector<CheckRecord> dense_oracle_suite(const GridSpec& g, const PotentialSpec& pot, double m, int vectors,
                                            std::uint64_t seed);

// ||Pi H_DC Psi - H_DC Pi Psi|| / ||H_DC Psi|| on band-limited random Psi.
CheckRecord exchange_invariance_check(const GridSpec& g, const PotentialSpec& pot, double m, int samples,
                                      std::uint64_t seed, int maxFreq = 2);

struct FormEqualityResult {
    CheckRecord plus, minus;
    double antisymmetryDefect = 0.0;  // of the sampled pairs
};
// |<H_DC Psi, Phi> - <H+- Psi, Phi>| / (||H_DC Psi|| ||Phi||) maximized over
// antisymmetrized band-limited random pairs.
FormEqualityResult form_equality_check(const GridSpec& g, const PotentialSpec& pot, double m, int pairs,
                                       std::uint64_t seed, int maxFreq = 1);

// (H++ - m)^2 and (H-- + m)^2 against 2|p|^2 + m^2, H00^2 against 2|p|^2.
CheckRecord square_identity_record(double m, const GridSpec& g, std::uint64_t seed, double tol = 1e-12);

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool perturbBeta = false;
    int symbolSamples = 100;
    int denseVectors = 5;
    int formPairs = 3;
};

// Everything above on small grids, one report.
ProbeReport verify_all(const VerifyOptions& opts = {});

}  // namespace dcspec
