#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dcspec/clifford.hpp"
#include "dcspec/eigensolver.hpp"
#include "dcspec/field.hpp"
#include "dcspec/grid.hpp"
#include "dcspec/hamiltonians.hpp"
#include "dcspec/potentials.hpp"

namespace dcspec {

// Smooth bump supported on s < r < 2s: rises on (s, 1.5 s), falls on
// (1.5 s, 2 s), C^2 at the joins.
double shell_profile(double r, double s);
double shell_profile_derivative(double r, double s);

// Wraps an operator for the eigensolvers (the operator must outlive the
// returned function).
ApplyFn as_apply(const StructuredOperator& op);

// Multiplies in Fourier space by 1 / (kineticScale |p|^2 + constant); with
// the right constants this is the exact inverse of a free folded operator
// such as (alpha.p + m beta)^2 = |p|^2 + m^2.
ApplyFn fourier_preconditioner(const Lattice& lat, int ncomp, double kineticScale, double constant);

// ---------------------------------------------------------------- Weyl probe

struct WeylProbeSpec {
    double lambda = 0.8;   // energy of u; snapped so that xi lies on the momentum lattice
    double mu = 0.42;      // v has energy -mu; snapped likewise
    double m = 0.15;
    std::vector<int> nValues{4, 8, 16};
    int gridPoints = 32;
    double boxPerN = 4.0;  // L_n = boxPerN * n
    PotentialSpec pot;
    RegularizationKind regularization = RegularizationKind::Bn;
    std::uint64_t seed = 1;  // site pairs sampled by the membership test
};

struct WeylRow {
    int n = 0;
    double uShell = 0.0;          // s of u_s; n^2 unless the box caps it
    bool capBinds = false;
    double L = 0.0;
    double residual = 0.0;        // ||(H_DC - (lambda - mu)) w_n||
    double gradientResidual = 0.0;  // same with k = k0 = 0
    double gradientScale = 0.0;   // analytic sqrt(|grad chi_s|^2/|chi_s|^2 + |grad chi_n|^2/|chi_n|^2)
    double wNorm = 0.0;
    double overlap = 0.0;         // |<u, v>|
    double pairDefect = 0.0;      // sampled antisymmetry relation defect of w_n
};

struct WeylProbeResult {
    double lambda = 0.0, mu = 0.0, target = 0.0;  // after snapping; target = lambda - mu
    Vec3 xi = Vec3::Zero(), eta = Vec3::Zero();
    std::vector<WeylRow> rows;
    double slope = 0.0;  // least-squares slope of log residual against log n
    bool strictlyDecreasing = false;
    std::vector<std::string> warnings;
};

// Residual ladder of w_n = (u_s (x) v_n - v_n (x) u_s)/sqrt2 evaluated from
// one-particle fields: the two-particle norm is expanded into products of 3D
// inner products and zero-padded convolutions with the interaction kernel.
WeylProbeResult weyl_probe(const WeylProbeSpec& spec);

struct WeylCrossCheck {
    double reducedResidual = 0.0;
    double fullResidual = 0.0;   // from the assembled 6D field and build_hdc
    double fullNorm = 0.0;
    double antisymmetryDefect = 0.0;
};

// Same w_n on a small grid, once through the reduced formula and once on
// the full six-dimensional lattice.
WeylCrossCheck weyl_cross_check(const WeylProbeSpec& spec, int n, int gridPoints);

// ------------------------------------------------------------- Hardy probes

// Trial functions for the weighted inequalities: Gaussians times angular
// polynomials times windowed random band-limited fields, all vanishing for
// |y| >= L/4.
std::vector<Field> hardy_trial_family(const GridSpec& g, int count, std::uint64_t seed);

// ||y|^(1/2) H00 u|| / ||y|^(-1/2) u|| on the 3D grid.
double hardy_win(const Field& u);

enum class HardyMultiplier { Zero, PlusRadial, MinusRadial, SpinRadial };
std::string to_string(HardyMultiplier q);

struct HardyHaResult {
    double lhs = 0.0;      // ||sqrt2 |y|^-1 v||
    double rhs = 0.0;      // ||(H00 + Q) v||
    double a = 0.0;        // sqrt(muHat^2 + 1/4)
    double factor = 0.0;   // 1 / (1 - a)
    double norm = 0.0;     // ||v||
    double qBoundExcess = 0.0;  // max over sites of |Q(y)| - sqrt2 muHat / |y| (<= 0 expected)
    bool holds = false;    // lhs <= factor * rhs + 1e-3 ||v||
    bool vacuous = false;  // factor beyond 1e6
};

// Rejects muHat outside [0, sqrt(3)/2).
HardyHaResult hardy_ha(const Field& v, HardyMultiplier q, double muHat);

// --------------------------------------------------------- squared operators

struct SquareIdentityResult {
    double plusDeviation = 0.0;   // (H++ - m)^2 vs 2|p|^2 + m^2, relative
    double minusDeviation = 0.0;  // (H-- + m)^2 vs 2|p|^2 + m^2
    double h00Deviation = 0.0;    // H00^2 vs 2|p|^2
};

SquareIdentityResult square_identity_check(double m, const GridSpec& g, std::uint64_t seed, int samples = 3);

// ------------------------------------------------------------- hydrogenic

struct RadialSpectrum {
    std::vector<double> gapEigenvalues;  // ascending, inside (-m, m)
    double h = 0.0;
    double R = 0.0;
    int points = 0;
};

// Radial Dirac operator [[m + V, -d/dr + kappa/r], [d/dr + kappa/r, -m + V]]
// with V = k/r on a staggered grid (G at i h, F at (i - 1/2) h), solved by
// shift-invert around 0. h and R default to values derived from k and m.
RadialSpectrum radial_dirac_oracle(double k, double m, int kappa = -1, double h = 0.0, double R = 0.0,
                                   int howMany = 2);

struct HydrogenicResult {
    bool found = false;
    double eigenvalue = 0.0;  // lowest gap eigenvalue on the 3D grid
    double residual = 0.0;
    std::vector<double> computed;  // eigenvalues returned by the solver
    double oracle = 0.0;
    double relativeError = 0.0;
    int applications = 0;
    double seconds = 0.0;
};

// Requires -sqrt(3)/2 < k <= 0.
HydrogenicResult hydrogenic_validation(double k, double m, const GridSpec& g, std::uint64_t seed = 1,
                                       double tol = 1e-6);

// ------------------------------------------------------------------ kappa scan

struct ScanState {
    double value = 0.0;
    double residual = 0.0;
    double localization = 0.0;  // norm fraction inside the central region
    bool localized = false;
    int sector = 0;
    CVec vector;
};

struct BranchPoint {
    double kappa = 0.0;
    double value = 0.0;
    double overlap = 1.0;  // with the previous point (1 at the start of a branch)
};

struct Branch {
    int sector = 0;
    std::vector<BranchPoint> points;
};

struct CurveMatch {
    double lambda = 0.0;
    int longestRun = 0;  // consecutive kappa points within tolerance, best branch
    bool matched = false;
};

// One family member: the operator at kappa and the data needed to solve it.
struct ScanSector {
    StructuredOperator op;
    double sigma = 0.0;                 // solver shift
    double gapLow = 0.0, gapHigh = 0.0;  // open interval the localized values must lie in
    double kineticScale = 1.0;          // free folded operator ~ kineticScale |p|^2 + constant
    double constant = 1.0;
};

struct ScanSettings {
    std::vector<double> kappas;
    int howMany = 4;
    double tol = 1e-7;
    double localizedFraction = 0.9;
    double regionRadius = 0.0;   // central ball radius beyond the outermost well
    double overlapThreshold = 0.9;
    double matchTolerance = 1e-3;
    double excludedPoint = 0.0;  // value excluded from the gap union (0)
    double excludedWidth = 1e-6;
    std::vector<double> lambdas;  // user-chosen curve constants
    bool adversarialLambda = true;  // add a lambda whose curve hits a branch at the first kappa
    double k0 = 1.0;
    double y2Norm = 1.0;
    std::uint64_t seed = 1;
};

struct KappaScanResult {
    std::vector<double> kappas;
    std::vector<std::vector<ScanState>> states;  // per kappa, vectors dropped after tracking
    std::vector<Branch> branches;
    std::vector<CurveMatch> matches;
    bool confined = true;
    double worstConfinementViolation = 0.0;
    bool anyMatch = false;
    int localizedCount = 0;
    std::string label = "evidence";
    std::string verdict;
};

using SectorFactory = std::function<std::vector<ScanSector>(double kappa)>;

// Generic scan: solves each sector near its shift, keeps localized states,
// tracks branches by eigenvector overlap and compares them with
// lambda - k0 / (sqrt2 kappa |y2|).
KappaScanResult scan_branches(const SectorFactory& factory, const std::vector<Vec3>& wellsAtUnitKappa,
                              const ScanSettings& settings);

struct KappaScanSpec {
    Vec3 y2{1.0, 0.0, 0.0};
    PotentialSpec pot;  // k for the wells; k0 only enters the overlay curve
    double m = 1.0;
    GridSpec grid;
    ScanSettings settings;
};

// Branches of the ++ (shift +m, gap (0, 2m)) and -- (shift -m, gap (-2m, 0))
// blocks of the y-frame fibre operator at y2 -> kappa y2.
KappaScanResult kappa_scan(const KappaScanSpec& spec);

}  // namespace dcspec
