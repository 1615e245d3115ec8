#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcspec/probes.hpp"

namespace dcspec {

// Couplings of the two-centre model
//   alpha.p1 + alpha.p2 + 2 m beta + k1/|r1| + k2/|r2| + k0/|r1 - r2|
// together with the section parameter y2 of the rotated frame.
struct ModelSpec {
    double k1 = -0.5;
    double k2 = -0.5;
    double k0 = 1.0;
    double m = 1.0;
    Vec3 y2{1.0, 0.0, 0.0};
    int cutoffIndex = 4;
    double capValue = 1e3;

    bool subcritical() const;  // |k1|, |k2| < sqrt(3)/2
    void validate() const;
};

// sqrt2 alpha.p + 2 m beta + sqrt2 k1/|y + y2| + sqrt2 k2/|y - y2| + k0/(sqrt2 |y2|)
// acting in y (= y1) on a 3D lattice. y2 = 0 is rejected when k0 != 0.
StructuredOperator build_model_y(const Lattice& lat3, const ModelSpec& spec);
// Same without the constant k0 term.
StructuredOperator build_model_fibre(const Lattice& lat3, const ModelSpec& spec);

// k0 / (sqrt2 |y2|), or 0 when k0 = 0.
double model_k0_shift(const ModelSpec& spec);

// Eigenvalues of the model section nearest a shift.
struct ModelSpectrum {
    std::vector<double> values;
    std::vector<double> residuals;
    bool converged = false;
    int applications = 0;
};
ModelSpectrum model_eigenvalues(const ModelSpec& spec, const GridSpec& g, double sigma, int howMany,
                                double tol = 1e-9, std::uint64_t seed = 1);

struct ModelShiftCheck {
    double shift = 0.0;      // k0 / (sqrt2 |y2|)
    std::vector<double> without, with;
    double deviation = 0.0;  // max |with - without - shift|
    double tolerance = 0.0;  // eigensolver tolerance the deviation is compared with
};
// Spectra with k0 = 0 and with the given k0, computed near sigma and
// sigma + shift respectively.
ModelShiftCheck model_k0_shift_check(const ModelSpec& spec, const GridSpec& g, double sigma = 0.0, int howMany = 4,
                                     double tol = 1e-9);

struct ModelMirrorCheck {
    double operatorDeviation = 0.0;  // ||P H(k1,k2) P^-1 f - H(k2,k1) f|| / ||H f|| on random fields
    std::vector<double> original, swapped;
    double spectralDeviation = 0.0;  // max |original - swapped|
};
// P f(y) = beta f(-y); the grid must zero the Nyquist symbol so that the
// discrete derivative is odd under reflection.
ModelMirrorCheck model_mirror_check(const ModelSpec& spec, const GridSpec& g, int howMany = 4, double tol = 1e-10,
                                    std::uint64_t seed = 1);

struct SingleWellCheck {
    double closedForm = 0.0;  // 2 m sqrt(1 - k^2) for the deeper well
    double singleWell = 0.0;  // grid ground level of one well alone
    double doubleWell = 0.0;  // lowest positive gap level with both wells at large separation
    double tail = 0.0;        // sqrt2 k2 / separation, first-order shift from the distant well
    double deviation = 0.0;   // |doubleWell - singleWell - tail|
};
// k0 = 0 decoupling: with both wells far apart the lowest positive level is
// that of the k1 well alone, shifted by the Coulomb tail of the k2 well.
SingleWellCheck model_single_well_check(const ModelSpec& spec, const GridSpec& g, double separation,
                                        double tol = 1e-7, std::uint64_t seed = 1);

struct ModelWeylRow {
    int n = 0;
    double L = 0.0;
    double residual = 0.0;
    double bumpWidth = 0.0;
};

struct ModelWeylResult {
    double lambda = 0.0;  // free energy of the y1 wave (|lambda| >= 2m)
    double target = 0.0;  // lambda + k0 / (sqrt2 |y2*|)
    Vec3 centre = Vec3::Zero();
    std::vector<ModelWeylRow> rows;
    double slope = 0.0;
    bool strictlyDecreasing = false;
};

struct ModelWeylSpec {
    double momentum = 0.5;  // |xi| of the y1 wave, along the third axis
    bool negativeBranch = false;
    Vec3 centre{1.0, 0.0, 0.0};  // y2* where the y2 bump sits
    double bumpWidth = 0.5;      // Gaussian width at n = 1; scales as 1/n
    int quadraturePoints = 4;    // Gauss-Hermite nodes per y2 axis
    std::vector<int> nValues{4, 8, 16};
    int gridPoints = 32;
    double boxPerN = 4.0;
};

// Residual ladder of w_n(y1, y2) = u_n(y1) g_n(y2) for the full model: u_n is
// a shell-cut plane wave in y1 and g_n a normalized Gaussian in y2. The
// operator is fibred over y2, so the norm reduces to a Gauss-Hermite sum of
// 3D residuals.
ModelWeylResult model_weyl_ladder(const ModelSpec& spec, const ModelWeylSpec& ws);

struct ModelScanSpec {
    ModelSpec model;
    GridSpec grid;
    ScanSettings settings;
};

// kappa scan of the k0 = 0 fibre (shift 0, gap (-2m, 2m) without 0) with
// the curve lambda - k0 / (sqrt2 kappa |y2|).
KappaScanResult model_kappa_scan(const ModelScanSpec& spec);

}  // namespace dcspec
