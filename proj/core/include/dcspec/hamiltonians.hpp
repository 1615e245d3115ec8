#pragma once

#include "dcspec/operator.hpp"

namespace dcspec {

// Block order of a two-body field: 0 = psi_11, 1 = psi_12, 2 = psi_21, 3 = psi_22
// (large/large, large/small, small/large, small/small).

// (h1 psi)_ij = sum_a p1_a psi_ij sigma_a^T and (h2 psi)_ij = sum_a p2_a sigma_a psi_ij
// on a single block (one 2x2-matrix-valued field on the 6D lattice).
StructuredOperator build_h1_block(const Lattice& lat6);
StructuredOperator build_h2_block(const Lattice& lat6);

// Two-body Dirac-Coulomb operator with V = V(x1) + V(x2) + V0(x1, x2).
StructuredOperator build_hdc(const Lattice& lat6, const PotentialSpec& pot, double m);
// Plus form: kinetic coupling I2 (x) sigma.(p1 + p2) between blocks (11,12) and (21,22).
StructuredOperator build_hdc_plus(const Lattice& lat6, const PotentialSpec& pot, double m);
// Minus form: kinetic coupling sigma.(p1 + p2) (x) I2 between blocks (11,21) and (12,22).
StructuredOperator build_hdc_minus(const Lattice& lat6, const PotentialSpec& pot, double m);

// One-particle Dirac operator alpha.p + m beta + V on a 3D lattice.
StructuredOperator build_dirac3d(const Lattice& lat3, double m, ScalarFieldPtr potential = nullptr);

// H00 = sqrt2 I2 (x) sigma.p on a single 4-component field over y1.
StructuredOperator build_h00(const Lattice& lat3);

// Fibre operator in the rotated frame, acting in y1 for fixed y2:
// diag(H00, -H00, H00, -H00) + m [[1,1,0,0],[1,1,0,0],[0,0,-1,-1],[0,0,-1,-1]] + V_y2,
// V_y2 = sqrt2 k / |y1 + y2| + sqrt2 k / |y1 - y2|.
StructuredOperator build_y_operator(const Lattice& lat3, const PotentialSpec& pot, double m, const Vec3& y2);

enum class YSector { PlusPlus, MinusMinus };
// The two decoupled 8-component diagonal blocks of build_y_operator.
StructuredOperator build_y_sector(const Lattice& lat3, const PotentialSpec& pot, double m, const Vec3& y2,
                                  YSector sector);

// Spin actions of the standard Dirac matrices on a 4-spinor stored as a
// 2x2 block (columns large/small, rows spin).
SpinPair alpha_spin(int axis);  // sigma_1 (x) sigma_axis
SpinPair beta_spin();           // sigma_3 (x) I2

}  // namespace dcspec
