#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

#include "dcspec/clifford.hpp"
#include "dcspec/exact.hpp"

namespace dcspec {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

// Column-major packing: vec([[a, b], [c, d]]) = (a, c, b, d).
Eigen::Vector4cd vec(const Eigen::Matrix2cd& m);
Eigen::Matrix2cd mat(const Eigen::Vector4cd& v);
ExactMatrix vec(const ExactMatrix& m2x2);  // returns a 4x1 column
ExactMatrix mat(const ExactMatrix& v4x1);

// (A (x) I2) vec M == vec(M A^T), (I2 (x) B) vec M == vec(B M)
Eigen::Matrix2cd apply_left(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& m);
Eigen::Matrix2cd apply_right(const Eigen::Matrix2cd& b, const Eigen::Matrix2cd& m);
ExactMatrix apply_left(const ExactMatrix& a, const ExactMatrix& m);
ExactMatrix apply_right(const ExactMatrix& b, const ExactMatrix& m);

// For M_j = [[B, A_j], [A_j, -B]] returns M_1 (x) I + I (x) M_2 in the
// reordered block form [[2B, A2, A1, 0], [A2, 0, 0, A1], [A1, 0, 0, A2], [0, A1, A2, -2B]].
Eigen::MatrixXcd kron_sum_blocks(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& a1,
                                 const Eigen::MatrixXcd& a2);
ExactMatrix kron_sum_blocks(const ExactMatrix& b, const ExactMatrix& a1, const ExactMatrix& a2);

// Two-particle spinor index conventions. "plain-kron" is the index of
// e_(a1,i1) (x) e_(a2,i2) = 8 a1 + 4 i1 + 2 a2 + i2; "llss" groups the
// large/small labels first: 8 a1 + 4 a2 + 2 i1 + i2. a = 0 large, 1 small;
// i = spin.
enum class BasisOrder { PlainKron, Llss };
const char* to_string(BasisOrder b);

// perm[llss index] = plain-kron index, derived by matching basis labels.
const std::array<int, 16>& llss_to_plain_permutation();
Eigen::MatrixXcd permutation_matrix_llss_to_plain();  // P with P e_llss = e_plain

struct TwoBodySymbol {
    Vec3 xi1 = Vec3::Zero();
    Vec3 xi2 = Vec3::Zero();
    double mass = 0.0;
    Eigen::MatrixXcd plainKron;  // H0(xi1) (x) I4 + I4 (x) H0(xi2)
    Eigen::MatrixXcd llss;       // block form with h1, h2
    double permutationDeviation = 0.0;

    const Eigen::MatrixXcd& matrix(BasisOrder order) const {
        return order == BasisOrder::PlainKron ? plainKron : llss;
    }
};

// Throws std::logic_error when the two constructions disagree beyond 1e-12.
TwoBodySymbol two_body_free_symbol(const Vec3& xi1, const Vec3& xi2, double m);

struct OrthoTransform {
    ExactMatrix matrix;
    std::string label;
};

OrthoTransform build_S();  // (1/sqrt2) [[I4, I4], [I4, -I4]]
OrthoTransform build_T();  // S (+) S
ExactMatrix conjugate(const OrthoTransform& t, const ExactMatrix& m);        // T^t M T
Eigen::MatrixXcd conjugate(const OrthoTransform& t, const Eigen::MatrixXcd& m);

// Momentum symbol of the plus form in llss order:
// [[v+2m, h12, 0, 0], [h12, v, 0, 0], [0, 0, v, h12], [0, 0, h12, v-2m]],
// h12 = I2 (x) sigma.(xi1 + xi2).
Eigen::MatrixXcd plus_form_symbol(const Vec3& xi1, const Vec3& xi2, double m, double v);
// Same for the minus form, with h21 = sigma.(xi1 + xi2) (x) I2 coupling
// blocks (11, 21) and (12, 22).
Eigen::MatrixXcd minus_form_symbol(const Vec3& xi1, const Vec3& xi2, double m, double v);

// Block pattern obtained from T^t (plus form) T:
// diag(H00, -H00, H00, -H00) + m C + v I16 with H00 = h12 and
// C = [[I, I, 0, 0], [I, I, 0, 0], [0, 0, -I, s I], [0, 0, s I, -I]],
// where s = +1 for the conjugation by T and s = -1 for the conjugation by
// T D, D = diag(I4, I4, I4, -I4).
Eigen::MatrixXcd canonical_form_symbol(const Vec3& xi1, const Vec3& xi2, double m, double v,
                                       bool lowerCouplingPositive);
ExactMatrix lower_sign_flip();  // D = diag(I4, I4, I4, -I4)

}  // namespace dcspec
