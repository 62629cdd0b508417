// The 2d^2 x 2d^2 Hermitian matrix H(X,Y) representing Phi as a quadratic
// form in the stacked pair (vec U; vec V): block assembly from the four
// closed-form components, the polarized dual block G(U,V) acting on
// (vec X; vec Y), and the two covariance identities
//   H(AXB, AYB)             = (I2 (x) B^dag (x) A*) H(X,Y) (I2 (x) B (x) A^T)
//   H(aX+bY, cX+dY)         = (L* (x) I_{d^2}) H(X,Y) (L^T (x) I_{d^2}).
#pragma once

#include "werner/linalg.hpp"

namespace werner {

struct HForm {
    int d = 0;
    CMat X, Y;              // parameters the form was built from
    CMat H;                 // H1 - (H2 + H3)/2 + H4/4, Hermitian of order 2d^2
    CMat H1, H2, H3, H4;    // the four components, same order
};

struct MoebiusParam {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    Complex gamma{0.0, 0.0};
    Complex delta{1.0, 0.0};

    Complex det() const { return alpha * delta - beta * gamma; }
};

HForm build_H(const CMat& x, const CMat& y);

// [vec(U); vec(V)]^dag H [vec(U); vec(V)]; equals Phi(X, Y, U, V).
FormValue quadratic_eval(const HForm& h, const CMat& u, const CMat& v);

// The matrix G(U,V) with Phi(X,Y,U,V) = [vec X; vec Y]^dag G [vec X; vec Y],
// recovered entry-by-entry from quadratic-form evaluations on basis pairs.
CMat build_G_polarized(const CMat& u, const CMat& v);

// Max relative residual of the unitary covariance identity over H, H1..H4.
double check_transform_AB(const CMat& x, const CMat& y, const CMat& a, const CMat& b);

// Max relative residual of the GL2 parameter-mixing identity over H, H1..H4.
double check_transform_lambda(const CMat& x, const CMat& y, const MoebiusParam& lam);

struct DiagonalBlocksReport {
    PsdReport first;   // the (vec U, vec U) block
    PsdReport second;  // the (vec V, vec V) block
};

DiagonalBlocksReport diagonal_blocks_psd(const HForm& h);

// lambda_min of the leading principal submatrix of the given order.
double leading_minor_check(const HForm& h, Eigen::Index order);

}  // namespace werner
