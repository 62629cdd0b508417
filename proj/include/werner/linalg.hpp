// Dense complex linear algebra primitives shared by all modules: tensor
// product, column stacking, Hermitian eigendecomposition, PSD testing and
// Hermitian determinants.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "werner/errors.hpp"
#include "werner/tolerances.hpp"

namespace werner {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Tensor (Kronecker) product A (x) B = [a_ij B].
CMat kron(const CMat& a, const CMat& b);

// Column stacking: entry (i, j) of z lands at position j*rows + i.
CVec vec(const CMat& z);

// Inverse of vec for square targets of order d.
CMat unvec(const CVec& v, Eigen::Index d);

// Frobenius-relative scale used by all tolerance checks.
double rel_scale(const CMat& m);

struct EigenResult {
    RVec eigenvalues;   // ascending
    CMat eigenvectors;  // columns, unitary
};

// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
// (M + M^dag)/2 before solving; inputs farther than tol::herm_rel from
// Hermitian are rejected.
EigenResult hermitian_eig(const CMat& m);

struct PsdReport {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

// True iff lambda_min(M) >= -tol * max(1, ||M||_F).
PsdReport is_psd(const CMat& m, double tol = tol::psd_rel);

struct DetValue {
    double value = 0.0;    // plain product of eigenvalues, may overflow for large orders
    double log_abs = 0.0;  // sum of log|lambda_i|, -inf when singular
    int sign = 0;          // -1, 0, +1
};

// Determinant of a Hermitian matrix as the product of its eigenvalues.
DetValue det_hermitian(const CMat& m);

struct FormValue {
    double value = 0.0;          // real part of the quadratic form
    double imag_residual = 0.0;  // |imaginary part|, health check, should be ~0
};

// <w|M|w> for Hermitian M, reporting the imaginary rounding residual.
FormValue quadratic_form(const CMat& m, const CVec& w);

// Matrix of a Hermitian quadratic form of m complex variables, recovered
// from real evaluations on basis vectors e_p and the combinations e_p + e_q
// (real parts) and e_p + i e_q (imaginary parts).
CMat polarize_hermitian_form(Eigen::Index m, const std::function<double(const CVec&)>& eval);

// Throws NotUnitary if ||M^dag M - I|| exceeds tol::unitary_rel relative.
void require_unitary(const CMat& m, const char* name);

// Throws DimensionMismatch unless all entries are finite.
void ensure_finite(const CMat& m, const char* what);

}  // namespace werner
