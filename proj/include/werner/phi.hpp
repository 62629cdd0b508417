// The hermitian biquadratic form Phi(X; Y; U; V) = Phi1 - (Phi2+Phi3)/2
// + Phi4/4, evaluated two independent ways (column-vector sums and matrix
// norms/traces) plus the direct operator oracle, and the unitary-invariance
// check Phi(AXB, AYB, A*UB*, A*VB*) = Phi(X, Y, U, V).
#pragma once

#include "werner/io.hpp"
#include "werner/linalg.hpp"

namespace werner {

struct MatrixQuadruple {
    CMat X, Y, U, V;  // columns are the vectors x_1..x_d etc.
};

// Throws DimensionMismatch unless all four blocks are d x d with a common d.
void validate_quadruple(const MatrixQuadruple& q);

struct PhiBreakdown {
    double phi1 = 0.0;  // ||X(x)U + Y(x)V||^2
    double phi2 = 0.0;  // ||X^T U + Y^T V||^2
    double phi3 = 0.0;  // ||U X^T + V Y^T||^2
    double phi4 = 0.0;  // |tr(X^T U + Y^T V)|^2
    double phi = 0.0;   // phi1 - (phi2 + phi3)/2 + phi4/4
};

// Column-sum formulas, inner product <a|b> conjugate-linear in the first slot.
PhiBreakdown phi_vector(const MatrixQuadruple& q);

// Matrix-norm/trace formulas; agrees with phi_vector to high precision.
PhiBreakdown phi_matrix(const MatrixQuadruple& q);

// Ground truth: <psi| sigma^{(x)2} |psi> at t = 1/2 through the state module.
// Quartic memory in d, so capped at d <= 5.
double phi_oracle(const MatrixQuadruple& q);

// Max relative deviation of Phi and each Phi_k under the two invariance
// transformations (X,Y,U,V) -> (AX, AY, A*U, A*V) and -> (XB, YB, UB*, VB*).
// Throws NotUnitary if A or B fails the unitarity tolerance.
double check_unitary_invariance(const MatrixQuadruple& q, const CMat& a, const CMat& b);

Json quadruple_to_json(const MatrixQuadruple& q);
MatrixQuadruple quadruple_from_json(const Json& j);

}  // namespace werner
