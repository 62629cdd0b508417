#include "werner/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>
#include <string>

namespace werner {

CMat kron(const CMat& a, const CMat& b) {
    return Eigen::kroneckerProduct(a, b);
}

CVec vec(const CMat& z) {
    // Eigen stores column-major, so the raw buffer already is the stacking.
    return Eigen::Map<const CVec>(z.data(), z.size());
}

CMat unvec(const CVec& v, Eigen::Index d) {
    if (v.size() != d * d)
        throw DimensionMismatch("unvec: vector length " + std::to_string(v.size()) +
                                " is not d^2 for d = " + std::to_string(d));
    return Eigen::Map<const CMat>(v.data(), d, d);
}

double rel_scale(const CMat& m) {
    return std::max(1.0, m.norm());
}

void ensure_finite(const CMat& m, const char* what) {
    if (!m.allFinite())
        throw DimensionMismatch(std::string(what) + ": non-finite entries");
}

FormValue quadratic_form(const CMat& m, const CVec& w) {
    if (m.rows() != m.cols() || m.cols() != w.size())
        throw DimensionMismatch("quadratic_form: dimensions do not match");
    const Complex q = w.adjoint() * m * w;
    return FormValue{q.real(), std::abs(q.imag())};
}

CMat polarize_hermitian_form(Eigen::Index m, const std::function<double(const CVec&)>& eval) {
    CMat g = CMat::Zero(m, m);
    RVec diag(m);
    CVec w = CVec::Zero(m);
    for (Eigen::Index p = 0; p < m; ++p) {
        w(p) = 1.0;
        diag(p) = eval(w);
        g(p, p) = diag(p);
        w(p) = 0.0;
    }
    for (Eigen::Index p = 0; p < m; ++p) {
        w(p) = 1.0;
        for (Eigen::Index q = p + 1; q < m; ++q) {
            w(q) = 1.0;
            const double re = 0.5 * (eval(w) - diag(p) - diag(q));
            w(q) = Complex(0.0, 1.0);
            const double im = 0.5 * (diag(p) + diag(q) - eval(w));
            w(q) = 0.0;
            g(p, q) = Complex(re, im);
            g(q, p) = Complex(re, -im);
        }
        w(p) = 0.0;
    }
    return g;
}

void require_unitary(const CMat& m, const char* name) {
    if (m.rows() != m.cols()) throw NotUnitary(std::string(name) + " is not square");
    const double dev = (m.adjoint() * m - CMat::Identity(m.rows(), m.cols())).norm();
    if (dev > tol::unitary_rel * std::max(1.0, m.squaredNorm()))
        throw NotUnitary(std::string(name) + " fails the unitarity tolerance");
}

EigenResult hermitian_eig(const CMat& m) {
    if (m.rows() != m.cols())
        throw NotHermitian("hermitian_eig: matrix is not square");
    const double asym = (m - m.adjoint()).norm();
    if (asym > tol::herm_rel * rel_scale(m))
        throw NotHermitian("hermitian_eig: asymmetry " + std::to_string(asym) +
                           " exceeds tolerance");
    const CMat sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("hermitian_eig: eigensolver did not converge");
    return EigenResult{solver.eigenvalues(), solver.eigenvectors()};
}

PsdReport is_psd(const CMat& m, double tol) {
    const EigenResult eig = hermitian_eig(m);
    const double lambda_min = eig.eigenvalues.size() ? eig.eigenvalues(0) : 0.0;
    return PsdReport{lambda_min >= -tol * rel_scale(m), lambda_min};
}

DetValue det_hermitian(const CMat& m) {
    const EigenResult eig = hermitian_eig(m);
    DetValue det;
    det.value = 1.0;
    det.log_abs = 0.0;
    det.sign = 1;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double lambda = eig.eigenvalues(i);
        det.value *= lambda;
        if (lambda == 0.0) {
            det.sign = 0;
            det.log_abs = -std::numeric_limits<double>::infinity();
            return det;
        }
        if (lambda < 0.0) det.sign = -det.sign;
        det.log_abs += std::log(std::abs(lambda));
    }
    return det;
}

}  // namespace werner
