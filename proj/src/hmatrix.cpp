#include "werner/hmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "werner/phi.hpp"

namespace werner {

HForm build_H(const CMat& x, const CMat& y) {
    const Eigen::Index d = x.rows();
    if (d < 1 || x.cols() != d || y.rows() != d || y.cols() != d)
        throw DimensionMismatch("build_H: X and Y must be d x d with a common d");
    const Eigen::Index n = d * d;
    HForm h;
    h.d = static_cast<int>(d);
    h.X = x;
    h.Y = y;

    CMat top(2, 2);
    top << Complex(x.squaredNorm(), 0.0), (x.adjoint() * y).trace(),  //
        (y.adjoint() * x).trace(), Complex(y.squaredNorm(), 0.0);
    h.H1 = kron(top, CMat::Identity(n, n));

    CMat inner(2 * d, 2 * d);
    inner.topLeftCorner(d, d) = x.adjoint() * x;
    inner.topRightCorner(d, d) = x.adjoint() * y;
    inner.bottomLeftCorner(d, d) = y.adjoint() * x;
    inner.bottomRightCorner(d, d) = y.adjoint() * y;
    h.H2 = kron(inner, CMat::Identity(d, d));

    const CMat id = CMat::Identity(d, d);
    h.H3.resize(2 * n, 2 * n);
    h.H3.topLeftCorner(n, n) = kron(id, x.conjugate() * x.transpose());
    h.H3.topRightCorner(n, n) = kron(id, x.conjugate() * y.transpose());
    h.H3.bottomLeftCorner(n, n) = kron(id, y.conjugate() * x.transpose());
    h.H3.bottomRightCorner(n, n) = kron(id, y.conjugate() * y.transpose());

    const CVec xt = vec(x);
    const CVec yt = vec(y);
    h.H4.resize(2 * n, 2 * n);
    h.H4.topLeftCorner(n, n) = xt.conjugate() * xt.transpose();
    h.H4.topRightCorner(n, n) = xt.conjugate() * yt.transpose();
    h.H4.bottomLeftCorner(n, n) = yt.conjugate() * xt.transpose();
    h.H4.bottomRightCorner(n, n) = yt.conjugate() * yt.transpose();

    h.H = h.H1 - 0.5 * (h.H2 + h.H3) + 0.25 * h.H4;
    return h;
}

FormValue quadratic_eval(const HForm& h, const CMat& u, const CMat& v) {
    const Eigen::Index d = h.d;
    if (u.rows() != d || u.cols() != d || v.rows() != d || v.cols() != d)
        throw DimensionMismatch("quadratic_eval: U and V must match the form's d");
    CVec w(2 * d * d);
    w << vec(u), vec(v);
    return quadratic_form(h.H, w);
}

CMat build_G_polarized(const CMat& u, const CMat& v) {
    const Eigen::Index d = u.rows();
    if (d < 1 || u.cols() != d || v.rows() != d || v.cols() != d)
        throw DimensionMismatch("build_G_polarized: U and V must be d x d with a common d");
    const Eigen::Index n = d * d;
    return polarize_hermitian_form(2 * n, [&](const CVec& w) {
        return phi_matrix({unvec(w.head(n), d), unvec(w.tail(n), d), u, v}).phi;
    });
}

namespace {

double block_residual(const CMat& lhs, const CMat& rhs) {
    return (lhs - rhs).norm() / rel_scale(rhs);
}

double transform_deviation(const HForm& trans, const HForm& base, const CMat& left,
                           const CMat& right) {
    double dev = 0.0;
    const CMat* pairs[5][2] = {{&trans.H, &base.H},
                               {&trans.H1, &base.H1},
                               {&trans.H2, &base.H2},
                               {&trans.H3, &base.H3},
                               {&trans.H4, &base.H4}};
    for (const auto& p : pairs) dev = std::max(dev, block_residual(*p[0], left * *p[1] * right));
    return dev;
}

}  // namespace

double check_transform_AB(const CMat& x, const CMat& y, const CMat& a, const CMat& b) {
    require_unitary(a, "A");
    require_unitary(b, "B");
    if (a.rows() != x.rows() || b.rows() != x.rows())
        throw DimensionMismatch("check_transform_AB: A, B must match X, Y");
    const HForm base = build_H(x, y);
    const HForm trans = build_H(a * x * b, a * y * b);
    const CMat id2 = CMat::Identity(2, 2);
    const CMat right = kron(kron(id2, b), a.transpose());
    return transform_deviation(trans, base, right.adjoint(), right);
}

double check_transform_lambda(const CMat& x, const CMat& y, const MoebiusParam& lam) {
    const double scale = std::max(std::max(std::abs(lam.alpha), std::abs(lam.beta)),
                                  std::max(std::abs(lam.gamma), std::abs(lam.delta)));
    if (scale == 0.0 || std::abs(lam.det()) < tol::singular_lambda_rel * scale * scale)
        throw SingularLambda("check_transform_lambda: Lambda is numerically singular");
    const HForm base = build_H(x, y);
    const HForm trans = build_H(lam.alpha * x + lam.beta * y, lam.gamma * x + lam.delta * y);
    CMat lmat(2, 2);
    lmat << lam.alpha, lam.beta, lam.gamma, lam.delta;
    const Eigen::Index n = x.rows() * x.rows();
    const CMat id = CMat::Identity(n, n);
    return transform_deviation(trans, base, kron(lmat.conjugate(), id), kron(lmat.transpose(), id));
}

DiagonalBlocksReport diagonal_blocks_psd(const HForm& h) {
    const Eigen::Index n = static_cast<Eigen::Index>(h.d) * h.d;
    return DiagonalBlocksReport{is_psd(h.H.topLeftCorner(n, n)),
                                is_psd(h.H.bottomRightCorner(n, n))};
}

double leading_minor_check(const HForm& h, Eigen::Index order) {
    const Eigen::Index m = 2 * static_cast<Eigen::Index>(h.d) * h.d;
    if (order < 1 || order > m)
        throw IndexError("leading_minor_check: order must lie in [1, 2d^2]");
    const EigenResult eig = hermitian_eig(h.H.topLeftCorner(order, order));
    return eig.eigenvalues(0);
}

}  // namespace werner
