#include "werner/phi.hpp"

#include <algorithm>
#include <cmath>

#include "werner/states.hpp"

namespace werner {

void validate_quadruple(const MatrixQuadruple& q) {
    const Eigen::Index d = q.X.rows();
    if (d < 1) throw DimensionMismatch("quadruple: empty X");
    for (const CMat* m : {&q.X, &q.Y, &q.U, &q.V})
        if (m->rows() != d || m->cols() != d)
            throw DimensionMismatch("quadruple: all blocks must be d x d with a common d");
}

namespace {

PhiBreakdown combine(double p1, double p2, double p3, double p4) {
    PhiBreakdown b;
    b.phi1 = p1;
    b.phi2 = p2;
    b.phi3 = p3;
    b.phi4 = p4;
    b.phi = p1 - 0.5 * (p2 + p3) + 0.25 * p4;
    return b;
}

}  // namespace

PhiBreakdown phi_vector(const MatrixQuadruple& q) {
    validate_quadruple(q);
    const Eigen::Index d = q.X.rows();

    // Phi1 = S_x S_u + 2 Re(t_xy t_uv) + S_y S_v with S the column norm sums
    // and t the column overlap sums.
    double sx = 0, sy = 0, su = 0, sv = 0;
    Complex txy = 0, tuv = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        sx += q.X.col(i).squaredNorm();
        sy += q.Y.col(i).squaredNorm();
        su += q.U.col(i).squaredNorm();
        sv += q.V.col(i).squaredNorm();
        txy += q.X.col(i).dot(q.Y.col(i));
        tuv += q.U.col(i).dot(q.V.col(i));
    }
    const double p1 = sx * su + 2.0 * (txy * tuv).real() + sy * sv;

    // Phi2 = sum_{ij} |<x_i|u_j*>|^2 + 2 Re(<x_i|u_j*> conj(<y_i|v_j*>))
    //        + |<y_i|v_j*>|^2.
    double p2 = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const Complex xu = q.X.col(i).dot(q.U.col(j).conjugate());
            const Complex yv = q.Y.col(i).dot(q.V.col(j).conjugate());
            p2 += std::norm(xu) + 2.0 * (xu * std::conj(yv)).real() + std::norm(yv);
        }

    // Phi3 = sum_{ij} Re(<x_i|x_j><u_i|u_j> + 2 <x_i|y_j><u_i|v_j>
    //        + <y_i|y_j><v_i|v_j>).
    double p3 = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const Complex xx = q.X.col(i).dot(q.X.col(j));
            const Complex uu = q.U.col(i).dot(q.U.col(j));
            const Complex yy = q.Y.col(i).dot(q.Y.col(j));
            const Complex vv = q.V.col(i).dot(q.V.col(j));
            const Complex xy = q.X.col(i).dot(q.Y.col(j));
            const Complex uv = q.U.col(i).dot(q.V.col(j));
            p3 += (xx * uu + yy * vv).real() + 2.0 * (xy * uv).real();
        }

    // Phi4 = |sum_i <x_i|u_i*> + sum_i <y_i|v_i*>|^2.
    Complex s4 = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        s4 += q.X.col(i).dot(q.U.col(i).conjugate());
        s4 += q.Y.col(i).dot(q.V.col(i).conjugate());
    }
    const double p4 = std::norm(s4);

    return combine(p1, p2, p3, p4);
}

PhiBreakdown phi_matrix(const MatrixQuadruple& q) {
    validate_quadruple(q);
    const double p1 = (kron(q.X, q.U) + kron(q.Y, q.V)).squaredNorm();
    const CMat inner = q.X.transpose() * q.U + q.Y.transpose() * q.V;
    const double p2 = inner.squaredNorm();
    const double p3 = (q.U * q.X.transpose() + q.V * q.Y.transpose()).squaredNorm();
    const double p4 = std::norm(inner.trace());
    return combine(p1, p2, p3, p4);
}

double phi_oracle(const MatrixQuadruple& q) {
    validate_quadruple(q);
    const Eigen::Index d = q.X.rows();
    if (d > 5) throw DimensionTooLarge("phi_oracle: operator construction capped at d <= 5");
    const PureStateVector psi = rank2_vector(q.X, q.U, q.Y, q.V);
    const WernerFamily fam{static_cast<int>(d), 0.5};
    return eval_sigma_form(psi, fam, 2).value;
}

namespace {

double breakdown_deviation(const PhiBreakdown& base, const PhiBreakdown& other) {
    const double pairs[5][2] = {{base.phi1, other.phi1},
                                {base.phi2, other.phi2},
                                {base.phi3, other.phi3},
                                {base.phi4, other.phi4},
                                {base.phi, other.phi}};
    double dev = 0;
    for (const auto& p : pairs)
        dev = std::max(dev, std::abs(p[1] - p[0]) / std::max(1.0, std::abs(p[0])));
    return dev;
}

}  // namespace

double check_unitary_invariance(const MatrixQuadruple& q, const CMat& a, const CMat& b) {
    validate_quadruple(q);
    require_unitary(a, "A");
    require_unitary(b, "B");
    if (a.rows() != q.X.rows() || b.rows() != q.X.rows())
        throw DimensionMismatch("check_unitary_invariance: A, B must match the quadruple");
    const PhiBreakdown base = phi_matrix(q);
    const CMat ac = a.conjugate();
    const CMat bc = b.conjugate();
    const MatrixQuadruple left{a * q.X, a * q.Y, ac * q.U, ac * q.V};
    const MatrixQuadruple right{q.X * b, q.Y * b, q.U * bc, q.V * bc};
    return std::max(breakdown_deviation(base, phi_matrix(left)),
                    breakdown_deviation(base, phi_matrix(right)));
}

Json quadruple_to_json(const MatrixQuadruple& q) {
    validate_quadruple(q);
    return Json{{"d", q.X.rows()},
                {"X", matrix_to_json(q.X)},
                {"Y", matrix_to_json(q.Y)},
                {"U", matrix_to_json(q.U)},
                {"V", matrix_to_json(q.V)}};
}

MatrixQuadruple quadruple_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("X") || !j.contains("Y") ||
        !j.contains("U") || !j.contains("V"))
        throw IoError("quadruple JSON: expected object with d/X/Y/U/V");
    MatrixQuadruple q{matrix_from_json(j.at("X")), matrix_from_json(j.at("Y")),
                      matrix_from_json(j.at("U")), matrix_from_json(j.at("V"))};
    validate_quadruple(q);
    if (q.X.rows() != j.at("d").get<Eigen::Index>())
        throw IoError("quadruple JSON: d field disagrees with matrix dimensions");
    return q;
}

}  // namespace werner
