#include "werner/states.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace werner {

void validate_family(const WernerFamily& fam) {
    if (fam.d < 1) throw ConfigError("local dimension must be >= 1, got " + std::to_string(fam.d));
    if (!(fam.t >= -1.0 && fam.t <= 1.0))
        throw ConfigError("family parameter t must lie in [-1, 1], got " + std::to_string(fam.t));
}

const char* to_string(WernerClass c) {
    switch (c) {
        case WernerClass::Separable: return "separable";
        case WernerClass::NptNotOneDistillable: return "npt_not_one_distillable";
        case WernerClass::OneDistillable: return "one_distillable";
    }
    return "unknown";
}

CMat flip_operator(int d) {
    if (d < 1) throw ConfigError("flip_operator: d must be >= 1");
    CMat f = CMat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
    return f;
}

CMat me_projector(int d) {
    if (d < 1) throw ConfigError("me_projector: d must be >= 1");
    CMat p = CMat::Zero(d * d, d * d);
    const double w = 1.0 / d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) = w;
    return p;
}

CMat partial_transpose(const CMat& m, int d) {
    if (d < 1) throw ConfigError("partial_transpose: d must be >= 1");
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    if (m.rows() != n || m.cols() != n)
        throw DimensionMismatch("partial_transpose: matrix must be d^2 x d^2");
    CMat out(n, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) out(i * d + j, r * d + s) = m(i * d + s, r * d + j);
    return out;
}

WernerPair werner_pair(const WernerFamily& fam) {
    validate_family(fam);
    const Eigen::Index n = static_cast<Eigen::Index>(fam.d) * fam.d;
    WernerPair pair;
    pair.rho = CMat::Identity(n, n) - fam.t * flip_operator(fam.d);
    pair.sigma = CMat::Identity(n, n) - (fam.t * fam.d) * me_projector(fam.d);
    return pair;
}

WernerClass classify(const WernerFamily& fam) {
    validate_family(fam);
    if (fam.t <= 1.0 / fam.d) return WernerClass::Separable;
    if (fam.t > 0.5) return WernerClass::OneDistillable;
    return WernerClass::NptNotOneDistillable;
}

namespace {

Eigen::Index pow_ll(int base, int exp) {
    Eigen::Index r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

FormValue eval_sigma_form(const PureStateVector& psi, const WernerFamily& fam, int k) {
    validate_family(fam);
    if (k < 1 || k > 2) throw UnsupportedCopies("eval_sigma_form: k must be 1 or 2");
    if (psi.copies != k) throw DimensionMismatch("eval_sigma_form: psi.copies != k");
    if (psi.d != fam.d) throw DimensionMismatch("eval_sigma_form: psi.d != fam.d");
    if (psi.amplitudes.size() != pow_ll(fam.d, 2 * k))
        throw DimensionMismatch("eval_sigma_form: amplitude vector has wrong length");
    const CMat sigma = werner_pair(fam).sigma;
    const CMat op = (k == 1) ? sigma : kron(sigma, sigma);
    return quadratic_form(op, psi.amplitudes);
}

int schmidt_rank(const PureStateVector& psi) {
    if (psi.copies < 1 || psi.d < 1) throw ConfigError("schmidt_rank: invalid state");
    const Eigen::Index n = pow_ll(psi.d, 2 * psi.copies);
    if (psi.amplitudes.size() != n)
        throw DimensionMismatch("schmidt_rank: amplitude vector has wrong length");
    const Eigen::Index side = pow_ll(psi.d, psi.copies);
    CMat coeff(side, side);
    for (Eigen::Index flat = 0; flat < n; ++flat) {
        // Digits of flat in base d, most significant first, alternate
        // Alice, Bob, Alice, Bob, ...
        Eigen::Index rest = flat;
        Eigen::Index row = 0;
        Eigen::Index col = 0;
        for (int c = 0; c < psi.copies; ++c) {
            const Eigen::Index shift = pow_ll(psi.d, 2 * (psi.copies - c) - 1);
            const Eigen::Index alice = rest / shift;
            rest %= shift;
            const Eigen::Index bob = rest / (shift / psi.d);
            rest %= shift / psi.d;
            row = row * psi.d + alice;
            col = col * psi.d + bob;
        }
        coeff(row, col) = psi.amplitudes(flat);
    }
    Eigen::JacobiSVD<CMat> svd(coeff);
    const RVec sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol::rank_rel * sv(0)) ++rank;
    return rank;
}

PureStateVector rank2_vector(const CMat& x, const CMat& u, const CMat& y, const CMat& v) {
    const Eigen::Index d = x.rows();
    if (x.cols() != d || u.rows() != d || u.cols() != d || y.rows() != d || y.cols() != d ||
        v.rows() != d || v.cols() != d)
        throw DimensionMismatch("rank2_vector: all four matrices must be d x d");
    PureStateVector psi;
    psi.copies = 2;
    psi.d = static_cast<int>(d);
    psi.amplitudes = CVec::Zero(d * d * d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index a = 0; a < d; ++a)
                for (Eigen::Index b = 0; b < d; ++b)
                    psi.amplitudes(((i * d + j) * d + a) * d + b) =
                        x(a, i) * u(b, j) + y(a, i) * v(b, j);
    return psi;
}

PureStateVector rank2_vector(const CVec& x, const CVec& u, const CVec& y, const CVec& v) {
    const Eigen::Index d = x.size();
    if (u.size() != d || y.size() != d || v.size() != d)
        throw DimensionMismatch("rank2_vector: all four vectors must have the same length");
    PureStateVector psi;
    psi.copies = 1;
    psi.d = static_cast<int>(d);
    psi.amplitudes = CVec::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) psi.amplitudes(i * d + j) = x(i) * u(j) + y(i) * v(j);
    return psi;
}

}  // namespace werner
