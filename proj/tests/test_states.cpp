#include <cmath>

#include "doctest.h"
#include "werner/rng.hpp"
#include "werner/states.hpp"

using namespace werner;

namespace {

// Normalized maximally entangled vector (1/sqrt d) sum_i |i,i>.
CVec me_vector(int d) {
    CVec v = CVec::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
    return v;
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("flip operator: entries and spectrum") {
    const CMat f2 = flip_operator(2);
    CMat want(4, 4);
    want << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    CHECK((f2 - want).norm() == 0.0);
    const EigenResult eig2 = hermitian_eig(f2);
    CHECK(eig2.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(eig2.eigenvalues(1) == doctest::Approx(1.0));

    // d = 3: eigenvalue +1 with multiplicity d(d+1)/2 = 6, -1 with 3
    const EigenResult eig3 = hermitian_eig(flip_operator(3));
    int plus = 0, minus = 0;
    for (int i = 0; i < 9; ++i) {
        if (eig3.eigenvalues(i) > 0.5) ++plus;
        if (eig3.eigenvalues(i) < -0.5) ++minus;
    }
    CHECK(plus == 6);
    CHECK(minus == 3);
}

TEST_CASE("me_projector is the rank-one projector with 1/d entries") {
    const CMat p = me_projector(2);
    CHECK(p(0, 0) == Complex(0.5));
    CHECK(p(0, 3) == Complex(0.5));
    CHECK(p(3, 0) == Complex(0.5));
    CHECK(p(3, 3) == Complex(0.5));
    CHECK(p(1, 1) == Complex(0.0));
    CHECK(std::abs(p.trace() - Complex(1.0)) < 1e-15);
    CHECK((p * p - p).norm() < 1e-14);
}

TEST_CASE("partial transpose relates flip and me projector") {
    for (int d = 2; d <= 5; ++d) {
        CHECK((partial_transpose(flip_operator(d), d) -
               double(d) * me_projector(d))
                  .norm() < 1e-12);
        // involution
        Rng rng(d);
        const CMat m = rng.cgaussian_matrix(d * d, d * d);
        CHECK((partial_transpose(partial_transpose(m, d), d) - m).norm() == 0.0);
    }
    CHECK_THROWS_AS(partial_transpose(CMat::Identity(5, 5), 2), DimensionMismatch);
}

TEST_CASE("werner_pair: sigma is the partial transpose of rho") {
    const WernerFamily fam{3, 0.37};
    const WernerPair pair = werner_pair(fam);
    CHECK((pair.rho - (CMat::Identity(9, 9) - 0.37 * flip_operator(3))).norm() < 1e-15);
    CHECK((pair.sigma - partial_transpose(pair.rho, 3)).norm() < 1e-12);
}

TEST_CASE("sigma spectrum at the distillability threshold") {
    // sigma(1/2), d = 3: one eigenvalue -1/2, eight eigenvalues 1
    const EigenResult eig = hermitian_eig(werner_pair({3, 0.5}).sigma);
    CHECK(eig.eigenvalues(0) == doctest::Approx(-0.5));
    for (int i = 1; i < 9; ++i) CHECK(eig.eigenvalues(i) == doctest::Approx(1.0));
    // sigma(1/3), d = 3 is exactly on the PSD boundary
    CHECK(is_psd(werner_pair({3, 1.0 / 3.0}).sigma).min_eigenvalue ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("classification against the two thresholds") {
    CHECK(classify({3, 0.30}) == WernerClass::Separable);
    CHECK(classify({3, 1.0 / 3.0}) == WernerClass::Separable);  // boundary is separable
    CHECK(classify({3, 0.40}) == WernerClass::NptNotOneDistillable);
    CHECK(classify({3, 0.50}) == WernerClass::NptNotOneDistillable);  // boundary not distillable
    CHECK(classify({3, 0.60}) == WernerClass::OneDistillable);
    CHECK(to_string(WernerClass::Separable) == std::string("separable"));
    CHECK(to_string(WernerClass::NptNotOneDistillable) ==
          std::string("npt_not_one_distillable"));
    CHECK(to_string(WernerClass::OneDistillable) == std::string("one_distillable"));
    CHECK_THROWS_AS(validate_family({0, 0.5}), ConfigError);
    CHECK_THROWS_AS(validate_family({3, 1.5}), ConfigError);
}

TEST_CASE("eval_sigma_form: closed-form values") {
    // <me| sigma(t) |me> = 1 - t d
    const PureStateVector me{1, 3, me_vector(3)};
    CHECK(eval_sigma_form(me, {3, 0.5}, 1).value == doctest::Approx(-0.5));
    // product state |1,2> is blind to P: value 1 at any t
    CVec e12 = CVec::Zero(9);
    e12(1) = 1.0;  // i = 1, j = 2 one-based
    CHECK(eval_sigma_form({1, 3, e12}, {3, 0.7}, 1).value == doctest::Approx(1.0));
    // rank-two witness (|1,1> + |2,2>)/sqrt 2 gives 1 - 2t
    CVec w = CVec::Zero(9);
    w(0) = w(4) = 1.0 / std::sqrt(2.0);
    CHECK(eval_sigma_form({1, 3, w}, {3, 0.6}, 1).value == doctest::Approx(-0.2));
    CHECK(eval_sigma_form({1, 3, w}, {3, 0.4}, 1).value == doctest::Approx(0.2));
    // two copies of the product me (x) me give (1 - t d)^2
    CVec mm = CVec::Zero(81);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) mm(i * 9 + j) = me.amplitudes(i) * me.amplitudes(j);
    CHECK(eval_sigma_form({2, 3, mm}, {3, 0.5}, 2).value == doctest::Approx(0.25));
}

TEST_CASE("eval_sigma_form validates the copy structure") {
    const PureStateVector me{1, 3, me_vector(3)};
    CHECK_THROWS_AS(eval_sigma_form(me, {3, 0.5}, 3), UnsupportedCopies);
    CHECK_THROWS_AS(eval_sigma_form(me, {3, 0.5}, 2), DimensionMismatch);  // copies mismatch
    CHECK_THROWS_AS(eval_sigma_form(me, {2, 0.5}, 1), DimensionMismatch);  // d mismatch
}

TEST_CASE("schmidt_rank counts across the Alice|Bob split") {
    CVec e12 = CVec::Zero(9);
    e12(1) = 1.0;
    CHECK(schmidt_rank({1, 3, e12}) == 1);
    CHECK(schmidt_rank({1, 3, me_vector(3)}) == 3);

    // k = 1 rank-two combination, frozen layout psi[i d + j] = x_i u_j + y_i v_j
    CVec x(2), u(2), y(2), v(2);
    x << 1, 0;
    u << 0, 1;
    y << 0, 1;
    v << 1, 0;
    const PureStateVector psi = rank2_vector(x, u, y, v);
    REQUIRE(psi.amplitudes.size() == 4);
    CHECK(psi.amplitudes(0) == Complex(0.0));
    CHECK(psi.amplitudes(1) == Complex(1.0));
    CHECK(psi.amplitudes(2) == Complex(1.0));
    CHECK(psi.amplitudes(3) == Complex(0.0));
    CHECK(schmidt_rank(psi) == 2);
}

TEST_CASE("two-copy rank2_vector has Schmidt rank at most two") {
    Rng rng(31);
    const int d = 3;
    const PureStateVector psi =
        rank2_vector(rng.cgaussian_matrix(d, d), rng.cgaussian_matrix(d, d),
                     rng.cgaussian_matrix(d, d), rng.cgaussian_matrix(d, d));
    REQUIRE(psi.amplitudes.size() == 81);
    CHECK(psi.copies == 2);
    CHECK(schmidt_rank(psi) <= 2);
    // frozen index layout: psi[((i d + j) d + a) d + b] = X(a,i) U(b,j) + Y(a,i) V(b,j)
    CMat ex = CMat::Zero(d, d), eu = CMat::Zero(d, d);
    ex(1, 0) = 1.0;  // a = 1, i = 0
    eu(2, 2) = 1.0;  // b = 2, j = 2
    const PureStateVector unitpsi = rank2_vector(ex, eu, CMat::Zero(d, d), CMat::Zero(d, d));
    const int idx = ((0 * d + 2) * d + 1) * d + 2;
    CHECK(unitpsi.amplitudes(idx) == Complex(1.0));
    CHECK(unitpsi.amplitudes.norm() == doctest::Approx(1.0));
}

}  // TEST_SUITE
