#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "werner/hmatrix.hpp"
#include "werner/phi.hpp"
#include "werner/rng.hpp"

using namespace werner;

namespace {

MatrixQuadruple random_quadruple(Rng& rng, int d) {
    return MatrixQuadruple{rng.cgaussian_matrix(d, d), rng.cgaussian_matrix(d, d),
                           rng.cgaussian_matrix(d, d), rng.cgaussian_matrix(d, d)};
}

double four_way_dev(const MatrixQuadruple& q) {
    const double a = phi_vector(q).phi;
    const double b = phi_matrix(q).phi;
    const double c = quadratic_eval(build_H(q.X, q.Y), q.U, q.V).value;
    const double o = phi_oracle(q);
    const double lo = std::min({a, b, c, o});
    const double hi = std::max({a, b, c, o});
    return (hi - lo) / std::max({1.0, std::abs(lo), std::abs(hi)});
}

}  // namespace

TEST_SUITE("phi") {

TEST_CASE("frozen value at the identity quadruple") {
    const CMat id = CMat::Identity(3, 3), zero = CMat::Zero(3, 3);
    const MatrixQuadruple q{id, zero, id, zero};
    for (const PhiBreakdown& p : {phi_vector(q), phi_matrix(q)}) {
        CHECK(p.phi1 == doctest::Approx(9.0));
        CHECK(p.phi2 == doctest::Approx(3.0));
        CHECK(p.phi3 == doctest::Approx(3.0));
        CHECK(p.phi4 == doctest::Approx(9.0));
        CHECK(p.phi == doctest::Approx(8.25));
    }
    CHECK(phi_oracle(q) == doctest::Approx(8.25));
    CHECK(quadratic_eval(build_H(id, zero), id, zero).value == doctest::Approx(8.25));
}

TEST_CASE("the quadruple (I, I, I, -I) annihilates every component") {
    const CMat id = CMat::Identity(3, 3);
    const PhiBreakdown p = phi_matrix({id, id, id, -id});
    CHECK(p.phi1 == doctest::Approx(0.0));
    CHECK(p.phi2 == doctest::Approx(0.0));
    CHECK(p.phi3 == doctest::Approx(0.0));
    CHECK(p.phi4 == doctest::Approx(0.0));
    CHECK(p.phi == doctest::Approx(0.0));
}

TEST_CASE("quadratic scaling in each argument pair") {
    Rng rng(7);
    const MatrixQuadruple q = random_quadruple(rng, 3);
    const Complex c(0.0, 2.0);  // |c|^2 = 4
    const MatrixQuadruple scaled{c * q.X, c * q.Y, q.U, q.V};
    CHECK(phi_vector(scaled).phi == doctest::Approx(4.0 * phi_vector(q).phi));
    const MatrixQuadruple scaled2{q.X, q.Y, c * q.U, c * q.V};
    CHECK(phi_matrix(scaled2).phi == doctest::Approx(4.0 * phi_matrix(q).phi));
}

TEST_CASE("doubling Y = X, V = U multiplies every component by four") {
    Rng rng(8);
    const CMat x = rng.cgaussian_matrix(3, 3), u = rng.cgaussian_matrix(3, 3);
    const CMat zero = CMat::Zero(3, 3);
    const PhiBreakdown base = phi_matrix({x, zero, u, zero});
    const PhiBreakdown doubled = phi_matrix({x, x, u, u});
    CHECK(doubled.phi1 == doctest::Approx(4.0 * base.phi1));
    CHECK(doubled.phi2 == doctest::Approx(4.0 * base.phi2));
    CHECK(doubled.phi3 == doctest::Approx(4.0 * base.phi3));
    CHECK(doubled.phi4 == doctest::Approx(4.0 * base.phi4));
    CHECK(doubled.phi == doctest::Approx(4.0 * base.phi));
}

TEST_CASE("all four formulations agree on random quadruples") {
    Rng rng(21);
    for (int d : {2, 3, 4}) {
        for (int rep = 0; rep < 10; ++rep) {
            const MatrixQuadruple q = random_quadruple(rng, d);
            CHECK(four_way_dev(q) < 1e-12);
        }
    }
}

TEST_CASE("component breakdowns of the two closed forms agree") {
    Rng rng(22);
    const MatrixQuadruple q = random_quadruple(rng, 4);
    const PhiBreakdown a = phi_vector(q), b = phi_matrix(q);
    CHECK(a.phi1 == doctest::Approx(b.phi1));
    CHECK(a.phi2 == doctest::Approx(b.phi2));
    CHECK(a.phi3 == doctest::Approx(b.phi3));
    CHECK(a.phi4 == doctest::Approx(b.phi4));
}

TEST_CASE("unitary invariance") {
    Rng rng(23);
    const MatrixQuadruple q = random_quadruple(rng, 3);
    CHECK(check_unitary_invariance(q, CMat::Identity(3, 3), CMat::Identity(3, 3)) < 1e-14);
    CHECK(check_unitary_invariance(q, rng.unitary(3), rng.unitary(3)) < 1e-10);
    CHECK_THROWS_AS(check_unitary_invariance(q, 2.0 * CMat::Identity(3, 3), rng.unitary(3)),
                    NotUnitary);
}

TEST_CASE("dimension validation and the oracle cap") {
    const MatrixQuadruple bad{CMat::Identity(2, 2), CMat::Identity(2, 2),
                              CMat::Identity(3, 3), CMat::Identity(3, 3)};
    CHECK_THROWS_AS(validate_quadruple(bad), DimensionMismatch);
    Rng rng(24);
    CHECK_THROWS_AS(phi_oracle(random_quadruple(rng, 6)), DimensionTooLarge);
}

TEST_CASE("quadruple JSON round-trip") {
    Rng rng(25);
    const MatrixQuadruple q = random_quadruple(rng, 3);
    const MatrixQuadruple back = quadruple_from_json(quadruple_to_json(q));
    CHECK((back.X - q.X).norm() == 0.0);
    CHECK((back.Y - q.Y).norm() == 0.0);
    CHECK((back.U - q.U).norm() == 0.0);
    CHECK((back.V - q.V).norm() == 0.0);
    Json j = quadruple_to_json(q);
    j["d"] = 4;
    CHECK_THROWS_AS(quadruple_from_json(j), IoError);
}

}  // TEST_SUITE
