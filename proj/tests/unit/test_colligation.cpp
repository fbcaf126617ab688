#include <doctest.h>

#include <cmath>
#include <numbers>

#include "collig/colligation.hpp"
#include "support.hpp"

using namespace collig;
using testing::dist;
using testing::mat;

namespace {

const Colligation& swap_colligation() {
    static const Colligation g(1, 1, 1, mat(2, 2, {0, 1, 1, 0}));
    return g;
}

Colligation hadamard_colligation() {
    const double r = 1.0 / std::sqrt(2.0);
    return Colligation(1, 1, 1, mat(2, 2, {r, r, r, -r}));
}

ComplexMatrix theta_from_oracle(const Colligation& g, const ComplexMatrix& s) {
    ComplexMatrix out(g.alpha(), g.alpha());
    for (Index col = 0; col < g.alpha(); ++col) out.col(col) = theta_oracle(g, s, identity(g.alpha()).col(col));
    return out;
}

}  // namespace

TEST_CASE("constant colligation") {
    const Colligation g = Colligation::constant(mat(1, 1, {Complex(0, 1)}), 2);
    CHECK(g.j() == 0);
    Rng rng(1);
    CHECK(theta_eval(g, sample_ball_point(2, 0.7, rng))(0, 0) == Complex(0, 1));
    CHECK(theta_eval(g, haar_unitary(2, rng))(0, 0) == Complex(0, 1));
}

TEST_CASE("swap colligation realizes the identity function") {
    for (const Complex s : {Complex(0.5), Complex(-0.3, 0.4), Complex(0, 1)})
        CHECK(std::abs(theta_eval(swap_colligation(), mat(1, 1, {s}))(0, 0) - s) < 1e-15);
    CHECK(std::abs(theta_oracle(swap_colligation(), mat(1, 1, {0.5}), mat(1, 1, {1}))(0, 0) - 0.5) < 1e-15);
}

TEST_CASE("scalar Hadamard colligation") {
    const Colligation g = hadamard_colligation();
    const double r2 = std::sqrt(2.0);
    CHECK(std::abs(theta_eval(g, zeros(1, 1))(0, 0) - 1.0 / r2) < 1e-15);
    for (const Complex s : {Complex(0.2), Complex(-0.5, 0.1), Complex(0.3, -0.7)}) {
        const Complex expected = (1.0 + r2 * s) / (r2 + s);
        CHECK(std::abs(theta_eval(g, mat(1, 1, {s}))(0, 0) - expected) < 1e-14);
    }
    for (int k = 0; k < 12; ++k) {
        const Complex s = std::polar(1.0, 2.0 * std::numbers::pi * k / 12.0);
        CHECK(std::abs(theta_eval(g, mat(1, 1, {s}))(0, 0)) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("theta_eval agrees with the elimination oracle and the dense inverse") {
    Rng rng(2);
    for (Index alpha = 1; alpha <= 2; ++alpha)
        for (Index m = 1; m <= 2; ++m)
            for (Index j = 0; j <= 3; ++j) {
                const Colligation g = Colligation::random(alpha, m, j, rng);
                const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
                const ComplexMatrix theta = theta_eval(g, s);
                CHECK(dist(theta, theta_from_oracle(g, s)) < 1e-9 * static_cast<double>(g.size()));
                CHECK(dist(theta, testing::theta_by_inverse(g, s)) < 1e-9 * static_cast<double>(g.size()));
            }
}

TEST_CASE("theta_oracle with j = 0 returns a q") {
    Rng rng(3);
    const Colligation g = Colligation::random(2, 1, 0, rng);
    const ComplexMatrix q = ginibre(2, 1, rng);
    CHECK(dist(theta_oracle(g, zeros(1, 1), q), g.a() * q) < 1e-14);
}

TEST_CASE("characteristic function is inner") {
    Rng rng(4);
    const Colligation g = Colligation::random(3, 2, 2, rng);
    const InnerCertificate cert = certify_inner(g, 200, 5);
    CHECK(cert.max_unitarity_defect <= 1e-8);
    CHECK(cert.max_interior_norm_excess <= 1e-12);
    CHECK(cert.skipped_singular == 0);

    const InnerCertificate constant = certify_inner(Colligation::constant(identity(2), 1), 10, 6);
    CHECK(constant.max_unitarity_defect <= 1e-9);
    CHECK(constant.max_interior_norm_excess <= 1e-9);
    const InnerCertificate swap = certify_inner(swap_colligation(), 10, 7);
    CHECK(swap.max_unitarity_defect <= 1e-9);
    CHECK(swap.max_interior_norm_excess <= 1e-9);
}

TEST_CASE("conjugation by U(j) leaves theta unchanged") {
    Rng rng(8);
    const Colligation g = Colligation::random(2, 2, 3, rng);
    CHECK(dist(conjugate(g, identity(3)).matrix(), g.matrix()) < 1e-15);
    const Colligation h = conjugate(g, haar_unitary(3, rng));
    for (int p = 0; p < 10; ++p) {
        const ComplexMatrix s = sample_ball_point(2, 0.9, rng);
        CHECK(dist(theta_eval(h, s), theta_eval(g, s)) < 1e-12);
    }
    const Colligation c = Colligation::constant(identity(2), 1);
    CHECK(dist(conjugate(c, ComplexMatrix(0, 0)).matrix(), c.matrix()) == 0.0);
}

TEST_CASE("colligation validation") {
    CHECK_THROWS_AS(Colligation(1, 1, 1, mat(2, 2, {1, 0, 0, 0.5})), InvariantViolation);
    CHECK_THROWS_AS(Colligation(1, 2, 1, identity(2)), DimensionMismatch);
    CHECK_THROWS_AS(theta_eval(swap_colligation(), mat(1, 1, {1.5})), NotInBall);
    CHECK_THROWS_AS(theta_eval(swap_colligation(), zeros(2, 2)), DimensionMismatch);
}

TEST_CASE("pivot singularity is detected") {
    CHECK(pivot_regular(swap_colligation(), mat(1, 1, {1})));
    const Colligation h = Colligation::constant(identity(1), 1);
    CHECK(pivot_regular(h, mat(1, 1, {1})));
    // d = 1 is a decoupled internal channel: 1 - d s vanishes at s = 1.
    const Colligation decoupled(1, 1, 1, identity(2));
    CHECK(pivot_regular(decoupled, mat(1, 1, {0.5})));
    CHECK_FALSE(pivot_regular(decoupled, mat(1, 1, {1})));
    CHECK_THROWS_AS(theta_eval(decoupled, mat(1, 1, {1})), SingularPivot);
    CHECK_THROWS_AS(theta_oracle(decoupled, mat(1, 1, {1}), mat(1, 1, {1})), SingularSystem);
}
