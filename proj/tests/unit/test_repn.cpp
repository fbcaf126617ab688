#include <doctest.h>

#include <cmath>

#include "collig/calculus.hpp"
#include "collig/repn.hpp"
#include "support.hpp"

using namespace collig;
using testing::dist;
using testing::mat;

TEST_CASE("signature validation and wedge factors") {
    CHECK_THROWS_AS(Signature({1, 2}), InvalidArgument);
    CHECK_THROWS_AS(Signature({1, -1}), InvalidArgument);
    CHECK(Signature({3, 1, 0}).boxes() == 4);
    CHECK(Signature({3, 1, 0}).wedge_factors() == std::vector<Index>{1, 1, 2});
    CHECK(Signature({2, 2}).wedge_factors() == std::vector<Index>{2, 2});
}

TEST_CASE("k_subsets are lexicographic") {
    const auto s = k_subsets(4, 2);
    REQUIRE(s.size() == 6);
    CHECK(s[0] == std::vector<Index>{0, 1});
    CHECK(s[1] == std::vector<Index>{0, 2});
    CHECK(s[5] == std::vector<Index>{2, 3});
    CHECK(binomial(6, 3) == 20);
}

TEST_CASE("wedge_rep") {
    Rng rng(1);
    const ComplexMatrix g = ginibre(3, 3, rng);
    CHECK(dist(wedge_rep(1, g), g) == 0.0);
    CHECK(std::abs(wedge_rep(3, g)(0, 0) - g.determinant()) < 1e-13);
    // 2x2 minor by hand for rows {0,2}, cols {1,2}
    const Complex minor = g(0, 1) * g(2, 2) - g(0, 2) * g(2, 1);
    CHECK(std::abs(wedge_rep(2, g)(1, 2) - minor) < 1e-14);
}

TEST_CASE("Cauchy-Binet multiplicativity") {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = ginibre(4, 4, rng), b = ginibre(4, 4, rng);
        CHECK(dist(wedge_rep(2, a * b), wedge_rep(2, a) * wedge_rep(2, b)) < 1e-9);
    }
}

TEST_CASE("weyl_dim") {
    CHECK(weyl_dim(Signature({0, 0, 0})) == 1);
    CHECK(weyl_dim(Signature({1, 0, 0, 0})) == 4);
    CHECK(weyl_dim(Signature({2, 1, 0})) == 8);
    CHECK(weyl_dim(Signature({2, 0})) == 3);
    CHECK(weyl_dim(Signature({4, 2, 1})) == 15);
}

TEST_CASE("build_irrep dimensions") {
    for (Index n = 2; n <= 3; ++n)
        for (const Signature& sig : signatures_up_to(n, 6)) {
            const PolyRep rep = build_irrep(sig, 17);
            CHECK(rep.dim == static_cast<Index>(weyl_dim(sig)));
        }
}

TEST_CASE("characters") {
    Rng rng(3);
    SUBCASE("defining representation") {
        const PolyRep rep = build_irrep(Signature({1, 0, 0}), 4);
        const ComplexMatrix g = haar_unitary(3, rng);
        CHECK(std::abs(rep_apply(rep, g).trace() - g.trace()) < 1e-12);
    }
    SUBCASE("second exterior power") {
        const PolyRep rep = build_irrep(Signature({1, 1, 0, 0}), 5);
        CHECK(rep.dim == 6);
        const ComplexMatrix g = haar_unitary(4, rng);
        CHECK(std::abs(rep_apply(rep, g).trace() - wedge_rep(2, g).trace()) < 1e-12);
    }
    SUBCASE("symmetric square") {
        const PolyRep rep = build_irrep(Signature({2, 0}), 6);
        CHECK(rep.dim == 3);
        for (int t = 0; t < 5; ++t) {
            const Complex x = std::polar(1.0, rng.uniform() * 6.0), y = std::polar(1.0, rng.uniform() * 6.0);
            CHECK(std::abs(rep_apply(rep, mat(2, 2, {x, 0, 0, y})).trace() - (x * x + x * y + y * y)) < 1e-12);
        }
    }
}

TEST_CASE("rep_apply is a homomorphism") {
    Rng rng(4);
    const PolyRep rep = build_irrep(Signature({2, 1, 0}), 7);
    CHECK(dist(rep_apply(rep, identity(3)), identity(8)) < 1e-12);
    const ComplexMatrix a = ginibre(3, 3, rng), b = ginibre(3, 3, rng);
    CHECK(dist(rep_apply(rep, a * b), rep_apply(rep, a) * rep_apply(rep, b)) < 1e-10);

    const PolyRep det2 = build_irrep(Signature({2, 2}), 8);
    const ComplexMatrix u = haar_unitary(2, rng);
    CHECK(std::abs(rep_apply(det2, u)(0, 0) - u.determinant() * u.determinant()) < 1e-12);
}

TEST_CASE("rep_compose_colligation") {
    Rng rng(5);
    SUBCASE("defining representation up to basis change") {
        const Colligation f = Colligation::random(2, 1, 2, rng);
        const PolyRep rep = build_irrep(Signature({1, 0}), 9);
        const Colligation c = rep_compose_colligation(rep, f);
        for (int p = 0; p < 5; ++p) {
            const ComplexMatrix s = sample_ball_point(1, 0.9, rng);
            CHECK(dist(theta_eval(c, s), rep.embed.adjoint() * theta_eval(f, s) * rep.embed) < 1e-12);
        }
    }
    SUBCASE("determinant on a scalar function") {
        const Colligation f = Colligation::random(1, 2, 1, rng);
        const Colligation c = rep_compose_colligation(build_irrep(Signature({1}), 10), f);
        const ComplexMatrix s = sample_ball_point(2, 0.9, rng);
        CHECK(dist(theta_eval(c, s), theta_eval(f, s)) < 1e-12);
    }
    SUBCASE("determinant of a 2x2 inner function") {
        const Colligation f = Colligation::random(2, 1, 1, rng);
        const Colligation c = rep_compose_colligation(build_irrep(Signature({1, 1}), 11), f);
        CHECK(c.alpha() == 1);
        for (int p = 0; p < 20; ++p) {
            const ComplexMatrix s = sample_ball_point(1, 0.95, rng);
            CHECK(std::abs(theta_eval(c, s)(0, 0) - theta_eval(f, s).determinant()) < 1e-10);
        }
        CHECK(certify_inner(c, 50, 12).max_unitarity_defect < 1e-9);
    }
    SUBCASE("trivial signature") {
        const Colligation f = Colligation::random(2, 1, 1, rng);
        const Colligation c = rep_compose_colligation(build_irrep(Signature({0, 0}), 13), f);
        CHECK(dist(theta_eval(c, zeros(1, 1)), identity(1)) < 1e-15);
    }
}
