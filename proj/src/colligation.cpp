#include "collig/colligation.hpp"

#include <algorithm>
#include <string>

namespace collig {

namespace {

void require_point(const Colligation& g, const ComplexMatrix& s, const ToleranceConfig& tol, const char* what) {
    if (s.rows() != g.m() || s.cols() != g.m())
        throw DimensionMismatch(std::string(what) + ": S must be " + std::to_string(g.m()) + "x" +
                                std::to_string(g.m()));
    if (op_norm(s) > 1.0 + tol.atol) throw NotInBall(std::string(what) + ": S has operator norm > 1");
}

}  // namespace

Colligation::Colligation(Index alpha, Index m, Index j, ComplexMatrix u, const ToleranceConfig& tol)
    : alpha_(alpha), m_(m), j_(j), u_(std::move(u)) {
    if (alpha < 0 || m < 0 || j < 0) throw InvalidArgument("Colligation: negative shape");
    if (u_.rows() != size() || u_.cols() != size())
        throw DimensionMismatch("Colligation: matrix must have size alpha + m*j = " + std::to_string(size()));
    if (!all_finite(u_)) throw InvalidArgument("Colligation: non-finite entries");
    if (!is_unitary(u_, tol)) throw InvariantViolation("Colligation: matrix is not unitary");
}

Colligation Colligation::constant(const ComplexMatrix& a, Index m, const ToleranceConfig& tol) {
    return Colligation(a.rows(), m, 0, a, tol);
}

Colligation Colligation::random(Index alpha, Index m, Index j, Rng& rng) {
    return Colligation(alpha, m, j, haar_unitary(alpha + m * j, rng));
}

KSMorphism Colligation::as_ks(const ToleranceConfig& tol) const {
    return KSMorphism(alpha_, internal_dim(), u_, tol);
}

ComplexMatrix theta_eval(const Colligation& g, const ComplexMatrix& s, const ToleranceConfig& tol) {
    require_point(g, s, tol, "theta_eval");
    if (g.j() == 0) return g.a();
    const ComplexMatrix x = kron(identity(g.j()), s);
    const ComplexMatrix pivot = identity(g.internal_dim()) - g.d() * x;
    return g.a() + g.b() * x * guarded_solve(pivot, g.c(), tol, "theta_eval");
}

bool pivot_regular(const Colligation& g, const ComplexMatrix& s, const ToleranceConfig& tol) {
    if (g.j() == 0) return true;
    const ComplexMatrix x = kron(identity(g.j()), s);
    const ComplexMatrix pivot = identity(g.internal_dim()) - g.d() * x;
    return lu_rcond(pivot.partialPivLu()) * tol.cond_cap >= 1.0;
}

ComplexMatrix theta_oracle(const Colligation& g, const ComplexMatrix& s, const ComplexMatrix& q,
                           const ToleranceConfig& tol) {
    require_point(g, s, tol, "theta_oracle");
    if (q.rows() != g.alpha()) throw DimensionMismatch("theta_oracle: q must have alpha rows");
    const Index alpha = g.alpha(), mj = g.internal_dim();
    const ComplexMatrix& u = g.matrix();

    // Unknowns (p, x_1..x_m). The relation (p; x) = g (q; y) with y_mu = sum_nu s_{mu nu} x_nu
    // becomes   p - b y(x) = a q,   x - d y(x) = c q.
    ComplexMatrix y_of_x = zeros(mj, mj);
    for (Index mu = 0; mu < g.m(); ++mu)
        for (Index nu = 0; nu < g.m(); ++nu)
            for (Index r = 0; r < g.j(); ++r) y_of_x(mu * g.j() + r, nu * g.j() + r) = s(mu, nu);

    ComplexMatrix system = identity(alpha + mj);
    system.topRightCorner(alpha, mj) -= u.topRightCorner(alpha, mj) * y_of_x;
    system.bottomRightCorner(mj, mj) -= u.bottomRightCorner(mj, mj) * y_of_x;
    const ComplexMatrix rhs = u.leftCols(alpha) * q;

    const Eigen::PartialPivLU<ComplexMatrix> lu(system);
    if (!(lu_rcond(lu) * tol.cond_cap >= 1.0)) throw SingularSystem("theta_oracle: eliminated system is singular");
    const ComplexMatrix solution = lu.solve(rhs);
    return solution.topRows(alpha);
}

Colligation conjugate(const Colligation& g, const ComplexMatrix& t, const ToleranceConfig& tol) {
    if (t.rows() != g.j() || t.cols() != g.j()) throw DimensionMismatch("conjugate: T must be j x j");
    if (!is_unitary(t, tol)) throw InvalidArgument("conjugate: T is not unitary");
    if (g.j() == 0) return g;
    const ComplexMatrix h = block_diag(identity(g.alpha()), kron(t, identity(g.m())));
    return Colligation(g.alpha(), g.m(), g.j(), h * g.matrix() * h.adjoint(), tol);
}

InnerCertificate certify_inner(const Colligation& g, std::size_t trials, std::uint64_t seed,
                               const ToleranceConfig& tol) {
    if (trials == 0) throw InvalidArgument("certify_inner: trials must be positive");
    Rng rng(seed);
    InnerCertificate cert;
    cert.trials = trials;
    const ComplexMatrix one = identity(g.alpha());
    for (std::size_t t = 0; t < trials; ++t) {
        const ComplexMatrix s = haar_unitary(g.m(), rng);
        try {
            const ComplexMatrix theta = theta_eval(g, s, tol);
            cert.max_unitarity_defect =
                std::max(cert.max_unitarity_defect, op_norm(theta.adjoint() * theta - one));
        } catch (const SingularPivot&) {
            ++cert.skipped_singular;
        }
    }
    for (std::size_t t = 0; t < trials; ++t) {
        const ComplexMatrix s = sample_ball_point(g.m(), 0.99, rng);
        try {
            const ComplexMatrix theta = theta_eval(g, s, tol);
            cert.max_interior_norm_excess = std::max(cert.max_interior_norm_excess, op_norm(theta) - 1.0);
        } catch (const SingularPivot&) {
            ++cert.skipped_singular;
        }
    }
    return cert;
}

}  // namespace collig
