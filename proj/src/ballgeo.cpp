#include "collig/ballgeo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace collig {

namespace {

// Validation tolerance for matrices whose entries grow like ||h||; rounding in
// h J h* scales with ||h||^2.
double scaled_atol(const ToleranceConfig& tol, const ComplexMatrix& h) {
    const double norm = std::max(1.0, op_norm(h));
    return tol.atol * static_cast<double>(std::max<Index>(1, h.rows())) * norm * norm;
}

void require_in_closed_ball(const ComplexMatrix& u, const ToleranceConfig& tol, const char* what) {
    if (u.rows() != u.cols()) throw DimensionMismatch(std::string(what) + ": point must be square");
    if (op_norm(u) > 1.0 + tol.atol) throw NotInBall(std::string(what) + ": point has operator norm > 1");
}

}  // namespace

KSMorphism::KSMorphism(Index n, Index m, ComplexMatrix zeta, const ToleranceConfig& tol)
    : n_(n), m_(m), zeta_(std::move(zeta)) {
    if (n < 0 || m < 0 || zeta_.rows() != n + m || zeta_.cols() != n + m)
        throw DimensionMismatch("KSMorphism: matrix must have size n + m = " + std::to_string(n + m));
    if (!all_finite(zeta_)) throw InvalidArgument("KSMorphism: non-finite entries");
    if (!is_unitary(zeta_, tol)) throw InvariantViolation("KSMorphism: matrix is not unitary");
}

ComplexMatrix mobius(const ComplexMatrix& g, const ComplexMatrix& z, const ToleranceConfig& tol) {
    const Index n = z.rows();
    require_in_closed_ball(z, tol, "mobius");
    if (g.rows() != 2 * n || g.cols() != 2 * n) throw DimensionMismatch("mobius: g must be 2n x 2n");
    if (op_norm(g * pseudo_unitary_form(n) * g.adjoint() - pseudo_unitary_form(n)) > scaled_atol(tol, g))
        throw InvalidArgument("mobius: g is not in U(n,n)");
    const auto A = g.topLeftCorner(n, n);
    const auto B = g.topRightCorner(n, n);
    const auto C = g.bottomLeftCorner(n, n);
    const auto D = g.bottomRightCorner(n, n);
    return guarded_solve(A + z * C, B + z * D, tol, "mobius");
}

ComplexMatrix ks_map(const KSMorphism& zeta, const ComplexMatrix& u, const ToleranceConfig& tol) {
    if (u.rows() != zeta.m()) throw DimensionMismatch("ks_map: point size differs from source size");
    require_in_closed_ball(u, tol, "ks_map");
    const ComplexMatrix d = zeta.d();
    const ComplexMatrix pivot = identity(zeta.m()) - d * u;
    return zeta.a() + zeta.b() * u * guarded_solve(pivot, zeta.c(), tol, "ks_map");
}

KSMorphism circledast(const KSMorphism& zeta, const KSMorphism& upsilon, const ToleranceConfig& tol) {
    if (upsilon.n() != zeta.m())
        throw DimensionMismatch("circledast: upsilon's target size must equal zeta's source size");
    const Index n = zeta.n(), m = zeta.m(), k = upsilon.m();
    const ComplexMatrix a = zeta.a(), b = zeta.b(), c = zeta.c(), d = zeta.d();
    const ComplexMatrix p = upsilon.a(), q = upsilon.b(), r = upsilon.c(), t = upsilon.d();

    const ComplexMatrix inv_pd = guarded_solve(identity(m) - p * d, identity(m), tol, "circledast");
    const ComplexMatrix inv_dp = guarded_solve(identity(m) - d * p, identity(m), tol, "circledast");

    ComplexMatrix out(n + k, n + k);
    out.topLeftCorner(n, n) = a + b * inv_pd * p * c;
    out.topRightCorner(n, k) = b * inv_pd * q;
    out.bottomLeftCorner(k, n) = r * inv_dp * c;
    out.bottomRightCorner(k, k) = t + r * d * inv_pd * q;
    try {
        return KSMorphism(n, k, std::move(out), tol);
    } catch (const InvariantViolation&) {
        throw SingularPivot("circledast: result lost unitarity near the discontinuity set");
    }
}

ComplexMatrix transvection_to(const ComplexMatrix& s0, const ToleranceConfig& tol) {
    if (s0.rows() != s0.cols()) throw DimensionMismatch("transvection_to: point must be square");
    const Index n = s0.rows();
    if (n == 0) return ComplexMatrix(0, 0);
    if (op_norm(s0) >= 1.0 - tol.atol) throw NotInterior("transvection_to: point is not inside the ball");

    const ComplexMatrix p = hermitian_inverse_sqrt(identity(n) - s0 * s0.adjoint());
    const ComplexMatrix q = hermitian_inverse_sqrt(identity(n) - s0.adjoint() * s0);
    ComplexMatrix h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = p;
    h.topRightCorner(n, n) = p * s0;
    h.bottomLeftCorner(n, n) = q * s0.adjoint();
    h.bottomRightCorner(n, n) = q;

    const ComplexMatrix j = pseudo_unitary_form(n);
    const double slack = scaled_atol(tol, h);
    if (op_norm(h * j * h.adjoint() - j) > slack)
        throw InvariantViolation("transvection_to: constructed matrix is not pseudo-unitary");
    if (op_norm(mobius(h, zeros(n, n), tol) - s0) > slack)
        throw InvariantViolation("transvection_to: constructed matrix does not send 0 to s0");
    return h;
}

ComplexMatrix random_pseudo_unitary(Index n, Rng& rng, double radius) {
    const ComplexMatrix left = block_diag(haar_unitary(n, rng), haar_unitary(n, rng));
    const ComplexMatrix right = block_diag(haar_unitary(n, rng), haar_unitary(n, rng));
    return left * transvection_to(sample_ball_point(n, radius, rng)) * right;
}

KSMorphism mobius_as_ks(const ComplexMatrix& h, const ToleranceConfig& tol) {
    if (h.rows() != h.cols() || h.rows() % 2 != 0) throw DimensionMismatch("mobius_as_ks: h must be 2n x 2n");
    const Index n = h.rows() / 2;
    if (op_norm(h * pseudo_unitary_form(n) * h.adjoint() - pseudo_unitary_form(n)) > scaled_atol(tol, h))
        throw InvalidArgument("mobius_as_ks: h is not in U(n,n)");
    const ComplexMatrix A = h.topLeftCorner(n, n), B = h.topRightCorner(n, n);
    const ComplexMatrix C = h.bottomLeftCorner(n, n), D = h.bottomRightCorner(n, n);
    const ComplexMatrix a_inv = guarded_solve(A, identity(n), tol, "mobius_as_ks");

    ComplexMatrix m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a_inv * B;
    m.topRightCorner(n, n) = a_inv;
    m.bottomLeftCorner(n, n) = D - C * a_inv * B;
    m.bottomRightCorner(n, n) = -C * a_inv;

    const double slack = scaled_atol(tol, h);
    if (unitarity_defect(m) > slack) throw InvariantViolation("mobius_as_ks: assembled matrix is not unitary");
    // Loosened constructor check: the defect was validated against the scaled slack above.
    KSMorphism ks(n, n, std::move(m), ToleranceConfig{std::max(tol.atol, slack), tol.cond_cap});

    const ComplexMatrix probe = 0.5 * identity(n);
    if (op_norm(ks_map(ks, probe, tol) - mobius(h, probe, tol)) > slack)
        throw InvariantViolation("mobius_as_ks: assembled map disagrees with the linear-fractional action");
    return ks;
}

BoundaryStratum stratum(const ComplexMatrix& u, const ToleranceConfig& tol) {
    require_in_closed_ball(u, tol, "stratum");
    const Eigen::VectorXd s = singular_values(u);
    const double band = 100.0 * tol.atol;
    Index k = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (1.0 - s(i) <= band) ++k;
    return BoundaryStratum{u.rows(), k, u};
}

CanonicalForm canonical_component_form(const ComplexMatrix& u, const ToleranceConfig& tol) {
    const BoundaryStratum st = stratum(u, tol);
    const Index n = u.rows();
    const Index k = st.defect_rank;
    if (k == 0) throw NotOnBoundary("canonical_component_form: point is interior");
    const double band = 100.0 * tol.atol;

    // Points already diagonal on a coordinate subset only need a permutation.
    std::vector<Index> unit, rest;
    for (Index i = 0; i < n; ++i) {
        bool is_unit = std::abs(u(i, i) - 1.0) <= band;
        for (Index c = 0; c < n && is_unit; ++c)
            if (c != i && (std::abs(u(i, c)) > band || std::abs(u(c, i)) > band)) is_unit = false;
        (is_unit ? unit : rest).push_back(i);
    }

    ComplexMatrix h;
    if (static_cast<Index>(unit.size()) == k) {
        std::vector<Index> perm(static_cast<std::size_t>(n));
        Index pos = 0;
        for (Index i : rest) perm[static_cast<std::size_t>(i)] = pos++;
        for (Index i : unit) perm[static_cast<std::size_t>(i)] = pos++;
        // P e_old = e_new, so P^T u P lists rest first, unit indices last.
        std::vector<Index> inverse(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
        const ComplexMatrix p = permutation_matrix(inverse);
        h = block_diag(p, p);
    } else {
        Eigen::JacobiSVD<ComplexMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
        std::vector<Index> order(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = (i < n - k) ? k + i : i - (n - k);
        const ComplexMatrix p = permutation_matrix(order);
        h = block_diag(svd.matrixU() * p, svd.matrixV() * p);
    }

    ComplexMatrix reduced = mobius(h, u, tol);
    const Index free = n - k;
    const double slack = band * static_cast<double>(n);
    const bool identity_tail = op_norm(reduced.bottomRightCorner(k, k) - identity(k)) <= slack;
    const bool split = op_norm(reduced.topRightCorner(free, k)) <= slack &&
                       op_norm(reduced.bottomLeftCorner(k, free)) <= slack;
    const bool interior_head = free == 0 || op_norm(reduced.topLeftCorner(free, free)) < 1.0 - band;
    if (!identity_tail || !split || !interior_head)
        throw InvariantViolation("canonical_component_form: reduction failed validation");
    return CanonicalForm{std::move(h), k, std::move(reduced)};
}

}  // namespace collig
