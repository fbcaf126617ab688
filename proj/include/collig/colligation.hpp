#pragma once

#include <cstdint>

#include "collig/ballgeo.hpp"
#include "collig/matcore.hpp"

namespace collig {

/// A unitary g of size alpha + m*j, written in blocks
///
///     g = ( a  b )    a: alpha x alpha,  b: alpha x mj,
///         ( c  d )    c: mj x alpha,     d: mj x mj,
///
/// where the mj-dimensional part is m consecutive blocks of size j. It stands
/// for its class under conjugation by diag(1_alpha, T, ..., T), T in U(j); two
/// colligations are compared only through their characteristic functions.
class Colligation {
public:
    Colligation(Index alpha, Index m, Index j, ComplexMatrix u, const ToleranceConfig& tol = {});

    /// j = 0 colligation with constant characteristic function a.
    static Colligation constant(const ComplexMatrix& a, Index m, const ToleranceConfig& tol = {});
    /// Haar-random colligation of the given shape.
    static Colligation random(Index alpha, Index m, Index j, Rng& rng);

    Index alpha() const noexcept { return alpha_; }
    Index m() const noexcept { return m_; }
    Index j() const noexcept { return j_; }
    Index internal_dim() const noexcept { return m_ * j_; }
    Index size() const noexcept { return alpha_ + m_ * j_; }
    const ComplexMatrix& matrix() const noexcept { return u_; }

    ComplexMatrix a() const { return u_.topLeftCorner(alpha_, alpha_); }
    ComplexMatrix b() const { return u_.topRightCorner(alpha_, internal_dim()); }
    ComplexMatrix c() const { return u_.bottomLeftCorner(internal_dim(), alpha_); }
    ComplexMatrix d() const { return u_.bottomRightCorner(internal_dim(), internal_dim()); }

    /// The colligation viewed as a Krein-Shmul'yan map from B_{mj} to B_alpha.
    KSMorphism as_ks(const ToleranceConfig& tol = {}) const;

private:
    Index alpha_;
    Index m_;
    Index j_;
    ComplexMatrix u_;
};

struct InnerCertificate {
    std::size_t trials = 0;
    double max_unitarity_defect = 0.0;       // max ||Theta* Theta - 1|| over unitary S
    double max_interior_norm_excess = 0.0;   // max (||Theta|| - 1)_+ over interior S
    std::size_t skipped_singular = 0;
};

/// Theta[g; S] = a + b X (1 - d X)^{-1} c with X = kron(1_j, S).
ComplexMatrix theta_eval(const Colligation& g, const ComplexMatrix& s, const ToleranceConfig& tol = {});

/// Independent route: solves the joint linear system for (p, x_1, ..., x_m) given q.
ComplexMatrix theta_oracle(const Colligation& g, const ComplexMatrix& s, const ComplexMatrix& q,
                           const ToleranceConfig& tol = {});

/// h g h^{-1} with h = diag(1_alpha, T, ..., T) (m copies of T).
Colligation conjugate(const Colligation& g, const ComplexMatrix& t, const ToleranceConfig& tol = {});

/// Samples `trials` Haar-unitary and `trials` interior points; singular pivots are skipped and counted.
InnerCertificate certify_inner(const Colligation& g, std::size_t trials, std::uint64_t seed,
                               const ToleranceConfig& tol = {});

/// det(1 - d kron(1_j, s)) away from zero in the cond_cap sense.
bool pivot_regular(const Colligation& g, const ComplexMatrix& s, const ToleranceConfig& tol = {});

}  // namespace collig
