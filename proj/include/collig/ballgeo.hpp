#pragma once

// Geometry of the matrix ball B_n = {z : ||z|| < 1}: the linear-fractional
// action of U(n,n), Krein-Shmul'yan maps between balls and their
// star-product composition, and the classification of boundary strata.

#include <utility>

#include "collig/matcore.hpp"

namespace collig {

/// A unitary zeta = (a b; c d) of size n + m, read as a map from the closed ball of
/// size m to the closed ball of size n: u -> a + b u (1 - d u)^{-1} c.
class KSMorphism {
public:
    KSMorphism(Index n, Index m, ComplexMatrix zeta, const ToleranceConfig& tol = {});

    Index n() const noexcept { return n_; }
    Index m() const noexcept { return m_; }
    const ComplexMatrix& zeta() const noexcept { return zeta_; }

    ComplexMatrix a() const { return zeta_.topLeftCorner(n_, n_); }
    ComplexMatrix b() const { return zeta_.topRightCorner(n_, m_); }
    ComplexMatrix c() const { return zeta_.bottomLeftCorner(m_, n_); }
    ComplexMatrix d() const { return zeta_.bottomRightCorner(m_, m_); }

private:
    Index n_;
    Index m_;
    ComplexMatrix zeta_;
};

struct BoundaryStratum {
    Index ambient = 0;
    Index defect_rank = 0;  // number of unit singular values; 0 = interior, ambient = Shilov boundary
    ComplexMatrix witness;

    bool interior() const noexcept { return defect_rank == 0; }
    bool shilov() const noexcept { return defect_rank == ambient; }
};

/// gamma[g; z] = (A + zC)^{-1} (B + zD). This is a right action:
/// mobius(g, mobius(h, z)) == mobius(h * g, z).
ComplexMatrix mobius(const ComplexMatrix& g, const ComplexMatrix& z, const ToleranceConfig& tol = {});

ComplexMatrix ks_map(const KSMorphism& zeta, const ComplexMatrix& u, const ToleranceConfig& tol = {});

/// Star product: ks_map(circledast(zeta, upsilon), u) == ks_map(zeta, ks_map(upsilon, u)).
/// upsilon maps the ball of size k into the source ball of zeta (upsilon.n() == zeta.m()).
KSMorphism circledast(const KSMorphism& zeta, const KSMorphism& upsilon, const ToleranceConfig& tol = {});

/// Element h of U(n,n) with mobius(h, 0) == s0.
ComplexMatrix transvection_to(const ComplexMatrix& s0, const ToleranceConfig& tol = {});

/// Random element of U(n,n): unitary block rotations around a transvection to a
/// ball point of norm at most radius.
ComplexMatrix random_pseudo_unitary(Index n, Rng& rng, double radius = 0.9);

/// Unitary M of size 2n with ks_map(M, u) == mobius(h, u) on the ball.
KSMorphism mobius_as_ks(const ComplexMatrix& h, const ToleranceConfig& tol = {});

/// A singular value counts as 1 when 1 - sigma <= 100 * atol.
BoundaryStratum stratum(const ComplexMatrix& u, const ToleranceConfig& tol = {});

struct CanonicalForm {
    ComplexMatrix h;          // block-diagonal element of U(n,n)
    Index k = 0;              // size of the trailing identity block
    ComplexMatrix reduced;    // mobius(h, u), equal to diag(u', 1_k)
};

/// Moves a boundary point into the canonical component diag(u', 1_k), ||u'|| < 1.
CanonicalForm canonical_component_form(const ComplexMatrix& u, const ToleranceConfig& tol = {});

}  // namespace collig
