#pragma once

// Operations on colligations that realize operations on their characteristic
// functions. Every contract is pointwise on Theta; the colligation matrices
// themselves are only defined up to U(j)-conjugacy.

#include <optional>
#include <span>
#include <utility>

#include "collig/colligation.hpp"

namespace collig {

struct SplitSpec {
    Index alpha1 = 0;
    Index alpha2 = 0;
    Complex lambda_twist{-1.0, 0.0};

    void validate() const;
};

struct SplitResult {
    Colligation first;
    Colligation second;
    bool first_twisted = false;   // pivot 1 - F2 was singular; twisted matrix used
    bool second_twisted = false;
};

/// Boundary component of the closed ball of size m: the image of
/// u -> mobius(reducer, diag(u, 1_k)) for u in B_{m-k}.
struct BoundaryComponent {
    Index k = 0;
    ComplexMatrix reducer;  // element of U(m,m); identity for the canonical component

    static BoundaryComponent canonical(Index m, Index k);
    ComplexMatrix point(const ComplexMatrix& u, const ToleranceConfig& tol = {}) const;
};

struct CorestrictResult {
    Colligation moving;       // characteristic function R with h-image diag(R, 1_k)
    ComplexMatrix canonicalizer;  // h in U(alpha, alpha): mobius(h, F(S)) == diag(R(S), 1_k)
};

/// Theta[direct_sum(g, h); S] == Theta[g; S] (+) Theta[h; S].
Colligation direct_sum(const Colligation& g, const Colligation& h, const ToleranceConfig& tol = {});

/// Theta[odot_product(g, h); S] == Theta[g; S] * Theta[h; S].
Colligation odot_product(const Colligation& g, const Colligation& h, const ToleranceConfig& tol = {});

/// Theta[tensor_product(g, h); S] == kron(Theta[g; S], Theta[h; S]).
Colligation tensor_product(const Colligation& g, const Colligation& h, const ToleranceConfig& tol = {});

/// Conjugates the outer block: Theta[result; S] == w * Theta[g; S] * w^*, w unitary.
Colligation rotate_outer(const Colligation& g, const ComplexMatrix& w, const ToleranceConfig& tol = {});

/// Theta[compose(G, F); S] == Theta[G; Theta[F; S]]. G.m() must equal F.alpha().
/// When det(1 - d kron(1_j, p)) is singular, retries through the probe point
/// (default 0) by conjugating F with a transvection.
Colligation compose(const Colligation& outer, const Colligation& inner,
                    const std::optional<ComplexMatrix>& probe = std::nullopt, const ToleranceConfig& tol = {});

/// Colligation of S -> Theta[F; mobius(h, S)], h in U(m,m).
Colligation aut_precompose(const Colligation& f, const ComplexMatrix& h, const ToleranceConfig& tol = {});
/// Colligation of S -> mobius(h, Theta[F; S]), h in U(alpha,alpha).
Colligation aut_postcompose(const Colligation& f, const ComplexMatrix& h, const ToleranceConfig& tol = {});

/// The j = 1 colligation of the Krein-Shmul'yan map with matrix zeta.
Colligation ks_colligation(const KSMorphism& zeta, const ToleranceConfig& tol = {});

/// Deterministic interior probe points used for block-structure checks.
std::vector<ComplexMatrix> probe_points(Index m, std::size_t count = 8, std::uint64_t seed = 0x5eed);

/// Splits a block-diagonal characteristic function diag(F1, F2) into colligations of F1 and F2.
SplitResult split_off(const Colligation& f, const SplitSpec& spec, const ToleranceConfig& tol = {});

/// Colligation over B_{m-k} of u -> Theta[F; component.point(u)]; probe is a point of the
/// component where the pivot is regular.
Colligation restrict_to_component(const Colligation& f, const BoundaryComponent& component,
                                  const std::optional<ComplexMatrix>& probe = std::nullopt,
                                  const ToleranceConfig& tol = {});

/// For F whose image lies in a boundary component of corank k, returns the colligation
/// of the moving block after canonicalization.
CorestrictResult corestrict_from_component(const Colligation& f, Index k, const ToleranceConfig& tol = {});

}  // namespace collig
