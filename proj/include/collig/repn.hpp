#pragma once

// Polynomial representations of GL(n): exterior powers by minors and the
// irreducible with a given signature, realized as the cyclic span of the
// highest-weight vector inside a tensor product of exterior powers.

#include <cstdint>
#include <vector>

#include "collig/colligation.hpp"

namespace collig {

class Signature {
public:
    /// Throws InvalidArgument unless parts are weakly decreasing and nonnegative.
    explicit Signature(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    Index n() const noexcept { return static_cast<Index>(parts_.size()); }
    int boxes() const noexcept;

    /// Exterior-power degrees of the ambient tensor factors, in tensor order:
    /// k repeated (m_k - m_{k+1}) times for k < n, then n repeated m_n times.
    std::vector<Index> wedge_factors() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<int> parts_;
};

/// All signatures of length n with at most max_boxes boxes.
std::vector<Signature> signatures_up_to(Index n, int max_boxes);

std::uint64_t binomial(Index n, Index k);

/// Lexicographically ordered k-subsets of {0, ..., n-1}.
std::vector<std::vector<Index>> k_subsets(Index n, Index k);

/// Matrix of g on the k-th exterior power: entry (I, J) is det g[I, J].
ComplexMatrix wedge_rep(Index k, const ComplexMatrix& g);

/// Weyl dimension formula: prod_{i<j} (m_i - m_j + j - i) / (j - i).
std::uint64_t weyl_dim(const Signature& sig);

struct PolyRep {
    Signature signature;
    Index n = 0;
    Index dim = 0;
    Index ambient_dim = 0;
    ComplexMatrix embed;  // ambient_dim x dim isometry onto the invariant subspace
};

/// Action of g on the ambient tensor product of exterior powers.
ComplexMatrix ambient_action(const Signature& sig, const ComplexMatrix& g);

/// Throws DimensionMismatch when the numerical rank of the sampled orbit differs from weyl_dim.
PolyRep build_irrep(const Signature& sig, std::size_t samples, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Defaults to 4 * weyl_dim samples, doubling on DimensionMismatch (up to four retries).
PolyRep build_irrep(const Signature& sig, std::uint64_t seed, const ToleranceConfig& tol = {});

ComplexMatrix rep_apply(const PolyRep& rep, const ComplexMatrix& g);

/// Isometric embedding of the exterior-power tensor space into (C^n)^{(x) boxes}
/// intertwining ambient_action(g) with the boxes-fold kron power of g.
ComplexMatrix ambient_to_tensor_power(const Signature& sig);

/// Colligation whose characteristic function is S -> rep_apply(rep, Theta[F; S]).
Colligation rep_compose_colligation(const PolyRep& rep, const Colligation& f, std::uint64_t seed = 0,
                                    const ToleranceConfig& tol = {});

}  // namespace collig
