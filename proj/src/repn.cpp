#include "collig/repn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "collig/calculus.hpp"

namespace collig {

namespace {

ComplexMatrix submatrix(const ComplexMatrix& g, const std::vector<Index>& rows, const std::vector<Index>& cols) {
    ComplexMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(static_cast<Index>(r), static_cast<Index>(c)) = g(rows[r], cols[c]);
    return out;
}

Complex minor(const ComplexMatrix& g, const std::vector<Index>& rows, const std::vector<Index>& cols) {
    if (rows.empty()) return Complex(1.0, 0.0);
    return submatrix(g, rows, cols).determinant();
}

// Column of wedge_rep(k, g) for the leading subset {0..k-1}: the image of e_1 ^ ... ^ e_k.
Eigen::VectorXcd wedge_highest_column(Index k, const ComplexMatrix& g) {
    const auto subsets = k_subsets(g.rows(), k);
    std::vector<Index> lead(static_cast<std::size_t>(k));
    std::iota(lead.begin(), lead.end(), Index{0});
    Eigen::VectorXcd col(static_cast<Index>(subsets.size()));
    for (std::size_t i = 0; i < subsets.size(); ++i) col(static_cast<Index>(i)) = minor(g, subsets[i], lead);
    return col;
}

void require_square(const ComplexMatrix& g, Index n, const char* what) {
    if (g.rows() != n || g.cols() != n)
        throw DimensionMismatch(std::string(what) + ": matrix must be " + std::to_string(n) + "x" + std::to_string(n));
}

// Embedding of the k-th exterior power into the k-fold kron power of C^n:
// e_I -> (k!)^{-1/2} sum_pi sgn(pi) e_{I_pi(0)} (x) ... (x) e_{I_pi(k-1)}.
ComplexMatrix wedge_to_tensor(Index n, Index k) {
    const auto subsets = k_subsets(n, k);
    Index tensor_dim = 1;
    for (Index i = 0; i < k; ++i) tensor_dim *= n;
    ComplexMatrix out = zeros(tensor_dim, static_cast<Index>(subsets.size()));
    double factorial = 1.0;
    for (Index i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
    const double scale = 1.0 / std::sqrt(factorial);

    std::vector<Index> perm(static_cast<std::size_t>(k));
    for (std::size_t col = 0; col < subsets.size(); ++col) {
        std::iota(perm.begin(), perm.end(), Index{0});
        do {
            // kron(e_a, e_b) = e_{a + n*b}: earlier factors vary fastest.
            Index index = 0, stride = 1;
            for (Index pos = 0; pos < k; ++pos) {
                index += subsets[col][static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])] * stride;
                stride *= n;
            }
            int inversions = 0;
            for (Index a = 0; a < k; ++a)
                for (Index b = a + 1; b < k; ++b)
                    if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
            out(index, static_cast<Index>(col)) += (inversions % 2 == 0 ? scale : -scale);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

}  // namespace

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw InvalidArgument("Signature: negative parts are not polynomial");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidArgument("Signature: parts must be weakly decreasing");
    }
}

int Signature::boxes() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::vector<Index> Signature::wedge_factors() const {
    std::vector<Index> factors;
    const auto n = parts_.size();
    for (std::size_t k = 1; k <= n; ++k) {
        const int next = k < n ? parts_[k] : 0;
        for (int rep = 0; rep < parts_[k - 1] - next; ++rep) factors.push_back(static_cast<Index>(k));
    }
    return factors;
}

std::vector<Signature> signatures_up_to(Index n, int max_boxes) {
    std::vector<Signature> out;
    std::vector<int> parts(static_cast<std::size_t>(n), 0);
    std::function<void(std::size_t, int, int)> fill = [&](std::size_t pos, int cap, int left) {
        if (pos == parts.size()) {
            out.emplace_back(parts);
            return;
        }
        for (int v = 0; v <= std::min(cap, left); ++v) {
            parts[pos] = v;
            fill(pos + 1, v, left - v);
        }
    };
    fill(0, max_boxes, max_boxes);
    return out;
}

std::uint64_t binomial(Index n, Index k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t out = 1;
    for (Index i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return out;
}

std::vector<std::vector<Index>> k_subsets(Index n, Index k) {
    std::vector<std::vector<Index>> out;
    if (k < 0 || k > n) return out;
    std::vector<Index> current(static_cast<std::size_t>(k));
    std::iota(current.begin(), current.end(), Index{0});
    while (true) {
        out.push_back(current);
        Index pos = k - 1;
        while (pos >= 0 && current[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++current[static_cast<std::size_t>(pos)];
        for (Index i = pos + 1; i < k; ++i)
            current[static_cast<std::size_t>(i)] = current[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

ComplexMatrix wedge_rep(Index k, const ComplexMatrix& g) {
    if (g.rows() != g.cols()) throw DimensionMismatch("wedge_rep: g must be square");
    if (k < 0 || k > g.rows()) throw InvalidArgument("wedge_rep: k out of range");
    const auto subsets = k_subsets(g.rows(), k);
    const auto size = static_cast<Index>(subsets.size());
    ComplexMatrix out(size, size);
    for (Index r = 0; r < size; ++r)
        for (Index c = 0; c < size; ++c)
            out(r, c) = minor(g, subsets[static_cast<std::size_t>(r)], subsets[static_cast<std::size_t>(c)]);
    return out;
}

std::uint64_t weyl_dim(const Signature& sig) {
    const auto& m = sig.parts();
    std::uint64_t num = 1, den = 1;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            num *= static_cast<std::uint64_t>(m[i] - m[j] + static_cast<int>(j - i));
            den *= static_cast<std::uint64_t>(j - i);
            const std::uint64_t g = std::gcd(num, den);
            num /= g;
            den /= g;
        }
    return num / den;
}

ComplexMatrix ambient_action(const Signature& sig, const ComplexMatrix& g) {
    require_square(g, sig.n(), "ambient_action");
    ComplexMatrix out = identity(1);
    for (Index k : sig.wedge_factors()) out = kron(out, wedge_rep(k, g));
    return out;
}

PolyRep build_irrep(const Signature& sig, std::size_t samples, std::uint64_t seed, const ToleranceConfig& tol) {
    const auto expected = static_cast<Index>(weyl_dim(sig));
    const auto factors = sig.wedge_factors();
    Index ambient = 1;
    for (Index k : factors) ambient *= static_cast<Index>(binomial(sig.n(), k));

    // Orbit of the highest-weight vector e_0: column 0 of ambient_action(g) is the
    // kron of the highest columns of the wedge factors.
    Rng rng(seed);
    ComplexMatrix orbit(ambient, static_cast<Index>(samples));
    for (std::size_t s = 0; s < samples; ++s) {
        const ComplexMatrix g = haar_unitary(sig.n(), rng);
        ComplexMatrix v = identity(1);
        for (Index k : factors) v = kron(v, wedge_highest_column(k, g));
        orbit.col(static_cast<Index>(s)) = v;
    }

    Eigen::BDCSVD<ComplexMatrix> svd(orbit, Eigen::ComputeThinU);
    const Eigen::VectorXd sv = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8) ++rank;
    if (rank != expected)
        throw DimensionMismatch("build_irrep: orbit rank " + std::to_string(rank) + " differs from weyl_dim " +
                                std::to_string(expected));

    PolyRep rep{sig, sig.n(), rank, ambient, svd.matrixU().leftCols(rank)};

    const ComplexMatrix g = ginibre(sig.n(), sig.n(), rng);
    const ComplexMatrix moved = ambient_action(sig, g) * rep.embed;
    const double leak = op_norm(moved - rep.embed * (rep.embed.adjoint() * moved));
    if (leak > 1e3 * tol.atol * std::max(1.0, op_norm(moved)))
        throw InvariantViolation("build_irrep: sampled span is not invariant");
    return rep;
}

PolyRep build_irrep(const Signature& sig, std::uint64_t seed, const ToleranceConfig& tol) {
    std::size_t samples = 4 * static_cast<std::size_t>(weyl_dim(sig));
    for (int attempt = 0;; ++attempt) {
        try {
            return build_irrep(sig, samples, seed + static_cast<std::uint64_t>(attempt), tol);
        } catch (const DimensionMismatch&) {
            if (attempt == 4) throw;
            samples *= 2;
        }
    }
}

ComplexMatrix rep_apply(const PolyRep& rep, const ComplexMatrix& g) {
    require_square(g, rep.n, "rep_apply");
    return rep.embed.adjoint() * ambient_action(rep.signature, g) * rep.embed;
}

ComplexMatrix ambient_to_tensor_power(const Signature& sig) {
    ComplexMatrix out = identity(1);
    for (Index k : sig.wedge_factors()) out = kron(out, wedge_to_tensor(sig.n(), k));
    return out;
}

Colligation rep_compose_colligation(const PolyRep& rep, const Colligation& f, std::uint64_t seed,
                                    const ToleranceConfig& tol) {
    if (rep.n != f.alpha()) throw DimensionMismatch("rep_compose_colligation: representation of the wrong GL(n)");
    const int boxes = rep.signature.boxes();
    if (boxes == 0) return Colligation::constant(identity(1), f.m(), tol);

    Colligation power = f;
    for (int l = 1; l < boxes; ++l) power = tensor_product(power, f, tol);

    // Isometry onto the invariant subspace of (C^alpha)^{(x) boxes}, completed to a unitary frame.
    const ComplexMatrix isometry = ambient_to_tensor_power(rep.signature) * rep.embed;
    const Index total = isometry.rows(), dim = isometry.cols();
    ComplexMatrix frame(total, total);
    frame.leftCols(dim) = isometry;
    if (total > dim) {
        Rng rng(seed);
        ComplexMatrix seedcols(total, total);
        seedcols.leftCols(dim) = isometry;
        seedcols.rightCols(total - dim) = ginibre(total, total - dim, rng);
        Eigen::HouseholderQR<ComplexMatrix> qr(seedcols);
        const ComplexMatrix q = qr.householderQ() * identity(total);
        frame.rightCols(total - dim) = q.rightCols(total - dim);
    }

    const Colligation rotated = rotate_outer(power, frame.adjoint(), tol);
    if (total == dim) return rotated;
    return split_off(rotated, SplitSpec{dim, total - dim, Complex(-1.0, 0.0)}, tol).first;
}

}  // namespace collig
