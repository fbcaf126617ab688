#include "collig/calculus.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace collig {

namespace {

// Index map of a colligation's rows/columns into a larger interleaved layout.
// Outer index x < alpha goes to outer_offset + x; internal index alpha + mu*j + r
// goes to internal_base + mu*stride + slot_offset + r.
struct Interleave {
    Index alpha;
    Index m;
    Index j;
    Index outer_offset;
    Index internal_base;
    Index stride;
    Index slot_offset;

    Index operator()(Index x) const {
        if (x < alpha) return outer_offset + x;
        const Index y = x - alpha;
        return internal_base + (y / j) * stride + slot_offset + (y % j);
    }
};

void scatter(ComplexMatrix& dst, const ComplexMatrix& src, const Interleave& map) {
    for (Index c = 0; c < src.cols(); ++c)
        for (Index r = 0; r < src.rows(); ++r) dst(map(r), map(c)) = src(r, c);
}

Colligation empty_colligation(Index m) { return Colligation(0, m, 0, ComplexMatrix(0, 0)); }

// Star-product composition under condition det(1 - d kron(1_j, p)) != 0.
Colligation compose_direct(const Colligation& outer, const Colligation& inner, const ToleranceConfig& tol) {
    const Index gamma = outer.alpha(), beta = outer.m(), j = outer.j();
    const Index alpha = inner.m(), i = inner.j();
    if (j == 0) return Colligation::constant(outer.a(), alpha, tol);
    if (!pivot_regular(outer, inner.a(), tol))
        throw CompositionSingular("det(1 - d (1_j x p)) vanishes");

    const ComplexMatrix one_j = identity(j);
    const Index top = beta * j, bottom = alpha * i * j;
    ComplexMatrix upsilon(top + bottom, top + bottom);
    upsilon.topLeftCorner(top, top) = kron(one_j, inner.a());
    upsilon.topRightCorner(top, bottom) = kron(one_j, inner.b());
    upsilon.bottomLeftCorner(bottom, top) = kron(one_j, inner.c());
    upsilon.bottomRightCorner(bottom, bottom) = kron(one_j, inner.d());

    const KSMorphism zeta = outer.as_ks(tol);
    const KSMorphism lifted(top, bottom, std::move(upsilon), tol);
    try {
        KSMorphism star = circledast(zeta, lifted, tol);
        return Colligation(gamma, alpha, i * j, star.zeta(), tol);
    } catch (const SingularPivot& e) {
        throw CompositionSingular(e.what());
    } catch (const InvariantViolation& e) {
        throw CompositionSingular(e.what());
    }
}

// Krein-Shmul'yan colligation extracting one diagonal block of a map into B_{alpha1+alpha2}.
Colligation block_extractor(Index alpha1, Index alpha2, bool first, Complex lambda, const ToleranceConfig& tol) {
    const Index alpha = alpha1 + alpha2;
    const Index kept = first ? alpha1 : alpha2;
    ComplexMatrix u = zeros(kept + alpha, kept + alpha);
    const Index kept_offset = first ? 0 : alpha1;    // position of the kept block inside the internal part
    const Index other_offset = first ? alpha1 : 0;
    const Index other = alpha - kept;
    u.block(0, kept + kept_offset, kept, kept) = identity(kept);
    u.block(kept + kept_offset, 0, kept, kept) = identity(kept);
    u.block(kept + other_offset, kept + other_offset, other, other) = lambda * identity(other);
    return Colligation(kept, alpha, 1, std::move(u), tol);
}

bool off_block_small(const ComplexMatrix& theta, Index alpha1, Index alpha2, double slack) {
    if (alpha1 == 0 || alpha2 == 0) return true;
    return op_norm(theta.topRightCorner(alpha1, alpha2)) <= slack &&
           op_norm(theta.bottomLeftCorner(alpha2, alpha1)) <= slack;
}

}  // namespace

void SplitSpec::validate() const {
    if (alpha1 < 0 || alpha2 < 0) throw InvalidArgument("SplitSpec: negative block size");
    if (std::abs(std::abs(lambda_twist) - 1.0) > 1e-12) throw InvalidArgument("SplitSpec: |lambda| must be 1");
    if (std::abs(lambda_twist - 1.0) < 1e-12) throw InvalidArgument("SplitSpec: lambda must differ from 1");
}

BoundaryComponent BoundaryComponent::canonical(Index m, Index k) {
    if (k < 0 || k > m) throw InvalidArgument("BoundaryComponent: corank out of range");
    return BoundaryComponent{k, identity(2 * m)};
}

ComplexMatrix BoundaryComponent::point(const ComplexMatrix& u, const ToleranceConfig& tol) const {
    const Index m = reducer.rows() / 2;
    if (u.rows() != m - k || u.cols() != m - k) throw DimensionMismatch("BoundaryComponent: point size");
    return mobius(reducer, block_diag(u, identity(k)), tol);
}

Colligation direct_sum(const Colligation& g, const Colligation& h, const ToleranceConfig& tol) {
    if (g.m() != h.m()) throw DimensionMismatch("direct_sum: source sizes differ");
    const Index alpha = g.alpha(), beta = h.alpha(), m = g.m(), i = g.j(), j = h.j();
    const Index outer = alpha + beta, stride = i + j;
    ComplexMatrix u = zeros(outer + m * stride, outer + m * stride);
    scatter(u, g.matrix(), Interleave{alpha, m, std::max<Index>(i, 1), 0, outer, stride, 0});
    scatter(u, h.matrix(), Interleave{beta, m, std::max<Index>(j, 1), alpha, outer, stride, i});
    return Colligation(outer, m, stride, std::move(u), tol);
}

Colligation odot_product(const Colligation& g, const Colligation& h, const ToleranceConfig& tol) {
    if (g.m() != h.m() || g.alpha() != h.alpha()) throw DimensionMismatch("odot_product: shapes differ");
    const Index alpha = g.alpha(), m = g.m(), i = g.j(), j = h.j(), stride = i + j;
    const Index n = alpha + m * stride;
    ComplexMatrix left = identity(n);
    ComplexMatrix right = identity(n);
    scatter(left, g.matrix(), Interleave{alpha, m, std::max<Index>(i, 1), 0, alpha, stride, 0});
    scatter(right, h.matrix(), Interleave{alpha, m, std::max<Index>(j, 1), 0, alpha, stride, i});
    return Colligation(alpha, m, stride, left * right, tol);
}

Colligation rotate_outer(const Colligation& g, const ComplexMatrix& w, const ToleranceConfig& tol) {
    if (w.rows() != g.alpha() || w.cols() != g.alpha()) throw DimensionMismatch("rotate_outer: w must be alpha x alpha");
    if (!is_unitary(w, tol)) throw InvalidArgument("rotate_outer: w is not unitary");
    const ComplexMatrix frame = block_diag(w, identity(g.internal_dim()));
    return Colligation(g.alpha(), g.m(), g.j(), frame * g.matrix() * frame.adjoint(), tol);
}

Colligation tensor_product(const Colligation& g, const Colligation& h, const ToleranceConfig& tol) {
    if (g.m() != h.m()) throw DimensionMismatch("tensor_product: source sizes differ");
    const Index alpha = g.alpha(), beta = h.alpha(), m = g.m();

    // kron(Theta_g, 1_beta) is beta copies of Theta_g on the diagonal.
    Colligation right_factor = empty_colligation(m);
    for (Index copy = 0; copy < beta; ++copy) right_factor = direct_sum(right_factor, g, tol);

    // kron(1_alpha, Theta_h) is alpha copies of Theta_h after the perfect shuffle
    // e_{c*beta + mu} -> e_{mu*alpha + c}.
    Colligation copies = empty_colligation(m);
    for (Index copy = 0; copy < alpha; ++copy) copies = direct_sum(copies, h, tol);
    std::vector<Index> shuffle(static_cast<std::size_t>(alpha * beta));
    for (Index c = 0; c < alpha; ++c)
        for (Index mu = 0; mu < beta; ++mu) shuffle[static_cast<std::size_t>(c * beta + mu)] = mu * alpha + c;
    const Colligation left_factor = rotate_outer(copies, permutation_matrix(shuffle), tol);

    return odot_product(right_factor, left_factor, tol);
}

Colligation ks_colligation(const KSMorphism& zeta, const ToleranceConfig& tol) {
    return Colligation(zeta.n(), zeta.m(), 1, zeta.zeta(), tol);
}

Colligation aut_precompose(const Colligation& f, const ComplexMatrix& h, const ToleranceConfig& tol) {
    if (h.rows() != 2 * f.m()) throw DimensionMismatch("aut_precompose: h must be in U(m,m)");
    if (f.m() == 0) return f;
    return compose_direct(f, ks_colligation(mobius_as_ks(h, tol), tol), tol);
}

Colligation aut_postcompose(const Colligation& f, const ComplexMatrix& h, const ToleranceConfig& tol) {
    if (h.rows() != 2 * f.alpha()) throw DimensionMismatch("aut_postcompose: h must be in U(alpha,alpha)");
    if (f.alpha() == 0) return f;
    return compose_direct(ks_colligation(mobius_as_ks(h, tol), tol), f, tol);
}

Colligation compose(const Colligation& outer, const Colligation& inner, const std::optional<ComplexMatrix>& probe,
                    const ToleranceConfig& tol) {
    if (outer.m() != inner.alpha())
        throw DimensionMismatch("compose: outer source size must equal inner target size");
    if (outer.j() == 0 || pivot_regular(outer, inner.a(), tol)) {
        try {
            return compose_direct(outer, inner, tol);
        } catch (const CompositionSingular&) {
            // fall through to the probe route
        }
    }

    const Index alpha = inner.m();
    const ComplexMatrix s0 = probe.value_or(zeros(alpha, alpha));
    if (s0.rows() != alpha || s0.cols() != alpha) throw DimensionMismatch("compose: probe must be alpha x alpha");
    if (op_norm(s0) >= 1.0 - tol.atol) throw CompositionSingular("probe point must lie inside the ball");
    if (!pivot_regular(outer, theta_eval(inner, s0, tol), tol))
        throw CompositionSingular("pivot is singular at the probe point; the image of F may lie in the "
                                  "discontinuity set of G");

    const ComplexMatrix h = transvection_to(s0, tol);
    try {
        const Colligation moved = aut_precompose(inner, h, tol);
        const Colligation composed = compose_direct(outer, moved, tol);
        return aut_precompose(composed, pseudo_unitary_inverse(h, alpha), tol);
    } catch (const SingularPivot& e) {
        throw CompositionSingular(e.what());
    }
}

std::vector<ComplexMatrix> probe_points(Index m, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ComplexMatrix> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) points.push_back(sample_ball_point(m, 0.9, rng));
    return points;
}

SplitResult split_off(const Colligation& f, const SplitSpec& spec, const ToleranceConfig& tol) {
    spec.validate();
    if (spec.alpha1 + spec.alpha2 != f.alpha()) throw DimensionMismatch("split_off: block sizes must sum to alpha");
    const std::vector<ComplexMatrix> probes = probe_points(f.m());
    const double slack = tol.atol * static_cast<double>(std::max<Index>(1, f.size()));
    for (const ComplexMatrix& s : probes)
        if (!off_block_small(theta_eval(f, s, tol), spec.alpha1, spec.alpha2, slack))
            throw NotBlockDiagonal("split_off: characteristic function is not block diagonal");

    // Plain matrix first, then the requested twist, then further unimodular twists:
    // only finitely many lambda make 1 - lambda * F2(S0) singular.
    std::vector<Complex> lambdas{Complex(1.0, 0.0), spec.lambda_twist};
    for (int k = 1; k < 7; ++k) lambdas.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 7.0));

    std::vector<std::optional<ComplexMatrix>> route_probes{std::nullopt};
    for (const ComplexMatrix& s : probes) route_probes.emplace_back(s);

    auto extract = [&](bool first) -> std::pair<Colligation, bool> {
        const Index kept = first ? spec.alpha1 : spec.alpha2;
        if (kept == 0) return {empty_colligation(f.m()), false};
        for (const Complex& lambda : lambdas) {
            const Colligation g = block_extractor(spec.alpha1, spec.alpha2, first, lambda, tol);
            for (const auto& p : route_probes) {
                try {
                    return {compose(g, f, p, tol), lambda != Complex(1.0, 0.0)};
                } catch (const CompositionSingular&) {
                } catch (const SingularPivot&) {
                }
            }
        }
        throw SplitSingular("split_off: every pivot is singular at every probe");
    };

    auto [first, first_twisted] = extract(true);
    auto [second, second_twisted] = extract(false);
    return SplitResult{std::move(first), std::move(second), first_twisted, second_twisted};
}

Colligation restrict_to_component(const Colligation& f, const BoundaryComponent& component,
                                  const std::optional<ComplexMatrix>& probe, const ToleranceConfig& tol) {
    const Index m = f.m(), k = component.k;
    if (component.reducer.rows() != 2 * m || component.reducer.cols() != 2 * m)
        throw DimensionMismatch("restrict_to_component: reducer must be in U(m,m)");
    if (k < 0 || k > m) throw InvalidArgument("restrict_to_component: corank out of range");
    if (k == 0) return f;
    const Index free = m - k;

    // u -> diag(u, 1_k) as a Krein-Shmul'yan map.
    ComplexMatrix embed = zeros(m + free, m + free);
    embed.block(0, m, free, free) = identity(free);
    embed.block(free, free, k, k) = identity(k);
    embed.block(m, 0, free, free) = identity(free);
    Colligation embedding(m, free, 1, std::move(embed), tol);
    const bool canonical = op_norm(component.reducer - identity(2 * m)) <= tol.atol;
    if (!canonical) embedding = aut_postcompose(embedding, component.reducer, tol);

    std::vector<std::optional<ComplexMatrix>> probes;
    if (probe) {
        if (!pivot_regular(f, *probe, tol))
            throw SingularOnComponent("restrict_to_component: pivot is singular at the probe");
        const ComplexMatrix local =
            mobius(pseudo_unitary_inverse(component.reducer, m), *probe, tol);
        const double slack = 100.0 * tol.atol * static_cast<double>(m);
        if (op_norm(local.bottomRightCorner(k, k) - identity(k)) > slack ||
            (free > 0 && (op_norm(local.topRightCorner(free, k)) > slack ||
                          op_norm(local.bottomLeftCorner(k, free)) > slack)))
            throw InvalidArgument("restrict_to_component: probe does not lie on the component");
        probes.emplace_back(local.topLeftCorner(free, free));
    } else {
        probes.emplace_back(std::nullopt);
        for (const ComplexMatrix& u : probe_points(free)) probes.emplace_back(u);
    }

    for (const auto& p : probes) {
        try {
            return compose(f, embedding, p, tol);
        } catch (const CompositionSingular&) {
        }
    }
    throw SingularOnComponent("restrict_to_component: no regular probe on the component");
}

CorestrictResult corestrict_from_component(const Colligation& f, Index k, const ToleranceConfig& tol) {
    const Index alpha = f.alpha();
    if (k < 0 || k > alpha) throw InvalidArgument("corestrict_from_component: corank out of range");
    if (k == 0) return CorestrictResult{f, identity(2 * alpha)};

    const ComplexMatrix origin = theta_eval(f, zeros(f.m(), f.m()), tol);
    if (stratum(origin, tol).defect_rank != k)
        throw ImageNotInComponent("corestrict_from_component: F(0) is not on a stratum of the given corank");
    const CanonicalForm form = canonical_component_form(origin, tol);
    const Colligation moved = aut_postcompose(f, form.h, tol);

    const Index free = alpha - k;
    const double slack = 100.0 * tol.atol * static_cast<double>(std::max<Index>(1, moved.size()));
    for (const ComplexMatrix& s : probe_points(f.m())) {
        const ComplexMatrix theta = theta_eval(moved, s, tol);
        if (op_norm(theta.bottomRightCorner(k, k) - identity(k)) > slack || !off_block_small(theta, free, k, slack))
            throw ImageNotInComponent("corestrict_from_component: image leaves the boundary component");
    }
    SplitResult parts = split_off(moved, SplitSpec{free, k, Complex(-1.0, 0.0)}, tol);
    return CorestrictResult{std::move(parts.first), form.h};
}

}  // namespace collig
