#include "collig/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "collig/calculus.hpp"
#include "collig/repn.hpp"

namespace collig {

namespace {

struct Tally {
    std::size_t trials = 0;
    std::size_t skipped = 0;
    double max_error = 0.0;

    void record(double error, Index dim) {
        ++trials;
        const double scaled = error / static_cast<double>(std::max<Index>(1, dim));
        // NaN must fail the report rather than vanish inside std::max.
        max_error = std::isnan(scaled) ? std::numeric_limits<double>::infinity() : std::max(max_error, scaled);
    }
    void skip() {
        ++trials;
        ++skipped;
    }
};

Index pick(Rng& rng, Index lo, Index hi) { return lo + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1)); }

void suite_inner(const VerifyOptions& o, Tally& t, Rng& rng) {
    if (o.subject) {
        const InnerCertificate cert = certify_inner(*o.subject, o.trials, rng.next(), o.tol);
        t.trials = 2 * cert.trials;
        t.skipped = cert.skipped_singular;
        t.max_error = std::max(cert.max_unitarity_defect, cert.max_interior_norm_excess);
        return;
    }
    constexpr int kPointsPerColligation = 50;
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index alpha = pick(rng, 1, 3), m = pick(rng, 1, 2);
        const Index j = pick(rng, 0, std::min<Index>(3, (10 - alpha) / m));
        const Colligation g = Colligation::random(alpha, m, j, rng);
        for (int p = 0; p < kPointsPerColligation; ++p) {
            const ComplexMatrix s = haar_unitary(m, rng);
            try {
                const ComplexMatrix theta = theta_eval(g, s, o.tol);
                t.record(op_norm(theta.adjoint() * theta - identity(alpha)), 1);
            } catch (const SingularPivot&) {
                t.skip();
            }
        }
    }
}

void suite_direct_sum(const VerifyOptions& o, Tally& t, Rng& rng) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index m = pick(rng, 1, 2);
        const Colligation g = Colligation::random(pick(rng, 1, 2), m, pick(rng, 0, 2), rng);
        const Colligation h = Colligation::random(pick(rng, 1, 2), m, pick(rng, 0, 2), rng);
        const Colligation sum = direct_sum(g, h, o.tol);
        const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
        const ComplexMatrix expected = block_diag(theta_eval(g, s, o.tol), theta_eval(h, s, o.tol));
        t.record(distance(theta_eval(sum, s, o.tol), expected), expected.rows());
    }
}

void suite_split(const VerifyOptions& o, Tally& t, Rng& rng) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index m = pick(rng, 1, 2);
        const Colligation g = Colligation::random(pick(rng, 1, 2), m, pick(rng, 1, 2), rng);
        const bool forced_twist = trial % 2 == 1;
        const Colligation h = forced_twist ? Colligation::constant(identity(pick(rng, 1, 2)), m)
                                           : Colligation::random(pick(rng, 1, 2), m, pick(rng, 0, 2), rng);
        try {
            const SplitResult parts = split_off(direct_sum(g, h, o.tol), SplitSpec{g.alpha(), h.alpha()}, o.tol);
            if (forced_twist && !parts.first_twisted) {
                t.record(std::numeric_limits<double>::infinity(), 1);
                continue;
            }
            double worst = 0.0;
            for (int p = 0; p < 20; ++p) {
                const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
                worst = std::max(worst, distance(theta_eval(parts.first, s, o.tol), theta_eval(g, s, o.tol)) /
                                            static_cast<double>(g.alpha()));
                worst = std::max(worst, distance(theta_eval(parts.second, s, o.tol), theta_eval(h, s, o.tol)) /
                                            static_cast<double>(h.alpha()));
            }
            t.record(worst, 1);
        } catch (const SplitSingular&) {
            t.skip();
        }
    }
}

void suite_product(const VerifyOptions& o, Tally& t, Rng& rng) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index alpha = pick(rng, 1, 2), m = pick(rng, 1, 2);
        const Colligation g = Colligation::random(alpha, m, pick(rng, 0, 2), rng);
        const Colligation h = Colligation::random(alpha, m, pick(rng, 0, 2), rng);
        const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
        const ComplexMatrix expected = theta_eval(g, s, o.tol) * theta_eval(h, s, o.tol);
        t.record(distance(theta_eval(odot_product(g, h, o.tol), s, o.tol), expected), alpha);
    }
}

void suite_tensor(const VerifyOptions& o, Tally& t, Rng& rng) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index m = pick(rng, 1, 2);
        const Colligation g = Colligation::random(pick(rng, 1, 2), m, pick(rng, 0, 2), rng);
        const Colligation h = Colligation::random(pick(rng, 1, 2), m, pick(rng, 0, 2), rng);
        const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
        const ComplexMatrix expected = kron(theta_eval(g, s, o.tol), theta_eval(h, s, o.tol));
        t.record(distance(theta_eval(tensor_product(g, h, o.tol), s, o.tol), expected), expected.rows());
    }
}

void suite_compose(const VerifyOptions& o, Tally& t, Rng& rng) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index alpha = pick(rng, 1, 2), beta = pick(rng, 1, 2);
        const Colligation outer = Colligation::random(pick(rng, 1, 2), beta, pick(rng, 0, 2), rng);
        const Colligation inner = Colligation::random(beta, alpha, pick(rng, 0, 2), rng);
        Colligation composed = outer;
        try {
            if (trial % 4 == 3) {
                // Probe route: move S0 to the origin, compose there, move back.
                const ComplexMatrix h = transvection_to(sample_ball_point(alpha, 0.5, rng), o.tol);
                const Colligation moved = compose(outer, aut_precompose(inner, h, o.tol), std::nullopt, o.tol);
                composed = aut_precompose(moved, pseudo_unitary_inverse(h, alpha), o.tol);
            } else {
                composed = compose(outer, inner, std::nullopt, o.tol);
            }
        } catch (const CompositionSingular&) {
            t.skip();
            continue;
        }
        double worst = 0.0;
        for (int p = 0; p < 5; ++p) {
            const ComplexMatrix s = sample_ball_point(alpha, 0.95, rng);
            try {
                const ComplexMatrix expected = theta_eval(outer, theta_eval(inner, s, o.tol), o.tol);
                worst = std::max(worst, distance(theta_eval(composed, s, o.tol), expected) /
                                            static_cast<double>(outer.alpha()));
            } catch (const SingularPivot&) {
            }
        }
        t.record(worst, 1);
    }
}

void suite_representation(const VerifyOptions& o, Tally& t, Rng& rng) {
    std::map<std::vector<int>, PolyRep> cache;
    std::vector<Signature> signatures;
    for (Index n = 1; n <= 2; ++n)
        for (const Signature& s : signatures_up_to(n, 3))
            if (s.boxes() > 0) signatures.push_back(s);

    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Signature& sig = signatures[trial % signatures.size()];
        auto it = cache.find(sig.parts());
        if (it == cache.end()) it = cache.emplace(sig.parts(), build_irrep(sig, rng.next(), o.tol)).first;
        const PolyRep& rep = it->second;
        const Index m = pick(rng, 1, 2);
        const Colligation f = Colligation::random(sig.n(), m, pick(rng, 1, 2), rng);
        try {
            const Colligation composed = rep_compose_colligation(rep, f, rng.next(), o.tol);
            double worst = 0.0;
            for (int p = 0; p < 3; ++p) {
                const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
                const ComplexMatrix expected = rep_apply(rep, theta_eval(f, s, o.tol));
                worst = std::max(worst, distance(theta_eval(composed, s, o.tol), expected) /
                                            static_cast<double>(rep.dim));
            }
            t.record(worst, 1);
        } catch (const SplitSingular&) {
            t.skip();
        }
    }
}

void suite_corestrict(const VerifyOptions& o, Tally& t, Rng& rng) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index m = pick(rng, 1, 2), k = pick(rng, 1, 2), alpha = pick(rng, 1, 2);
        // alpha > m*j would force a unit singular value into g(0) and change the stratum.
        const Colligation g = Colligation::random(alpha, m, pick(rng, (alpha + m - 1) / m, 2), rng);
        Colligation f = direct_sum(g, Colligation::constant(identity(k), m), o.tol);
        if (trial % 2 == 1) {
            const Index a = f.alpha();
            f = aut_postcompose(f, block_diag(haar_unitary(a, rng), haar_unitary(a, rng)), o.tol);
        }
        try {
            const CorestrictResult r = corestrict_from_component(f, k, o.tol);
            double worst = 0.0;
            for (int p = 0; p < 10; ++p) {
                const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
                const ComplexMatrix canonical = mobius(r.canonicalizer, theta_eval(f, s, o.tol), o.tol);
                const ComplexMatrix expected = canonical.topLeftCorner(g.alpha(), g.alpha());
                worst = std::max(worst, distance(theta_eval(r.moving, s, o.tol), expected) /
                                            static_cast<double>(g.alpha()));
            }
            t.record(worst, 1);
        } catch (const SplitSingular&) {
            t.skip();
        }
    }
}

void suite_restrict(const VerifyOptions& o, Tally& t, Rng& rng) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index m = pick(rng, 2, 3), k = pick(rng, 1, m - 1);
        const Colligation f = Colligation::random(pick(rng, 1, 2), m, pick(rng, 1, 2), rng);
        const BoundaryComponent component = trial % 2 == 0
                                                ? BoundaryComponent::canonical(m, k)
                                                : BoundaryComponent{k, random_pseudo_unitary(m, rng, 0.5)};
        try {
            const Colligation restricted = restrict_to_component(f, component, std::nullopt, o.tol);
            double worst = 0.0;
            for (int p = 0; p < 20; ++p) {
                const ComplexMatrix u = sample_ball_point(m - k, 0.95, rng);
                try {
                    const ComplexMatrix expected = theta_eval(f, component.point(u, o.tol), o.tol);
                    worst = std::max(worst, distance(theta_eval(restricted, u, o.tol), expected) /
                                                static_cast<double>(f.alpha()));
                } catch (const SingularPivot&) {
                }
            }
            t.record(worst, 1);
        } catch (const SingularOnComponent&) {
            t.skip();
        }
    }
}

void suite_star(const VerifyOptions& o, Tally& t, Rng& rng, bool unitarity) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const Index n = pick(rng, 1, 3), m = pick(rng, 1, 3), k = pick(rng, 1, 3);
        const KSMorphism zeta(n, m, haar_unitary(n + m, rng));
        const KSMorphism upsilon(m, k, haar_unitary(m + k, rng));
        const ComplexMatrix u = sample_ball_point(k, 0.95, rng);
        try {
            const KSMorphism star = circledast(zeta, upsilon, o.tol);
            if (unitarity) {
                t.record(unitarity_defect(star.zeta()), n + k);
            } else {
                const ComplexMatrix lhs = ks_map(zeta, ks_map(upsilon, u, o.tol), o.tol);
                t.record(distance(lhs, ks_map(star, u, o.tol)), n);
            }
        } catch (const SingularPivot&) {
            t.skip();
        }
    }
}

using Suite = std::function<void(const VerifyOptions&, Tally&, Rng&)>;

const std::map<std::string, Suite, std::less<>>& suites() {
    static const std::map<std::string, Suite, std::less<>> table{
        {"T1a", suite_direct_sum},
        {"T1b", suite_split},
        {"T2", suite_product},
        {"T3", suite_tensor},
        {"T4", suite_compose},
        {"T5", suite_representation},
        {"T6a", suite_corestrict},
        {"T6b", suite_restrict},
        {"L23", [](const VerifyOptions& o, Tally& t, Rng& r) { suite_star(o, t, r, false); }},
        {"P21", [](const VerifyOptions& o, Tally& t, Rng& r) { suite_star(o, t, r, true); }},
        {"INNER", suite_inner},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids{"T1a", "T1b", "T2", "T3", "T4", "T5",
                                              "T6a", "T6b", "L23", "P21", "INNER"};
    return ids;
}

double default_threshold(std::string_view theorem_id) {
    if (theorem_id == "P21") return 1e-9;
    return 1e-8;
}

bool report_passes(const VerificationReport& r) {
    return r.max_error <= r.tolerance && static_cast<double>(r.skipped) <= 0.2 * static_cast<double>(r.trials);
}

VerificationReport run_verify(std::string_view theorem_id, const VerifyOptions& options) {
    const auto it = suites().find(theorem_id);
    if (it == suites().end()) throw UnknownTheorem(std::string(theorem_id));
    options.tol.validate();

    const auto start = std::chrono::steady_clock::now();
    Tally tally;
    Rng rng(options.seed);
    it->second(options, tally, rng);
    const auto stop = std::chrono::steady_clock::now();

    VerificationReport r;
    r.theorem_id = std::string(theorem_id);
    r.trials = tally.trials;
    r.max_error = tally.max_error;
    r.skipped = tally.skipped;
    r.tolerance = options.threshold.value_or(default_threshold(theorem_id));
    r.seed = options.seed;
    r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    r.pass = report_passes(r);
    return r;
}

Json report_to_json(const VerificationReport& r, bool include_timing) {
    Json j{{"theorem_id", r.theorem_id}, {"trials", r.trials},  {"max_error", r.max_error},
           {"skipped", r.skipped},       {"tolerance", r.tolerance}, {"pass", r.pass},
           {"seed", r.seed}};
    if (std::isinf(r.max_error)) j["max_error"] = "inf";
    if (include_timing) j["runtime_ms"] = r.runtime_ms;
    return j;
}

VerificationReport report_from_json(const Json& j) {
    VerificationReport r;
    try {
        r.theorem_id = j.at("theorem_id").get<std::string>();
        r.trials = j.at("trials").get<std::size_t>();
        const Json& err = j.at("max_error");
        r.max_error = err.is_string() ? std::numeric_limits<double>::infinity() : err.get<double>();
        r.skipped = j.at("skipped").get<std::size_t>();
        r.tolerance = j.at("tolerance").get<double>();
        r.pass = j.at("pass").get<bool>();
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("runtime_ms")) r.runtime_ms = j.at("runtime_ms").get<double>();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what(), 1, 1);
    }
    return r;
}

}  // namespace collig
