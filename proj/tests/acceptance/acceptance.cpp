// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "collig/calculus.hpp"
#include "collig/repn.hpp"
#include "collig/serialize.hpp"
#include "collig/verify.hpp"

using namespace collig;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, value);
    return buffer;
}

VerificationReport suite(const char* id, std::size_t trials, std::uint64_t seed) {
    VerifyOptions o;
    o.trials = trials;
    o.seed = seed;
    return run_verify(id, o);
}

std::string describe(const VerificationReport& r) {
    return r.theorem_id + " max_error=" + fmt("%.3g", r.max_error) + " skipped=" + std::to_string(r.skipped) +
           "/" + std::to_string(r.trials);
}

Outcome oracle_equivalence() {
    const auto start = Clock::now();
    Rng rng(101);
    double worst = 0.0;
    int pairs = 0;
    for (Index alpha = 1; alpha <= 2; ++alpha)
        for (Index m = 1; m <= 2; ++m)
            for (Index j = 0; j <= 3; ++j)
                for (int rep = 0; rep < 100; ++rep, ++pairs) {
                    const Colligation g = Colligation::random(alpha, m, j, rng);
                    const ComplexMatrix s = sample_ball_point(m, 0.95, rng);
                    const ComplexMatrix theta = theta_eval(g, s);
                    ComplexMatrix assembled(alpha, alpha);
                    for (Index c = 0; c < alpha; ++c) assembled.col(c) = theta_oracle(g, s, identity(alpha).col(c));
                    worst = std::max(worst, distance(theta, assembled) / static_cast<double>(alpha + m * j));
                }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-9 && elapsed < 5.0, std::to_string(pairs) + " pairs, max_error/(alpha+mj)=" +
                                                fmt("%.3g", worst) + ", " + fmt("%.2fs", elapsed)};
}

Outcome inner_property() {
    const auto start = Clock::now();
    const VerificationReport r = suite("INNER", 200, 202);
    const double elapsed = seconds_since(start);
    const double skip_rate = static_cast<double>(r.skipped) / static_cast<double>(r.trials);
    return {r.max_error <= 1e-8 && skip_rate <= 0.05 && elapsed < 60.0,
            describe(r) + ", " + fmt("%.2fs", elapsed)};
}

Outcome closure_identities() {
    const auto start = Clock::now();
    Outcome out;
    for (const char* id : {"T1a", "T2", "T3", "T4"}) {
        const VerificationReport r = suite(id, 200, 303);
        out.pass = out.pass && r.pass && r.max_error <= 1e-8;
        out.detail += describe(r) + "; ";
    }
    const double elapsed = seconds_since(start);
    out.pass = out.pass && elapsed < 120.0;
    out.detail += fmt("%.2fs", elapsed);
    return out;
}

Outcome split_round_trip() {
    const VerificationReport r = suite("T1b", 50, 404);
    // Odd trials use F2 = 1_k; the suite records an infinite error if the twist was not taken.
    return {r.pass && r.max_error <= 1e-8, describe(r) + " (25 forced-twist trials)"};
}

Outcome star_product() {
    const VerificationReport l = suite("L23", 500, 505);
    const VerificationReport p = suite("P21", 500, 506);
    return {l.pass && l.max_error <= 1e-8 && p.pass && p.max_error <= 1e-9, describe(l) + "; " + describe(p)};
}

Outcome boundary_restriction() {
    const VerificationReport b = suite("T6b", 50, 606);
    const VerificationReport a = suite("T6a", 50, 607);
    return {b.pass && b.max_error <= 1e-8 && a.pass && a.max_error <= 1e-8, describe(b) + "; " + describe(a)};
}

Outcome representations() {
    const auto start = Clock::now();
    Outcome out;
    Rng rng(707);

    double cb = 0.0;
    for (int pair = 0; pair < 100; ++pair) {
        const ComplexMatrix a = ginibre(4, 4, rng), b = ginibre(4, 4, rng);
        cb = std::max(cb, distance(wedge_rep(2, a * b), wedge_rep(2, a) * wedge_rep(2, b)));
    }
    out.pass = cb <= 1e-9;
    out.detail = "Cauchy-Binet " + fmt("%.3g", cb);

    int checked = 0, mismatched = 0;
    for (Index n = 2; n <= 3; ++n)
        for (const Signature& sig : signatures_up_to(n, 6)) {
            ++checked;
            if (build_irrep(sig, rng.next()).dim != static_cast<Index>(weyl_dim(sig))) ++mismatched;
        }
    out.pass = out.pass && mismatched == 0;
    out.detail += "; weyl_dim " + std::to_string(checked - mismatched) + "/" + std::to_string(checked);

    const Colligation f = Colligation::random(2, 2, 1, rng);
    const Colligation det = rep_compose_colligation(build_irrep(Signature({1, 1}), rng.next()), f, rng.next());
    double det_err = 0.0;
    for (int p = 0; p < 20; ++p) {
        const ComplexMatrix s = sample_ball_point(2, 0.95, rng);
        det_err = std::max(det_err, std::abs(theta_eval(det, s)(0, 0) - theta_eval(f, s).determinant()));
    }
    const InnerCertificate cert = certify_inner(det, 100, rng.next());
    out.pass = out.pass && det_err <= 1e-8 && cert.max_unitarity_defect <= 1e-8 &&
               cert.max_interior_norm_excess <= 1e-8;
    out.detail += "; det pointwise " + fmt("%.3g", det_err) + ", det inner defect " +
                  fmt("%.3g", cert.max_unitarity_defect);

    const VerificationReport t5 = suite("T5", 50, 708);
    out.pass = out.pass && t5.pass;
    out.detail += "; " + describe(t5);

    const double elapsed = seconds_since(start);
    out.pass = out.pass && elapsed < 120.0;
    out.detail += ", " + fmt("%.2fs", elapsed);
    return out;
}

Outcome geometry() {
    Outcome out;
    Rng rng(808);
    double max_norm = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 1 + trial % 4;
        max_norm = std::max(max_norm, op_norm(mobius(random_pseudo_unitary(n, rng), sample_ball_point(n, 0.95, rng))));
    }
    out.pass = max_norm < 1.0;
    out.detail = "max |mobius(g,z)| " + fmt("%.6f", max_norm);

    int moves = 0, changed = 0;
    for (int point = 0; point < 6; ++point) {
        const Index n = 3, k = point % 4;
        const ComplexMatrix u = haar_unitary(n, rng) *
                                block_diag(identity(k), sample_ball_point(n - k, 0.8, rng)) *
                                haar_unitary(n, rng);
        for (int move = 0; move < 50; ++move, ++moves)
            if (stratum(mobius(random_pseudo_unitary(n, rng, 0.6), u)).defect_rank != k) ++changed;
    }
    out.pass = out.pass && changed == 0;
    out.detail += "; stratum moves " + std::to_string(moves - changed) + "/" + std::to_string(moves);

    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 2 + trial % 2, k = 1 + trial % n;
        const ComplexMatrix u = haar_unitary(n, rng) *
                                block_diag(sample_ball_point(n - k, 0.8, rng), identity(k)) *
                                haar_unitary(n, rng);
        const CanonicalForm f = canonical_component_form(u);
        const ComplexMatrix j = pseudo_unitary_form(n);
        worst = std::max(worst, op_norm(f.h * j * f.h.adjoint() - j));
        worst = std::max(worst, op_norm(f.h.topRightCorner(n, n)) + op_norm(f.h.bottomLeftCorner(n, n)));
        worst = std::max(worst, op_norm(mobius(f.h, u) - f.reduced));
        worst = std::max(worst, op_norm(f.reduced.bottomRightCorner(k, k) - identity(k)));
        if (n > k)
            worst = std::max(worst, op_norm(f.reduced.topRightCorner(n - k, k)) +
                                        op_norm(f.reduced.bottomLeftCorner(k, n - k)));
        if (f.k != k) worst = 1.0;
    }
    out.pass = out.pass && worst <= 1e-8;
    out.detail += "; canonical form " + fmt("%.3g", worst);
    return out;
}

Outcome determinism() {
    auto run_all = [] {
        std::string text;
        for (const std::string& id : theorem_ids()) {
            VerifyOptions o;
            o.trials = 10;
            o.seed = 909;
            text += report_to_json(run_verify(id, o)).dump() + "\n";
        }
        Rng rng(910);
        text += serialize(Colligation::random(2, 2, 2, rng)) + "\n";
        return text;
    };
    const std::string first = run_all();
    const std::string second = run_all();
    return {first == second, std::to_string(first.size()) + " bytes, " + std::to_string(theorem_ids().size()) +
                                 " reports"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 oracle equivalence", oracle_equivalence},
        {"2 inner property", inner_property},
        {"3 direct sum / product / tensor / composition", closure_identities},
        {"4 split round trip", split_round_trip},
        {"5 star product", star_product},
        {"6 boundary restriction", boundary_restriction},
        {"7 representations", representations},
        {"8 geometry", geometry},
        {"9 determinism", determinism},
    };
    bool all = true;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
