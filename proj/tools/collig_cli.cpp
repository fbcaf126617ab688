#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collig/calculus.hpp"
#include "collig/repn.hpp"
#include "collig/serialize.hpp"
#include "collig/verify.hpp"

namespace {

using namespace collig;

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Colligation load_colligation(const std::string& path, const ToleranceConfig& tol) {
    return colligation_from_json(parse_json(read_text(path)), tol);
}

ComplexMatrix load_matrix(const std::string& path) { return matrix_from_json(parse_json(read_text(path))); }

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidArgument("cannot write " + path);
        }
    }
    void line(const std::string& text) {
        std::cout << text << '\n';
        if (file_.is_open()) file_ << text << '\n';
    }

private:
    std::ofstream file_;
};

std::vector<int> parse_parts(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            parts.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InvalidArgument("bad signature part '" + item + "'");
        }
    }
    return parts;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("COLLIG_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidArgument("COLLIG_SEED must be an unsigned integer");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unitary colligations and rational inner functions between matrix balls"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    bool seed_given = false;
    double atol = 1e-9;
    std::string out_path;
    app.add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { seed = s, seed_given = true; },
                                           "RNG seed (default: $COLLIG_SEED or 0)");
    app.add_option("--atol", atol, "absolute tolerance for invariant checks");
    app.add_option("--out", out_path, "also write output to this file");

    // gen
    auto* gen = app.add_subcommand("gen", "sample a colligation, unitary or ball point");
    std::string gen_kind;
    Index g_alpha = 1, g_m = 1, g_j = 1, g_n = 2;
    double g_radius = 0.9;
    gen->add_option("kind", gen_kind, "colligation | unitary | point")
        ->required()
        ->check(CLI::IsMember({"colligation", "unitary", "point"}));
    gen->add_option("--alpha", g_alpha)->check(CLI::NonNegativeNumber);
    gen->add_option("--m", g_m)->check(CLI::NonNegativeNumber);
    gen->add_option("--j", g_j)->check(CLI::NonNegativeNumber);
    gen->add_option("--n", g_n, "size of a unitary or ball point")->check(CLI::NonNegativeNumber);
    gen->add_option("--radius", g_radius, "norm bound for ball points")->check(CLI::Range(0.0, 1.0));

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate the characteristic function at a point");
    std::string e_colligation, e_point;
    eval->add_option("colligation", e_colligation)->required();
    eval->add_option("point", e_point)->required();

    // op
    auto* op = app.add_subcommand("op", "operations on colligations");
    std::string op_kind;
    std::vector<std::string> op_inputs;
    Index o_alpha1 = 0, o_alpha2 = 0, o_k = 1;
    std::string o_reducer, o_probe;
    op->add_option("kind", op_kind, "sum | prod | tensor | compose | split | restrict")
        ->required()
        ->check(CLI::IsMember({"sum", "prod", "tensor", "compose", "split", "restrict"}));
    op->add_option("inputs", op_inputs, "colligation files ('-' for stdin)")->required();
    op->add_option("--alpha1", o_alpha1, "split: size of the first block");
    op->add_option("--alpha2", o_alpha2, "split: size of the second block");
    op->add_option("--k", o_k, "restrict: number of unit singular values of the component");
    op->add_option("--reducer", o_reducer, "restrict: U(m,m) matrix moving the canonical component");
    op->add_option("--probe", o_probe, "compose/restrict: probe point file");

    // repn
    auto* repn = app.add_subcommand("repn", "polynomial representations of GL(n)");
    std::string r_kind, r_parts, r_input;
    repn->add_option("kind", r_kind, "build | apply | compose")
        ->required()
        ->check(CLI::IsMember({"build", "apply", "compose"}));
    repn->add_option("--parts", r_parts, "signature, comma separated (e.g. 2,1,0)")->required();
    repn->add_option("input", r_input, "apply: matrix file; compose: colligation file");

    // verify
    auto* verify = app.add_subcommand("verify", "run property suites and emit JSON-line reports");
    std::vector<std::string> v_ids;
    std::size_t v_trials = 100;
    std::optional<double> v_threshold;
    std::string v_subject;
    bool v_timing = false;
    verify->add_option("ids", v_ids, "theorem ids, or 'all'")->required();
    verify->add_option("--trials", v_trials)->check(CLI::PositiveNumber);
    verify->add_option("--tol", v_threshold, "pass threshold on max_error (default per suite)");
    verify->add_option("--subject", v_subject, "INNER: certify this colligation file");
    verify->add_flag("--timing", v_timing, "include runtime_ms in reports");

    // report
    auto* report = app.add_subcommand("report", "aggregate JSON-line reports");
    std::vector<std::string> rep_files;
    report->add_option("files", rep_files)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!seed_given) seed = default_seed();
        ToleranceConfig tol;
        tol.atol = atol;
        tol.validate();
        Output out(out_path);

        if (*gen) {
            Rng rng(seed);
            if (gen_kind == "colligation")
                out.line(serialize(Colligation::random(g_alpha, g_m, g_j, rng)));
            else if (gen_kind == "unitary")
                out.line(serialize(haar_unitary(g_n, rng)));
            else
                out.line(serialize(sample_ball_point(g_n, g_radius, rng)));
            return 0;
        }

        if (*eval) {
            out.line(serialize(theta_eval(load_colligation(e_colligation, tol), load_matrix(e_point), tol)));
            return 0;
        }

        if (*op) {
            const bool binary = op_kind == "sum" || op_kind == "prod" || op_kind == "tensor" || op_kind == "compose";
            const std::size_t expected = binary ? 2 : 1;
            if (op_inputs.size() != expected)
                throw InvalidArgument("op " + op_kind + " takes " + std::to_string(expected) + " input(s)");
            const Colligation first = load_colligation(op_inputs[0], tol);
            std::optional<ComplexMatrix> probe;
            if (!o_probe.empty()) probe = load_matrix(o_probe);

            if (binary) {
                const Colligation second = load_colligation(op_inputs[1], tol);
                if (op_kind == "sum") out.line(serialize(direct_sum(first, second, tol)));
                if (op_kind == "prod") out.line(serialize(odot_product(first, second, tol)));
                if (op_kind == "tensor") out.line(serialize(tensor_product(first, second, tol)));
                if (op_kind == "compose") {
                    const Colligation composed = compose(first, second, probe, tol);
                    out.line(serialize(composed));
                    // Whether this multiplicity is minimal is not decided; it is reported as measured.
                    const Json measurement{{"measurement", "compose_multiplicity"},
                                           {"outer_j", first.j()},
                                           {"inner_j", second.j()},
                                           {"j", composed.j()},
                                           {"internal_dim", composed.internal_dim()}};
                    std::cerr << measurement.dump() << '\n';
                }
            } else if (op_kind == "split") {
                if (o_alpha1 + o_alpha2 != first.alpha())
                    throw DimensionMismatch("--alpha1 + --alpha2 must equal alpha of the input");
                const SplitResult parts = split_off(first, SplitSpec{o_alpha1, o_alpha2}, tol);
                out.line(Json{{"first", to_json(parts.first)},
                              {"second", to_json(parts.second)},
                              {"first_twisted", parts.first_twisted},
                              {"second_twisted", parts.second_twisted}}
                             .dump());
            } else {
                BoundaryComponent component = BoundaryComponent::canonical(first.m(), o_k);
                if (!o_reducer.empty()) component.reducer = load_matrix(o_reducer);
                out.line(serialize(restrict_to_component(first, component, probe, tol)));
            }
            return 0;
        }

        if (*repn) {
            const Signature sig(parse_parts(r_parts));
            const PolyRep rep = build_irrep(sig, seed, tol);
            if (r_kind == "build") {
                out.line(Json{{"signature", to_json(sig)},
                              {"dim", rep.dim},
                              {"weyl_dim", weyl_dim(sig)},
                              {"ambient_dim", rep.ambient_dim},
                              {"embed", to_json(rep.embed)}}
                             .dump());
            } else if (r_input.empty()) {
                throw InvalidArgument("repn " + r_kind + " needs an input file");
            } else if (r_kind == "apply") {
                out.line(serialize(rep_apply(rep, load_matrix(r_input))));
            } else {
                out.line(serialize(rep_compose_colligation(rep, load_colligation(r_input, tol), seed, tol)));
            }
            return 0;
        }

        if (*verify) {
            std::vector<std::string> ids = v_ids;
            if (ids.size() == 1 && ids[0] == "all") ids = theorem_ids();
            bool all_pass = true;
            for (const std::string& id : ids) {
                VerifyOptions options;
                options.trials = v_trials;
                options.seed = seed;
                options.threshold = v_threshold;
                options.tol = tol;
                if (!v_subject.empty() && id == "INNER") options.subject = load_colligation(v_subject, tol);
                const VerificationReport r = run_verify(id, options);
                out.line(report_to_json(r, v_timing).dump());
                all_pass = all_pass && r.pass;
            }
            return all_pass ? 0 : 1;
        }

        if (*report) {
            std::size_t total = 0, passed = 0;
            for (const std::string& file : rep_files) {
                std::istringstream lines(read_text(file));
                std::string text;
                while (std::getline(lines, text)) {
                    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
                    const VerificationReport r = report_from_json(parse_json(text));
                    ++total;
                    if (report_passes(r)) ++passed;
                    std::ostringstream row;
                    row << (report_passes(r) ? "PASS " : "FAIL ") << r.theorem_id << " trials=" << r.trials
                        << " skipped=" << r.skipped << " max_error=" << r.max_error << " tol=" << r.tolerance
                        << " seed=" << r.seed;
                    out.line(row.str());
                }
            }
            out.line(std::to_string(passed) + "/" + std::to_string(total) + " reports pass");
            return passed == total ? 0 : 1;
        }
    } catch (const collig::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
