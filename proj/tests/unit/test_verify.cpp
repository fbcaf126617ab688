#include <doctest.h>

#include "collig/verify.hpp"

using namespace collig;

TEST_CASE("every theorem id runs and passes at small scale") {
    for (const std::string& id : theorem_ids()) {
        VerifyOptions o;
        o.trials = 8;
        o.seed = 3;
        const VerificationReport r = run_verify(id, o);
        INFO(id);
        CHECK(r.pass);
        CHECK(r.theorem_id == id);
        CHECK(r.tolerance == default_threshold(id));
    }
}

TEST_CASE("unknown theorem id") {
    CHECK_THROWS_AS(run_verify("T7", VerifyOptions{}), UnknownTheorem);
}

TEST_CASE("T2 at the documented scale") {
    VerifyOptions o;
    o.trials = 100;
    o.seed = 42;
    const VerificationReport r = run_verify("T2", o);
    CHECK(r.pass);
    CHECK(r.max_error <= 1e-8);
}

TEST_CASE("INNER on the constant colligation") {
    VerifyOptions o;
    o.trials = 1;
    o.subject = Colligation::constant(identity(2), 1);
    const VerificationReport r = run_verify("INNER", o);
    CHECK(r.max_error <= 1e-12);
    CHECK(r.pass);
}

TEST_CASE("pass rule") {
    VerificationReport r;
    r.trials = 10;
    r.tolerance = 1e-8;
    r.max_error = 1e-9;
    r.skipped = 2;
    CHECK(report_passes(r));
    r.skipped = 3;
    CHECK_FALSE(report_passes(r));
    r.skipped = 0;
    r.max_error = 2e-8;
    CHECK_FALSE(report_passes(r));
}

TEST_CASE("reports are deterministic and round-trip") {
    VerifyOptions o;
    o.trials = 10;
    o.seed = 99;
    const std::string first = report_to_json(run_verify("T3", o)).dump();
    const std::string second = report_to_json(run_verify("T3", o)).dump();
    CHECK(first == second);
    CHECK(first.find("runtime_ms") == std::string::npos);

    const VerificationReport back = report_from_json(Json::parse(first));
    CHECK(report_to_json(back).dump() == first);

    const VerificationReport timed = run_verify("T1a", o);
    CHECK(report_to_json(timed, true).contains("runtime_ms"));
}
