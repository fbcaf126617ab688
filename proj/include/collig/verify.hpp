#pragma once

// Randomized verification suites, one per closure property, producing
// machine-readable reports. Errors are measured pointwise in Frobenius norm and
// divided by the dimension of the compared matrices.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collig/colligation.hpp"
#include "collig/serialize.hpp"

namespace collig {

struct VerificationReport {
    std::string theorem_id;
    std::size_t trials = 0;
    double max_error = 0.0;
    std::size_t skipped = 0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
    std::uint64_t seed = 0;
};

struct VerifyOptions {
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::optional<double> threshold;   // pass bound on max_error; per-suite default otherwise
    ToleranceConfig tol{};
    std::optional<Colligation> subject;  // INNER only: certify this colligation instead of random ones
};

/// T1a, T1b, T2, T3, T4, T5, T6a, T6b, L23, P21, INNER.
const std::vector<std::string>& theorem_ids();
double default_threshold(std::string_view theorem_id);

/// Throws UnknownTheorem for ids outside theorem_ids().
VerificationReport run_verify(std::string_view theorem_id, const VerifyOptions& options);

/// pass == (max_error <= tolerance) && (skipped <= 0.2 * trials).
bool report_passes(const VerificationReport& r);

/// runtime_ms is emitted only when include_timing is set, so default reports are
/// byte-identical across runs with the same inputs.
Json report_to_json(const VerificationReport& r, bool include_timing = false);
VerificationReport report_from_json(const Json& j);

}  // namespace collig
