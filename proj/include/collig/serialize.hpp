#pragma once

// JSON documents:
//   complex number  [re, im]
//   matrix          {"rows": r, "cols": c, "data": [[re, im], ...]}   (row-major)
//   colligation     {"alpha": a, "m": m, "j": j, "matrix": <matrix>}
//   ks morphism     {"n": n, "m": m, "matrix": <matrix>}
//   signature       {"parts": [m1, ..., mn]}

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "collig/ballgeo.hpp"
#include "collig/colligation.hpp"
#include "collig/repn.hpp"

namespace collig {

using Json = nlohmann::json;

Json to_json(const ComplexMatrix& m);
Json to_json(const Colligation& g);
Json to_json(const KSMorphism& z);
Json to_json(const Signature& s);

ComplexMatrix matrix_from_json(const Json& j);
Colligation colligation_from_json(const Json& j, const ToleranceConfig& tol = {});
KSMorphism ks_from_json(const Json& j, const ToleranceConfig& tol = {});
Signature signature_from_json(const Json& j);

using Document = std::variant<ComplexMatrix, Colligation, KSMorphism, Signature>;

/// Compact single-line JSON; doubles use shortest round-trip formatting.
std::string serialize(const Document& value);

/// Dispatches on the keys present. Throws ParseError on malformed text (line/column of the
/// last character read) or schema (reported at 1:1), and InvariantViolation when a
/// colligation or morphism is not unitary.
Document deserialize(std::string_view text, const ToleranceConfig& tol = {});

/// Parses JSON text, translating syntax errors into ParseError.
Json parse_json(std::string_view text);

}  // namespace collig
