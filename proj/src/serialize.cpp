#include "collig/serialize.hpp"

#include <algorithm>
#include <vector>

namespace collig {

namespace {

// Schema errors have no byte offset of their own; they are reported at 1:1 with the
// offending JSON path in the message.
[[noreturn]] void schema_error(const std::string& what) { throw ParseError(what, 1, 1); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) schema_error("expected an object");
    const auto it = j.find(key);
    if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
    return *it;
}

Index count_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        schema_error(std::string("field '") + key + "' must be a nonnegative integer");
    return static_cast<Index>(v.get<long long>());
}

double number(const Json& v, const std::string& where) {
    if (!v.is_number()) schema_error(where + " must be a number");
    return v.get<double>();
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json to_json(const Colligation& g) {
    return Json{{"alpha", g.alpha()}, {"m", g.m()}, {"j", g.j()}, {"matrix", to_json(g.matrix())}};
}

Json to_json(const KSMorphism& z) { return Json{{"n", z.n()}, {"m", z.m()}, {"matrix", to_json(z.zeta())}}; }

Json to_json(const Signature& s) { return Json{{"parts", s.parts()}}; }

ComplexMatrix matrix_from_json(const Json& j) {
    const Index rows = count_field(j, "rows");
    const Index cols = count_field(j, "cols");
    const Json& data = field(j, "data");
    if (!data.is_array()) schema_error("field 'data' must be an array");
    if (static_cast<Index>(data.size()) != rows * cols)
        schema_error("field 'data' has " + std::to_string(data.size()) + " entries, expected " +
                     std::to_string(rows * cols));
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Json& e = data[i];
        const std::string where = "data[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2) schema_error(where + " must be a [re, im] pair");
        entries.emplace_back(number(e[0], where), number(e[1], where));
    }
    try {
        return make_matrix(rows, cols, entries);
    } catch (const InvalidArgument& e) {
        schema_error(e.what());
    }
}

Colligation colligation_from_json(const Json& j, const ToleranceConfig& tol) {
    const Index alpha = count_field(j, "alpha");
    const Index m = count_field(j, "m");
    const Index jj = count_field(j, "j");
    ComplexMatrix u = matrix_from_json(field(j, "matrix"));
    if (u.rows() != alpha + m * jj || u.cols() != u.rows())
        schema_error("colligation matrix must be square of size alpha + m*j");
    return Colligation(alpha, m, jj, std::move(u), tol);
}

KSMorphism ks_from_json(const Json& j, const ToleranceConfig& tol) {
    const Index n = count_field(j, "n");
    const Index m = count_field(j, "m");
    ComplexMatrix u = matrix_from_json(field(j, "matrix"));
    if (u.rows() != n + m || u.cols() != u.rows()) schema_error("morphism matrix must be square of size n + m");
    return KSMorphism(n, m, std::move(u), tol);
}

Signature signature_from_json(const Json& j) {
    const Json& parts = field(j, "parts");
    if (!parts.is_array()) schema_error("field 'parts' must be an array");
    std::vector<int> values;
    for (const Json& p : parts) {
        if (!p.is_number_integer()) schema_error("signature parts must be integers");
        values.push_back(p.get<int>());
    }
    try {
        return Signature(std::move(values));
    } catch (const InvalidArgument& e) {
        schema_error(e.what());
    }
}

std::string serialize(const Document& value) {
    return std::visit([](const auto& v) { return to_json(v).dump(); }, value);
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const std::size_t offset = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(e.what(), line, column);
    }
}

Document deserialize(std::string_view text, const ToleranceConfig& tol) {
    const Json j = parse_json(text);
    if (!j.is_object()) schema_error("document must be a JSON object");
    if (j.contains("alpha")) return colligation_from_json(j, tol);
    if (j.contains("n")) return ks_from_json(j, tol);
    if (j.contains("parts")) return signature_from_json(j);
    if (j.contains("rows")) return matrix_from_json(j);
    schema_error("unrecognized document: expected a matrix, colligation, morphism or signature");
}

}  // namespace collig
