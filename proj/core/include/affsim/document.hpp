#pragma once

#include "affsim/affine.hpp"
#include "affsim/field.hpp"
#include "affsim/matrix.hpp"
#include "affsim/poly.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace affsim {

using Json = nlohmann::ordered_json; // insertion order = emission order

// Map documents:
//   {"field": {"p": 5} | {"rationals": true},
//    "matrix": [[...], ...],            square
//    "vector": [...]}                   optional, defaults to zero
// Prime-field entries are integers (reduced mod p on ingest); rational
// entries are integers or fraction strings "a/b".

FieldSpec parse_field(const Json& doc);

namespace detail {

template <FieldElements F>
typename F::Elem parse_scalar(const F& field, const Json& value);

template <>
inline PrimeField::Elem parse_scalar(const PrimeField& field, const Json& value) {
    require(value.is_number_integer(), Errc::parse_error,
            "prime-field entries must be integers");
    return field.from_int(value.get<long long>());
}

template <>
inline RationalField::Elem parse_scalar(const RationalField& field, const Json& value) {
    if (value.is_number_integer()) return field.from_int(value.get<long long>());
    require(value.is_string(), Errc::parse_error,
            "rational entries must be integers or \"a/b\" strings");
    const std::string s = value.get<std::string>();
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return RationalField::Elem(mpz_class(s));
        return field.from_fraction(s.substr(0, slash), s.substr(slash + 1));
    } catch (const std::invalid_argument&) {
        raise(Errc::parse_error, "malformed rational \"" + s + "\"");
    }
}

} // namespace detail

template <FieldElements F>
AffineMap<F> parse_affine_map(const F& field, const Json& doc) {
    require(doc.is_object() && doc.contains("matrix") && doc["matrix"].is_array(),
            Errc::parse_error, "document needs a \"matrix\" array");
    const Json& rows = doc["matrix"];
    const std::size_t n = rows.size();
    Matrix<F> m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        require(rows[i].is_array() && rows[i].size() == n, Errc::parse_error,
                "matrix must be square");
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = detail::parse_scalar(field, rows[i][j]);
    }
    Vec<F> b = vec_zero(field, n);
    if (doc.contains("vector") && !doc["vector"].is_null()) {
        const Json& vec = doc["vector"];
        require(vec.is_array() && vec.size() == n, Errc::parse_error,
                "vector length must equal the matrix order");
        for (std::size_t i = 0; i < n; ++i) b[i] = detail::parse_scalar(field, vec[i]);
    }
    return AffineMap<F>(std::move(m), std::move(b));
}

template <FieldElements F>
Json scalar_to_json(const F& field, const typename F::Elem& value) {
    if constexpr (std::is_same_v<F, PrimeField>) {
        (void)field;
        return Json(value);
    } else {
        return Json(field.to_string(value));
    }
}

template <FieldElements F>
Json vec_to_json(const F& field, const Vec<F>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(scalar_to_json(field, x));
    return out;
}

template <FieldElements F>
Json matrix_to_json(const Matrix<F>& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.field(), m.row(i)));
    return out;
}

template <FieldElements F>
Json poly_to_json(const Poly<F>& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(scalar_to_json(p.field(), c));
    return out;
}

template <FieldElements F>
Json factors_to_json(const InvariantFactors<F>& inv) {
    Json out = Json::array();
    for (const auto& factor : inv.factors) out.push_back(poly_to_json(factor));
    return out;
}

} // namespace affsim
