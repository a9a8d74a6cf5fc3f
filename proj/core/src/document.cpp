#include "affsim/document.hpp"

namespace affsim {

FieldSpec parse_field(const Json& doc) {
    require(doc.is_object() && doc.contains("field") && doc["field"].is_object(),
            Errc::parse_error, "document needs a \"field\" object");
    const Json& field = doc["field"];
    if (field.contains("p")) {
        require(field["p"].is_number_unsigned(), Errc::parse_error,
                "\"p\" must be a nonnegative integer");
        const auto p = field["p"].get<std::uint64_t>();
        require(p >= 2 && p < (1ull << 31), Errc::parse_error, "\"p\" out of range [2, 2^31)");
        return FieldSpec::prime(static_cast<std::uint32_t>(p));
    }
    if (field.contains("rationals")) {
        require(field["rationals"].is_boolean() && field["rationals"].get<bool>(),
                Errc::parse_error, "\"rationals\" must be true when present");
        return FieldSpec::rationals();
    }
    raise(Errc::parse_error, "field must give \"p\" or \"rationals\"");
}

} // namespace affsim
