#pragma once

#include <stdexcept>
#include <string>

namespace affsim {

enum class Errc {
    division_by_zero,
    field_mismatch,
    invalid_field,
    both_zero,
    dimension_mismatch,
    not_invertible,
    empty_v1,
    vector_not_in_v1,
    not_similar,
    tau_mismatch,
    too_large,
    parse_error,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
    if (!ok) raise(code, what);
}

} // namespace affsim
