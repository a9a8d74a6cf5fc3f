#pragma once

#include "affsim/error.hpp"

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

namespace affsim {

/// Runtime description of a coefficient field: F_p for a prime p, or Q.
struct FieldSpec {
    enum class Kind { prime, rationals };

    Kind kind = Kind::rationals;
    std::uint32_t p = 0; // meaningful only for Kind::prime

    static FieldSpec prime(std::uint32_t p) { return {Kind::prime, p}; }
    static FieldSpec rationals() { return {Kind::rationals, 0}; }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Deterministic Miller-Rabin, exact for every n < 3'215'031'751 (witnesses 2,3,5,7).
bool is_prime(std::uint64_t n);

/// Arithmetic context for F_p, p prime, 2 <= p < 2^31.
/// Elements are canonical residues 0..p-1; every product fits in 64 bits.
class PrimeField {
public:
    using Elem = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        require(p >= 2 && p < (1u << 31) && is_prime(p), Errc::invalid_field,
                "modulus " + std::to_string(p) + " is not a prime in [2, 2^31)");
    }

    std::uint32_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }

    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t(a) + b) % p_); }
    Elem sub(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t(a) + p_ - b) % p_); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return static_cast<Elem>(std::uint64_t(a) * b % p_); }

    Elem inv(Elem a) const {
        require(a != 0, Errc::division_by_zero, "inverse of zero in F_" + std::to_string(p_));
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<Elem>(t);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_zero(Elem a) const { return a == 0; }
    bool less(Elem a, Elem b) const { return a < b; } // residue order, for tie-breaks

    std::string to_string(Elem a) const { return std::to_string(a); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// Arithmetic context for Q. Elements are GMP rationals, always reduced with
/// positive denominator, so overflow is impossible and equality is exact.
class RationalField {
public:
    using Elem = mpq_class;

    RationalField() = default;

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }

    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }

    Elem from_fraction(const std::string& num, const std::string& den) const {
        mpz_class n(num), d(den);
        require(d != 0, Errc::division_by_zero, "fraction with zero denominator");
        Elem q(n, d);
        q.canonicalize();
        return q;
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }

    Elem inv(const Elem& a) const {
        require(a != 0, Errc::division_by_zero, "inverse of zero rational");
        return 1 / a;
    }

    Elem div(const Elem& a, const Elem& b) const {
        require(b != 0, Errc::division_by_zero, "division by zero rational");
        return a / b;
    }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool less(const Elem& a, const Elem& b) const { return a < b; }

    std::string to_string(const Elem& a) const {
        if (a.get_den() == 1) return a.get_num().get_str();
        return a.get_str();
    }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <typename F>
concept FieldElements = requires(const F f, const typename F::Elem a, const typename F::Elem b) {
    typename F::Elem;
    { f.zero() } -> std::convertible_to<typename F::Elem>;
    { f.one() } -> std::convertible_to<typename F::Elem>;
    { f.from_int(1LL) } -> std::convertible_to<typename F::Elem>;
    { f.add(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.sub(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.neg(a) } -> std::convertible_to<typename F::Elem>;
    { f.mul(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.inv(a) } -> std::convertible_to<typename F::Elem>;
    { f.div(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.less(a, b) } -> std::convertible_to<bool>;
    { f.spec() } -> std::convertible_to<FieldSpec>;
    { a == b } -> std::convertible_to<bool>;
    { f == f } -> std::convertible_to<bool>;
};

static_assert(FieldElements<PrimeField>);
static_assert(FieldElements<RationalField>);

} // namespace affsim
