#pragma once

#include "affsim/field.hpp"
#include "affsim/matrix.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace affsim {

/// Univariate polynomial with coefficients stored in ascending degree and no
/// trailing zeros; the zero polynomial has an empty coefficient list.
template <FieldElements F>
class Poly {
public:
    using Elem = typename F::Elem;

    explicit Poly(F field) : field_(std::move(field)) {}

    static Poly zero(F field) { return Poly(std::move(field)); }

    static Poly constant(F field, Elem c) {
        Poly p(std::move(field));
        p.c_.push_back(std::move(c));
        p.trim();
        return p;
    }

    static Poly one(F field) {
        auto c = field.one();
        return constant(std::move(field), c);
    }

    static Poly x(F field) {
        Poly p(field);
        p.c_ = {field.zero(), field.one()};
        return p;
    }

    /// X - c
    static Poly x_minus(F field, const Elem& c) {
        Poly p(field);
        p.c_ = {field.neg(c), field.one()};
        return p;
    }

    static Poly from_coeffs(F field, std::vector<Elem> coeffs) {
        Poly p(std::move(field));
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    static Poly x_power(F field, std::size_t k) {
        Poly p(field);
        p.c_.assign(k + 1, field.zero());
        p.c_[k] = field.one();
        return p;
    }

    const F& field() const { return field_; }
    const std::vector<Elem>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Elem coeff(std::size_t k) const { return k < c_.size() ? c_[k] : field_.zero(); }

    Elem lead() const {
        require(!is_zero(), Errc::internal, "leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && lead() == field_.one(); }
    bool is_one() const { return degree() == 0 && c_[0] == field_.one(); }

    Poly add(const Poly& o) const {
        check_field(o);
        Poly r(field_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), field_.zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_.add(coeff(i), o.coeff(i));
        r.trim();
        return r;
    }

    Poly sub(const Poly& o) const {
        check_field(o);
        Poly r(field_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), field_.zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_.sub(coeff(i), o.coeff(i));
        r.trim();
        return r;
    }

    Poly neg() const {
        Poly r(field_);
        r.c_.reserve(c_.size());
        for (const auto& x : c_) r.c_.push_back(field_.neg(x));
        return r;
    }

    Poly mul(const Poly& o) const {
        check_field(o);
        if (is_zero() || o.is_zero()) return zero(field_);
        Poly r(field_);
        r.c_.assign(c_.size() + o.c_.size() - 1, field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (field_.is_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.c_[j]));
        }
        r.trim();
        return r;
    }

    Poly scale(const Elem& s) const {
        Poly r(field_);
        r.c_.reserve(c_.size());
        for (const auto& x : c_) r.c_.push_back(field_.mul(s, x));
        r.trim();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scale(field_.inv(lead()));
    }

    /// Euclidean division; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        check_field(d);
        require(!d.is_zero(), Errc::division_by_zero, "polynomial division by zero");
        Poly q(field_), r = *this;
        if (r.degree() >= d.degree()) q.c_.assign(r.degree() - d.degree() + 1, field_.zero());
        const Elem lead_inv = field_.inv(d.lead());
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
            Elem c = field_.mul(r.lead(), lead_inv);
            q.c_[shift] = c;
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                r.c_[shift + i] = field_.sub(r.c_[shift + i], field_.mul(c, d.c_[i]));
            r.trim();
        }
        q.trim();
        return {std::move(q), std::move(r)};
    }

    Poly div(const Poly& d) const { return divmod(d).first; }
    Poly mod(const Poly& d) const { return divmod(d).second; }

    bool divides(const Poly& o) const {
        if (is_zero()) return o.is_zero();
        return o.divmod(*this).second.is_zero();
    }

    Elem eval(const Elem& x) const {
        Elem r = field_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, x), c_[i]);
        return r;
    }

    Matrix<F> eval_matrix(const Matrix<F>& m) const {
        require(m.is_square(), Errc::dimension_mismatch, "polynomial of non-square matrix");
        Matrix<F> r(field_, m.rows(), m.cols());
        for (std::size_t i = c_.size(); i-- > 0;) {
            r = r.mul(m);
            for (std::size_t k = 0; k < m.rows(); ++k) r.at(k, k) = field_.add(r.at(k, k), c_[i]);
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (field_.is_zero(c_[i])) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || !(c_[i] == field_.one())) s += field_.to_string(c_[i]);
            if (i >= 1) {
                if (!(c_[i] == field_.one())) s += "*";
                s += "X";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void check_field(const Poly& o) const {
        require(field_ == o.field_, Errc::field_mismatch, "polynomials over different fields");
    }

    void trim() {
        while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
    }

    F field_;
    std::vector<Elem> c_;
};

/// Monic gcd via the Euclidean algorithm; gcd(0, 0) is an error.
template <FieldElements F>
Poly<F> poly_gcd(const Poly<F>& a, const Poly<F>& b) {
    require(!(a.is_zero() && b.is_zero()), Errc::both_zero, "gcd of two zero polynomials");
    Poly<F> x = a, y = b;
    while (!y.is_zero()) {
        Poly<F> r = x.mod(y);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

template <FieldElements F>
struct PolyEgcd {
    Poly<F> g, r, s; // g monic, r*a + s*b = g
};

/// Extended Euclid with the Bezout pair, g normalized monic.
template <FieldElements F>
PolyEgcd<F> poly_egcd(const Poly<F>& a, const Poly<F>& b) {
    const F& f = a.field();
    require(!(a.is_zero() && b.is_zero()), Errc::both_zero, "egcd of two zero polynomials");
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = Poly<F>::one(f), s1 = Poly<F>::zero(f);
    Poly<F> t0 = Poly<F>::zero(f), t1 = Poly<F>::one(f);
    while (!r1.is_zero()) {
        auto [q, rem] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly<F> s2 = s0.sub(q.mul(s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<F> t2 = t0.sub(q.mul(t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const auto lead_inv = f.inv(r0.lead());
    PolyEgcd<F> out{r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)};
    require(out.r.mul(a).add(out.s.mul(b)) == out.g, Errc::internal, "Bezout identity failed");
    return out;
}

template <FieldElements F>
Poly<F> poly_lcm(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>::zero(a.field());
    return a.mul(b).div(poly_gcd(a, b)).monic();
}

} // namespace affsim
