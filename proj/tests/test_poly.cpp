#include "affsim/poly.hpp"
#include "affsim/sampling.hpp"

#include <doctest.h>

using namespace affsim;

namespace {

template <FieldElements F>
Poly<F> random_poly(const F& field, int max_deg, Rng& rng) {
    std::vector<typename F::Elem> c(rng() % (max_deg + 2));
    for (auto& x : c) x = random_scalar(field, rng);
    return Poly<F>::from_coeffs(field, std::move(c));
}

} // namespace

TEST_CASE("construction and normalization") {
    PrimeField f3(3);
    auto p = Poly<PrimeField>::from_coeffs(f3, {1, 2, 0, 0});
    CHECK(p.degree() == 1);
    CHECK(Poly<PrimeField>::zero(f3).is_zero());
    CHECK(Poly<PrimeField>::zero(f3).degree() == -1);
    CHECK(Poly<PrimeField>::x_minus(f3, 1).coeffs() == std::vector<PrimeField::Elem>{2, 1});
}

TEST_CASE("egcd on worked examples") {
    PrimeField f2(2);
    auto x = Poly<PrimeField>::x(f2);
    auto x_minus_1 = Poly<PrimeField>::x_minus(f2, 1);

    SUBCASE("X-1 and X over F_2") {
        auto [g, r, s] = poly_egcd(x_minus_1, x);
        CHECK(g.is_one());
        CHECK(r == Poly<PrimeField>::one(f2));
        CHECK(s == Poly<PrimeField>::one(f2));
        CHECK(r.mul(x_minus_1).add(s.mul(x)) == g);
    }
    SUBCASE("gcd with zero") {
        auto x2 = x.mul(x);
        auto [g, r, s] = poly_egcd(x2, Poly<PrimeField>::zero(f2));
        CHECK(g == x2);
        CHECK(r.is_one());
        CHECK(s.is_zero());
    }
    SUBCASE("divisibility case") {
        auto sq = x_minus_1.mul(x_minus_1);
        CHECK(poly_gcd(sq, x_minus_1) == x_minus_1);
    }
    SUBCASE("both zero is an error") {
        auto z = Poly<PrimeField>::zero(f2);
        CHECK_THROWS_AS(poly_gcd(z, z), Error);
        CHECK_THROWS_AS(poly_egcd(z, z), Error);
    }
}

TEST_CASE("divmod invariants on random polynomials") {
    Rng rng(11);
    PrimeField f5(5);
    RationalField q;
    for (int i = 0; i < 400; ++i) {
        auto a = random_poly(f5, 6, rng);
        auto b = random_poly(f5, 4, rng);
        if (b.is_zero()) continue;
        auto [quot, rem] = a.divmod(b);
        CHECK(quot.mul(b).add(rem) == a);
        CHECK(rem.degree() < b.degree());
    }
    for (int i = 0; i < 100; ++i) {
        auto a = random_poly(q, 5, rng);
        auto b = random_poly(q, 3, rng);
        if (b.is_zero()) continue;
        auto [quot, rem] = a.divmod(b);
        CHECK(quot.mul(b).add(rem) == a);
    }
}

TEST_CASE("egcd Bezout identity on random pairs") {
    Rng rng(13);
    for (std::uint32_t p : {2u, 3u, 7u}) {
        PrimeField f(p);
        for (int i = 0; i < 300; ++i) {
            auto a = random_poly(f, 6, rng);
            auto b = random_poly(f, 6, rng);
            if (a.is_zero() && b.is_zero()) continue;
            auto e = poly_egcd(a, b);
            CHECK(e.g.is_monic());
            CHECK(e.r.mul(a).add(e.s.mul(b)) == e.g);
            CHECK(e.g.divides(a));
            CHECK(e.g.divides(b));
        }
    }
}

TEST_CASE("lcm and evaluation") {
    PrimeField f3(3);
    auto x_minus_1 = Poly<PrimeField>::x_minus(f3, 1);
    auto x_minus_2 = Poly<PrimeField>::x_minus(f3, 2);
    auto l = poly_lcm(x_minus_1, x_minus_2);
    CHECK(l == x_minus_1.mul(x_minus_2));
    CHECK(poly_lcm(x_minus_1, x_minus_1) == x_minus_1);

    Matrix<PrimeField> m = Matrix<PrimeField>::identity(f3, 2);
    CHECK(x_minus_1.eval_matrix(m).is_zero());
    CHECK(x_minus_1.eval(1) == 0);
    CHECK(x_minus_1.eval(2) == 1);
}
