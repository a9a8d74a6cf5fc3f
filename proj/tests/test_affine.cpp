#include "affsim/affine.hpp"
#include "affsim/sampling.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <array>
#include <thread>

using namespace affsim;

namespace {

AffineMap<PrimeField> shear_offset_f2() {
    PrimeField f2(2);
    return AffineMap<PrimeField>(Matrix<PrimeField>::from_rows(f2, {{1, 1}, {0, 1}}),
                                 Vec<PrimeField>{0, 1});
}

} // namespace

TEST_CASE("evaluate, compose, inverse") {
    PrimeField f5(5);
    SUBCASE("inverse of the identity") {
        auto id = AffineMap<PrimeField>::identity(f5, 2);
        CHECK(id.inverse() == id);
    }
    SUBCASE("composition with the identity") {
        Rng rng(71);
        auto f = random_affine_map(f5, 3, rng);
        auto id = AffineMap<PrimeField>::identity(f5, 3);
        CHECK(compose(f, id) == f);
        CHECK(compose(id, f) == f);
    }
    SUBCASE("h(x) = 2x + 1 over F_5 inverts to x -> 3x + 2") {
        AffineMap<PrimeField> h(Matrix<PrimeField>::from_rows(f5, {{2}}), Vec<PrimeField>{1});
        auto inv = h.inverse();
        CHECK(inv.linear().at(0, 0) == 3);
        CHECK(inv.translation() == Vec<PrimeField>{2});
        CHECK(compose(inv, h) == AffineMap<PrimeField>::identity(f5, 1));
        CHECK(compose(h, inv) == AffineMap<PrimeField>::identity(f5, 1));
    }
    SUBCASE("singular linear part cannot be inverted") {
        AffineMap<PrimeField> f(Matrix<PrimeField>(f5, 2, 2), Vec<PrimeField>{1, 0});
        CHECK_FALSE(f.is_isomorphism());
        CHECK_THROWS_AS(f.inverse(), Error);
    }
}

TEST_CASE("trajectory coset on worked examples") {
    PrimeField f2(2);
    SUBCASE("identity") {
        auto tc = trajectory_coset(AffineMap<PrimeField>::identity(f2, 2));
        CHECK(vec_is_zero(f2, tc.representative));
        CHECK(tc.direction.dim() == 0);
    }
    SUBCASE("translation") {
        auto tc = trajectory_coset(AffineMap<PrimeField>::translation_by(f2, {1, 0}));
        CHECK(tc.representative == Vec<PrimeField>{1, 0});
        CHECK(tc.direction.dim() == 0);
    }
    SUBCASE("shear with offset") {
        auto tc = trajectory_coset(shear_offset_f2());
        CHECK(tc.representative == Vec<PrimeField>{0, 1});
        CHECK(tc.direction == Subspace<PrimeField>::span_of_vectors(f2, 2, {{1, 0}}));
    }
}

TEST_CASE("coset well-definedness identity") {
    Rng rng(73);
    for (std::uint32_t p : {2u, 5u}) {
        PrimeField f(p);
        for (int i = 0; i < 60; ++i) {
            std::size_t n = 1 + rng() % 4;
            auto map = random_affine_map(f, n, rng);
            auto tc = trajectory_coset(map);
            auto a = random_vec(f, n, rng);
            auto b = random_vec(f, n, rng);
            auto step_a = vec_sub(f, map.evaluate(a), a);
            auto step_b = vec_sub(f, map.evaluate(b), b);
            // Af(A) - Bf(B) = (id - M)(AB), with AB the vector from A to B
            auto lhs = vec_sub(f, step_a, step_b);
            auto nil = Matrix<PrimeField>::identity(f, n).sub(map.linear());
            CHECK(lhs == nil.mul_vec(vec_sub(f, b, a)));
            // both trajectory vectors lie in the coset
            CHECK(tc.direction.contains(vec_sub(f, step_a, tc.representative)));
            CHECK(tc.direction.contains(vec_sub(f, step_b, tc.representative)));
        }
    }
}

TEST_CASE("coset equality is congruence of representatives") {
    PrimeField f2(2);
    auto tc = trajectory_coset(shear_offset_f2()); // rep (0,1), direction span{(1,0)}
    TrajectoryCoset<PrimeField> shifted{{1, 1}, tc.direction};
    TrajectoryCoset<PrimeField> other{{0, 0}, tc.direction};
    CHECK(tc.same_coset(shifted));
    CHECK(shifted.same_coset(tc));
    CHECK_FALSE(tc.same_coset(other));
}

TEST_CASE("tau on worked examples") {
    PrimeField f2(2);
    SUBCASE("tau_vector") {
        CHECK(tau_vector(Vec<PrimeField>{0, 0}, Matrix<PrimeField>::identity(f2, 2)) == 0);
        CHECK(tau_vector(Vec<PrimeField>{1, 0}, Matrix<PrimeField>::identity(f2, 2)) == 1);
        auto shear = Matrix<PrimeField>::from_rows(f2, {{1, 1}, {0, 1}});
        CHECK(tau_vector(Vec<PrimeField>{0, 1}, shear) == 2);
        CHECK(tau_vector(Vec<PrimeField>{1, 0}, shear) == 0);
    }
    SUBCASE("tau of maps") {
        CHECK(tau(AffineMap<PrimeField>::identity(f2, 2)) == 0);
        CHECK(tau(AffineMap<PrimeField>::translation_by(f2, {0, 1})) == 1);
        CHECK(tau(shear_offset_f2()) == 2);
        CHECK(rho(shear_offset_f2()) == 2);
    }
}

TEST_CASE("tau is base-point independent") {
    Rng rng(79);
    for (std::uint32_t p : {2u, 3u}) {
        PrimeField f(p);
        for (int i = 0; i < 40; ++i) {
            std::size_t n = 1 + rng() % 3;
            auto map = random_affine_map(f, n, rng);
            std::size_t expected = tau(map);
            for (int k = 0; k < 100; ++k) {
                auto a = random_vec(f, n, rng);
                CHECK(tau_vector(vec_sub(f, map.evaluate(a), a), map.linear()) == expected);
            }
        }
    }
}

TEST_CASE("simple representative on worked examples") {
    PrimeField f2(2), f5(5);
    SUBCASE("translation part inside the image") {
        auto shear = Matrix<PrimeField>::from_rows(f2, {{1, 1}, {0, 1}});
        AffineMap<PrimeField> f(shear, Vec<PrimeField>{1, 0}); // (1,0) = im(M-I)
        auto rep = simple_representative(f);
        CHECK(rep.tau == 0);
        CHECK(vec_is_zero(f2, rep.asimple));
        CHECK_FALSE(rep.chains.has_value());
    }
    SUBCASE("pure translation") {
        auto f = AffineMap<PrimeField>::translation_by(f2, {0, 1});
        auto rep = simple_representative(f);
        CHECK(rep.tau == 1);
        CHECK(rep.asimple == Vec<PrimeField>{0, 1});
        REQUIRE(rep.chains.has_value());
        CHECK(rep.chains->chains.size() == 2); // V1 is everything, N0 = 0
    }
    SUBCASE("diag(1,2) with offset (3,4) over F_5") {
        AffineMap<PrimeField> f(Matrix<PrimeField>::from_rows(f5, {{1, 0}, {0, 2}}),
                                Vec<PrimeField>{3, 4});
        auto rep = simple_representative(f);
        CHECK(rep.asimple == Vec<PrimeField>{3, 0});
        CHECK(rep.tau == 1);
    }
}

TEST_CASE("simple representative stays in the coset with exact depth") {
    Rng rng(83);
    for (std::uint32_t p : {2u, 3u}) {
        PrimeField fld(p);
        for (int i = 0; i < 80; ++i) {
            std::size_t n = 1 + rng() % 4;
            auto f = random_affine_map(fld, n, rng);
            auto rep = simple_representative(f);
            CHECK(rep.tau == tau(f));
            auto nil = f.linear().sub(Matrix<PrimeField>::identity(fld, n));
            CHECK(Subspace<PrimeField>::column_space(nil).contains(
                vec_sub(fld, f.translation(), rep.asimple)));
            if (rep.tau >= 1) {
                Vec<PrimeField> it = rep.asimple;
                for (std::size_t j = 1; j < rep.tau; ++j) it = nil.mul_vec(it);
                CHECK_FALSE(vec_is_zero(fld, it));
                CHECK(vec_is_zero(fld, nil.mul_vec(it)));
            }
        }
    }
}

TEST_CASE("decide_similar on worked examples") {
    PrimeField f2(2);
    auto id = AffineMap<PrimeField>::identity(f2, 2);
    SUBCASE("identity vs translation") {
        auto d = decide_similar(id, AffineMap<PrimeField>::translation_by(f2, {1, 0}));
        CHECK_FALSE(d.similar);
        CHECK(d.reason == SimilarityReason::tau_differs);
    }
    SUBCASE("two translations") {
        auto d = decide_similar(AffineMap<PrimeField>::translation_by(f2, {1, 0}),
                                AffineMap<PrimeField>::translation_by(f2, {0, 1}));
        CHECK(d.similar);
        CHECK(d.reason == SimilarityReason::similar);
    }
    SUBCASE("different linear parts") {
        auto d = decide_similar(shear_offset_f2(), id);
        CHECK_FALSE(d.similar);
        CHECK(d.reason == SimilarityReason::linear_parts_differ);
    }
    SUBCASE("dimension mismatch is an error") {
        CHECK_THROWS_AS(decide_similar(id, AffineMap<PrimeField>::identity(f2, 3)), Error);
    }
}

TEST_CASE("similarity is conjugation invariant") {
    Rng rng(89);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PrimeField fld(p);
        for (int i = 0; i < 50; ++i) {
            std::size_t n = 1 + rng() % 3;
            auto f = random_affine_map(fld, n, rng);
            auto h = random_affine_isomorphism(fld, n, rng);
            auto g = conjugate(h, f);
            CHECK(tau(f) == tau(g));
            auto d = decide_similar(f, g);
            CHECK(d.similar);
        }
    }
}

TEST_CASE("build_conjugator on worked examples") {
    PrimeField f2(2);
    SUBCASE("map against itself") {
        auto f = shear_offset_f2();
        auto h = build_conjugator(f, f);
        CHECK(compose(h.as_map(), f) == compose(f, h.as_map()));
    }
    SUBCASE("translations conjugate by a coordinate swap") {
        auto f = AffineMap<PrimeField>::translation_by(f2, {1, 0});
        auto g = AffineMap<PrimeField>::translation_by(f2, {0, 1});
        auto h = build_conjugator(f, g);
        CHECK(h.linear.mul_vec(Vec<PrimeField>{1, 0}) == Vec<PrimeField>{0, 1});
        CHECK(compose(h.as_map(), f) == compose(g, h.as_map()));
    }
    SUBCASE("dissimilar inputs are rejected") {
        auto f = AffineMap<PrimeField>::identity(f2, 2);
        auto g = AffineMap<PrimeField>::translation_by(f2, {1, 0});
        CHECK_THROWS_AS(build_conjugator(f, g), Error);
    }
}

TEST_CASE("build_conjugator succeeds on every similar pair of F_2^2 maps") {
    PrimeField f2(2);
    std::vector<AffineMap<PrimeField>> maps;
    for (const auto& m : enumerate_matrices(f2, 2))
        for (const auto& b : enumerate_vectors(f2, 2)) maps.emplace_back(m, b);
    std::size_t built = 0;
    for (const auto& f : maps)
        for (const auto& g : maps) {
            if (!decide_similar(f, g).similar) continue;
            auto h = build_conjugator(f, g);
            CHECK(compose(h.as_map(), f) == compose(g, h.as_map()));
            ++built;
        }
    CHECK(built > maps.size()); // each class contributes its square's worth
}

TEST_CASE("build_conjugator round-trips random conjugate pairs") {
    Rng rng(97);
    auto run = [&rng](const auto& fld, std::size_t max_n, int count) {
        for (int i = 0; i < count; ++i) {
            std::size_t n = 1 + rng() % max_n;
            auto f = random_affine_map(fld, n, rng);
            auto h0 = random_affine_isomorphism(fld, n, rng);
            auto g = conjugate(h0, f);
            auto h = build_conjugator(f, g);
            CHECK(compose(h.as_map(), f) == compose(g, h.as_map()));
            CHECK(conjugate(h.as_map(), f) == g);
        }
    };
    run(PrimeField(2), 4, 60);
    run(PrimeField(3), 4, 60);
    run(PrimeField(5), 4, 60);
    run(RationalField(), 3, 25);
}

TEST_CASE("flats on worked examples") {
    PrimeField f2(2);
    SUBCASE("flat through a fixed point") {
        auto f = AffineMap<PrimeField>(Matrix<PrimeField>::from_rows(f2, {{1, 1}, {0, 1}}),
                                       Vec<PrimeField>{0, 0});
        auto flat = flat_through(Vec<PrimeField>{0, 0}, f);
        CHECK(flat.flat_dim() == 0);
    }
    SUBCASE("flat through any point of a translation") {
        auto f = AffineMap<PrimeField>::translation_by(f2, {1, 0});
        auto flat = flat_through(Vec<PrimeField>{0, 1}, f);
        CHECK(flat.flat_dim() == 1);
        CHECK(flat.direction_basis == std::vector<Vec<PrimeField>>{{1, 0}});
    }
    SUBCASE("shear with offset from the origin") {
        auto flat = flat_through(Vec<PrimeField>{0, 0}, shear_offset_f2());
        CHECK(flat.flat_dim() == 2);
    }
    SUBCASE("is_invariant_flat") {
        auto f = shear_offset_f2();
        CHECK(is_invariant_flat(Vec<PrimeField>{0, 0}, Subspace<PrimeField>::full(f2, 2), f));
        CHECK_FALSE(
            is_invariant_flat(Vec<PrimeField>{0, 0}, Subspace<PrimeField>::zero(f2, 2), f));
        auto line = Subspace<PrimeField>::span_of_vectors(f2, 2, {{1, 0}});
        auto pure_shear = AffineMap<PrimeField>(
            Matrix<PrimeField>::from_rows(f2, {{1, 1}, {0, 1}}), Vec<PrimeField>{0, 0});
        CHECK(is_invariant_flat(Vec<PrimeField>{0, 0}, line, pure_shear));
    }
}

TEST_CASE("minimal invariant flat on worked examples") {
    PrimeField f2(2), f5(5);
    SUBCASE("identity") {
        auto flat = minimal_invariant_flat(AffineMap<PrimeField>::identity(f2, 2));
        CHECK(flat.flat_dim() == 0);
    }
    SUBCASE("translation") {
        auto flat = minimal_invariant_flat(AffineMap<PrimeField>::translation_by(f2, {0, 1}));
        CHECK(flat.flat_dim() == 1);
        CHECK(flat.direction(f2) == Subspace<PrimeField>::span_of_vectors(f2, 2, {{0, 1}}));
    }
    SUBCASE("diag(1,2) with offset (3,4) over F_5") {
        AffineMap<PrimeField> f(Matrix<PrimeField>::from_rows(f5, {{1, 0}, {0, 2}}),
                                Vec<PrimeField>{3, 4});
        auto flat = minimal_invariant_flat(f);
        CHECK(flat.point == Vec<PrimeField>{0, 1});
        CHECK(flat.flat_dim() == 1);
        CHECK(flat.direction(f5) == Subspace<PrimeField>::span_of_vectors(f5, 2, {{1, 0}}));
    }
    SUBCASE("shear with offset") {
        auto flat = minimal_invariant_flat(shear_offset_f2());
        CHECK(flat.flat_dim() == 2);
    }
}

TEST_CASE("minimal flat dimension agrees with exhaustive search on random maps") {
    Rng rng(101);
    for (std::uint32_t p : {2u, 3u}) {
        PrimeField fld(p);
        for (int i = 0; i < 25; ++i) {
            std::size_t n = 1 + rng() % 3;
            if (p == 3 && n > 2) n = 2;
            auto f = random_affine_map(fld, n, rng);
            CHECK(brute_force_min_flat(f) == tau(f));
            CHECK(rho(f) == tau(f));
        }
    }
}

TEST_CASE("shared immutable maps are safe to query concurrently") {
    PrimeField f3(3);
    Rng rng(113);
    auto f = random_affine_map(f3, 4, rng);
    auto g = conjugate(random_affine_isomorphism(f3, 4, rng), f);
    const std::size_t expected_tau = tau(f);
    std::vector<std::thread> workers;
    std::array<bool, 8> ok{};
    for (std::size_t w = 0; w < ok.size(); ++w)
        workers.emplace_back([&, w] {
            bool good = true;
            for (int i = 0; i < 25; ++i) {
                good = good && tau(f) == expected_tau;
                good = good && decide_similar(f, g).similar;
                auto h = build_conjugator(f, g);
                good = good && compose(h.as_map(), f) == compose(g, h.as_map());
            }
            ok[w] = good;
        });
    for (auto& t : workers) t.join();
    for (bool good : ok) CHECK(good);
}

TEST_CASE("rational maps go through the same pipeline") {
    RationalField q;
    Rng rng(103);
    for (int i = 0; i < 20; ++i) {
        std::size_t n = 1 + rng() % 3;
        auto f = random_affine_map(q, n, rng);
        auto rep = simple_representative(f);
        CHECK(rep.tau == tau(f));
        auto flat = minimal_invariant_flat(f);
        CHECK(flat.flat_dim() == rep.tau);
        CHECK(is_invariant_flat(flat.point, flat.direction(q), f));
    }
}
