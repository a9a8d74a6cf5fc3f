#pragma once

#include "affsim/affine.hpp"
#include "affsim/matrix.hpp"

#include <cstddef>
#include <random>

namespace affsim {

// Seeded generators for randomized checks and benchmarks. Rational samples
// keep numerators and denominators small so conjugator entries stay readable;
// all arithmetic downstream is exact regardless.

using Rng = std::mt19937_64;

inline PrimeField::Elem random_scalar(const PrimeField& field, Rng& rng) {
    return static_cast<PrimeField::Elem>(rng() % field.modulus());
}

inline RationalField::Elem random_scalar(const RationalField&, Rng& rng) {
    long num = static_cast<long>(rng() % 9) - 4;
    long den = static_cast<long>(rng() % 3) + 1;
    RationalField::Elem q(num, den);
    q.canonicalize();
    return q;
}

template <FieldElements F>
Vec<F> random_vec(const F& field, std::size_t n, Rng& rng) {
    Vec<F> v(n, field.zero());
    for (auto& x : v) x = random_scalar(field, rng);
    return v;
}

template <FieldElements F>
Matrix<F> random_matrix(const F& field, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_scalar(field, rng);
    return m;
}

template <FieldElements F>
Matrix<F> random_invertible_matrix(const F& field, std::size_t n, Rng& rng) {
    for (;;) {
        Matrix<F> m = random_matrix(field, n, n, rng);
        if (is_invertible(m)) return m;
    }
}

template <FieldElements F>
AffineMap<F> random_affine_map(const F& field, std::size_t n, Rng& rng) {
    return AffineMap<F>(random_matrix(field, n, n, rng), random_vec(field, n, rng));
}

template <FieldElements F>
AffineMap<F> random_affine_isomorphism(const F& field, std::size_t n, Rng& rng) {
    return AffineMap<F>(random_invertible_matrix(field, n, rng), random_vec(field, n, rng));
}

} // namespace affsim
