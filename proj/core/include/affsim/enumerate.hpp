#pragma once

#include "affsim/affine.hpp"
#include "affsim/decomposition.hpp"
#include "affsim/field.hpp"
#include "affsim/matrix.hpp"
#include "affsim/subspace.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace affsim {

// Desk-scale exhaustive enumeration over prime fields. Every routine guards
// its input size and raises Errc::too_large instead of running unbounded.

struct LinearClass {
    Matrix<PrimeField> representative; // least matrix of the class in lex order
    InvariantFactors<PrimeField> factors;
};

/// One representative per invariant-factor value, from an exhaustive sweep of
/// all n x n matrices over F_p. Guard: p^(n^2) <= 10^6.
std::vector<LinearClass> enumerate_linear_classes(std::size_t n, std::uint32_t p);

/// Number of affine similarity classes whose linear part is similar to m:
/// 1 + (number of distinct chain depths of the unipotent part). Validated
/// against brute_force_affine_classes by the test suite before being trusted.
std::size_t affine_class_count(const Matrix<PrimeField>& m);

struct AffineClass {
    AffineMap<PrimeField> representative;
    InvariantFactors<PrimeField> linear_invariant;
    std::size_t tau;
    std::optional<std::size_t> orbit_size; // known only for brute-force tables
};

struct ClassTable {
    FieldSpec field;
    std::size_t dim = 0;
    bool invertible_only = false;
    std::vector<AffineClass> classes;
};

/// Orbit partition of all affine maps (optionally only those with invertible
/// linear part) under conjugation by every affine isomorphism, by direct
/// search. Representative = least map of the orbit in lex order over the
/// row-major linear entries followed by the translation. Guard: <= 10^5 maps.
ClassTable brute_force_affine_classes(std::size_t n, std::uint32_t p, bool invertible_only);

/// Same table derived from the tau theory: one class per linear class and
/// achievable tau value ({0} plus the distinct chain depths).
ClassTable derive_affine_classes(std::size_t n, std::uint32_t p, bool invertible_only);

/// Least dimension over all pairs (point, M-invariant subspace) that form an
/// f-invariant flat; subspaces are enumerated through all RREF bases.
/// Guard: p^n <= 81.
std::size_t brute_force_min_flat(const AffineMap<PrimeField>& f);

/// All subspaces of F_p^n, one RREF basis each.
std::vector<Subspace<PrimeField>> enumerate_subspaces(const PrimeField& field, std::size_t n);

/// All vectors of F_p^n in lex order.
std::vector<Vec<PrimeField>> enumerate_vectors(const PrimeField& field, std::size_t n);

/// All n x n matrices over F_p in lex order over row-major entries.
std::vector<Matrix<PrimeField>> enumerate_matrices(const PrimeField& field, std::size_t n);

/// Multisets {(factors, tau)} of two tables agree classwise.
bool tables_agree(const ClassTable& a, const ClassTable& b);

} // namespace affsim
