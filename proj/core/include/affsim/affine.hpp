#pragma once

#include "affsim/decomposition.hpp"
#include "affsim/matrix.hpp"
#include "affsim/subspace.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace affsim {

/// Affine self-map of F^n: x -> linear*x + translation. The linear part may
/// be singular; only conjugating maps must be invertible.
template <FieldElements F>
class AffineMap {
public:
    AffineMap(Matrix<F> linear, Vec<F> translation)
        : linear_(std::move(linear)), translation_(std::move(translation)) {
        require(linear_.is_square(), Errc::dimension_mismatch, "linear part must be square");
        require(translation_.size() == linear_.rows(), Errc::dimension_mismatch,
                "translation length must match the dimension");
    }

    static AffineMap identity(F field, std::size_t n) {
        return AffineMap(Matrix<F>::identity(field, n), vec_zero(field, n));
    }

    static AffineMap translation_by(F field, const Vec<F>& b) {
        return AffineMap(Matrix<F>::identity(field, b.size()), b);
    }

    const Matrix<F>& linear() const { return linear_; }
    const Vec<F>& translation() const { return translation_; }
    const F& field() const { return linear_.field(); }
    std::size_t dim() const { return linear_.rows(); }

    Vec<F> evaluate(const Vec<F>& x) const {
        return vec_add(field(), linear_.mul_vec(x), translation_);
    }

    bool is_isomorphism() const { return is_invertible(linear_); }

    AffineMap inverse() const {
        auto inv = try_inverse(linear_);
        require(inv.has_value(), Errc::not_invertible, "affine map has singular linear part");
        return AffineMap(*inv, vec_sub(field(), vec_zero(field(), dim()),
                                       inv->mul_vec(translation_)));
    }

    friend bool operator==(const AffineMap& a, const AffineMap& b) {
        return a.linear_ == b.linear_ && a.translation_ == b.translation_;
    }

private:
    Matrix<F> linear_;
    Vec<F> translation_;
};

/// outer after inner: x -> outer(inner(x)).
template <FieldElements F>
AffineMap<F> compose(const AffineMap<F>& outer, const AffineMap<F>& inner) {
    require(outer.dim() == inner.dim(), Errc::dimension_mismatch, "composition dimensions");
    return AffineMap<F>(outer.linear().mul(inner.linear()),
                        vec_add(outer.field(), outer.linear().mul_vec(inner.translation()),
                                outer.translation()));
}

template <FieldElements F>
AffineMap<F> conjugate(const AffineMap<F>& h, const AffineMap<F>& f) {
    return compose(h, compose(f, h.inverse()));
}

/// The set { f(A) - A : A in F^n }, a coset of im(M - I).
template <FieldElements F>
struct TrajectoryCoset {
    Vec<F> representative;
    Subspace<F> direction;

    bool same_coset(const TrajectoryCoset& o) const {
        return direction == o.direction &&
               direction.contains(vec_sub(direction.field(), representative, o.representative));
    }
};

template <FieldElements F>
TrajectoryCoset<F> trajectory_coset(const AffineMap<F>& f) {
    Matrix<F> nil = f.linear().sub(Matrix<F>::identity(f.field(), f.dim()));
    return {f.translation(), Subspace<F>::column_space(nil)};
}

/// Smallest k with alpha in im(M-I) + ker((M-I)^k); zero iff alpha is in the
/// image, and never larger than the nilpotency index of M-I.
template <FieldElements F>
std::size_t tau_vector(const Vec<F>& alpha, const Matrix<F>& m) {
    const F& f = m.field();
    require(m.is_square() && alpha.size() == m.rows(), Errc::dimension_mismatch, "tau shapes");
    const std::size_t n = m.rows();
    Matrix<F> nil = m.sub(Matrix<F>::identity(f, n));
    Subspace<F> image = Subspace<F>::column_space(nil);
    Matrix<F> power = Matrix<F>::identity(f, n);
    for (std::size_t k = 0; k <= n; ++k) {
        Subspace<F> reach = image.sum(Subspace<F>::null_space(power));
        if (reach.contains(alpha)) return k;
        power = power.mul(nil);
    }
    raise(Errc::internal, "tau exceeded the ambient dimension");
}

template <FieldElements F>
std::size_t tau(const AffineMap<F>& f) {
    return tau_vector(f.translation(), f.linear());
}

template <FieldElements F>
struct SimpleRepresentative {
    Vec<F> asimple;
    std::size_t tau;
    std::optional<ChainDecomposition<F>> chains; // decomposition headed by asimple (tau >= 1)
};

/// Representative of the trajectory coset that generates a complemented
/// cyclic submodule of v1: project onto v1 along the Fitting complement,
/// then fold the projection into a chain generator.
template <FieldElements F>
SimpleRepresentative<F> simple_representative(const AffineMap<F>& f) {
    const F& fld = f.field();
    FittingSplit<F> split = fitting_split(f.linear());
    if (split.n1 == 0) return {vec_zero(fld, f.dim()), 0, std::nullopt};
    Vec<F> aprime = fitting_project(split, f.translation());
    ChainDecomposition<F> dec = nilpotent_chains(split, f.linear());
    RebasedChains<F> reb = rebase_chains(f.linear(), dec, aprime);
    if (reb.tau == 0) return {vec_zero(fld, f.dim()), 0, std::nullopt};
    return {reb.asimple, reb.tau, std::move(reb.chains)};
}

enum class SimilarityReason { linear_parts_differ, tau_differs, similar };

inline const char* to_string(SimilarityReason r) {
    switch (r) {
    case SimilarityReason::linear_parts_differ: return "LinearPartsDiffer";
    case SimilarityReason::tau_differs: return "TauDiffers";
    case SimilarityReason::similar: return "Similar";
    }
    return "?";
}

template <FieldElements F>
struct SimilarityDecision {
    bool similar;
    SimilarityReason reason;
    InvariantFactors<F> factors_f, factors_g;
    std::size_t tau_f, tau_g;
};

/// f ~ g iff the linear parts are similar and tau(f) = tau(g).
template <FieldElements F>
SimilarityDecision<F> decide_similar(const AffineMap<F>& f, const AffineMap<F>& g) {
    require(f.field() == g.field(), Errc::field_mismatch, "maps over different fields");
    require(f.dim() == g.dim(), Errc::dimension_mismatch, "maps of different dimension");
    SimilarityDecision<F> d{false, SimilarityReason::similar, invariant_factors(f.linear()),
                            invariant_factors(g.linear()), tau(f), tau(g)};
    if (!(d.factors_f == d.factors_g)) {
        d.reason = SimilarityReason::linear_parts_differ;
        return d;
    }
    if (d.tau_f != d.tau_g) {
        d.reason = SimilarityReason::tau_differs;
        return d;
    }
    d.similar = true;
    return d;
}

/// Affine isomorphism h with h o f o h^-1 = g, verified by exact composition
/// before it is returned.
template <FieldElements F>
struct ConjugatorWitness {
    Matrix<F> linear;
    Vec<F> translation;

    AffineMap<F> as_map() const { return AffineMap<F>(linear, translation); }
};

template <FieldElements F>
ConjugatorWitness<F> build_conjugator(const AffineMap<F>& f, const AffineMap<F>& g) {
    const F& fld = f.field();
    auto decision = decide_similar(f, g);
    require(decision.similar, Errc::not_similar, "maps are not similar");

    auto rep_f = simple_representative(f);
    auto rep_g = simple_representative(g);
    Matrix<F> t = module_isomorphism(f.linear(), g.linear(), rep_f.asimple, rep_g.asimple);

    Matrix<F> nil_f = f.linear().sub(Matrix<F>::identity(fld, f.dim()));
    Matrix<F> nil_g = g.linear().sub(Matrix<F>::identity(fld, g.dim()));
    auto point_a = solve(nil_f, vec_sub(fld, rep_f.asimple, f.translation()));
    auto point_b = solve(nil_g, vec_sub(fld, rep_g.asimple, g.translation()));
    require(point_a.has_value() && point_b.has_value(), Errc::internal,
            "representative is not congruent to the translation");

    // h(x) = T x + (B - T A), so h(A) = B
    Vec<F> shift = vec_sub(fld, *point_b, t.mul_vec(*point_a));
    ConjugatorWitness<F> h{std::move(t), std::move(shift)};
    require(compose(h.as_map(), f) == compose(g, h.as_map()), Errc::internal,
            "conjugator failed the composition check");
    return h;
}

/// Flat A + W given by a point and a spanning list for the direction W.
template <FieldElements F>
struct FlatDescriptor {
    Vec<F> point;
    std::vector<Vec<F>> direction_basis;

    std::size_t flat_dim() const { return direction_basis.size(); }

    Subspace<F> direction(const F& field) const {
        return Subspace<F>::span_of_vectors(field, point.size(), direction_basis);
    }
};

/// Smallest f-invariant flat through A: its direction is the cyclic module
/// generated by f(A) - A.
template <FieldElements F>
FlatDescriptor<F> flat_through(const Vec<F>& point, const AffineMap<F>& f) {
    Vec<F> step = vec_sub(f.field(), f.evaluate(point), point);
    auto span = krylov_span(f.linear(), step);
    return {point, std::move(span.basis)};
}

/// A + W is f-invariant iff f(A) - A lies in W and W is M-invariant.
template <FieldElements F>
bool is_invariant_flat(const Vec<F>& point, const Subspace<F>& w, const AffineMap<F>& f) {
    require(w.ambient() == f.dim(), Errc::dimension_mismatch, "flat ambient dimension");
    if (!w.contains(vec_sub(f.field(), f.evaluate(point), point))) return false;
    for (std::size_t i = 0; i < w.dim(); ++i)
        if (!w.contains(f.linear().mul_vec(w.basis().row(i)))) return false;
    return true;
}

/// An invariant flat of the least possible dimension tau(f); its direction
/// sits inside v1 and is a complemented submodule there.
template <FieldElements F>
FlatDescriptor<F> minimal_invariant_flat(const AffineMap<F>& f) {
    const F& fld = f.field();
    auto rep = simple_representative(f);
    Matrix<F> nil = f.linear().sub(Matrix<F>::identity(fld, f.dim()));
    auto point = solve(nil, vec_sub(fld, rep.asimple, f.translation()));
    require(point.has_value(), Errc::internal, "no base point for the minimal flat");
    FlatDescriptor<F> flat = flat_through(*point, f);
    require(flat.flat_dim() == rep.tau, Errc::internal, "minimal flat has wrong dimension");
    require(is_invariant_flat(*point, flat.direction(fld), f), Errc::internal,
            "minimal flat is not invariant");
    require(fitting_split(f.linear()).v1.contains(flat.direction(fld)), Errc::internal,
            "minimal flat direction left v1");
    return flat;
}

/// Invariance level: the least dimension of an f-invariant flat.
template <FieldElements F>
std::size_t rho(const AffineMap<F>& f) {
    return tau(f);
}

} // namespace affsim
