#pragma once

#include "affsim/matrix.hpp"
#include "affsim/poly.hpp"
#include "affsim/subspace.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace affsim {

// ---- Krylov spans and minimal polynomials ----------------------------------

template <FieldElements F>
struct KrylovSpan {
    std::vector<Vec<F>> basis; // a, m*a, ..., m^(d-1)*a (the pivotal prefix)
    Poly<F> local_min_poly;    // monic, least degree with p(m)*a = 0
};

/// Iterate a, m*a, m^2*a, ... until the first dependent vector; the dependence
/// coefficients give the minimal polynomial of m restricted to the cyclic
/// subspace generated by a.
template <FieldElements F>
KrylovSpan<F> krylov_span(const Matrix<F>& m, const Vec<F>& a) {
    const F& f = m.field();
    require(m.is_square() && a.size() == m.rows(), Errc::dimension_mismatch, "krylov shapes");
    std::vector<Vec<F>> iterates;
    Vec<F> cur = a;
    for (;;) {
        Matrix<F> stacked(f, iterates.size() + 1, m.rows());
        for (std::size_t i = 0; i < iterates.size(); ++i) stacked.set_row(i, iterates[i]);
        stacked.set_row(iterates.size(), cur);
        if (rref(stacked).rank < iterates.size() + 1) break;
        iterates.push_back(cur);
        cur = m.mul_vec(cur);
    }
    const std::size_t d = iterates.size();
    if (d == 0) return {{}, Poly<F>::one(f)};
    auto c = solve(cols_to_matrix(f, m.rows(), iterates), cur);
    require(c.has_value(), Errc::internal, "dependent Krylov iterate has no expression");
    std::vector<typename F::Elem> coeffs(d + 1, f.zero());
    for (std::size_t i = 0; i < d; ++i) coeffs[i] = f.neg((*c)[i]);
    coeffs[d] = f.one();
    return {std::move(iterates), Poly<F>::from_coeffs(f, std::move(coeffs))};
}

/// Least common multiple of the local minimal polynomials of the standard
/// basis vectors.
template <FieldElements F>
Poly<F> minimal_polynomial(const Matrix<F>& m) {
    const F& f = m.field();
    require(m.is_square(), Errc::dimension_mismatch, "minimal polynomial of non-square matrix");
    Poly<F> mu = Poly<F>::one(f);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mu = poly_lcm(mu, krylov_span(m, unit_vec(f, m.rows(), i)).local_min_poly);
        if (mu.degree() == static_cast<int>(m.rows())) break;
    }
    return mu;
}

// ---- Fitting decomposition along X - 1 --------------------------------------

/// V = v1 (+) w where v1 = ker((M-I)^n1) is the generalized eigenspace of 1
/// and M-I is invertible on w. When X-1 does not divide the minimal
/// polynomial, n1 = 0, v1 = {0} and w is everything.
template <FieldElements F>
struct FittingSplit {
    std::size_t n1;
    Subspace<F> v1;
    Subspace<F> w;
    Matrix<F> proj_v1; // projector onto v1 along w
};

template <FieldElements F>
FittingSplit<F> fitting_split(const Matrix<F>& m) {
    const F& f = m.field();
    require(m.is_square(), Errc::dimension_mismatch, "fitting split of non-square matrix");
    const std::size_t n = m.rows();
    Matrix<F> nil = m.sub(Matrix<F>::identity(f, n));

    std::size_t n1 = 0;
    std::size_t prev_dim = 0; // dim ker (M-I)^0
    Matrix<F> power = Matrix<F>::identity(f, n);
    for (std::size_t k = 1; k <= n; ++k) {
        power = power.mul(nil);
        std::size_t dim_k = n - rref(power).rank;
        if (dim_k == prev_dim) break;
        prev_dim = dim_k;
        n1 = k;
    }

    Matrix<F> stab = nil.pow(n1);
    Subspace<F> v1 = Subspace<F>::null_space(stab);
    Subspace<F> w = Subspace<F>::column_space(stab);
    require(v1.dim() + w.dim() == n, Errc::internal, "fitting summands do not fill the space");

    Matrix<F> change = v1.basis().transpose().hstack(w.basis().transpose());
    Matrix<F> diag(f, n, n);
    for (std::size_t i = 0; i < v1.dim(); ++i) diag.at(i, i) = f.one();
    Matrix<F> proj = change.mul(diag).mul(inverse(change));
    return {n1, std::move(v1), std::move(w), std::move(proj)};
}

/// Component of a in v1 along w; the discarded part lies in im(M-I).
template <FieldElements F>
Vec<F> fitting_project(const FittingSplit<F>& split, const Vec<F>& a) {
    return split.proj_v1.mul_vec(a);
}

// ---- invariant factors (Smith form of XI - M over F[X]) ---------------------

template <FieldElements F>
struct InvariantFactors {
    std::vector<Poly<F>> factors; // monic, each divides the next, last = min poly

    friend bool operator==(const InvariantFactors& a, const InvariantFactors& b) {
        return a.factors == b.factors;
    }
};

template <FieldElements F>
InvariantFactors<F> invariant_factors(const Matrix<F>& m) {
    const F& f = m.field();
    require(m.is_square(), Errc::dimension_mismatch, "invariant factors of non-square matrix");
    const std::size_t n = m.rows();

    // s = XI - M as a polynomial matrix
    std::vector<std::vector<Poly<F>>> s(n, std::vector<Poly<F>>(n, Poly<F>::zero(f)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s[i][j] = Poly<F>::constant(f, f.neg(m.at(i, j)));
            if (i == j) s[i][j] = s[i][j].add(Poly<F>::x(f));
        }

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // pivot = least-degree nonzero entry in the trailing block
            std::size_t bi = n, bj = n;
            int best = -1;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (s[i][j].is_zero()) continue;
                    if (best < 0 || s[i][j].degree() < best) {
                        best = s[i][j].degree();
                        bi = i;
                        bj = j;
                    }
                }
            require(best >= 0, Errc::internal, "XI - M lost full rank in Smith reduction");
            if (bi != t) std::swap(s[bi], s[t]);
            if (bj != t)
                for (std::size_t i = 0; i < n; ++i) std::swap(s[i][bj], s[i][t]);

            bool dirty = false;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (s[i][t].is_zero()) continue;
                Poly<F> q = s[i][t].div(s[t][t]);
                for (std::size_t j = t; j < n; ++j) s[i][j] = s[i][j].sub(q.mul(s[t][j]));
                if (!s[i][t].is_zero()) dirty = true; // remainder of smaller degree survives
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s[t][j].is_zero()) continue;
                Poly<F> q = s[t][j].div(s[t][t]);
                for (std::size_t i = t; i < n; ++i) s[i][j] = s[i][j].sub(q.mul(s[i][t]));
                if (!s[t][j].is_zero()) dirty = true;
            }
            if (dirty) continue;

            // divisibility fix-up: a pivot must divide the whole trailing block
            bool fixed = true;
            for (std::size_t i = t + 1; i < n && fixed; ++i)
                for (std::size_t j = t + 1; j < n && fixed; ++j)
                    if (!s[t][t].divides(s[i][j])) {
                        for (std::size_t jj = t; jj < n; ++jj)
                            s[t][jj] = s[t][jj].add(s[i][jj]);
                        fixed = false;
                    }
            if (fixed) break;
        }
    }

    InvariantFactors<F> out;
    int total_degree = 0;
    for (std::size_t t = 0; t < n; ++t) {
        Poly<F> d = s[t][t].monic();
        total_degree += d.degree();
        if (d.degree() >= 1) out.factors.push_back(std::move(d));
    }
    require(total_degree == static_cast<int>(n), Errc::internal,
            "Smith diagonal degrees do not sum to the dimension");
    for (std::size_t i = 0; i + 1 < out.factors.size(); ++i)
        require(out.factors[i].divides(out.factors[i + 1]), Errc::internal,
                "Smith diagonal is not a divisibility chain");
    return out;
}

// ---- Frobenius form via cyclic-vector descent -------------------------------

namespace detail {

/// Coprime base refinement for two monic nonzero polynomials; no
/// factorization into irreducibles is ever attempted.
template <FieldElements F>
void coprime_base_insert(std::vector<Poly<F>>& base, Poly<F> x) {
    x = x.monic();
    if (x.degree() < 1) return;
    for (std::size_t i = 0; i < base.size(); ++i) {
        Poly<F> g = poly_gcd(x, base[i]);
        if (g.degree() < 1) continue;
        if (g == base[i]) {
            coprime_base_insert(base, x.div(base[i]));
            return;
        }
        Poly<F> c = base[i];
        base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
        coprime_base_insert(base, g);
        coprime_base_insert(base, c.div(g));
        coprime_base_insert(base, x.div(g));
        return;
    }
    base.push_back(std::move(x));
}

template <FieldElements F>
std::size_t multiplicity_in(const Poly<F>& part, Poly<F> value) {
    std::size_t e = 0;
    for (;;) {
        auto [q, r] = value.divmod(part);
        if (!r.is_zero()) return e;
        value = std::move(q);
        ++e;
    }
}

/// Split lcm(a, b) = u * w with u | a, w | b and gcd(u, w) = 1.
template <FieldElements F>
std::pair<Poly<F>, Poly<F>> coprime_split(const Poly<F>& a, const Poly<F>& b) {
    const F& f = a.field();
    std::vector<Poly<F>> base;
    coprime_base_insert(base, a);
    coprime_base_insert(base, b);
    std::vector<std::size_t> ea, eb;
    for (int guard = 0;; ++guard) {
        require(guard < 1024, Errc::internal, "coprime base refinement did not settle");
        ea.clear();
        eb.clear();
        Poly<F> ra = a.monic(), rb = b.monic();
        for (const auto& c : base) {
            std::size_t e1 = multiplicity_in(c, ra);
            std::size_t e2 = multiplicity_in(c, rb);
            ea.push_back(e1);
            eb.push_back(e2);
            for (std::size_t k = 0; k < e1; ++k) ra = ra.div(c);
            for (std::size_t k = 0; k < e2; ++k) rb = rb.div(c);
        }
        if (ra.degree() < 1 && rb.degree() < 1) break;
        coprime_base_insert(base, ra);
        coprime_base_insert(base, rb);
    }
    Poly<F> u = Poly<F>::one(f), w = Poly<F>::one(f);
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (ea[i] >= eb[i]) {
            for (std::size_t k = 0; k < ea[i]; ++k) u = u.mul(base[i]);
        } else {
            for (std::size_t k = 0; k < eb[i]; ++k) w = w.mul(base[i]);
        }
    }
    return {u.monic(), w.monic()};
}

/// Vector whose local minimal polynomial is the minimal polynomial of m,
/// built by combining standard basis vectors through their coprime parts.
template <FieldElements F>
std::pair<Vec<F>, Poly<F>> maximal_order_vector(const Matrix<F>& m) {
    const F& f = m.field();
    const std::size_t n = m.rows();
    Poly<F> mu = minimal_polynomial(m);
    Vec<F> v = unit_vec(f, n, 0);
    Poly<F> q = krylov_span(m, v).local_min_poly;
    for (std::size_t i = 1; i < n && q.degree() < mu.degree(); ++i) {
        Poly<F> qi = krylov_span(m, unit_vec(f, n, i)).local_min_poly;
        if (qi.divides(q)) continue;
        auto [u, w] = coprime_split(q, qi);
        Vec<F> xv = q.div(u).eval_matrix(m).mul_vec(v);
        Vec<F> yv = qi.div(w).eval_matrix(m).mul_vec(unit_vec(f, n, i));
        v = vec_add(f, xv, yv);
        q = u.mul(w).monic();
    }
    require(q == mu, Errc::internal, "maximal-order vector construction fell short");
    return {std::move(v), std::move(q)};
}

template <FieldElements F>
Matrix<F> companion(const Poly<F>& q) {
    const F& f = q.field();
    const std::size_t d = static_cast<std::size_t>(q.degree());
    Matrix<F> c(f, d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) c.at(i + 1, i) = f.one();
    for (std::size_t i = 0; i < d; ++i) c.at(i, d - 1) = f.neg(q.coeff(i));
    return c;
}

} // namespace detail

template <FieldElements F>
struct FrobeniusBasis {
    Matrix<F> basis; // invertible; columns are the new basis
    Matrix<F> form;  // companion blocks of the invariant factors, ascending
};

/// Rational canonical form with an explicit change of basis. Repeatedly
/// splits off the cyclic block of a maximal-order vector; the complement is
/// the kernel of the dual Krylov matrix of a functional that exposes the top
/// Krylov coordinate, which is invariant and recursed on.
template <FieldElements F>
FrobeniusBasis<F> frobenius_basis(const Matrix<F>& m) {
    const F& f = m.field();
    require(m.is_square(), Errc::dimension_mismatch, "frobenius basis of non-square matrix");
    const std::size_t n = m.rows();

    std::vector<std::pair<Vec<F>, Poly<F>>> blocks; // (ambient generator, factor)
    Matrix<F> lift = Matrix<F>::identity(f, n); // columns: basis of current invariant subspace
    Matrix<F> cur = m;
    while (cur.rows() > 0) {
        const std::size_t k = cur.rows();
        auto [v, q] = detail::maximal_order_vector(cur);
        const std::size_t d = static_cast<std::size_t>(q.degree());

        // functional vanishing on v, ..., cur^(d-2) v with value 1 on cur^(d-1) v
        Matrix<F> krylov_rows(f, d, k);
        Vec<F> it = v;
        for (std::size_t j = 0; j < d; ++j) {
            krylov_rows.set_row(j, it);
            it = cur.mul_vec(it);
        }
        auto phi = solve(krylov_rows, unit_vec(f, d, d - 1));
        require(phi.has_value(), Errc::internal, "dual functional system is inconsistent");

        // complement = joint kernel of phi, phi*cur, ..., phi*cur^(d-1)
        Matrix<F> dual(f, d, k);
        Vec<F> row = *phi;
        Matrix<F> cur_t = cur.transpose();
        for (std::size_t j = 0; j < d; ++j) {
            dual.set_row(j, row);
            row = cur_t.mul_vec(row);
        }
        Matrix<F> comp_rows = kernel(dual);
        require(comp_rows.rows() == k - d, Errc::internal, "invariant complement has wrong size");

        blocks.emplace_back(lift.mul_vec(v), q);
        Matrix<F> down = comp_rows.transpose();
        auto restricted = solve_matrix(down, cur.mul(down));
        require(restricted.has_value(), Errc::internal, "complement is not invariant");
        lift = lift.mul(down);
        cur = *restricted;
    }

    std::reverse(blocks.begin(), blocks.end()); // ascending divisibility
    Matrix<F> basis(f, n, n);
    Matrix<F> form(f, n, n);
    std::size_t col = 0;
    for (const auto& [gen, q] : blocks) {
        const std::size_t d = static_cast<std::size_t>(q.degree());
        Vec<F> it = gen;
        for (std::size_t j = 0; j < d; ++j) {
            basis.set_col(col + j, it);
            it = m.mul_vec(it);
        }
        Matrix<F> c = detail::companion(q);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) form.at(col + i, col + j) = c.at(i, j);
        col += d;
    }
    require(col == n, Errc::internal, "frobenius blocks do not fill the space");
    require(is_invertible(basis), Errc::internal, "frobenius basis is singular");
    require(m.mul(basis) == basis.mul(form), Errc::internal, "frobenius form does not conjugate");
    return {std::move(basis), std::move(form)};
}

// ---- Jordan chains of the unipotent part ------------------------------------

template <FieldElements F>
struct Chain {
    Vec<F> generator;  // ambient coordinates, inside v1
    std::size_t depth; // least d with (M-I)^d generator = 0, d >= 1
};

template <FieldElements F>
struct ChainDecomposition {
    std::vector<Chain<F>> chains; // sorted by depth descending
};

namespace detail {

/// Columns  (M-I)^j gen  for every chain, j = 0..depth-1, chain by chain.
template <FieldElements F>
Matrix<F> chain_columns(const Matrix<F>& nil, const ChainDecomposition<F>& dec) {
    const F& f = nil.field();
    std::vector<Vec<F>> cols;
    for (const auto& chain : dec.chains) {
        Vec<F> it = chain.generator;
        for (std::size_t j = 0; j < chain.depth; ++j) {
            cols.push_back(it);
            it = nil.mul_vec(it);
        }
    }
    return cols_to_matrix(f, nil.rows(), cols);
}

template <FieldElements F>
void verify_chain_decomposition(const Matrix<F>& nil, std::size_t v1_dim,
                                const ChainDecomposition<F>& dec) {
    const F& f = nil.field();
    std::size_t total = 0;
    std::size_t prev_depth = std::size_t(-1);
    for (const auto& chain : dec.chains) {
        require(chain.depth >= 1 && chain.depth <= prev_depth, Errc::internal,
                "chains not sorted by depth");
        prev_depth = chain.depth;
        total += chain.depth;
        Vec<F> it = chain.generator;
        for (std::size_t j = 0; j + 1 < chain.depth; ++j) it = nil.mul_vec(it);
        require(!vec_is_zero(f, it), Errc::internal, "chain shorter than its declared depth");
        require(vec_is_zero(f, nil.mul_vec(it)), Errc::internal,
                "chain longer than its declared depth");
    }
    require(total == v1_dim, Errc::internal, "chain lengths do not sum to dim v1");
    require(rref(chain_columns(nil, dec)).rank == v1_dim, Errc::internal,
            "chain vectors are not a basis of v1");
}

} // namespace detail

/// Jordan chain generators for the restriction of M-I to v1, computed from
/// the kernel filtration: at each level k (descending) the new chain tops are
/// a complement of ker^(k-1) + (M-I)*ker^(k+1) inside ker^k.
template <FieldElements F>
ChainDecomposition<F> nilpotent_chains(const FittingSplit<F>& split, const Matrix<F>& m) {
    const F& f = m.field();
    require(split.n1 >= 1, Errc::empty_v1, "no unipotent part: v1 is trivial");
    const std::size_t n = m.rows();
    Matrix<F> nil = m.sub(Matrix<F>::identity(f, n));

    // restrict to v1 coordinates
    Matrix<F> b1 = split.v1.basis().transpose(); // n x m1
    const std::size_t m1 = split.v1.dim();
    auto restricted = solve_matrix(b1, nil.mul(b1));
    require(restricted.has_value(), Errc::internal, "v1 is not invariant under M-I");
    Matrix<F> n0 = *restricted;

    std::vector<Subspace<F>> ker_pow; // ker n0^k for k = 0..n1
    ker_pow.push_back(Subspace<F>::zero(f, m1));
    Matrix<F> power = Matrix<F>::identity(f, m1);
    for (std::size_t k = 1; k <= split.n1; ++k) {
        power = power.mul(n0);
        ker_pow.push_back(Subspace<F>::null_space(power));
    }
    require(ker_pow.back().dim() == m1, Errc::internal, "n0 is not nilpotent of index n1");

    ChainDecomposition<F> dec;
    for (std::size_t k = split.n1; k >= 1; --k) {
        const Subspace<F>& above = ker_pow[std::min(k + 1, split.n1)];
        Subspace<F> image = Subspace<F>::column_space(n0.mul(above.basis().transpose()));
        Subspace<F> avoided = ker_pow[k - 1].sum(image);
        for (std::size_t i = 0; i < ker_pow[k].dim(); ++i) {
            Vec<F> cand = ker_pow[k].basis().row(i);
            if (avoided.contains(cand)) continue;
            avoided = avoided.sum(Subspace<F>::span_of_vectors(f, m1, {cand}));
            dec.chains.push_back({b1.mul_vec(cand), k});
        }
    }
    detail::verify_chain_decomposition(nil, m1, dec);
    return dec;
}

template <FieldElements F>
std::size_t count_chain_dims(const ChainDecomposition<F>& dec) {
    std::size_t total = 0;
    for (const auto& chain : dec.chains) total += chain.depth;
    return total;
}

template <FieldElements F>
struct RebasedChains {
    ChainDecomposition<F> chains;
    Vec<F> asimple;
    std::size_t tau;
    std::optional<std::size_t> distinguished; // index of the chain headed by asimple
};

/// Rewrite a chain decomposition so that the class of aprime modulo
/// (M-I)*v1 is represented by a chain generator. The component of aprime on
/// each chain either vanishes modulo the radical or regenerates that chain;
/// summing the regenerating components and folding them into the deepest one
/// yields a generator congruent to aprime whose depth is the invariant tau.
template <FieldElements F>
RebasedChains<F> rebase_chains(const Matrix<F>& m, const ChainDecomposition<F>& dec,
                               const Vec<F>& aprime) {
    const F& f = m.field();
    const std::size_t n = m.rows();
    require(aprime.size() == n, Errc::dimension_mismatch, "rebase vector length");
    Matrix<F> nil = m.sub(Matrix<F>::identity(f, n));

    Matrix<F> columns = detail::chain_columns(nil, dec);
    auto coeffs = solve(columns, aprime);
    require(coeffs.has_value(), Errc::vector_not_in_v1, "vector is outside v1");

    std::vector<Vec<F>> component; // per-chain component of aprime
    std::vector<bool> regenerates;
    std::size_t offset = 0;
    for (const auto& chain : dec.chains) {
        Vec<F> part = vec_zero(f, n);
        for (std::size_t j = 0; j < chain.depth; ++j)
            part = vec_add(f, part, vec_scale(f, (*coeffs)[offset + j], columns.col(offset + j)));
        regenerates.push_back(!f.is_zero((*coeffs)[offset]));
        component.push_back(std::move(part));
        offset += chain.depth;
    }

    RebasedChains<F> out{dec, vec_zero(f, n), 0, std::nullopt};
    std::size_t lead = dec.chains.size();
    for (std::size_t i = 0; i < dec.chains.size(); ++i)
        if (regenerates[i] && lead == dec.chains.size()) lead = i; // deepest: sorted descending
    if (lead == dec.chains.size()) return out; // aprime in (M-I)*v1: tau = 0

    Vec<F> asimple = vec_zero(f, n);
    for (std::size_t i = 0; i < dec.chains.size(); ++i)
        if (regenerates[i]) asimple = vec_add(f, asimple, component[i]);

    for (std::size_t i = 0; i < dec.chains.size(); ++i) {
        if (!regenerates[i]) continue;
        out.chains.chains[i].generator = i == lead ? asimple : component[i];
    }
    out.asimple = std::move(asimple);
    out.tau = dec.chains[lead].depth;
    out.distinguished = lead;

    detail::verify_chain_decomposition(nil, count_chain_dims(dec), out.chains);
    Vec<F> drift = vec_sub(f, aprime, out.asimple);
    require(Subspace<F>::column_space(nil.mul(columns)).contains(drift), Errc::internal,
            "rebased representative left the coset");
    return out;
}

// ---- module isomorphism ------------------------------------------------------

namespace detail {

template <FieldElements F>
struct SideData {
    Matrix<F> nil;
    FittingSplit<F> split;
    std::vector<Chain<F>> ordered; // distinguished chain first, then depth order
};

template <FieldElements F>
SideData<F> prepare_side(const Matrix<F>& m, const Vec<F>& simple, std::size_t& tau_out) {
    const F& f = m.field();
    Matrix<F> nil = m.sub(Matrix<F>::identity(f, m.rows()));
    FittingSplit<F> split = fitting_split(m);
    SideData<F> side{nil, split, {}};
    if (split.n1 == 0) {
        require(vec_is_zero(f, simple), Errc::tau_mismatch,
                "nonzero representative with trivial v1");
        tau_out = 0;
        return side;
    }
    ChainDecomposition<F> dec = nilpotent_chains(split, m);
    if (vec_is_zero(f, simple)) {
        tau_out = 0;
        side.ordered = dec.chains;
        return side;
    }
    RebasedChains<F> reb = rebase_chains(m, dec, simple);
    require(reb.tau >= 1, Errc::tau_mismatch, "representative lies in (X-1)V yet is nonzero");
    // substitute the given vector for the rebased generator; valid exactly
    // when the input generates a complemented cyclic submodule
    reb.chains.chains[*reb.distinguished].generator = simple;
    try {
        verify_chain_decomposition(nil, count_chain_dims(dec), reb.chains);
    } catch (const Error&) {
        raise(Errc::tau_mismatch, "representative does not head a complemented chain");
    }
    tau_out = reb.tau;
    side.ordered.push_back(reb.chains.chains[*reb.distinguished]);
    for (std::size_t i = 0; i < reb.chains.chains.size(); ++i)
        if (i != *reb.distinguished) side.ordered.push_back(reb.chains.chains[i]);
    return side;
}

} // namespace detail

/// Invertible T with T*mL = mR*T and T*asimple = bsimple. Chains of the
/// unipotent parts are matched by depth (the distinguished chains to each
/// other); the complementary summands are matched through their Frobenius
/// bases. Preconditions: equal invariant factors, and the representatives
/// generate complemented cyclic submodules of equal depth (or are both zero).
template <FieldElements F>
Matrix<F> module_isomorphism(const Matrix<F>& m_left, const Matrix<F>& m_right,
                             const Vec<F>& asimple, const Vec<F>& bsimple) {
    const F& f = m_left.field();
    require(f == m_right.field(), Errc::field_mismatch, "sides over different fields");
    require(m_left.rows() == m_right.rows() && m_left.is_square() && m_right.is_square(),
            Errc::dimension_mismatch, "sides of different dimension");
    require(invariant_factors(m_left) == invariant_factors(m_right), Errc::not_similar,
            "linear parts are not similar");
    const std::size_t n = m_left.rows();

    std::size_t tau_left = 0, tau_right = 0;
    auto left = detail::prepare_side(m_left, asimple, tau_left);
    auto right = detail::prepare_side(m_right, bsimple, tau_right);
    require(tau_left == tau_right, Errc::tau_mismatch, "representatives have different depth");
    require(left.ordered.size() == right.ordered.size(), Errc::internal,
            "similar matrices with different chain counts");

    std::vector<Vec<F>> src_cols, img_cols;
    for (std::size_t i = 0; i < left.ordered.size(); ++i) {
        require(left.ordered[i].depth == right.ordered[i].depth, Errc::internal,
                "similar matrices with different chain depths");
        Vec<F> src = left.ordered[i].generator;
        Vec<F> img = right.ordered[i].generator;
        for (std::size_t j = 0; j < left.ordered[i].depth; ++j) {
            src_cols.push_back(src);
            img_cols.push_back(img);
            src = left.nil.mul_vec(src);
            img = right.nil.mul_vec(img);
        }
    }

    if (left.split.w.dim() > 0) {
        Matrix<F> wl = left.split.w.basis().transpose();
        Matrix<F> wr = right.split.w.basis().transpose();
        auto rl = solve_matrix(wl, m_left.mul(wl));
        auto rr = solve_matrix(wr, m_right.mul(wr));
        require(rl.has_value() && rr.has_value(), Errc::internal, "w summand is not invariant");
        FrobeniusBasis<F> fl = frobenius_basis(*rl);
        FrobeniusBasis<F> fr = frobenius_basis(*rr);
        require(fl.form == fr.form, Errc::internal,
                "similar matrices with different canonical forms on w");
        Matrix<F> src_w = wl.mul(fl.basis);
        Matrix<F> img_w = wr.mul(fr.basis);
        for (std::size_t j = 0; j < src_w.cols(); ++j) {
            src_cols.push_back(src_w.col(j));
            img_cols.push_back(img_w.col(j));
        }
    }

    require(src_cols.size() == n, Errc::internal, "basis assembly fell short");
    Matrix<F> src = cols_to_matrix(f, n, src_cols);
    Matrix<F> img = cols_to_matrix(f, n, img_cols);
    Matrix<F> t = img.mul(inverse(src));

    require(is_invertible(t), Errc::internal, "module isomorphism is singular");
    require(t.mul(m_left) == m_right.mul(t), Errc::internal,
            "module isomorphism does not intertwine");
    require(t.mul_vec(asimple) == bsimple, Errc::internal,
            "module isomorphism misses the representative");
    return t;
}

} // namespace affsim
