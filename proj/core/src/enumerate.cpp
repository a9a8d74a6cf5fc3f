#include "affsim/enumerate.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace affsim {

namespace {

// saturating p^e, good enough for guard checks
std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > (std::uint64_t(1) << 62) / base) return std::uint64_t(-1);
        r *= base;
    }
    return r;
}

std::string factors_key(const InvariantFactors<PrimeField>& inv) {
    std::string key;
    for (const auto& factor : inv.factors) {
        for (const auto& c : factor.coeffs()) {
            key += std::to_string(c);
            key += ',';
        }
        key += ';';
    }
    return key;
}

std::uint64_t map_index(const AffineMap<PrimeField>& f) {
    const std::uint32_t p = f.field().modulus();
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = 0; j < f.dim(); ++j) idx = idx * p + f.linear().at(i, j);
    for (std::size_t i = 0; i < f.dim(); ++i) idx = idx * p + f.translation()[i];
    return idx;
}

} // namespace

std::vector<Vec<PrimeField>> enumerate_vectors(const PrimeField& field, std::size_t n) {
    const std::uint32_t p = field.modulus();
    require(ipow(p, n) <= 1u << 20, Errc::too_large, "vector space too large to enumerate");
    std::vector<Vec<PrimeField>> out;
    Vec<PrimeField> v(n, 0);
    for (;;) {
        out.push_back(v);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++v[i] < p) break;
            v[i] = 0;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

std::vector<Matrix<PrimeField>> enumerate_matrices(const PrimeField& field, std::size_t n) {
    require(ipow(field.modulus(), n * n) <= 2'000'000, Errc::too_large,
            "matrix space too large to enumerate");
    std::vector<Matrix<PrimeField>> out;
    for (const auto& v : enumerate_vectors(field, n * n)) {
        Matrix<PrimeField> m(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<LinearClass> enumerate_linear_classes(std::size_t n, std::uint32_t p) {
    PrimeField field(p);
    require(ipow(p, n * n) <= 1'000'000, Errc::too_large,
            "linear class enumeration guard: p^(n^2) > 10^6");
    std::vector<LinearClass> out;
    std::map<std::string, std::size_t> seen;
    for (const auto& m : enumerate_matrices(field, n)) {
        auto inv = invariant_factors(m);
        std::string key = factors_key(inv);
        if (seen.contains(key)) continue;
        seen[key] = out.size();
        out.push_back({m, std::move(inv)});
    }
    return out;
}

std::size_t affine_class_count(const Matrix<PrimeField>& m) {
    auto split = fitting_split(m);
    if (split.n1 == 0) return 1;
    auto dec = nilpotent_chains(split, m);
    std::vector<std::size_t> depths;
    for (const auto& chain : dec.chains) depths.push_back(chain.depth);
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
    return 1 + depths.size();
}

ClassTable brute_force_affine_classes(std::size_t n, std::uint32_t p, bool invertible_only) {
    PrimeField field(p);
    require(ipow(p, n * n + n) <= 100'000, Errc::too_large,
            "brute-force class guard: more than 10^5 affine maps");

    std::vector<Matrix<PrimeField>> invertibles;
    std::vector<AffineMap<PrimeField>> maps;
    std::map<std::uint64_t, std::size_t> position;
    const auto linears = enumerate_matrices(field, n);
    const auto vectors = enumerate_vectors(field, n);
    for (const auto& m : linears) {
        const bool inv = is_invertible(m);
        if (inv) invertibles.push_back(m);
        if (invertible_only && !inv) continue;
        for (const auto& b : vectors) {
            maps.emplace_back(m, b);
            position.emplace(map_index(maps.back()), maps.size() - 1);
        }
    }

    std::vector<std::pair<AffineMap<PrimeField>, AffineMap<PrimeField>>> conjugators;
    for (const auto& t : invertibles)
        for (const auto& s : vectors) {
            AffineMap<PrimeField> h(t, s);
            conjugators.emplace_back(h, h.inverse());
        }

    ClassTable table{FieldSpec::prime(p), n, invertible_only, {}};
    std::vector<bool> visited(maps.size(), false);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (visited[i]) continue;
        std::size_t orbit = 0;
        for (const auto& [h, h_inv] : conjugators) {
            AffineMap<PrimeField> g = compose(h, compose(maps[i], h_inv));
            std::size_t pos = position.at(map_index(g));
            if (!visited[pos]) {
                visited[pos] = true;
                ++orbit;
            }
        }
        table.classes.push_back(
            {maps[i], invariant_factors(maps[i].linear()), tau(maps[i]), orbit});
    }
    return table;
}

ClassTable derive_affine_classes(std::size_t n, std::uint32_t p, bool invertible_only) {
    ClassTable table{FieldSpec::prime(p), n, invertible_only, {}};
    for (const auto& lin : enumerate_linear_classes(n, p)) {
        if (invertible_only && !is_invertible(lin.representative)) continue;
        const auto& m = lin.representative;
        const PrimeField& field = m.field();
        table.classes.push_back(
            {AffineMap<PrimeField>(m, vec_zero(field, n)), lin.factors, 0, std::nullopt});
        auto split = fitting_split(m);
        if (split.n1 == 0) continue;
        auto dec = nilpotent_chains(split, m);
        std::vector<std::pair<std::size_t, Vec<PrimeField>>> by_depth; // ascending, distinct
        for (const auto& chain : dec.chains) {
            if (!by_depth.empty() && by_depth.back().first == chain.depth) continue;
            by_depth.emplace_back(chain.depth, chain.generator);
        }
        std::reverse(by_depth.begin(), by_depth.end());
        for (const auto& [depth, gen] : by_depth) {
            AffineMap<PrimeField> rep(m, gen);
            require(tau(rep) == depth, Errc::internal,
                    "chain generator does not realize its depth as tau");
            table.classes.push_back({std::move(rep), lin.factors, depth, std::nullopt});
        }
    }
    return table;
}

std::vector<Subspace<PrimeField>> enumerate_subspaces(const PrimeField& field, std::size_t n) {
    require(ipow(field.modulus(), n) <= 81, Errc::too_large, "subspace enumeration guard");
    const std::uint32_t p = field.modulus();
    std::vector<Subspace<PrimeField>> out;
    out.push_back(Subspace<PrimeField>::zero(field, n));
    for (std::size_t r = 1; r <= n; ++r) {
        // pivot column combinations, lexicographic
        std::vector<std::size_t> pivots(r);
        for (std::size_t i = 0; i < r; ++i) pivots[i] = i;
        for (;;) {
            // free positions: (i, j) with j > pivots[i], j not a pivot column
            std::vector<std::pair<std::size_t, std::size_t>> free_pos;
            std::vector<bool> is_pivot(n, false);
            for (auto c : pivots) is_pivot[c] = true;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = pivots[i] + 1; j < n; ++j)
                    if (!is_pivot[j]) free_pos.emplace_back(i, j);

            Vec<PrimeField> fill(free_pos.size(), 0);
            for (;;) {
                Matrix<PrimeField> basis(field, r, n);
                for (std::size_t i = 0; i < r; ++i) basis.at(i, pivots[i]) = 1;
                for (std::size_t k = 0; k < free_pos.size(); ++k)
                    basis.at(free_pos[k].first, free_pos[k].second) = fill[k];
                out.push_back(Subspace<PrimeField>::span_of_rows(basis));

                std::size_t k = fill.size();
                bool done = true;
                while (k > 0) {
                    --k;
                    if (++fill[k] < p) {
                        done = false;
                        break;
                    }
                    fill[k] = 0;
                }
                if (done) break;
            }

            // next pivot combination
            std::size_t i = r;
            bool more = false;
            while (i > 0) {
                --i;
                if (pivots[i] + (r - i) < n) {
                    ++pivots[i];
                    for (std::size_t j = i + 1; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
                    more = true;
                    break;
                }
            }
            if (!more) break;
        }
    }
    return out;
}

std::size_t brute_force_min_flat(const AffineMap<PrimeField>& f) {
    const PrimeField& field = f.field();
    const std::size_t n = f.dim();
    auto subspaces = enumerate_subspaces(field, n);
    std::stable_sort(subspaces.begin(), subspaces.end(),
                     [](const auto& a, const auto& b) { return a.dim() < b.dim(); });
    const auto points = enumerate_vectors(field, n);
    for (const auto& w : subspaces) {
        for (const auto& a : points)
            if (is_invariant_flat(a, w, f)) return w.dim();
    }
    raise(Errc::internal, "no invariant flat found, not even the full space");
}

bool tables_agree(const ClassTable& a, const ClassTable& b) {
    auto key_multiset = [](const ClassTable& t) {
        std::vector<std::string> keys;
        for (const auto& c : t.classes)
            keys.push_back(factors_key(c.linear_invariant) + "#" + std::to_string(c.tau));
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    return key_multiset(a) == key_multiset(b);
}

} // namespace affsim
