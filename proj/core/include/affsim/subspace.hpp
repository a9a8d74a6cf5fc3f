#pragma once

#include "affsim/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace affsim {

/// Linear subspace of F^n held as an RREF basis (rows), so equality of
/// subspaces is equality of representations.
template <FieldElements F>
class Subspace {
public:
    static Subspace zero(F field, std::size_t ambient) {
        return Subspace(ambient, Matrix<F>(std::move(field), 0, ambient));
    }

    static Subspace full(F field, std::size_t ambient) {
        return Subspace(ambient, Matrix<F>::identity(std::move(field), ambient));
    }

    /// Row space of an arbitrary spanning matrix.
    static Subspace span_of_rows(const Matrix<F>& rows) {
        auto red = rref(rows);
        return Subspace(rows.cols(), red.r.block(0, 0, red.rank, rows.cols()));
    }

    static Subspace span_of_vectors(const F& field, std::size_t ambient,
                                    const std::vector<Vec<F>>& vecs) {
        Matrix<F> m(field, vecs.size(), ambient);
        for (std::size_t i = 0; i < vecs.size(); ++i) m.set_row(i, vecs[i]);
        return span_of_rows(m);
    }

    /// Column space of a matrix (the image of the linear map it represents).
    static Subspace column_space(const Matrix<F>& m) { return span_of_rows(m.transpose()); }

    /// Right null space {x : m*x = 0}.
    static Subspace null_space(const Matrix<F>& m) { return span_of_rows(kernel(m)); }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<F>& basis() const { return basis_; }
    const F& field() const { return basis_.field(); }

    bool contains(const Vec<F>& v) const {
        const F& f = field();
        require(v.size() == ambient_, Errc::dimension_mismatch, "membership test length");
        // reduce v against the RREF rows; membership iff the residue vanishes
        Vec<F> r = v;
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            std::size_t pc = pivot_col(i);
            if (f.is_zero(r[pc])) continue;
            const auto c = r[pc];
            for (std::size_t j = 0; j < ambient_; ++j)
                r[j] = f.sub(r[j], f.mul(c, basis_.at(i, j)));
        }
        return vec_is_zero(f, r);
    }

    bool contains(const Subspace& o) const {
        check_compatible(o);
        for (std::size_t i = 0; i < o.basis_.rows(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    Subspace sum(const Subspace& o) const {
        check_compatible(o);
        return span_of_rows(basis_.vstack(o.basis_));
    }

    /// Zassenhaus: rref of [U U; W 0]; rows with zero left half carry the
    /// intersection in their right half.
    Subspace intersect(const Subspace& o) const {
        check_compatible(o);
        const F& f = field();
        const std::size_t n = ambient_;
        Matrix<F> z(f, dim() + o.dim(), 2 * n);
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < n; ++j) {
                z.at(i, j) = basis_.at(i, j);
                z.at(i, n + j) = basis_.at(i, j);
            }
        for (std::size_t i = 0; i < o.dim(); ++i)
            for (std::size_t j = 0; j < n; ++j) z.at(dim() + i, j) = o.basis_.at(i, j);
        auto red = rref(z);
        std::vector<Vec<F>> rows;
        for (std::size_t i = 0; i < red.rank; ++i) {
            if (red.pivots[i] < n) continue;
            Vec<F> right(n, f.zero());
            for (std::size_t j = 0; j < n; ++j) right[j] = red.r.at(i, n + j);
            rows.push_back(std::move(right));
        }
        return span_of_vectors(f, n, rows);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    Subspace(std::size_t ambient, Matrix<F> basis) : ambient_(ambient), basis_(std::move(basis)) {}

    std::size_t pivot_col(std::size_t row) const {
        const F& f = field();
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!f.is_zero(basis_.at(row, j))) return j;
        raise(Errc::internal, "zero row in subspace basis");
    }

    void check_compatible(const Subspace& o) const {
        require(field() == o.field(), Errc::field_mismatch, "subspaces over different fields");
        require(ambient_ == o.ambient_, Errc::dimension_mismatch,
                "subspaces of different ambient dimension");
    }

    std::size_t ambient_;
    Matrix<F> basis_;
};

} // namespace affsim
