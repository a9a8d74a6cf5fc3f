#pragma once

#include "affsim/field.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace affsim {

template <FieldElements F>
using Vec = std::vector<typename F::Elem>;

/// Dense row-major matrix over a runtime field context. All arithmetic is
/// exact; dimension mismatches throw rather than truncate.
template <FieldElements F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    static Matrix from_rows(F field, const std::vector<std::vector<Elem>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.front().size();
        Matrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            require(rows[i].size() == c, Errc::dimension_mismatch, "ragged row list");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec<F> row(std::size_t i) const {
        return Vec<F>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    Vec<F> col(std::size_t j) const {
        Vec<F> v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
        return v;
    }

    void set_row(std::size_t i, const Vec<F>& v) {
        require(v.size() == cols_, Errc::dimension_mismatch, "row length");
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
    }

    void set_col(std::size_t j, const Vec<F>& v) {
        require(v.size() == rows_, Errc::dimension_mismatch, "column length");
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!field_.is_zero(x)) return false;
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix add(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.add(a_[k], o.a_[k]);
        return r;
    }

    Matrix sub(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.sub(a_[k], o.a_[k]);
        return r;
    }

    Matrix neg() const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.neg(a_[k]);
        return r;
    }

    Matrix scale(const Elem& c) const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.mul(a_[k], c);
        return r;
    }

    Matrix mul(const Matrix& o) const {
        check_same_field(o);
        require(cols_ == o.rows_, Errc::dimension_mismatch, "matrix product shape");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& aik = at(i, k);
                if (field_.is_zero(aik)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = field_.add(r.at(i, j), field_.mul(aik, o.at(k, j)));
            }
        return r;
    }

    Vec<F> mul_vec(const Vec<F>& v) const {
        require(v.size() == cols_, Errc::dimension_mismatch, "matrix-vector shape");
        Vec<F> r(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r[i] = field_.add(r[i], field_.mul(at(i, j), v[j]));
        return r;
    }

    Matrix pow(std::size_t e) const {
        require(is_square(), Errc::dimension_mismatch, "power of non-square matrix");
        Matrix r = identity(field_, rows_);
        Matrix b = *this;
        while (e > 0) {
            if (e & 1) r = r.mul(b);
            b = b.mul(b);
            e >>= 1;
        }
        return r;
    }

    /// Stack other below this.
    Matrix vstack(const Matrix& o) const {
        check_same_field(o);
        require(cols_ == o.cols_, Errc::dimension_mismatch, "vstack width");
        Matrix r(field_, rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
        return r;
    }

    Matrix hstack(const Matrix& o) const {
        check_same_field(o);
        require(rows_ == o.rows_, Errc::dimension_mismatch, "hstack height");
        Matrix r(field_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        require(i0 + r <= rows_ && j0 + c <= cols_, Errc::dimension_mismatch, "block range");
        Matrix m(field_, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    /// Lexicographic over row-major entries via the field's tie-break order.
    bool lex_less(const Matrix& o) const {
        check_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) {
            if (a_[k] == o.a_[k]) continue;
            return field_.less(a_[k], o.a_[k]);
        }
        return false;
    }

private:
    void check_same_field(const Matrix& o) const {
        require(field_ == o.field_, Errc::field_mismatch, "matrices over different fields");
    }
    void check_same_shape(const Matrix& o) const {
        check_same_field(o);
        require(rows_ == o.rows_ && cols_ == o.cols_, Errc::dimension_mismatch, "matrix shape");
    }

    F field_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

// ---- vector helpers -------------------------------------------------------

template <FieldElements F>
Vec<F> vec_zero(const F& f, std::size_t n) {
    return Vec<F>(n, f.zero());
}

template <FieldElements F>
Vec<F> vec_add(const F& f, const Vec<F>& a, const Vec<F>& b) {
    require(a.size() == b.size(), Errc::dimension_mismatch, "vector sum length");
    Vec<F> r(a.size(), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

template <FieldElements F>
Vec<F> vec_sub(const F& f, const Vec<F>& a, const Vec<F>& b) {
    require(a.size() == b.size(), Errc::dimension_mismatch, "vector difference length");
    Vec<F> r(a.size(), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

template <FieldElements F>
Vec<F> vec_scale(const F& f, const typename F::Elem& c, const Vec<F>& a) {
    Vec<F> r(a.size(), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
    return r;
}

template <FieldElements F>
bool vec_is_zero(const F& f, const Vec<F>& a) {
    for (const auto& x : a)
        if (!f.is_zero(x)) return false;
    return true;
}

template <FieldElements F>
bool vec_lex_less(const F& f, const Vec<F>& a, const Vec<F>& b) {
    require(a.size() == b.size(), Errc::dimension_mismatch, "vector compare length");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return f.less(a[i], b[i]);
    }
    return false;
}

template <FieldElements F>
Matrix<F> unit_col(const F& f, std::size_t n, std::size_t i) {
    Matrix<F> m(f, n, 1);
    m.at(i, 0) = f.one();
    return m;
}

template <FieldElements F>
Vec<F> unit_vec(const F& f, std::size_t n, std::size_t i) {
    Vec<F> v(n, f.zero());
    v[i] = f.one();
    return v;
}

template <FieldElements F>
Matrix<F> cols_to_matrix(const F& f, std::size_t n, const std::vector<Vec<F>>& cols) {
    Matrix<F> m(f, n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

// ---- elimination ----------------------------------------------------------

template <FieldElements F>
struct RrefResult {
    Matrix<F> r;                     // reduced row-echelon form
    std::size_t rank;                // number of pivots
    Matrix<F> transform;             // invertible, transform * input = r
    std::vector<std::size_t> pivots; // pivot column per pivot row
};

/// Gauss-Jordan with the first nonzero entry as pivot (exact arithmetic, so
/// pivot choice only affects determinism, which this makes total).
template <FieldElements F>
RrefResult<F> rref(const Matrix<F>& m) {
    const F& f = m.field();
    Matrix<F> r = m;
    Matrix<F> t = Matrix<F>::identity(f, m.rows());
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < m.cols() && pr < m.rows(); ++pc) {
        std::size_t sel = pr;
        while (sel < m.rows() && f.is_zero(r.at(sel, pc))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(r.at(sel, j), r.at(pr, j));
            for (std::size_t j = 0; j < m.rows(); ++j) std::swap(t.at(sel, j), t.at(pr, j));
        }
        const auto piv_inv = f.inv(r.at(pr, pc));
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(pr, j) = f.mul(piv_inv, r.at(pr, j));
        for (std::size_t j = 0; j < m.rows(); ++j) t.at(pr, j) = f.mul(piv_inv, t.at(pr, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pr || f.is_zero(r.at(i, pc))) continue;
            const auto c = r.at(i, pc);
            for (std::size_t j = 0; j < m.cols(); ++j)
                r.at(i, j) = f.sub(r.at(i, j), f.mul(c, r.at(pr, j)));
            for (std::size_t j = 0; j < m.rows(); ++j)
                t.at(i, j) = f.sub(t.at(i, j), f.mul(c, t.at(pr, j)));
        }
        pivots.push_back(pc);
        ++pr;
    }
    return {std::move(r), pr, std::move(t), std::move(pivots)};
}

/// Solve a*x = rhs exactly; free variables are set to zero. Empty result
/// means rhs is outside the column space.
template <FieldElements F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& rhs) {
    const F& f = a.field();
    require(rhs.size() == a.rows(), Errc::dimension_mismatch, "solve rhs length");
    Matrix<F> b(f, a.rows(), 1);
    b.set_col(0, rhs);
    auto red = rref(a.hstack(b));
    Vec<F> x(a.cols(), f.zero());
    for (std::size_t i = 0; i < red.rank; ++i) {
        std::size_t pc = red.pivots[i];
        if (pc == a.cols()) return std::nullopt; // pivot in the rhs column: inconsistent
        x[pc] = red.r.at(i, a.cols());
    }
    return x;
}

/// Solve a*X = rhs column by column; empty if any column is unsolvable.
template <FieldElements F>
std::optional<Matrix<F>> solve_matrix(const Matrix<F>& a, const Matrix<F>& rhs) {
    require(rhs.rows() == a.rows(), Errc::dimension_mismatch, "solve rhs height");
    Matrix<F> x(a.field(), a.cols(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        auto col = solve(a, rhs.col(j));
        if (!col) return std::nullopt;
        x.set_col(j, *col);
    }
    return x;
}

/// Basis of the right null space {x : a*x = 0}, one basis vector per row.
template <FieldElements F>
Matrix<F> kernel(const Matrix<F>& a) {
    const F& f = a.field();
    auto red = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto pc : red.pivots) is_pivot[pc] = true;
    Matrix<F> basis(f, a.cols() - red.rank, a.cols());
    std::size_t bi = 0;
    for (std::size_t fc = 0; fc < a.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        basis.at(bi, fc) = f.one();
        for (std::size_t i = 0; i < red.rank; ++i)
            basis.at(bi, red.pivots[i]) = f.neg(red.r.at(i, fc));
        ++bi;
    }
    return basis;
}

template <FieldElements F>
std::optional<Matrix<F>> try_inverse(const Matrix<F>& a) {
    require(a.is_square(), Errc::dimension_mismatch, "inverse of non-square matrix");
    auto red = rref(a);
    if (red.rank != a.rows()) return std::nullopt;
    return red.transform;
}

template <FieldElements F>
Matrix<F> inverse(const Matrix<F>& a) {
    auto inv = try_inverse(a);
    require(inv.has_value(), Errc::not_invertible, "matrix is singular");
    return *inv;
}

template <FieldElements F>
bool is_invertible(const Matrix<F>& a) {
    return a.is_square() && rref(a).rank == a.rows();
}

} // namespace affsim
