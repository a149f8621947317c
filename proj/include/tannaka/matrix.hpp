#pragma once

#include "tannaka/scalar.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tannaka {

// Dense exact matrix, row-major.  All arithmetic is exact; there is no
// pivoting by magnitude anywhere, pivots are chosen first-nonzero scanning
// top-to-bottom, left-to-right, so every reduction is deterministic.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw std::invalid_argument("Matrix: entry count mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix column(const std::vector<Scalar>& v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
        return m;
    }

    static Matrix basis_column(std::size_t n, std::size_t i) {
        Matrix m(n, 1);
        m.at(i, 0) = Scalar(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    const std::vector<Scalar>& entries() const { return e_; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? Scalar(1) : Scalar(0))) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != b.e_[i]) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }

    friend Matrix operator*(const Scalar& s, const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = s * a.e_[i];
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: size mismatch in product");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b.at(k, j);
                    if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    Matrix operator-() const { return Scalar(-1) * *this; }

    // Kronecker product; index (i1*r2+i2, j1*c2+j2), so row-major tensor
    // coordinates compose associatively on the nose.
    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i1 = 0; i1 < a.rows_; ++i1)
            for (std::size_t j1 = 0; j1 < a.cols_; ++j1) {
                const Scalar& v = a.at(i1, j1);
                if (v.is_zero()) continue;
                for (std::size_t i2 = 0; i2 < b.rows_; ++i2)
                    for (std::size_t j2 = 0; j2 < b.cols_; ++j2)
                        r.at(i1 * b.rows_ + i2, j1 * b.cols_ + j2) = v * b.at(i2, j2);
            }
        return r;
    }

    friend Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
        Matrix r(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
        }
        return r;
    }

    friend Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: col mismatch");
        Matrix r(a.rows_ + b.rows_, a.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r.at(a.rows_ + i, j) = b.at(i, j);
        return r;
    }

    Matrix col(std::size_t j) const {
        Matrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
        return c;
    }

    std::vector<Scalar> col_vec(std::size_t j) const {
        std::vector<Scalar> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank = 0;
};

inline RrefResult rref(Matrix m) {
    RrefResult res;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t sel = lead;
        while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != lead)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(lead, j));
        Scalar inv = m.at(lead, c).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(lead, j) = inv * m.at(lead, j);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m.at(r, c).is_zero()) continue;
            Scalar f = m.at(r, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) -= f * m.at(lead, j);
        }
        res.pivot_columns.push_back(c);
        ++lead;
    }
    res.rank = res.pivot_columns.size();
    res.reduced = std::move(m);
    return res;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

// Columns form a basis of the right null space, ordered by free column index.
inline Matrix kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_columns) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(m.cols(), free_cols.size());
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
        std::size_t f = free_cols[idx];
        k.at(f, idx) = Scalar(1);
        for (std::size_t pi = 0; pi < r.pivot_columns.size(); ++pi)
            k.at(r.pivot_columns[pi], idx) = -r.reduced.at(pi, f);
    }
    return k;
}

// Solves a x = b columnwise; nullopt when inconsistent.  The particular
// solution has zeros in all free coordinates.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    RrefResult r = rref(hstack(a, b));
    Matrix x(a.cols(), b.cols());
    for (std::size_t pi = 0; pi < r.pivot_columns.size(); ++pi) {
        std::size_t c = r.pivot_columns[pi];
        if (c >= a.cols()) return std::nullopt; // pivot in the augmented block
        for (std::size_t j = 0; j < b.cols(); ++j) x.at(c, j) = r.reduced.at(pi, a.cols() + j);
    }
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Matrix::identity(m.rows()));
    if (!x) return std::nullopt;
    if (!((*x) * m).is_identity()) return std::nullopt;
    return x;
}

inline bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Section/retraction pair for an exact idempotent: retraction*section = id,
// section*retraction = e.  Section columns are the pivot columns of e.
struct SplitIdempotent {
    Matrix section;
    Matrix retraction;
};

inline SplitIdempotent split_idempotent(const Matrix& e) {
    if (e.rows() != e.cols()) throw std::invalid_argument("split_idempotent: not square");
    if (e * e != e) throw std::domain_error("NotIdempotent");
    RrefResult r = rref(e);
    Matrix section(e.rows(), r.rank);
    for (std::size_t k = 0; k < r.rank; ++k)
        for (std::size_t i = 0; i < e.rows(); ++i) section.at(i, k) = e.at(i, r.pivot_columns[k]);
    // e acts as the identity on its column space, so section = e*section and
    // the system section*X = e is solvable with X*section = id.
    auto retraction = solve(section, e);
    if (!retraction) throw std::logic_error("split_idempotent: internal solve failed");
    return {section, *retraction};
}

// Span helpers; columns of each argument are vectors of the same ambient.
inline bool in_span(const Matrix& span_cols, const Matrix& v) {
    return solve(span_cols, v).has_value();
}

inline bool spans_contain(const Matrix& big, const Matrix& candidates) {
    // every column of candidates lies in the column span of big
    if (candidates.cols() == 0) return true;
    return solve(big, candidates).has_value();
}

inline bool same_span(const Matrix& a, const Matrix& b) {
    return spans_contain(a, b) && spans_contain(b, a);
}

// Deterministic basis of the column span: pivot columns of rref(m^T) rows...
// kept simpler: rref of transpose gives row-space basis of m^T = column
// space basis of m, rows normalized.
inline Matrix column_space_basis(const Matrix& m) {
    RrefResult r = rref(m.transpose());
    Matrix b(m.rows(), r.rank);
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) b.at(j, i) = r.reduced.at(i, j);
    return b;
}

} // namespace tannaka
