#pragma once

#include "tannaka/matrix.hpp"

#include <vector>

namespace tannaka {

// Quotient of an ambient coordinate space by the column span of a relation
// matrix.  The quotient basis is the set of non-pivot ambient coordinates of
// the reduced relation row space (ambient order), so normal forms are
// deterministic.  projection*section = id, ker(projection) = relation span,
// and the section sends each quotient basis vector to the corresponding
// ambient basis vector.
class QuotientSpace {
public:
    QuotientSpace() = default;

    QuotientSpace(std::size_t ambient_dim, const Matrix& relation_columns) {
        ambient_ = ambient_dim;
        Matrix rel = relation_columns;
        if (rel.rows() != ambient_)
            throw std::invalid_argument("QuotientSpace: relation ambient mismatch");
        RrefResult r = rref(rel.transpose());
        rel_rref_ = r.reduced;
        rel_pivots_ = r.pivot_columns;
        std::vector<bool> is_pivot(ambient_, false);
        for (std::size_t c : rel_pivots_) is_pivot[c] = true;
        for (std::size_t c = 0; c < ambient_; ++c)
            if (!is_pivot[c]) basis_.push_back(c);

        projection_ = Matrix(basis_.size(), ambient_);
        for (std::size_t a = 0; a < ambient_; ++a) {
            // normal form of e_a: subtract rref relation rows to clear pivot
            // coordinates, read off the free coordinates
            std::vector<Scalar> nf(ambient_);
            nf[a] = Scalar(1);
            for (std::size_t pi = 0; pi < rel_pivots_.size(); ++pi) {
                Scalar f = nf[rel_pivots_[pi]];
                if (f.is_zero()) continue;
                for (std::size_t j = 0; j < ambient_; ++j)
                    nf[j] -= f * rel_rref_.at(pi, j);
            }
            for (std::size_t q = 0; q < basis_.size(); ++q)
                projection_.at(q, a) = nf[basis_[q]];
        }
        section_ = Matrix(ambient_, basis_.size());
        for (std::size_t q = 0; q < basis_.size(); ++q)
            section_.at(basis_[q], q) = Scalar(1);
    }

    static QuotientSpace trivial(std::size_t ambient_dim) {
        return QuotientSpace(ambient_dim, Matrix(ambient_dim, 0));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }

    // quotient basis element q corresponds to ambient coordinate basis_[q]
    const std::vector<std::size_t>& basis_coords() const { return basis_; }

    const Matrix& projection() const { return projection_; }
    const Matrix& section() const { return section_; }

    bool kills(const Matrix& ambient_cols) const {
        return (projection_ * ambient_cols).is_zero();
    }

    // induced map on quotients of an ambient map f : this.ambient -> target.ambient;
    // caller is responsible for f mapping relations into relations
    Matrix induce(const QuotientSpace& target, const Matrix& f) const {
        return target.projection() * f * section_;
    }

private:
    std::size_t ambient_ = 0;
    Matrix rel_rref_;
    std::vector<std::size_t> rel_pivots_;
    std::vector<std::size_t> basis_;
    Matrix projection_;
    Matrix section_;
};

} // namespace tannaka
