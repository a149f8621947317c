#pragma once

#include "tannaka/matrix.hpp"
#include "tannaka/quotient.hpp"
#include "tannaka/report.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tannaka {

// Finite-rank unital k-algebra given by structure constants.
// left_mult[i] is the matrix of multiplication by the i-th basis element,
// column j = coordinates of b_i * b_j.
struct AlgebraPresentation {
    FieldSpec field;
    std::size_t dim = 0;
    std::vector<Matrix> left_mult;
    std::vector<Scalar> unit;

    Matrix unit_col() const { return Matrix::column(unit); }

    std::vector<Scalar> mult(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
        Matrix acc(dim, 1);
        for (std::size_t i = 0; i < dim; ++i) {
            if (x[i].is_zero()) continue;
            acc = acc + x[i] * (left_mult[i] * Matrix::column(y));
        }
        return acc.col_vec(0);
    }

    Matrix left_mult_of(const Matrix& x_col) const {
        Matrix acc(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            if (!x_col.at(i, 0).is_zero()) acc = acc + x_col.at(i, 0) * left_mult[i];
        return acc;
    }

    Matrix right_mult_basis(std::size_t k) const {
        // column j = coords of b_j * b_k
        Matrix m(dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
            Matrix c = left_mult[j] * Matrix::basis_column(dim, k);
            for (std::size_t l = 0; l < dim; ++l) m.at(l, j) = c.at(l, 0);
        }
        return m;
    }

    Matrix right_mult_of(const Matrix& x_col) const {
        Matrix acc(dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            if (!x_col.at(k, 0).is_zero()) acc = acc + x_col.at(k, 0) * right_mult_basis(k);
        return acc;
    }

    // the opposite algebra, same basis
    AlgebraPresentation opposite() const {
        AlgebraPresentation op;
        op.field = field;
        op.dim = dim;
        op.unit = unit;
        op.left_mult.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) op.left_mult[i] = right_mult_basis(i);
        return op;
    }

    static AlgebraPresentation ground_field(const FieldSpec& f) {
        AlgebraPresentation a;
        a.field = f;
        a.dim = 1;
        a.left_mult = {Matrix::identity(1)};
        a.unit = {Scalar(1)};
        return a;
    }
};

using AlgebraPtr = std::shared_ptr<const AlgebraPresentation>;

inline Report validate_algebra(const AlgebraPresentation& a) {
    Report rep;
    if (a.left_mult.size() != a.dim || a.unit.size() != a.dim) {
        rep.fail("shape", "algebra.shape", "table sizes disagree with dim");
        return rep;
    }
    bool assoc = true;
    std::string w;
    for (std::size_t i = 0; i < a.dim && assoc; ++i)
        for (std::size_t j = 0; j < a.dim && assoc; ++j)
            for (std::size_t k = 0; k < a.dim; ++k) {
                std::vector<Scalar> bi(a.dim), bj(a.dim), bk(a.dim);
                bi[i] = Scalar(1); bj[j] = Scalar(1); bk[k] = Scalar(1);
                auto lhs = a.mult(a.mult(bi, bj), bk);
                auto rhs = a.mult(bi, a.mult(bj, bk));
                if (Matrix::column(lhs) != Matrix::column(rhs)) {
                    assoc = false;
                    w = "basis triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
                    break;
                }
            }
    rep.add("associativity", assoc, "algebra.associativity", w);

    bool unital = true;
    std::string uw;
    for (std::size_t i = 0; i < a.dim; ++i) {
        std::vector<Scalar> bi(a.dim);
        bi[i] = Scalar(1);
        if (Matrix::column(a.mult(a.unit, bi)) != Matrix::basis_column(a.dim, i) ||
            Matrix::column(a.mult(bi, a.unit)) != Matrix::basis_column(a.dim, i)) {
            unital = false;
            uw = "basis element " + std::to_string(i);
            break;
        }
    }
    rep.add("unit", unital, "algebra.two-sided-unit", uw);
    return rep;
}

// R-R-bimodule with actions of the algebra basis elements.
struct Bimodule {
    AlgebraPtr algebra;
    std::size_t dim = 0;
    std::vector<Matrix> left;  // lambda(b_i)
    std::vector<Matrix> right; // rho(b_i)

    Matrix left_act(const Matrix& r_col) const {
        Matrix acc(dim, dim);
        for (std::size_t i = 0; i < algebra->dim; ++i)
            if (!r_col.at(i, 0).is_zero()) acc = acc + r_col.at(i, 0) * left[i];
        return acc;
    }

    Matrix right_act(const Matrix& r_col) const {
        Matrix acc(dim, dim);
        for (std::size_t i = 0; i < algebra->dim; ++i)
            if (!r_col.at(i, 0).is_zero()) acc = acc + r_col.at(i, 0) * right[i];
        return acc;
    }

    static Bimodule regular(const AlgebraPtr& a) {
        Bimodule m;
        m.algebra = a;
        m.dim = a->dim;
        m.left = a->left_mult;
        m.right.resize(a->dim);
        for (std::size_t i = 0; i < a->dim; ++i) m.right[i] = a->right_mult_basis(i);
        return m;
    }

    static Bimodule zero(const AlgebraPtr& a) {
        Bimodule m;
        m.algebra = a;
        m.dim = 0;
        m.left.assign(a->dim, Matrix(0, 0));
        m.right.assign(a->dim, Matrix(0, 0));
        return m;
    }
};

inline Report validate_bimodule(const Bimodule& m) {
    Report rep;
    const auto& a = *m.algebra;
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < a.dim && ok; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            Matrix cij = a.left_mult[i] * Matrix::basis_column(a.dim, j); // coords of b_i b_j
            Matrix lam(m.dim, m.dim), rho(m.dim, m.dim);
            for (std::size_t l = 0; l < a.dim; ++l) {
                if (!cij.at(l, 0).is_zero()) {
                    lam = lam + cij.at(l, 0) * m.left[l];
                    rho = rho + cij.at(l, 0) * m.right[l];
                }
            }
            if (m.left[i] * m.left[j] != lam) { ok = false; w = "left action pair (" + std::to_string(i) + "," + std::to_string(j) + ")"; break; }
            if (m.right[j] * m.right[i] != rho) { ok = false; w = "right action pair (" + std::to_string(i) + "," + std::to_string(j) + ")"; break; }
        }
    rep.add("action-multiplicativity", ok, "bimodule.action-homomorphism", w);
    rep.add("unitality", m.left_act(a.unit_col()).is_identity() && m.right_act(a.unit_col()).is_identity(),
            "bimodule.unital-actions");
    bool comm = true;
    std::string cw;
    for (std::size_t i = 0; i < a.dim && comm; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            if (m.left[i] * m.right[j] != m.right[j] * m.left[i]) {
                comm = false;
                cw = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
                break;
            }
    rep.add("left-right-commutation", comm, "bimodule.commuting-actions", cw);
    return rep;
}

// M (x)_R N realized as an explicit quotient of M (x)_k N with stored
// projection/section, ambient index (a,b) -> a*dim(N)+b.
struct BimoduleTensor {
    Bimodule module;       // the quotient with induced outer actions
    QuotientSpace space;   // ambient = dim(M)*dim(N)
};

inline BimoduleTensor bimodule_tensor(const Bimodule& m, const Bimodule& n) {
    if (m.algebra.get() != n.algebra.get())
        throw std::invalid_argument("bimodule_tensor: different base algebras");
    const std::size_t D = m.dim * n.dim;
    const std::size_t nr = m.algebra->dim;
    Matrix rel(D, 0);
    for (std::size_t k = 0; k < nr; ++k) {
        Matrix block = kron(m.right[k], Matrix::identity(n.dim)) - kron(Matrix::identity(m.dim), n.left[k]);
        rel = hstack(rel, block);
    }
    BimoduleTensor out;
    out.space = QuotientSpace(D, rel);
    out.module.algebra = m.algebra;
    out.module.dim = out.space.dim();
    out.module.left.resize(nr);
    out.module.right.resize(nr);
    for (std::size_t k = 0; k < nr; ++k) {
        out.module.left[k] = out.space.induce(out.space, kron(m.left[k], Matrix::identity(n.dim)));
        out.module.right[k] = out.space.induce(out.space, kron(Matrix::identity(m.dim), n.right[k]));
    }
    return out;
}

enum class HomSide { RightOnly, TwoSided };

// Basis of k-linear maps M -> N commuting with the right actions (and left
// actions if TwoSided).  Matrices are dim(N) x dim(M); ordering follows the
// kernel_basis normal form, so it is deterministic.
inline std::vector<Matrix> bimodule_hom_basis(const Bimodule& m, const Bimodule& n, HomSide side) {
    if (m.algebra.get() != n.algebra.get())
        throw std::invalid_argument("bimodule_hom_basis: different base algebras");
    const std::size_t nr = m.algebra->dim;
    const std::size_t unknowns = n.dim * m.dim; // vec(X), X : N <- M, row-major
    Matrix sys(0, unknowns);
    auto commute_rows = [&](const Matrix& on_m, const Matrix& on_n) {
        // X*on_m - on_n*X = 0 : (I (x) on_m^T - on_n (x) I) vec(X)
        Matrix row = kron(Matrix::identity(n.dim), on_m.transpose()) - kron(on_n, Matrix::identity(m.dim));
        sys = vstack(sys, row);
    };
    for (std::size_t k = 0; k < nr; ++k) commute_rows(m.right[k], n.right[k]);
    if (side == HomSide::TwoSided)
        for (std::size_t k = 0; k < nr; ++k) commute_rows(m.left[k], n.left[k]);
    Matrix ker = kernel_basis(sys);
    std::vector<Matrix> basis;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        Matrix x(n.dim, m.dim);
        for (std::size_t i = 0; i < n.dim; ++i)
            for (std::size_t j = 0; j < m.dim; ++j) x.at(i, j) = ker.at(i * m.dim + j, c);
        basis.push_back(x);
    }
    return basis;
}

// Frame for expressing a concrete hom matrix in a chosen hom basis.
struct HomFrame {
    std::vector<Matrix> basis;
    Matrix stacked; // vectorized basis matrices as columns

    explicit HomFrame(std::vector<Matrix> b) : basis(std::move(b)) {
        std::size_t vec_len = basis.empty() ? 0 : basis[0].rows() * basis[0].cols();
        stacked = Matrix(vec_len, basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const Matrix& x = basis[c];
            for (std::size_t i = 0; i < x.rows(); ++i)
                for (std::size_t j = 0; j < x.cols(); ++j)
                    stacked.at(i * x.cols() + j, c) = x.at(i, j);
        }
    }

    HomFrame() = default;

    std::optional<Matrix> coords(const Matrix& x) const {
        if (basis.empty()) {
            if (x.is_zero()) return Matrix(0, 1);
            return std::nullopt;
        }
        Matrix v(stacked.rows(), 1);
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) v.at(i * x.cols() + j, 0) = x.at(i, j);
        return solve(stacked, v);
    }

    Matrix from_coords(const Matrix& c) const {
        Matrix x = basis.empty() ? Matrix(0, 0) : Matrix(basis[0].rows(), basis[0].cols());
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!c.at(k, 0).is_zero()) x = x + c.at(k, 0) * basis[k];
        return x;
    }
};

// Right-dual data for a right fgp module: the dual bimodule Hom_R(M_R, R)
// together with finitely many dual-basis pairs (x^i, f^i).
struct DualityDatum {
    Bimodule dual;               // actions in the coordinates of `frame`
    HomFrame frame;              // dual basis elements as R <- M matrices
    Matrix ev;                   // R  <-  dual (x)_k M,  ambient index (j, b) -> j*dim(M)+b
    std::vector<std::pair<Matrix, Matrix>> pairs; // (x^i column in M, f^i matrix R <- M)
};

inline std::optional<DualityDatum> try_right_dual_data(const Bimodule& m) {
    const auto& alg = *m.algebra;
    Bimodule reg = Bimodule::regular(m.algebra);
    // right-module maps M -> R
    std::vector<Matrix> basis = bimodule_hom_basis(m, reg, HomSide::RightOnly);
    DualityDatum d;
    d.frame = HomFrame(basis);
    const std::size_t dd = basis.size();

    d.dual.algebra = m.algebra;
    d.dual.dim = dd;
    d.dual.left.resize(alg.dim);
    d.dual.right.resize(alg.dim);
    for (std::size_t k = 0; k < alg.dim; ++k) {
        Matrix lk(dd, dd), rk(dd, dd);
        for (std::size_t j = 0; j < dd; ++j) {
            // left action: postcompose with left multiplication in R
            auto lc = d.frame.coords(alg.left_mult[k] * basis[j]);
            // right action: precompose with the left action on M
            auto rc = d.frame.coords(basis[j] * m.left[k]);
            if (!lc || !rc) return std::nullopt; // hom space not action-stable; cannot happen for valid bimodules
            for (std::size_t i = 0; i < dd; ++i) {
                lk.at(i, j) = lc->at(i, 0);
                rk.at(i, j) = rc->at(i, 0);
            }
        }
        d.dual.left[k] = lk;
        d.dual.right[k] = rk;
    }

    d.ev = Matrix(alg.dim, dd * m.dim);
    for (std::size_t j = 0; j < dd; ++j)
        for (std::size_t b = 0; b < m.dim; ++b)
            for (std::size_t l = 0; l < alg.dim; ++l)
                d.ev.at(l, j * m.dim + b) = basis[j].at(l, b);

    // dual-basis pairs with generators x^i = the k-basis of M: solve
    //   sum_i rho_M(f^i(m_b)) x^i = m_b  for all b,   f^i = sum_j alpha_{ij} g_j
    const std::size_t nunk = m.dim * dd;
    Matrix sys(m.dim * m.dim, nunk);
    Matrix rhs(m.dim * m.dim, 1);
    for (std::size_t b = 0; b < m.dim; ++b) {
        rhs.at(b * m.dim + b, 0) = Scalar(1);
        for (std::size_t i = 0; i < m.dim; ++i)
            for (std::size_t j = 0; j < dd; ++j) {
                Matrix r_coords = basis[j] * Matrix::basis_column(m.dim, b); // f=g_j applied to m_b, in R
                Matrix contrib = m.right_act(r_coords) * Matrix::basis_column(m.dim, i);
                for (std::size_t row = 0; row < m.dim; ++row)
                    sys.at(b * m.dim + row, i * dd + j) += contrib.at(row, 0);
            }
    }
    auto alpha = solve(sys, rhs);
    if (!alpha) return std::nullopt;
    for (std::size_t i = 0; i < m.dim; ++i) {
        Matrix f(alg.dim, m.dim);
        for (std::size_t j = 0; j < dd; ++j) {
            const Scalar& a = alpha->at(i * dd + j, 0);
            if (!a.is_zero()) f = f + a * basis[j];
        }
        d.pairs.emplace_back(Matrix::basis_column(m.dim, i), f);
    }
    return d;
}

inline DualityDatum right_dual_data(const Bimodule& m) {
    auto d = try_right_dual_data(m);
    if (!d) throw std::domain_error("NotFgProjective");
    return *d;
}

// Separable Frobenius structure on the base algebra: functional phi and
// separability element e = sum e_i (x) f_i.
struct FrobeniusDatum {
    Matrix phi; // 1 x dim(R)
    Matrix e;   // dim(R)^2 x 1, ambient index (a,b) -> a*dim+b
};

inline Report validate_separable_frobenius(const AlgebraPresentation& a, const FrobeniusDatum& d) {
    Report rep;
    const std::size_t n = a.dim;
    auto e_at = [&](std::size_t i, std::size_t j) { return d.e.at(i * n + j, 0); };

    bool frob1 = true, frob2 = true;
    std::string w1, w2;
    for (std::size_t r = 0; r < n; ++r) {
        // sum phi(b_r e_i) f_i = b_r   and   sum e_i phi(f_i b_r) = b_r
        Matrix lhs1(n, 1), lhs2(n, 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Scalar& c = e_at(i, j);
                if (c.is_zero()) continue;
                Matrix re_i = a.left_mult[r] * Matrix::basis_column(n, i);
                lhs1 = lhs1 + (c * (d.phi * re_i).at(0, 0)) * Matrix::basis_column(n, j);
                Matrix f_jr = a.left_mult[j] * Matrix::basis_column(n, r);
                lhs2 = lhs2 + (c * (d.phi * f_jr).at(0, 0)) * Matrix::basis_column(n, i);
            }
        if (lhs1 != Matrix::basis_column(n, r)) { frob1 = false; w1 = "basis element " + std::to_string(r); }
        if (lhs2 != Matrix::basis_column(n, r)) { frob2 = false; w2 = "basis element " + std::to_string(r); }
    }
    rep.add("frobenius-left", frob1, "frobenius.phi-e-left-identity", w1);
    rep.add("frobenius-right", frob2, "frobenius.phi-e-right-identity", w2);

    Matrix sum_ef(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!e_at(i, j).is_zero())
                sum_ef = sum_ef + e_at(i, j) * (a.left_mult[i] * Matrix::basis_column(n, j));
    rep.add("separability", sum_ef == a.unit_col(), "frobenius.e-multiplies-to-unit",
            sum_ef == a.unit_col() ? "" : "sum e_i f_i != 1");

    bool central = true;
    std::string cw;
    for (std::size_t r = 0; r < n; ++r) {
        Matrix lr = kron(a.left_mult[r], Matrix::identity(n)) * d.e;
        Matrix rr = kron(Matrix::identity(n), a.right_mult_basis(r)) * d.e;
        if (lr != rr) { central = false; cw = "basis element " + std::to_string(r); break; }
    }
    rep.add("centrality", central, "frobenius.e-central", cw);
    return rep;
}

} // namespace tannaka
