#pragma once

#include "tannaka/bialgebroid.hpp"
#include "tannaka/catbuild.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tannaka {

// Finite tensor-closed family of comodules over a bialgebroid J, standing in
// for a generating subcategory of finitely generated projective comodules.
struct ComoduleCatalog {
    Bialgebroid j;
    std::vector<std::string> names;
    std::vector<Comodule> entries;
    std::vector<std::vector<std::size_t>> tensor_table;
    std::size_t unit_entry = 0;
};

inline Report validate_catalog(const ComoduleCatalog& cat) {
    Report rep;
    bool shapes = cat.entries.size() == cat.names.size() &&
                  cat.tensor_table.size() == cat.entries.size();
    for (const auto& row : cat.tensor_table) {
        if (row.size() != cat.entries.size()) shapes = false;
        for (std::size_t e : row)
            if (e >= cat.entries.size()) shapes = false;
    }
    rep.add("table-total", shapes, "catalog.tensor-table-closed",
            shapes ? "" : "CatalogNotClosed");
    if (!shapes) return rep;

    bool comodules = true;
    std::string cw;
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
        if (!validate_comodule(cat.entries[i], cat.j).passed()) {
            comodules = false;
            cw = "entry " + cat.names[i];
            break;
        }
    rep.add("entries-are-comodules", comodules, "catalog.entries-coassociative", cw);

    bool fgp = true;
    std::string fw;
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
        if (!try_right_dual_data(cat.entries[i].underlying)) {
            fgp = false;
            fw = "entry " + cat.names[i];
            break;
        }
    rep.add("entries-fgp", fgp, "catalog.underlying-fgp", fw);

    // the unit entry carries the regular bimodule
    const Bimodule& u = cat.entries[cat.unit_entry].underlying;
    Bimodule reg = Bimodule::regular(cat.j.base);
    bool unit_ok = u.dim == reg.dim;
    for (std::size_t k = 0; k < cat.j.base->dim && unit_ok; ++k)
        if (u.left[k] != reg.left[k] || u.right[k] != reg.right[k]) unit_ok = false;
    rep.add("unit-entry-regular", unit_ok, "catalog.unit-entry");
    return rep;
}

struct ReconstructedFiber {
    std::shared_ptr<CategoryPresentation> category;
    FiberFunctor fiber;
    std::vector<std::vector<HomFrame>> hom_frames; // comodule-map bases per pair
};

namespace detail {

// basis of comodule maps entry a -> entry b: two-sided bimodule maps
// commuting with the coactions
inline std::vector<Matrix> comodule_hom_basis(const ComoduleCatalog& cat, std::size_t a,
                                              std::size_t b) {
    const Comodule& A = cat.entries[a];
    const Comodule& B = cat.entries[b];
    auto bim = bimodule_hom_basis(A.underlying, B.underlying, HomSide::TwoSided);
    if (bim.empty()) return {};
    const std::size_t d = cat.j.dim;
    Matrix sys(B.mbar.space.dim() * A.underlying.dim, bim.size());
    for (std::size_t j = 0; j < bim.size(); ++j) {
        Matrix lhs = B.coaction * bim[j];
        Matrix rhs = B.mbar.space.projection() * kron(bim[j], Matrix::identity(d)) *
                     (A.mbar.space.section() * A.coaction);
        Matrix diff = lhs - rhs;
        for (std::size_t r = 0; r < diff.rows(); ++r)
            for (std::size_t cc = 0; cc < diff.cols(); ++cc)
                sys.at(r * diff.cols() + cc, j) = diff.at(r, cc);
    }
    Matrix ker = kernel_basis(sys);
    std::vector<Matrix> out;
    for (std::size_t kcol = 0; kcol < ker.cols(); ++kcol) {
        Matrix m(B.underlying.dim, A.underlying.dim);
        for (std::size_t j = 0; j < bim.size(); ++j)
            if (!ker.at(j, kcol).is_zero()) m = m + ker.at(j, kcol) * bim[j];
        out.push_back(m);
    }
    return out;
}

} // namespace detail

// Rebuilds the presented category of catalog entries with hom spaces the
// comodule maps, tensor from the declared table through chosen comodule
// identifications, and the underlying-bimodule fiber functor.
inline ReconstructedFiber fiber_from_bialgebroid(const ComoduleCatalog& cat,
                                                 const CheckConfig& cfg = {}) {
    Report cv = validate_catalog(cat);
    if (!cv.passed()) throw std::domain_error("CatalogNotClosed");
    const std::size_t n = cat.entries.size();
    const Bialgebroid& j = cat.j;

    ReconstructedFiber out;
    out.hom_frames.assign(n, std::vector<HomFrame>(n));
    std::vector<std::vector<std::vector<Matrix>>> homs(n, std::vector<std::vector<Matrix>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            homs[a][b] = detail::comodule_hom_basis(cat, a, b);
            out.hom_frames[a][b] = HomFrame(homs[a][b]);
        }

    CategoryBuilder builder(j.base->field, cat.names, cat.names[cat.unit_entry]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) builder.hom(cat.names[a], cat.names[b], homs[a][b].size());
    builder.alloc_compose();
    for (std::size_t a = 0; a < n; ++a) {
        auto idc = out.hom_frames[a][a].coords(Matrix::identity(cat.entries[a].underlying.dim));
        if (!idc) throw std::logic_error("fiber_from_bialgebroid: identity is not a comodule map");
        builder.identity_coords(a, *idc);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t gi = 0; gi < homs[b][cc].size(); ++gi)
                    for (std::size_t fi = 0; fi < homs[a][b].size(); ++fi) {
                        auto coords = out.hom_frames[a][cc].coords(homs[b][cc][gi] * homs[a][b][fi]);
                        if (!coords) throw std::logic_error("fiber_from_bialgebroid: composition leaves homs");
                        builder.compose_entry(a, b, cc, gi, fi, *coords);
                    }
    }
    builder.tensor_obj_table(cat.tensor_table);
    builder.alloc_tensor();

    // tensor products of entries with chosen comodule identifications onto
    // the declared targets (deterministic: first invertible candidate)
    std::vector<std::vector<BimoduleTensor>> tens(n, std::vector<BimoduleTensor>(n));
    std::vector<std::vector<Matrix>> iota(n, std::vector<Matrix>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Comodule tc = comodule_tensor(cat.entries[a], cat.entries[b], j);
            tens[a][b] = bimodule_tensor(cat.entries[a].underlying, cat.entries[b].underlying);
            std::size_t target = cat.tensor_table[a][b];
            // comodule maps tc -> target entry
            ComoduleCatalog tmp = cat;
            tmp.names.push_back("~tensor");
            tmp.entries.push_back(tc);
            // reuse the hom solver against the extended catalog
            auto cands = detail::comodule_hom_basis(tmp, tmp.entries.size() - 1, target);
            Matrix chosen;
            bool found = false;
            if (tc.underlying.dim == 0 && cat.entries[target].underlying.dim == 0) {
                chosen = Matrix(0, 0);
                found = true;
            } else {
                for (const auto& cand : cands)
                    if (is_invertible(cand)) {
                        chosen = cand;
                        found = true;
                        break;
                    }
                if (!found && !cands.empty()) {
                    SampleStream ss(cfg.seed + 11);
                    for (std::size_t s = 0; s < cfg.sample_count && !found; ++s) {
                        Matrix comb(cands[0].rows(), cands[0].cols());
                        for (const auto& cand : cands) comb = comb + ss.next() * cand;
                        if (is_invertible(comb)) {
                            chosen = comb;
                            found = true;
                        }
                    }
                }
            }
            if (!found) throw std::domain_error("CatalogNotClosed");
            iota[a][b] = chosen;
        }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a2 = 0; a2 < n; ++a2)
                for (std::size_t b2 = 0; b2 < n; ++b2)
                    for (std::size_t fi = 0; fi < homs[a][b].size(); ++fi)
                        for (std::size_t f2i = 0; f2i < homs[a2][b2].size(); ++f2i) {
                            Matrix ind = tens[a][a2].space.induce(
                                tens[b][b2].space, kron(homs[a][b][fi], homs[a2][b2][f2i]));
                            Matrix m = iota[b][b2] * ind * inverse(iota[a][a2]).value();
                            auto coords =
                                out.hom_frames[cat.tensor_table[a][a2]][cat.tensor_table[b][b2]].coords(m);
                            if (!coords)
                                throw std::logic_error("fiber_from_bialgebroid: tensor leaves homs");
                            builder.tensor_entry(a, b, a2, b2, fi, f2i, *coords);
                        }

    // coherence arrows from the canonical quotient identifications
    auto& raw = builder.raw();
    raw.alpha.assign(n, std::vector<std::vector<Arrow>>(n, std::vector<Arrow>(n)));
    raw.lunit.resize(n);
    raw.runit.resize(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc) {
                std::size_t e_bc = cat.tensor_table[b][cc];
                std::size_t e_ab = cat.tensor_table[a][b];
                std::size_t e_r = cat.tensor_table[a][e_bc];  // A (x) (B (x) C)
                std::size_t e_l = cat.tensor_table[e_ab][cc]; // (A (x) B) (x) C
                BimoduleTensor a_ebc = bimodule_tensor(cat.entries[a].underlying,
                                                       cat.entries[e_bc].underlying);
                BimoduleTensor a_qbc = bimodule_tensor(cat.entries[a].underlying,
                                                       tens[b][cc].module);
                BimoduleTensor qab_c = bimodule_tensor(tens[a][b].module,
                                                       cat.entries[cc].underlying);
                BimoduleTensor eab_c = bimodule_tensor(cat.entries[e_ab].underlying,
                                                       cat.entries[cc].underlying);
                Matrix step1 = inverse(iota[a][e_bc]).value();
                // und(E_r) -> Q(A, E_BC) -> Q(A, Q(B,C)) -> Q(Q(A,B), C) -> Q(E_AB, C) -> und(E_l)
                Matrix to_qbc = a_qbc.space.projection() *
                                kron(Matrix::identity(cat.entries[a].underlying.dim),
                                     inverse(iota[b][cc]).value()) *
                                a_ebc.space.section();
                Matrix reassoc = qab_c.space.projection() *
                                 kron(tens[a][b].space.projection(),
                                      Matrix::identity(cat.entries[cc].underlying.dim)) *
                                 kron(Matrix::identity(cat.entries[a].underlying.dim),
                                      tens[b][cc].space.section()) *
                                 a_qbc.space.section();
                Matrix push = eab_c.space.projection() *
                              kron(iota[a][b], Matrix::identity(cat.entries[cc].underlying.dim)) *
                              qab_c.space.section();
                Matrix alpha_mat = iota[e_ab][cc] * push * reassoc * to_qbc * step1;
                auto coords = out.hom_frames[e_r][e_l].coords(alpha_mat);
                if (!coords) throw std::logic_error("fiber_from_bialgebroid: associator leaves homs");
                raw.alpha[a][b][cc] = Arrow{e_r, e_l, *coords};
            }
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t e_ia = cat.tensor_table[cat.unit_entry][a];
        Matrix lu = left_eval(cat.entries[a].underlying) * tens[cat.unit_entry][a].space.section() *
                    inverse(iota[cat.unit_entry][a]).value();
        auto lco = out.hom_frames[e_ia][a].coords(lu);
        std::size_t e_ai = cat.tensor_table[a][cat.unit_entry];
        Matrix ru = right_eval(cat.entries[a].underlying) * tens[a][cat.unit_entry].space.section() *
                    inverse(iota[a][cat.unit_entry]).value();
        auto rco = out.hom_frames[e_ai][a].coords(ru);
        if (!lco || !rco) throw std::logic_error("fiber_from_bialgebroid: unitor leaves homs");
        raw.lunit[a] = Arrow{e_ia, a, *lco};
        raw.runit[a] = Arrow{e_ai, a, *rco};
    }
    out.category = builder.build();

    FiberFunctor f;
    f.category = out.category;
    f.base = j.base;
    f.images.resize(n);
    for (std::size_t a = 0; a < n; ++a) f.images[a] = cat.entries[a].underlying;
    f.arrows.assign(n, std::vector<std::vector<Matrix>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) f.arrows[a][b] = homs[a][b];
    f.F2.assign(n, std::vector<Matrix>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) f.F2[a][b] = iota[a][b];
    f.F0 = Matrix::identity(j.base->dim);
    f.finalize();
    out.fiber = std::move(f);
    return out;
}

// n : H -> J on rank-1 tensors: n(f (x)_P x) = f(x^(0)) . x^(1)
inline Matrix comparison_map_n(const Bialgebroid& h, const ComoduleCatalog& cat) {
    if (!h.coend || !h.dual) throw std::logic_error("comparison_map_n: missing build context");
    const Bialgebroid& j = cat.j;
    const CoendSpace& cs = *h.coend;
    const DualFunctor& g = *h.dual;

    Matrix n_amb(j.dim, cs.ambient_dim());
    for (std::size_t P = 0; P < cat.entries.size(); ++P) {
        const Comodule& com = cat.entries[P];
        Matrix lift = com.mbar.space.section() * com.coaction; // M -> M (x) J ambient
        for (std::size_t fi = 0; fi < g.spaces[P].dim; ++fi) {
            const Matrix& fmat = g.duals[P].frame.basis[fi]; // S <- M
            for (std::size_t x = 0; x < com.underlying.dim; ++x) {
                Matrix delta = lift.col(x);
                Matrix acc(j.dim, 1);
                for (std::size_t a = 0; a < com.underlying.dim; ++a)
                    for (std::size_t b = 0; b < j.dim; ++b) {
                        const Scalar& cc = delta.at(a * j.dim + b, 0);
                        if (cc.is_zero()) continue;
                        Matrix r = fmat * Matrix::basis_column(com.underlying.dim, a);
                        acc = acc + cc * j.mult(Matrix::basis_column(j.dim, b), j.target * r);
                    }
                std::size_t col = cs.amb_index(P, fi, x);
                for (std::size_t rr = 0; rr < j.dim; ++rr) n_amb.at(rr, col) = acc.at(rr, 0);
            }
        }
    }
    Matrix defect = Matrix::identity(cs.ambient_dim()) - cs.space.section() * cs.space.projection();
    if (!(n_amb * defect).is_zero()) throw std::logic_error("NotWellDefined: comparison map");
    return n_amb * cs.space.section();
}

inline Report verify_bialgebroid_iso(const Matrix& n, const Bialgebroid& h, const Bialgebroid& j) {
    Report rep;
    bool bij = n.rows() == j.dim && n.cols() == h.dim && is_invertible(n);
    rep.add("bijective", bij, "reconstruction.comparison-bijective");
    if (!bij) return rep;

    bool multiplicative = true;
    std::string mw;
    for (std::size_t i = 0; i < h.dim && multiplicative; ++i)
        for (std::size_t k = 0; k < h.dim; ++k) {
            Matrix lhs = n * h.mult(Matrix::basis_column(h.dim, i), Matrix::basis_column(h.dim, k));
            Matrix rhs = j.mult(n * Matrix::basis_column(h.dim, i), n * Matrix::basis_column(h.dim, k));
            if (lhs != rhs) {
                multiplicative = false;
                mw = detail::tuple_witness({i, k});
                break;
            }
        }
    rep.add("ring-map", multiplicative, "reconstruction.multiplicative", mw);
    rep.add("unit", n * h.unit == j.unit, "reconstruction.unital");
    rep.add("source", n * h.source == j.source, "reconstruction.source-preserved");
    rep.add("target", n * h.target == j.target, "reconstruction.target-preserved");

    Matrix lift_h = h.hbar().space.section() * h.coproduct;
    Matrix delta_through = j.hbar().space.projection() * kron(n, n) * lift_h;
    rep.add("coring-map", delta_through == j.coproduct * n, "reconstruction.comultiplicative");
    rep.add("counit", j.counit * n == h.counit, "reconstruction.counit-preserved");
    return rep;
}

} // namespace tannaka
