#pragma once

#include "tannaka/matrix.hpp"
#include "tannaka/report.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tannaka {

struct CheckConfig {
    std::size_t sample_count = 8;
    std::uint64_t seed = 0;
    std::size_t search_depth = 2;
};

// Deterministic small-integer coefficient stream for sampled combinations.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : rng_(seed) {}
    Scalar next() { return Scalar(static_cast<std::int64_t>(rng_() % 7) - 3); }

private:
    std::mt19937_64 rng_;
};

// An arrow of the presented category: source, target, coordinates in the
// chosen basis of hom(dom, cod).
struct Arrow {
    std::size_t dom = 0, cod = 0;
    Matrix coords; // hom_dim(dom, cod) x 1
};

struct BiproductDiagram {
    std::size_t target = 0;
    std::vector<std::size_t> summands;
    std::vector<Arrow> p; // p_i : B_i -> C
    std::vector<Arrow> q; // q_i : C -> B_i
};

struct DualityData {
    std::vector<std::size_t> dual; // C -> C*
    std::vector<Arrow> ev;         // ev_C  in hom(C* (x) C, I)
    std::vector<Arrow> db;         // db_C  in hom(I, C (x) C*)
    Arrow u;                       // I -> I*
    std::vector<std::vector<Arrow>> v; // v[C][D] : D* (x) C* -> (C (x) D)*
};

struct WeakKernelEntry {
    Arrow arrow;   // t
    Arrow witness; // w with t o w = 0
};

// Finitely presented small additive k-linear monoidal category.  The object
// tensor is a total table on labels; coherence arrows are explicit, so
// non-strict presentations are supported.  The stored associator component
// alpha[A][B][C] is the arrow  A (x) (B (x) C)  ->  (A (x) B) (x) C.
struct CategoryPresentation {
    FieldSpec field;
    std::vector<std::string> objects;
    std::size_t unit = 0;

    std::vector<std::vector<std::size_t>> hom_dims;
    // compose[A][B][C] : hom(A,C) <- hom(B,C) (x) hom(A,B), column (g,f) = g o f
    std::vector<std::vector<std::vector<Matrix>>> compose_tab;
    std::vector<Matrix> identities;

    bool has_tensor = false;
    std::vector<std::vector<std::size_t>> tensor_obj;
    // tensor_tab[A][B][A2][B2] : hom(A(x)A2, B(x)B2) <- hom(A,B) (x) hom(A2,B2)
    std::vector<std::vector<std::vector<std::vector<Matrix>>>> tensor_tab;
    std::vector<std::vector<std::vector<Arrow>>> alpha;
    std::vector<Arrow> lunit; // I (x) A -> A
    std::vector<Arrow> runit; // A (x) I -> A

    std::optional<DualityData> duality;
    std::optional<std::vector<Arrow>> pivot; // theta_C : C -> C**
    std::vector<BiproductDiagram> biproducts;
    std::vector<WeakKernelEntry> weak_kernels;

    std::size_t n_obj() const { return objects.size(); }
    std::size_t hom_dim(std::size_t a, std::size_t b) const { return hom_dims[a][b]; }
    std::size_t tensor(std::size_t a, std::size_t b) const { return tensor_obj[a][b]; }

    Arrow id(std::size_t a) const { return {a, a, identities[a]}; }

    Arrow zero_arrow(std::size_t a, std::size_t b) const {
        return {a, b, Matrix(hom_dim(a, b), 1)};
    }

    Arrow basis_arrow(std::size_t a, std::size_t b, std::size_t i) const {
        return {a, b, Matrix::basis_column(hom_dim(a, b), i)};
    }

    Arrow compose(const Arrow& g, const Arrow& f) const {
        if (f.cod != g.dom) throw std::invalid_argument("compose: type mismatch");
        const Matrix& tab = compose_tab[f.dom][f.cod][g.cod];
        return {f.dom, g.cod, tab * kron(g.coords, f.coords)};
    }

    Arrow tensor_arrow(const Arrow& f, const Arrow& f2) const {
        const Matrix& tab = tensor_tab[f.dom][f.cod][f2.dom][f2.cod];
        return {tensor(f.dom, f2.dom), tensor(f.cod, f2.cod), tab * kron(f.coords, f2.coords)};
    }

    Arrow add(const Arrow& f, const Arrow& g) const {
        if (f.dom != g.dom || f.cod != g.cod) throw std::invalid_argument("add: type mismatch");
        return {f.dom, f.cod, f.coords + g.coords};
    }

    Arrow scale(const Scalar& s, const Arrow& f) const { return {f.dom, f.cod, s * f.coords}; }

    // matrix of q |-> t o q on hom(a, dom t) -> hom(a, cod t)
    Matrix postcompose_map(const Arrow& t, std::size_t a) const {
        std::size_t n = hom_dim(a, t.dom);
        Matrix m(hom_dim(a, t.cod), n);
        for (std::size_t i = 0; i < n; ++i) {
            Arrow c = compose(t, basis_arrow(a, t.dom, i));
            for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, i) = c.coords.at(r, 0);
        }
        return m;
    }

    // matrix of q |-> q o t on hom(cod t, b) -> hom(dom t, b)
    Matrix precompose_map(const Arrow& t, std::size_t b) const {
        std::size_t n = hom_dim(t.cod, b);
        Matrix m(hom_dim(t.dom, b), n);
        for (std::size_t i = 0; i < n; ++i) {
            Arrow c = compose(basis_arrow(t.cod, b, i), t);
            for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, i) = c.coords.at(r, 0);
        }
        return m;
    }

    std::optional<Arrow> invert_arrow(const Arrow& t) const {
        // s with t o s = id_cod and s o t = id_dom
        std::size_t n = hom_dim(t.cod, t.dom);
        Matrix post(hom_dim(t.cod, t.cod), n), pre(hom_dim(t.dom, t.dom), n);
        for (std::size_t i = 0; i < n; ++i) {
            Arrow s = basis_arrow(t.cod, t.dom, i);
            Arrow ts = compose(t, s), st = compose(s, t);
            for (std::size_t r = 0; r < post.rows(); ++r) post.at(r, i) = ts.coords.at(r, 0);
            for (std::size_t r = 0; r < pre.rows(); ++r) pre.at(r, i) = st.coords.at(r, 0);
        }
        auto sol = solve(vstack(post, pre), vstack(identities[t.cod], identities[t.dom]));
        if (!sol) return std::nullopt;
        return Arrow{t.cod, t.dom, *sol};
    }

    bool is_zero_arrow(const Arrow& t) const { return t.coords.is_zero(); }

    std::size_t dual_of(std::size_t c) const {
        if (!duality) throw std::domain_error("MissingData: duality");
        return duality->dual[c];
    }

    // t* : Y* -> X* for t : X -> Y, via the chosen left duality data
    Arrow dual_arrow(const Arrow& t) const {
        const DualityData& d = *duality;
        std::size_t X = t.dom, Y = t.cod, Xs = d.dual[X], Ys = d.dual[Y];
        Arrow r = invert_required(runit[Ys]);                                   // Y* -> Y* (x) I
        Arrow step1 = compose(tensor_arrow(id(Ys), d.db[X]), r);                // -> Y* (x) (X (x) X*)
        Arrow step2 = compose(tensor_arrow(id(Ys), tensor_arrow(t, id(Xs))), step1); // -> Y* (x) (Y (x) X*)
        Arrow step3 = compose(alpha[Ys][Y][Xs], step2);                         // -> (Y* (x) Y) (x) X*
        Arrow step4 = compose(tensor_arrow(d.ev[Y], id(Xs)), step3);            // -> I (x) X*
        return compose(lunit[Xs], step4);
    }

    Arrow invert_required(const Arrow& t) const {
        auto i = invert_arrow(t);
        if (!i) throw std::domain_error("arrow not invertible");
        return *i;
    }

    // right duality synthesized from left duals and the pivot:
    //   *C := C*,  ev~_C = ev_{C*} o (theta_C (x) C*),  db~_C = (C* (x) theta_C^{-1}) o db_{C*}
    Arrow right_ev(std::size_t c) const {
        const DualityData& d = *duality;
        const Arrow& theta = (*pivot)[c];
        return compose(d.ev[d.dual[c]], tensor_arrow(theta, id(d.dual[c])));
    }

    Arrow right_db(std::size_t c) const {
        const DualityData& d = *duality;
        Arrow theta_inv = invert_required((*pivot)[c]);
        return compose(tensor_arrow(id(d.dual[c]), theta_inv), d.db[d.dual[c]]);
    }

    Arrow sample_arrow(std::size_t a, std::size_t b, SampleStream& ss) const {
        Matrix c(hom_dim(a, b), 1);
        for (std::size_t i = 0; i < c.rows(); ++i) c.at(i, 0) = ss.next();
        return {a, b, c};
    }
};

namespace detail {

inline std::string tuple_witness(std::initializer_list<std::size_t> idx) {
    std::string s = "(";
    bool first = true;
    for (auto i : idx) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + ")";
}

} // namespace detail

inline Report validate_category(const CategoryPresentation& c) {
    Report rep;
    const std::size_t n = c.n_obj();

    bool assoc = true;
    std::string aw;
    for (std::size_t A = 0; A < n && assoc; ++A)
        for (std::size_t B = 0; B < n && assoc; ++B)
            for (std::size_t C = 0; C < n && assoc; ++C)
                for (std::size_t D = 0; D < n && assoc; ++D) {
                    if (c.hom_dim(A, B) == 0 || c.hom_dim(B, C) == 0 || c.hom_dim(C, D) == 0) continue;
                    for (std::size_t fi = 0; fi < c.hom_dim(A, B) && assoc; ++fi)
                        for (std::size_t gi = 0; gi < c.hom_dim(B, C) && assoc; ++gi)
                            for (std::size_t hi = 0; hi < c.hom_dim(C, D); ++hi) {
                                Arrow f = c.basis_arrow(A, B, fi), g = c.basis_arrow(B, C, gi), h = c.basis_arrow(C, D, hi);
                                if (c.compose(c.compose(h, g), f).coords != c.compose(h, c.compose(g, f)).coords) {
                                    assoc = false;
                                    aw = detail::tuple_witness({A, B, C, D, fi, gi, hi});
                                    break;
                                }
                            }
                }
    rep.add("compose-associativity", assoc, "category.compose-associative", aw);

    bool unital = true;
    std::string uw;
    for (std::size_t A = 0; A < n && unital; ++A)
        for (std::size_t B = 0; B < n && unital; ++B)
            for (std::size_t fi = 0; fi < c.hom_dim(A, B); ++fi) {
                Arrow f = c.basis_arrow(A, B, fi);
                if (c.compose(c.id(B), f).coords != f.coords || c.compose(f, c.id(A)).coords != f.coords) {
                    unital = false;
                    uw = detail::tuple_witness({A, B, fi});
                    break;
                }
            }
    rep.add("compose-identity", unital, "category.identities", uw);

    if (!c.has_tensor) {
        rep.skip("tensor", "category.monoidal", "no tensor data supplied");
        return rep;
    }

    bool idid = true;
    std::string iw;
    for (std::size_t A = 0; A < n && idid; ++A)
        for (std::size_t B = 0; B < n; ++B)
            if (c.tensor_arrow(c.id(A), c.id(B)).coords != c.identities[c.tensor(A, B)]) {
                idid = false;
                iw = detail::tuple_witness({A, B});
                break;
            }
    rep.add("tensor-identities", idid, "category.tensor-preserves-identities", iw);

    bool inter = true;
    std::string xw;
    for (std::size_t A = 0; A < n && inter; ++A)
        for (std::size_t B = 0; B < n && inter; ++B)
            for (std::size_t C = 0; C < n && inter; ++C)
                for (std::size_t A2 = 0; A2 < n && inter; ++A2)
                    for (std::size_t B2 = 0; B2 < n && inter; ++B2)
                        for (std::size_t C2 = 0; C2 < n && inter; ++C2) {
                            std::size_t nf = c.hom_dim(A, B), ng = c.hom_dim(B, C);
                            std::size_t nf2 = c.hom_dim(A2, B2), ng2 = c.hom_dim(B2, C2);
                            if (nf * ng * nf2 * ng2 == 0) continue;
                            for (std::size_t fi = 0; fi < nf && inter; ++fi)
                                for (std::size_t gi = 0; gi < ng && inter; ++gi)
                                    for (std::size_t fi2 = 0; fi2 < nf2 && inter; ++fi2)
                                        for (std::size_t gi2 = 0; gi2 < ng2; ++gi2) {
                                            Arrow f = c.basis_arrow(A, B, fi), g = c.basis_arrow(B, C, gi);
                                            Arrow f2 = c.basis_arrow(A2, B2, fi2), g2 = c.basis_arrow(B2, C2, gi2);
                                            Arrow lhs = c.compose(c.tensor_arrow(g, g2), c.tensor_arrow(f, f2));
                                            Arrow rhs = c.tensor_arrow(c.compose(g, f), c.compose(g2, f2));
                                            if (lhs.coords != rhs.coords) {
                                                inter = false;
                                                xw = detail::tuple_witness({A, B, C, A2, B2, C2, fi, gi, fi2, gi2});
                                                break;
                                            }
                                        }
                        }
    rep.add("tensor-interchange", inter, "category.tensor-functorial", xw);

    bool coh_inv = true;
    std::string cw;
    for (std::size_t A = 0; A < n && coh_inv; ++A) {
        if (!c.invert_arrow(c.lunit[A]) || !c.invert_arrow(c.runit[A])) {
            coh_inv = false;
            cw = "unitor at object " + std::to_string(A);
            break;
        }
        for (std::size_t B = 0; B < n && coh_inv; ++B)
            for (std::size_t C = 0; C < n; ++C)
                if (!c.invert_arrow(c.alpha[A][B][C])) {
                    coh_inv = false;
                    cw = "associator " + detail::tuple_witness({A, B, C});
                    break;
                }
    }
    rep.add("coherence-invertible", coh_inv, "category.coherence-isos-invertible", cw);
    if (!coh_inv) return rep;

    // triangle: (id_A (x) lunit_B) = (runit_A (x) id_B) o alpha_{A,I,B}
    bool tri = true;
    std::string tw;
    for (std::size_t A = 0; A < n && tri; ++A)
        for (std::size_t B = 0; B < n; ++B) {
            Arrow lhs = c.tensor_arrow(c.id(A), c.lunit[B]);
            Arrow rhs = c.compose(c.tensor_arrow(c.runit[A], c.id(B)), c.alpha[A][c.unit][B]);
            if (lhs.coords != rhs.coords) {
                tri = false;
                tw = detail::tuple_witness({A, B});
                break;
            }
        }
    rep.add("triangle", tri, "category.triangle-identity", tw);

    bool pent = true;
    std::string pw;
    for (std::size_t A = 0; A < n && pent; ++A)
        for (std::size_t B = 0; B < n && pent; ++B)
            for (std::size_t C = 0; C < n && pent; ++C)
                for (std::size_t D = 0; D < n; ++D) {
                    Arrow lhs = c.compose(c.alpha[c.tensor(A, B)][C][D], c.alpha[A][B][c.tensor(C, D)]);
                    Arrow rhs = c.compose(c.tensor_arrow(c.alpha[A][B][C], c.id(D)),
                                          c.compose(c.alpha[A][c.tensor(B, C)][D],
                                                    c.tensor_arrow(c.id(A), c.alpha[B][C][D])));
                    if (lhs.coords != rhs.coords) {
                        pent = false;
                        pw = detail::tuple_witness({A, B, C, D});
                        break;
                    }
                }
    rep.add("pentagon", pent, "category.pentagon-identity", pw);

    // naturality of the coherence isos on basis arrows
    bool nat = true;
    std::string nw;
    for (std::size_t A = 0; A < n && nat; ++A)
        for (std::size_t B = 0; B < n && nat; ++B)
            for (std::size_t fi = 0; fi < c.hom_dim(A, B) && nat; ++fi) {
                Arrow f = c.basis_arrow(A, B, fi);
                Arrow l1 = c.compose(c.lunit[B], c.tensor_arrow(c.id(c.unit), f));
                Arrow l2 = c.compose(f, c.lunit[A]);
                Arrow r1 = c.compose(c.runit[B], c.tensor_arrow(f, c.id(c.unit)));
                Arrow r2 = c.compose(f, c.runit[A]);
                if (l1.coords != l2.coords || r1.coords != r2.coords) {
                    nat = false;
                    nw = "unitor naturality " + detail::tuple_witness({A, B, fi});
                    break;
                }
                for (std::size_t X = 0; X < n && nat; ++X)
                    for (std::size_t Y = 0; Y < n; ++Y) {
                        // alpha natural in the first slot; other slots follow by symmetry of the check loops below
                        Arrow lhs = c.compose(c.alpha[B][X][Y], c.tensor_arrow(f, c.id(c.tensor(X, Y))));
                        Arrow rhs = c.compose(c.tensor_arrow(c.tensor_arrow(f, c.id(X)), c.id(Y)), c.alpha[A][X][Y]);
                        Arrow lhs2 = c.compose(c.alpha[X][B][Y], c.tensor_arrow(c.id(X), c.tensor_arrow(f, c.id(Y))));
                        Arrow rhs2 = c.compose(c.tensor_arrow(c.tensor_arrow(c.id(X), f), c.id(Y)), c.alpha[X][A][Y]);
                        Arrow lhs3 = c.compose(c.alpha[X][Y][B], c.tensor_arrow(c.id(X), c.tensor_arrow(c.id(Y), f)));
                        Arrow rhs3 = c.compose(c.tensor_arrow(c.id(c.tensor(X, Y)), f), c.alpha[X][Y][A]);
                        if (lhs.coords != rhs.coords || lhs2.coords != rhs2.coords || lhs3.coords != rhs3.coords) {
                            nat = false;
                            nw = "associator naturality " + detail::tuple_witness({A, B, fi, X, Y});
                            break;
                        }
                    }
            }
    rep.add("coherence-naturality", nat, "category.coherence-natural", nw);

    for (std::size_t bi = 0; bi < c.biproducts.size(); ++bi) {
        const auto& d = c.biproducts[bi];
        Arrow acc = c.zero_arrow(d.target, d.target);
        bool ortho = true;
        for (std::size_t i = 0; i < d.p.size(); ++i) {
            acc = c.add(acc, c.compose(d.p[i], d.q[i]));
            for (std::size_t j = 0; j < d.p.size(); ++j) {
                Arrow qp = c.compose(d.q[i], d.p[j]);
                Matrix expect = (i == j) ? c.identities[d.summands[i]]
                                         : Matrix(c.hom_dim(d.summands[j], d.summands[i]), 1);
                if (qp.coords != expect) ortho = false;
            }
        }
        rep.add("biproduct-" + std::to_string(bi),
                acc.coords == c.identities[d.target] && ortho,
                "category.biproduct-equations", "diagram " + std::to_string(bi));
    }

    for (std::size_t wi = 0; wi < c.weak_kernels.size(); ++wi) {
        const auto& e = c.weak_kernels[wi];
        rep.add("weak-kernel-" + std::to_string(wi),
                c.is_zero_arrow(c.compose(e.arrow, e.witness)),
                "category.weak-kernel-composite-zero", "entry " + std::to_string(wi));
    }
    return rep;
}

inline Report validate_duality_and_pivot(const CategoryPresentation& c) {
    Report rep;
    if (!c.duality) {
        rep.fail("duality-present", "duality.data-present", "MissingData");
        return rep;
    }
    const DualityData& d = *c.duality;
    const std::size_t n = c.n_obj();

    bool snakes = true;
    std::string sw;
    for (std::size_t C = 0; C < n && snakes; ++C) {
        std::size_t Cs = d.dual[C];
        Arrow l_inv = c.invert_required(c.lunit[C]);
        Arrow r_inv = c.invert_required(c.runit[C]);
        Arrow a_inv = c.invert_required(c.alpha[C][Cs][C]);
        // C -> I(x)C -> (C(x)C*)(x)C -> C(x)(C*(x)C) -> C(x)I -> C
        Arrow s1 = c.compose(c.runit[C],
                    c.compose(c.tensor_arrow(c.id(C), d.ev[C]),
                      c.compose(a_inv, c.compose(c.tensor_arrow(d.db[C], c.id(C)), l_inv))));
        // C* -> C*(x)I -> C*(x)(C(x)C*) -> (C*(x)C)(x)C* -> I(x)C* -> C*
        Arrow rs_inv = c.invert_required(c.runit[Cs]);
        Arrow s2 = c.compose(c.lunit[Cs],
                    c.compose(c.tensor_arrow(d.ev[C], c.id(Cs)),
                      c.compose(c.alpha[Cs][C][Cs], c.compose(c.tensor_arrow(c.id(Cs), d.db[C]), rs_inv))));
        if (s1.coords != c.identities[C] || s2.coords != c.identities[Cs]) {
            snakes = false;
            sw = "object " + std::to_string(C);
        }
    }
    rep.add("snake-equations", snakes, "duality.snake-identities", sw);

    rep.add("u-invertible", c.invert_arrow(d.u).has_value(), "duality.unit-comparison-invertible");
    bool vinv = true;
    std::string vw;
    for (std::size_t C = 0; C < n && vinv; ++C)
        for (std::size_t D = 0; D < n; ++D)
            if (!c.invert_arrow(d.v[C][D])) {
                vinv = false;
                vw = detail::tuple_witness({C, D});
                break;
            }
    rep.add("v-invertible", vinv, "duality.tensor-comparison-invertible", vw);

    if (!c.pivot) {
        rep.skip("pivot", "pivot.data-present", "no pivot supplied");
        return rep;
    }
    const auto& theta = *c.pivot;

    bool th_inv = true;
    for (std::size_t C = 0; C < n; ++C)
        if (!c.invert_arrow(theta[C])) th_inv = false;
    rep.add("pivot-invertible", th_inv, "pivot.invertible");
    if (!th_inv) return rep;

    bool th_nat = true;
    std::string tnw;
    for (std::size_t A = 0; A < n && th_nat; ++A)
        for (std::size_t B = 0; B < n && th_nat; ++B)
            for (std::size_t fi = 0; fi < c.hom_dim(A, B); ++fi) {
                Arrow f = c.basis_arrow(A, B, fi);
                Arrow dd = c.dual_arrow(c.dual_arrow(f));
                if (c.compose(theta[B], f).coords != c.compose(dd, theta[A]).coords) {
                    th_nat = false;
                    tnw = detail::tuple_witness({A, B, fi});
                    break;
                }
            }
    rep.add("pivot-naturality", th_nat, "pivot.natural-in-object", tnw);

    // theta_{B(x)C} = (v_{B,C}^{-1})* o v_{C*,B*} o (theta_B (x) theta_C)
    bool th_mon = true;
    std::string tmw;
    for (std::size_t B = 0; B < n && th_mon; ++B)
        for (std::size_t C = 0; C < n; ++C) {
            Arrow v_inv_dual = c.dual_arrow(c.invert_required(d.v[B][C]));
            Arrow rhs = c.compose(v_inv_dual, c.compose(d.v[d.dual[C]][d.dual[B]],
                                                        c.tensor_arrow(theta[B], theta[C])));
            if (theta[c.tensor(B, C)].coords != rhs.coords) {
                th_mon = false;
                tmw = detail::tuple_witness({B, C});
                break;
            }
        }
    rep.add("pivot-monoidality", th_mon, "pivot.monoidal-multiplicative", tmw);

    Arrow u_inv_dual = c.dual_arrow(c.invert_required(d.u));
    rep.add("pivot-unit", theta[c.unit].coords == c.compose(u_inv_dual, d.u).coords,
            "pivot.monoidal-unit");

    // synthesized right duality must satisfy its own snake equations
    bool rsnake = true;
    std::string rw;
    for (std::size_t C = 0; C < n && rsnake; ++C) {
        std::size_t Cs = d.dual[C];
        Arrow ev_r = c.right_ev(C), db_r = c.right_db(C);
        Arrow r_inv = c.invert_required(c.runit[C]);
        // C -> C(x)I -> C(x)(*C(x)C) -> (C(x)*C)(x)C -> I(x)C -> C
        Arrow s1 = c.compose(c.lunit[C],
                    c.compose(c.tensor_arrow(ev_r, c.id(C)),
                      c.compose(c.alpha[C][Cs][C], c.compose(c.tensor_arrow(c.id(C), db_r), r_inv))));
        // *C -> I(x)*C -> (*C(x)C)(x)*C -> *C(x)(C(x)*C) -> *C(x)I -> *C
        Arrow ls_inv = c.invert_required(c.lunit[Cs]);
        Arrow a_inv = c.invert_required(c.alpha[Cs][C][Cs]);
        Arrow s2 = c.compose(c.runit[Cs],
                    c.compose(c.tensor_arrow(c.id(Cs), ev_r),
                      c.compose(a_inv, c.compose(c.tensor_arrow(db_r, c.id(Cs)), ls_inv))));
        if (s1.coords != c.identities[C] || s2.coords != c.identities[Cs]) {
            rsnake = false;
            rw = "object " + std::to_string(C);
        }
    }
    rep.add("right-duality-snakes", rsnake, "duality.derived-right-duals", rw);
    return rep;
}

// ---- weak kernels / cokernels at presented scale --------------------------

inline Matrix kernel_space(const CategoryPresentation& c, const Arrow& t, std::size_t at) {
    return kernel_basis(c.postcompose_map(t, at)); // q with t o q = 0, as coord columns
}

inline Matrix cokernel_space(const CategoryPresentation& c, const Arrow& t, std::size_t at) {
    return kernel_basis(c.precompose_map(t, at)); // w with w o t = 0
}

namespace detail {

inline bool sieve_of_spans_kernel(const CategoryPresentation& c, const Arrow& w, const Arrow& t) {
    for (std::size_t A = 0; A < c.n_obj(); ++A) {
        Matrix ker = kernel_space(c, t, A);
        if (ker.cols() == 0) continue;
        std::size_t nr = c.hom_dim(A, w.dom);
        Matrix span(c.hom_dim(A, t.dom), nr);
        for (std::size_t i = 0; i < nr; ++i) {
            Arrow wr = c.compose(w, c.basis_arrow(A, w.dom, i));
            for (std::size_t r = 0; r < span.rows(); ++r) span.at(r, i) = wr.coords.at(r, 0);
        }
        if (!spans_contain(span, ker)) return false;
    }
    return true;
}

inline bool cosieve_of_spans_cokernel(const CategoryPresentation& c, const Arrow& w, const Arrow& t) {
    for (std::size_t W = 0; W < c.n_obj(); ++W) {
        Matrix cok = cokernel_space(c, t, W);
        if (cok.cols() == 0) continue;
        std::size_t nu = c.hom_dim(w.cod, W);
        Matrix span(c.hom_dim(t.cod, W), nu);
        for (std::size_t i = 0; i < nu; ++i) {
            Arrow uw = c.compose(c.basis_arrow(w.cod, W, i), w);
            for (std::size_t r = 0; r < span.rows(); ++r) span.at(r, i) = uw.coords.at(r, 0);
        }
        if (!spans_contain(span, cok)) return false;
    }
    return true;
}

} // namespace detail

// Searches, over presented objects only, for a single arrow w with t o w = 0
// whose generated sieve spans the kernel subfunctor of t.  Returns nullopt
// when no principal witness is found at this scale.
inline std::optional<Arrow> weak_kernel_certificate(const CategoryPresentation& c, const Arrow& t,
                                                    const CheckConfig& cfg = {}) {
    bool all_zero = true;
    for (std::size_t A = 0; A < c.n_obj(); ++A)
        if (kernel_space(c, t, A).cols() > 0) { all_zero = false; break; }
    if (all_zero) return c.zero_arrow(t.dom, t.dom);

    SampleStream ss(cfg.seed);
    for (std::size_t W = 0; W < c.n_obj(); ++W) {
        Matrix ker = kernel_space(c, t, W);
        std::vector<Matrix> cands;
        for (std::size_t j = 0; j < ker.cols(); ++j) cands.push_back(ker.col(j));
        for (std::size_t s = 0; s < cfg.sample_count && ker.cols() > 0; ++s) {
            Matrix comb(ker.rows(), 1);
            for (std::size_t j = 0; j < ker.cols(); ++j) comb = comb + ss.next() * ker.col(j);
            cands.push_back(comb);
        }
        for (const auto& cd : cands) {
            Arrow w{W, t.dom, cd};
            if (detail::sieve_of_spans_kernel(c, w, t)) return w;
        }
    }
    return std::nullopt;
}

inline std::optional<Arrow> weak_cokernel_certificate(const CategoryPresentation& c, const Arrow& t,
                                                      const CheckConfig& cfg = {}) {
    bool all_zero = true;
    for (std::size_t W = 0; W < c.n_obj(); ++W)
        if (cokernel_space(c, t, W).cols() > 0) { all_zero = false; break; }
    if (all_zero) return c.zero_arrow(t.cod, t.cod);

    SampleStream ss(cfg.seed + 1);
    for (std::size_t Z = 0; Z < c.n_obj(); ++Z) {
        Matrix cok = cokernel_space(c, t, Z);
        std::vector<Matrix> cands;
        for (std::size_t j = 0; j < cok.cols(); ++j) cands.push_back(cok.col(j));
        for (std::size_t s = 0; s < cfg.sample_count && cok.cols() > 0; ++s) {
            Matrix comb(cok.rows(), 1);
            for (std::size_t j = 0; j < cok.cols(); ++j) comb = comb + ss.next() * cok.col(j);
            cands.push_back(comb);
        }
        for (const auto& cd : cands) {
            Arrow w{t.cod, Z, cd};
            if (detail::cosieve_of_spans_cokernel(c, w, t)) return w;
        }
    }
    return std::nullopt;
}

// ---- presheaf / covariant functor data over the presented category --------

// Contravariant k-linear functor on presented objects: act(t : A -> B) is a
// matrix dims[A] x dims[B].
struct PresheafData {
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::vector<Matrix>>> act; // [A][B][basis index]

    Matrix apply(const CategoryPresentation& c, const Arrow& t) const {
        Matrix m(dims[t.dom], dims[t.cod]);
        for (std::size_t i = 0; i < c.hom_dim(t.dom, t.cod); ++i)
            if (!t.coords.at(i, 0).is_zero()) m = m + t.coords.at(i, 0) * act[t.dom][t.cod][i];
        return m;
    }
};

// Covariant k-linear functor data: act(t : A -> B) is dims[B] x dims[A].
struct CovariantData {
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::vector<Matrix>>> act;

    Matrix apply(const CategoryPresentation& c, const Arrow& t) const {
        Matrix m(dims[t.cod], dims[t.dom]);
        for (std::size_t i = 0; i < c.hom_dim(t.dom, t.cod); ++i)
            if (!t.coords.at(i, 0).is_zero()) m = m + t.coords.at(i, 0) * act[t.dom][t.cod][i];
        return m;
    }
};

// Y C = hom(-, C) with precomposition action.
inline PresheafData representable_presheaf(const CategoryPresentation& c, std::size_t C) {
    PresheafData u;
    const std::size_t n = c.n_obj();
    u.dims.resize(n);
    for (std::size_t A = 0; A < n; ++A) u.dims[A] = c.hom_dim(A, C);
    u.act.assign(n, std::vector<std::vector<Matrix>>(n));
    for (std::size_t A = 0; A < n; ++A)
        for (std::size_t B = 0; B < n; ++B) {
            u.act[A][B].resize(c.hom_dim(A, B));
            for (std::size_t i = 0; i < c.hom_dim(A, B); ++i)
                u.act[A][B][i] = c.precompose_map(c.basis_arrow(A, B, i), C);
        }
    return u;
}

inline Report validate_presheaf(const CategoryPresentation& c, const PresheafData& u) {
    Report rep;
    bool ok = true;
    std::string w;
    for (std::size_t A = 0; A < c.n_obj() && ok; ++A) {
        if (u.apply(c, c.id(A)) != Matrix::identity(u.dims[A])) {
            ok = false;
            w = "identity at " + std::to_string(A);
            break;
        }
        for (std::size_t B = 0; B < c.n_obj() && ok; ++B)
            for (std::size_t C = 0; C < c.n_obj() && ok; ++C)
                for (std::size_t fi = 0; fi < c.hom_dim(A, B) && ok; ++fi)
                    for (std::size_t gi = 0; gi < c.hom_dim(B, C); ++gi) {
                        Arrow f = c.basis_arrow(A, B, fi), g = c.basis_arrow(B, C, gi);
                        if (u.apply(c, c.compose(g, f)) != u.apply(c, f) * u.apply(c, g)) {
                            ok = false;
                            w = detail::tuple_witness({A, B, C, fi, gi});
                            break;
                        }
                    }
    }
    rep.add("contravariant-functoriality", ok, "presheaf.functorial", w);
    return rep;
}

} // namespace tannaka
