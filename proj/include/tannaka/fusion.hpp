#pragma once

#include "tannaka/fiber.hpp"
#include "tannaka/site.hpp"

#include <map>
#include <string>
#include <vector>

namespace tannaka {

struct SummandDiagram {
    std::size_t b = 0; // middle object, must lie in the index set
    Arrow p;           // B -> A (x) C
    Arrow q;           // A (x) C -> B
};

// Bounded fusion data: an index set I containing the unit and, for every
// (A in I, C), a summand decomposition of A (x) C into I-objects whose
// multiplicities are bounded by m_C.
struct FusionSystem {
    std::vector<std::size_t> index;
    // diagrams[a][C] with a indexing into `index` and C a raw object
    std::vector<std::vector<std::vector<SummandDiagram>>> diagrams;
    std::vector<std::size_t> bound; // m_C per raw object

    std::size_t pos_of(std::size_t obj) const {
        for (std::size_t i = 0; i < index.size(); ++i)
            if (index[i] == obj) return i;
        throw std::invalid_argument("FusionSystem: object not in the index set");
    }
};

inline Report validate_fusion_system(const CategoryPresentation& c, const FusionSystem& fs) {
    Report rep;
    bool has_unit = false;
    for (std::size_t a : fs.index)
        if (a == c.unit) has_unit = true;
    rep.add("unit-in-index", has_unit, "fusion.index-contains-unit");

    bool shapes = fs.diagrams.size() == fs.index.size() && fs.bound.size() == c.n_obj();
    for (std::size_t a = 0; a < fs.diagrams.size() && shapes; ++a)
        if (fs.diagrams[a].size() != c.n_obj()) shapes = false;
    rep.add("table-shapes", shapes, "fusion.tables-total");
    if (!shapes || !has_unit) return rep;

    bool summands_in_index = true;
    bool resolutions = true;
    std::string rw;
    for (std::size_t a = 0; a < fs.index.size() && resolutions; ++a)
        for (std::size_t C = 0; C < c.n_obj(); ++C) {
            std::size_t AC = c.tensor(fs.index[a], C);
            Arrow acc = c.zero_arrow(AC, AC);
            for (const auto& d : fs.diagrams[a][C]) {
                bool found = false;
                for (std::size_t b : fs.index)
                    if (b == d.b) found = true;
                if (!found) summands_in_index = false;
                acc = c.add(acc, c.compose(d.p, d.q));
            }
            if (acc.coords != c.identities[AC]) {
                resolutions = false;
                rw = "pair " + detail::tuple_witness({fs.index[a], C});
                break;
            }
        }
    rep.add("summands-in-index", summands_in_index, "fusion.summands-from-index");
    rep.add("resolutions-of-identity", resolutions, "fusion.p-q-sum-identity", rw);

    bool bounded = true;
    std::string bw;
    for (std::size_t C = 0; C < c.n_obj() && bounded; ++C)
        for (std::size_t bpos = 0; bpos < fs.index.size(); ++bpos) {
            std::size_t total = 0;
            for (std::size_t a = 0; a < fs.index.size(); ++a)
                for (const auto& d : fs.diagrams[a][C])
                    if (d.b == fs.index[bpos]) ++total;
            if (total > fs.bound[C]) {
                bounded = false;
                bw = "object " + std::to_string(C) + ", summand " + std::to_string(fs.index[bpos]) +
                     ": multiplicity " + std::to_string(total) + " > " + std::to_string(fs.bound[C]);
                break;
            }
        }
    rep.add("multiplicity-bound", bounded, "fusion.bounded-multiplicities", bw);

    // generation at presented scale: the unit-row diagrams transported by the
    // unitors resolve every identity through I-objects
    bool gen = true;
    std::string gw;
    std::size_t upos = fs.pos_of(c.unit);
    for (std::size_t C = 0; C < c.n_obj(); ++C) {
        Arrow acc = c.zero_arrow(C, C);
        for (const auto& d : fs.diagrams[upos][C]) {
            Arrow p = c.compose(c.lunit[C], d.p);
            Arrow q = c.compose(d.q, c.invert_required(c.lunit[C]));
            acc = c.add(acc, c.compose(p, q));
        }
        if (acc.coords != c.identities[C]) {
            gen = false;
            gw = "object " + std::to_string(C);
            break;
        }
    }
    rep.add("index-generates", gen, "fusion.index-generates-presented-objects", gw);
    return rep;
}

// The relabelled block matrices of the summand diagrams: P^j has entries in
// hom(B, A (x) C), Q^j in hom(A (x) C, B); the relabelling injection is
// chosen greedily in index order.
struct PQMatrices {
    std::size_t m = 0; // number of layers j
    // [j][a][b] and [j][b][a]
    std::vector<std::vector<std::vector<Arrow>>> P;
    std::vector<std::vector<std::vector<Arrow>>> Q;
};

inline PQMatrices dual_basis_matrices(const CategoryPresentation& c, const FusionSystem& fs,
                                      std::size_t C) {
    const std::size_t k = fs.index.size();
    std::vector<std::size_t> counter(k, 0);
    struct Slot {
        std::size_t a, bpos, j;
        Arrow p, q;
    };
    std::vector<Slot> slots;
    for (std::size_t a = 0; a < k; ++a)
        for (const auto& d : fs.diagrams[a][C]) {
            std::size_t bpos = fs.pos_of(d.b);
            slots.push_back({a, bpos, counter[bpos]++, d.p, d.q});
        }
    PQMatrices out;
    out.m = 0;
    for (std::size_t cnt : counter) out.m = std::max(out.m, cnt);
    out.P.assign(out.m, std::vector<std::vector<Arrow>>(k, std::vector<Arrow>(k)));
    out.Q.assign(out.m, std::vector<std::vector<Arrow>>(k, std::vector<Arrow>(k)));
    for (std::size_t j = 0; j < out.m; ++j)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                std::size_t AC = c.tensor(fs.index[a], C);
                out.P[j][a][b] = c.zero_arrow(fs.index[b], AC);
                out.Q[j][b][a] = c.zero_arrow(AC, fs.index[b]);
            }
    for (const auto& s : slots) {
        out.P[s.j][s.a][s.bpos] = s.p;
        out.Q[s.j][s.bpos][s.a] = s.q;
    }
    return out;
}

// sum_j P^j(C) Q^j(C) = 1 as a block identity
inline Report check_pq_identity(const CategoryPresentation& c, const FusionSystem& fs,
                                std::size_t C) {
    Report rep;
    PQMatrices pq = dual_basis_matrices(c, fs, C);
    const std::size_t k = fs.index.size();
    bool ok = true;
    std::string w;
    for (std::size_t a = 0; a < k && ok; ++a)
        for (std::size_t a2 = 0; a2 < k; ++a2) {
            std::size_t AC = c.tensor(fs.index[a], C);
            std::size_t A2C = c.tensor(fs.index[a2], C);
            Arrow acc = c.zero_arrow(A2C, AC);
            for (std::size_t j = 0; j < pq.m; ++j)
                for (std::size_t b = 0; b < k; ++b)
                    acc = c.add(acc, c.compose(pq.P[j][a][b], pq.Q[j][b][a2]));
            Matrix expect = (a == a2) ? c.identities[AC] : Matrix(c.hom_dim(A2C, AC), 1);
            if (acc.coords != expect) {
                ok = false;
                w = "block " + detail::tuple_witness({a, a2}) + " at object " + std::to_string(C);
                break;
            }
        }
    rep.add("pq-block-identity", ok, "fusion.pq-equals-one", w);
    return rep;
}

// The coarse fiber functor of a bounded fusion system: R is the block hom
// algebra of the index set, F(C) the block space of arrows into A (x) C, F2
// the matrix-product formula with its P/Q-assembled inverse.
struct CoarseFiber {
    FiberFunctor functor;

    // basis bookkeeping for the block spaces: for F(C), entry (a, b, i)
    // means the i-th basis arrow of hom(index[b], index[a] (x) C)
    struct BlockBasis {
        std::vector<std::size_t> offsets; // per (a, b) pair, row-major over index
        std::size_t dim = 0;
        std::size_t k = 0;

        std::size_t off(std::size_t a, std::size_t b) const { return offsets[a * k + b]; }
    };
    BlockBasis r_basis;
    std::vector<BlockBasis> f_basis; // per object
};

namespace detail {

inline CoarseFiber::BlockBasis make_block_basis(const CategoryPresentation& c,
                                                const std::vector<std::size_t>& index,
                                                std::optional<std::size_t> tensor_with) {
    CoarseFiber::BlockBasis bb;
    bb.k = index.size();
    bb.offsets.resize(bb.k * bb.k);
    std::size_t total = 0;
    for (std::size_t a = 0; a < bb.k; ++a)
        for (std::size_t b = 0; b < bb.k; ++b) {
            bb.offsets[a * bb.k + b] = total;
            std::size_t cod = tensor_with ? c.tensor(index[a], *tensor_with) : index[a];
            total += c.hom_dim(index[b], cod);
        }
    bb.dim = total;
    return bb;
}

} // namespace detail

inline CoarseFiber build_coarse_fiber(const CatPtr& cat, const FusionSystem& fs) {
    const CategoryPresentation& c = *cat;
    const std::size_t k = fs.index.size();
    CoarseFiber out;
    out.r_basis = detail::make_block_basis(c, fs.index, std::nullopt);
    const std::size_t nr = out.r_basis.dim;

    // base algebra: block composition
    AlgebraPresentation R;
    R.field = c.field;
    R.dim = nr;
    R.left_mult.assign(nr, Matrix(nr, nr));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t i = 0; i < c.hom_dim(fs.index[b], fs.index[a]); ++i) {
                std::size_t row_elem = out.r_basis.off(a, b) + i;
                Arrow ra = c.basis_arrow(fs.index[b], fs.index[a], i);
                for (std::size_t b2 = 0; b2 < k; ++b2)
                    for (std::size_t j = 0; j < c.hom_dim(fs.index[b2], fs.index[b]); ++j) {
                        Arrow rb = c.basis_arrow(fs.index[b2], fs.index[b], j);
                        Arrow prod = c.compose(ra, rb);
                        std::size_t col_elem = out.r_basis.off(b, b2) + j;
                        for (std::size_t l = 0; l < prod.coords.rows(); ++l)
                            R.left_mult[row_elem].at(out.r_basis.off(a, b2) + l, col_elem) +=
                                prod.coords.at(l, 0);
                    }
            }
    R.unit.assign(nr, Scalar(0));
    for (std::size_t a = 0; a < k; ++a) {
        const Matrix& idc = c.identities[fs.index[a]];
        for (std::size_t l = 0; l < idc.rows(); ++l)
            R.unit[out.r_basis.off(a, a) + l] = idc.at(l, 0);
    }
    auto rp = std::make_shared<AlgebraPresentation>(std::move(R));

    FiberFunctor f;
    f.category = cat;
    f.base = rp;
    const std::size_t n = c.n_obj();
    out.f_basis.resize(n);
    f.images.resize(n);
    for (std::size_t C = 0; C < n; ++C) {
        out.f_basis[C] = detail::make_block_basis(c, fs.index, C);
        const auto& bb = out.f_basis[C];
        Bimodule m;
        m.algebra = rp;
        m.dim = bb.dim;
        m.left.assign(nr, Matrix(bb.dim, bb.dim));
        m.right.assign(nr, Matrix(bb.dim, bb.dim));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                std::size_t AC = c.tensor(fs.index[a], C);
                for (std::size_t i = 0; i < c.hom_dim(fs.index[b], AC); ++i) {
                    std::size_t x_elem = bb.off(a, b) + i;
                    Arrow xa = c.basis_arrow(fs.index[b], AC, i);
                    // right action: x . r at block (a, b2) composes x_{A,B'} o r_{B',B2}
                    for (std::size_t b2 = 0; b2 < k; ++b2)
                        for (std::size_t j = 0; j < c.hom_dim(fs.index[b2], fs.index[b]); ++j) {
                            Arrow r = c.basis_arrow(fs.index[b2], fs.index[b], j);
                            Arrow prod = c.compose(xa, r);
                            std::size_t r_elem = out.r_basis.off(b, b2) + j;
                            for (std::size_t l = 0; l < prod.coords.rows(); ++l)
                                m.right[r_elem].at(bb.off(a, b2) + l, x_elem) += prod.coords.at(l, 0);
                        }
                    // left action: r . x at block (a2, b) composes (r_{A2,A} (x) C) o x_{A,B}
                    for (std::size_t a2 = 0; a2 < k; ++a2)
                        for (std::size_t j = 0; j < c.hom_dim(fs.index[a], fs.index[a2]); ++j) {
                            Arrow r = c.basis_arrow(fs.index[a], fs.index[a2], j);
                            Arrow prod = c.compose(c.tensor_arrow(r, c.id(C)), xa);
                            std::size_t r_elem = out.r_basis.off(a2, a) + j;
                            for (std::size_t l = 0; l < prod.coords.rows(); ++l)
                                m.left[r_elem].at(bb.off(a2, b) + l, x_elem) += prod.coords.at(l, 0);
                        }
                }
            }
        f.images[C] = std::move(m);
    }

    // arrow images: postcomposition with id_A (x) t blockwise
    f.arrows.assign(n, std::vector<std::vector<Matrix>>(n));
    for (std::size_t Cd = 0; Cd < n; ++Cd)
        for (std::size_t Dd = 0; Dd < n; ++Dd) {
            f.arrows[Cd][Dd].resize(c.hom_dim(Cd, Dd));
            for (std::size_t ti = 0; ti < c.hom_dim(Cd, Dd); ++ti) {
                Arrow t = c.basis_arrow(Cd, Dd, ti);
                Matrix ft(out.f_basis[Dd].dim, out.f_basis[Cd].dim);
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b) {
                        std::size_t AC = c.tensor(fs.index[a], Cd);
                        for (std::size_t i = 0; i < c.hom_dim(fs.index[b], AC); ++i) {
                            Arrow xa = c.basis_arrow(fs.index[b], AC, i);
                            Arrow moved = c.compose(c.tensor_arrow(c.id(fs.index[a]), t), xa);
                            std::size_t col = out.f_basis[Cd].off(a, b) + i;
                            for (std::size_t l = 0; l < moved.coords.rows(); ++l)
                                ft.at(out.f_basis[Dd].off(a, b) + l, col) += moved.coords.at(l, 0);
                        }
                    }
                f.arrows[Cd][Dd][ti] = ft;
            }
        }

    // F0: r_{A,B} |-> runi_A^{-1} o r
    f.F0 = Matrix(out.f_basis[c.unit].dim, nr);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t i = 0; i < c.hom_dim(fs.index[b], fs.index[a]); ++i) {
                Arrow r = c.basis_arrow(fs.index[b], fs.index[a], i);
                Arrow moved = c.compose(c.invert_required(c.runit[fs.index[a]]), r);
                std::size_t col = out.r_basis.off(a, b) + i;
                for (std::size_t l = 0; l < moved.coords.rows(); ++l)
                    f.F0.at(out.f_basis[c.unit].off(a, b) + l, col) += moved.coords.at(l, 0);
            }

    // F2 through the matrix-product formula, written on ambient pairs
    f.F2.assign(n, std::vector<Matrix>(n));
    std::vector<std::vector<BimoduleTensor>> ten(n, std::vector<BimoduleTensor>(n));
    for (std::size_t Cd = 0; Cd < n; ++Cd)
        for (std::size_t Dd = 0; Dd < n; ++Dd) {
            ten[Cd][Dd] = bimodule_tensor(f.images[Cd], f.images[Dd]);
            std::size_t CD = c.tensor(Cd, Dd);
            Matrix amb(out.f_basis[CD].dim, out.f_basis[Cd].dim * out.f_basis[Dd].dim);
            for (std::size_t a2 = 0; a2 < k; ++a2)
                for (std::size_t bmid = 0; bmid < k; ++bmid) {
                    std::size_t A2C = c.tensor(fs.index[a2], Cd);
                    for (std::size_t i = 0; i < c.hom_dim(fs.index[bmid], A2C); ++i) {
                        Arrow xa = c.basis_arrow(fs.index[bmid], A2C, i);
                        std::size_t x_elem = out.f_basis[Cd].off(a2, bmid) + i;
                        for (std::size_t a = 0; a < k; ++a) {
                            std::size_t BD = c.tensor(fs.index[bmid], Dd);
                            for (std::size_t j = 0; j < c.hom_dim(fs.index[a], BD); ++j) {
                                Arrow ya = c.basis_arrow(fs.index[a], BD, j);
                                std::size_t y_elem = out.f_basis[Dd].off(bmid, a) + j;
                                Arrow prod = c.compose(
                                    c.invert_required(c.alpha[fs.index[a2]][Cd][Dd]),
                                    c.compose(c.tensor_arrow(xa, c.id(Dd)), ya));
                                std::size_t col = x_elem * out.f_basis[Dd].dim + y_elem;
                                for (std::size_t l = 0; l < prod.coords.rows(); ++l)
                                    amb.at(out.f_basis[CD].off(a2, a) + l, col) += prod.coords.at(l, 0);
                            }
                        }
                    }
                }
            f.F2[Cd][Dd] = amb * ten[Cd][Dd].space.section();
        }
    f.finalize();
    out.functor = std::move(f);
    return out;
}

// the P/Q-assembled inverse of F2 agrees with the numeric one
inline Report coarse_f2_inverse_report(const CategoryPresentation& c, const FusionSystem& fs,
                                       const CoarseFiber& cf) {
    Report rep;
    const std::size_t k = fs.index.size();
    const FiberFunctor& f = cf.functor;
    bool ok = true;
    std::string w;
    for (std::size_t Cd = 0; Cd < c.n_obj() && ok; ++Cd) {
        PQMatrices pq = dual_basis_matrices(c, fs, Cd);
        // P^j(C) as an element of F(C)
        std::vector<Matrix> pvec(pq.m, Matrix(cf.f_basis[Cd].dim, 1));
        for (std::size_t j = 0; j < pq.m; ++j)
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) {
                    const Arrow& p = pq.P[j][a][b];
                    for (std::size_t l = 0; l < p.coords.rows(); ++l)
                        pvec[j].at(cf.f_basis[Cd].off(a, b) + l, 0) += p.coords.at(l, 0);
                }
        for (std::size_t Dd = 0; Dd < c.n_obj() && ok; ++Dd) {
            std::size_t CD = c.tensor(Cd, Dd);
            Matrix assembled(f.ten[Cd][Dd].space.dim(), cf.f_basis[CD].dim);
            for (std::size_t ze = 0; ze < cf.f_basis[CD].dim; ++ze) {
                // locate the block of the basis element
                Matrix acc(f.ten[Cd][Dd].space.dim(), 1);
                for (std::size_t j = 0; j < pq.m; ++j) {
                    Matrix yvec(cf.f_basis[Dd].dim, 1);
                    for (std::size_t a2 = 0; a2 < k; ++a2)
                        for (std::size_t a = 0; a < k; ++a) {
                            std::size_t A2CD = c.tensor(fs.index[a2], CD);
                            for (std::size_t i = 0; i < c.hom_dim(fs.index[a], A2CD); ++i) {
                                if (cf.f_basis[CD].off(a2, a) + i != ze) continue;
                                Arrow za = c.basis_arrow(fs.index[a], A2CD, i);
                                for (std::size_t b = 0; b < k; ++b) {
                                    const Arrow& q = pq.Q[j][b][a2];
                                    Arrow moved = c.compose(
                                        c.tensor_arrow(q, c.id(Dd)),
                                        c.compose(c.alpha[fs.index[a2]][Cd][Dd], za));
                                    for (std::size_t l = 0; l < moved.coords.rows(); ++l)
                                        yvec.at(cf.f_basis[Dd].off(b, a) + l, 0) += moved.coords.at(l, 0);
                                }
                            }
                        }
                    acc = acc + f.ten[Cd][Dd].space.projection() * kron(pvec[j], yvec);
                }
                for (std::size_t r = 0; r < acc.rows(); ++r) assembled.at(r, ze) = acc.at(r, 0);
            }
            if (!(f.F2[Cd][Dd] * assembled).is_identity() ||
                !(assembled * f.F2[Cd][Dd]).is_identity()) {
                ok = false;
                w = "object pair " + detail::tuple_witness({Cd, Dd});
            }
        }
    }
    rep.add("pq-assembled-f2-inverse", ok, "fusion.f2-inverse-from-pq", w);
    return rep;
}

} // namespace tannaka
