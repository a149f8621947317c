#pragma once

#include "tannaka/fiber.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tannaka {

// Additive sieve on a fixed target: the span-closure of finitely many
// generating arrows.  The closure at an object is the span of all
// precompositions of the generators; one closure step is a fixed point.
struct Sieve {
    std::size_t target = 0;
    std::vector<Arrow> generators;
};

inline Sieve maximal_sieve(const CategoryPresentation& c, std::size_t target) {
    return Sieve{target, {c.id(target)}};
}

inline Sieve zero_sieve(std::size_t target) { return Sieve{target, {}}; }

// columns spanning the closure of s at object a, inside hom(a, target)
inline Matrix sieve_closure(const CategoryPresentation& c, const Sieve& s, std::size_t a) {
    Matrix cols(c.hom_dim(a, s.target), 0);
    for (const Arrow& g : s.generators) {
        std::size_t nr = c.hom_dim(a, g.dom);
        for (std::size_t i = 0; i < nr; ++i) {
            Arrow comp = c.compose(g, c.basis_arrow(a, g.dom, i));
            cols = hstack(cols, comp.coords);
        }
    }
    return cols;
}

inline bool sieve_membership(const CategoryPresentation& c, const Sieve& s, const Arrow& q) {
    if (q.cod != s.target) throw std::invalid_argument("ObjectMismatch");
    if (q.coords.is_zero()) return true;
    return in_span(sieve_closure(c, s, q.dom), q.coords);
}

// jointly F-epimorphic test: the images of the generators span F(target)
inline bool is_covering(const CategoryPresentation& c, const Sieve& s, const FiberFunctor& f) {
    std::size_t target_dim = f.images[s.target].dim;
    if (target_dim == 0) return true;
    Matrix stacked(target_dim, 0);
    for (const Arrow& g : s.generators) stacked = hstack(stacked, f.apply(g));
    return rank(stacked) == target_dim;
}

inline Sieve pullback_sieve(const CategoryPresentation& c, const Arrow& f_arrow, const Sieve& s) {
    if (f_arrow.cod != s.target) throw std::invalid_argument("ObjectMismatch");
    Sieve out;
    out.target = f_arrow.dom;
    for (std::size_t w = 0; w < c.n_obj(); ++w) {
        std::size_t hd = c.hom_dim(w, f_arrow.dom);
        if (hd == 0) continue;
        Matrix closure = sieve_closure(c, s, w);
        QuotientSpace mod_s(c.hom_dim(w, s.target), closure);
        Matrix post = c.postcompose_map(f_arrow, w);
        Matrix ker = kernel_basis(mod_s.projection() * post);
        for (std::size_t j = 0; j < ker.cols(); ++j)
            out.generators.push_back(Arrow{w, f_arrow.dom, ker.col(j)});
    }
    return out;
}

using CoveringOracle = std::function<bool(const Sieve&)>;

inline CoveringOracle f_covering_oracle(const CategoryPresentation& c, const FiberFunctor& f) {
    return [&c, &f](const Sieve& s) { return is_covering(c, s, f); };
}

namespace detail {

inline void enumerate_subsets(const std::vector<Arrow>& pool, std::size_t max_size,
                              std::vector<std::vector<Arrow>>& out) {
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        std::vector<Arrow> subset;
        for (std::size_t i : idx) subset.push_back(pool[i]);
        out.push_back(subset);
        if (idx.size() == max_size) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
}

} // namespace detail

// all sieves on `target` generated by at most max_generators basis arrows
inline std::vector<Sieve> enumerate_sieves(const CategoryPresentation& c, std::size_t target,
                                           std::size_t max_generators) {
    std::vector<Arrow> pool;
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t i = 0; i < c.hom_dim(a, target); ++i)
            pool.push_back(c.basis_arrow(a, target, i));
    std::vector<std::vector<Arrow>> subsets;
    detail::enumerate_subsets(pool, max_generators, subsets);
    std::vector<Sieve> out;
    for (auto& sub : subsets) out.push_back(Sieve{target, std::move(sub)});
    return out;
}

// Grothendieck topology axioms over the bounded enumeration, with the
// covering predicate supplied as an oracle so adversarial predicates can be
// exercised by the mutation suite.
inline Report validate_topology_axioms(const CategoryPresentation& c, const FiberFunctor& f,
                                       std::size_t max_generators,
                                       const CoveringOracle* oracle = nullptr) {
    Report rep;
    rep.scope = "enumeration scale <= " + std::to_string(max_generators) + " generators";
    CoveringOracle def = f_covering_oracle(c, f);
    const CoveringOracle& cov = oracle ? *oracle : def;

    bool ax1 = true;
    std::string w1;
    for (std::size_t C = 0; C < c.n_obj(); ++C)
        if (!cov(maximal_sieve(c, C))) {
            ax1 = false;
            w1 = "object " + std::to_string(C);
            break;
        }
    rep.add("axiom-i-maximal-covers", ax1, "topology.maximal-sieve-covers", w1);

    std::vector<std::vector<Sieve>> sieves(c.n_obj());
    for (std::size_t C = 0; C < c.n_obj(); ++C) sieves[C] = enumerate_sieves(c, C, max_generators);

    bool ax2 = true;
    std::string w2;
    for (std::size_t B = 0; B < c.n_obj() && ax2; ++B)
        for (const Sieve& s : sieves[B]) {
            if (!cov(s)) continue;
            for (std::size_t A = 0; A < c.n_obj() && ax2; ++A)
                for (std::size_t i = 0; i < c.hom_dim(A, B); ++i) {
                    Arrow t = c.basis_arrow(A, B, i);
                    if (!cov(pullback_sieve(c, t, s))) {
                        ax2 = false;
                        w2 = "sieve on " + std::to_string(B) + ", arrow " +
                             detail::tuple_witness({A, B, i});
                        break;
                    }
                }
            if (!ax2) break;
        }
    rep.add("axiom-ii-pullback-stability", ax2, "topology.pullbacks-of-covers-cover", w2);

    bool ax3 = true;
    std::string w3;
    for (std::size_t C = 0; C < c.n_obj() && ax3; ++C)
        for (const Sieve& s : sieves[C]) {
            if (!cov(s) || s.generators.empty()) continue;
            for (const Sieve& r : sieves[C]) {
                bool premise = true;
                for (const Arrow& gen : s.generators)
                    if (!cov(pullback_sieve(c, gen, r))) {
                        premise = false;
                        break;
                    }
                if (premise && !cov(r)) {
                    ax3 = false;
                    w3 = "covering sieve with " + std::to_string(s.generators.size()) +
                         " generators on object " + std::to_string(C) +
                         " against a non-covering refinement";
                    break;
                }
            }
            if (!ax3) break;
        }
    rep.add("axiom-iii-local-character", ax3, "topology.local-character", w3);
    return rep;
}

// Sheaf condition at enumeration scale: for every enumerated covering sieve
// the restriction of natural families is bijective.
inline Report sheaf_check(const CategoryPresentation& c, const PresheafData& u,
                          const FiberFunctor& f, std::size_t max_generators) {
    Report rep;
    rep.scope = "enumeration scale <= " + std::to_string(max_generators) + " generators";
    bool all_ok = true;
    std::string witness;
    for (std::size_t C = 0; C < c.n_obj() && all_ok; ++C) {
        for (const Sieve& s : enumerate_sieves(c, C, max_generators)) {
            if (!is_covering(c, s, f)) continue;

            // deterministic bases of the closure spans
            std::vector<Matrix> bases(c.n_obj());
            std::vector<std::size_t> offs(c.n_obj());
            std::size_t unknowns = 0;
            for (std::size_t A = 0; A < c.n_obj(); ++A) {
                bases[A] = column_space_basis(sieve_closure(c, s, A));
                offs[A] = unknowns;
                unknowns += u.dims[A] * bases[A].cols();
            }

            // naturality: phi_A(b o r) = U(r) phi_B(b)
            Matrix sys(0, unknowns);
            for (std::size_t B = 0; B < c.n_obj(); ++B)
                for (std::size_t bi = 0; bi < bases[B].cols(); ++bi)
                    for (std::size_t A = 0; A < c.n_obj(); ++A)
                        for (std::size_t ri = 0; ri < c.hom_dim(A, B); ++ri) {
                            Arrow r = c.basis_arrow(A, B, ri);
                            Arrow br = c.compose(Arrow{B, C, bases[B].col(bi)}, r);
                            auto coords = solve(bases[A], br.coords);
                            if (!coords) throw std::logic_error("sheaf_check: closure not closed");
                            Matrix ur = u.apply(c, r); // U(A) <- U(B)
                            std::size_t base = sys.rows();
                            sys = vstack(sys, Matrix(u.dims[A], unknowns));
                            // phi_A evaluated on (b o r) expanded in the basis of A
                            for (std::size_t k = 0; k < bases[A].cols(); ++k)
                                if (!coords->at(k, 0).is_zero())
                                    for (std::size_t row = 0; row < u.dims[A]; ++row)
                                        sys.at(base + row, offs[A] + row * bases[A].cols() + k) +=
                                            coords->at(k, 0);
                            for (std::size_t row = 0; row < u.dims[A]; ++row)
                                for (std::size_t col = 0; col < u.dims[B]; ++col)
                                    sys.at(base + row, offs[B] + col * bases[B].cols() + bi) -=
                                        ur.at(row, col);
                        }
            Matrix nat_space = kernel_basis(sys);

            // restriction of U(C): x |-> { phi_A(b) = U(b)(x) }
            Matrix res(unknowns, u.dims[C]);
            for (std::size_t A = 0; A < c.n_obj(); ++A)
                for (std::size_t bi = 0; bi < bases[A].cols(); ++bi) {
                    Matrix ub = u.apply(c, Arrow{A, C, bases[A].col(bi)});
                    for (std::size_t row = 0; row < u.dims[A]; ++row)
                        for (std::size_t col = 0; col < u.dims[C]; ++col)
                            res.at(offs[A] + row * bases[A].cols() + bi, col) = ub.at(row, col);
                }

            bool unique = kernel_basis(res).cols() == 0;
            bool glues = nat_space.cols() == rank(res);
            if (!unique || !glues) {
                all_ok = false;
                std::string what = !unique && !glues ? "uniqueness and existence"
                                                     : (!unique ? "uniqueness" : "existence");
                witness = what + " fail for a covering sieve with " +
                          std::to_string(s.generators.size()) + " generators on object " +
                          std::to_string(C);
                break;
            }
        }
    }
    rep.add("matching-families-glue-uniquely", all_ok, "sheaf.equalizer-condition", witness);
    return rep;
}

// every enumerated covering sieve contains the identity of its target
inline Report coarse_site_check(const CategoryPresentation& c, const FiberFunctor& f,
                                std::size_t max_generators) {
    Report rep;
    rep.scope = "enumeration scale <= " + std::to_string(max_generators) + " generators";
    bool ok = true;
    std::string w;
    for (std::size_t C = 0; C < c.n_obj() && ok; ++C)
        for (const Sieve& s : enumerate_sieves(c, C, max_generators)) {
            if (!is_covering(c, s, f)) continue;
            if (!sieve_membership(c, s, c.id(C))) {
                ok = false;
                w = "covering sieve without the identity on object " + std::to_string(C);
                break;
            }
        }
    rep.add("covers-contain-identity", ok, "site.coarse-topology", w);
    return rep;
}

} // namespace tannaka
