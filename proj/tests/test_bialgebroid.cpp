#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tannaka/bialgebroid.hpp"

using namespace tannaka;

namespace {

// Independent oracle for cyclic fixtures with one-dimensional objects: the
// coend basis is {e_C}, multiplication multiplies the G2 and F2 scalars,
// the coproduct is grouplike and the counit is the scalar pairing.
struct CyclicOracle {
    std::size_t n;
    std::vector<std::vector<Scalar>> mult_scalar; // e_B e_C = scalar . e_{B+C}

    static CyclicOracle from(const FiberFunctor& f, const DualFunctor& g) {
        CyclicOracle o;
        o.n = f.category->n_obj();
        o.mult_scalar.assign(o.n, std::vector<Scalar>(o.n, Scalar(0)));
        for (std::size_t b = 0; b < o.n; ++b)
            for (std::size_t c = 0; c < o.n; ++c)
                o.mult_scalar[b][c] = g.G2[b][c].at(0, 0) * f.F2[b][c].at(0, 0);
        return o;
    }
};

Matrix basis(std::size_t n, std::size_t i) { return Matrix::basis_column(n, i); }

} // namespace

TEST_CASE("build_bialgebroid on the trivial category") {
    auto c = fixtures::cyclic_category(1);
    auto f = fixtures::cyclic_fiber(c);
    Bialgebroid h = build_bialgebroid(f);
    REQUIRE(h.dim == 1);
    REQUIRE(h.unit == Matrix::identity(1));
    REQUIRE(h.source == Matrix::identity(1));
    REQUIRE(h.target == Matrix::identity(1));
    REQUIRE(h.counit == Matrix::identity(1));
    REQUIRE(validate_right_bialgebroid(h).passed());
}

TEST_CASE("build_bialgebroid on Z/2 matches the direct-evaluation oracle") {
    auto c = fixtures::cyclic_category(2);
    auto f = fixtures::cyclic_fiber(c);
    auto g = pointwise_dual(f);
    Bialgebroid h = build_bialgebroid(f, g);

    REQUIRE(h.dim == 2);
    // coend basis elements are tagged by the two objects in order
    REQUIRE(h.coend->tags[0].obj == 0);
    REQUIRE(h.coend->tags[1].obj == 1);

    CyclicOracle o = CyclicOracle::from(f, g);
    for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t cc = 0; cc < 2; ++cc) {
            Matrix expect = o.mult_scalar[b][cc] * basis(2, (b + cc) % 2);
            REQUIRE(h.mult(basis(2, b), basis(2, cc)) == expect);
        }
    // group-algebra shape: e_C e_D = e_{C(x)D}
    REQUIRE(o.mult_scalar[1][1] == Scalar(1));

    // the unit is the unit-object rank-1 class
    REQUIRE(h.unit == basis(2, 0));
    // source and target both embed r as r . e_0
    REQUIRE(h.source == basis(2, 0));
    REQUIRE(h.target == basis(2, 0));

    // grouplike coproduct and unit counit
    const BimoduleTensor& hb = h.hbar();
    for (std::size_t i = 0; i < 2; ++i) {
        Matrix expected = hb.space.projection() * kron(basis(2, i), basis(2, i));
        REQUIRE(h.coproduct * basis(2, i) == expected);
        REQUIRE(h.counit * basis(2, i) == Matrix::identity(1));
    }
    REQUIRE(validate_right_bialgebroid(h).passed());
}

TEST_CASE("twisted Z/2 functor reconstructs an isomorphic bialgebra") {
    auto c = fixtures::cyclic_category(2);
    auto f = fixtures::z2_twisted_fiber(c);
    Bialgebroid h = build_bialgebroid(f);
    REQUIRE(h.dim == 2);
    REQUIRE(validate_right_bialgebroid(h).passed());
    // the cocycle cancels between the two legs
    REQUIRE(h.mult(basis(2, 1), basis(2, 1)) == basis(2, 0));
}

TEST_CASE("nontrivial base: bialgebroid over Q[eps]") {
    auto nf = fixtures::nilpotent_fixture();
    Bialgebroid h = build_bialgebroid(nf.fib);
    REQUIRE(h.dim == 2);
    REQUIRE(validate_right_bialgebroid(h).passed());
    // counit splits source and target
    REQUIRE(h.counit * h.source == Matrix::identity(2));
    REQUIRE(h.counit * h.target == Matrix::identity(2));
}

TEST_CASE("counit splits source and target on every fixture") {
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
        auto c = fixtures::cyclic_category(n);
        Bialgebroid h = build_bialgebroid(fixtures::cyclic_fiber(c));
        REQUIRE(h.counit * h.source == Matrix::identity(h.base->dim));
        REQUIRE(h.counit * h.target == Matrix::identity(h.base->dim));
    }
}

TEST_CASE("mutated multiplication table fails (B1) with a witness") {
    auto c = fixtures::cyclic_category(2);
    Bialgebroid h = build_bialgebroid(fixtures::cyclic_fiber(c));
    h.left_mult[0].at(1, 1) = Scalar(2); // e0 . e1 = 2 e1 breaks associativity/unit
    Report r = validate_right_bialgebroid(h);
    REQUIRE(!r.passed());
    bool b1 = false;
    for (const auto& e : r.entries)
        if (e.name.rfind("B1", 0) == 0 && e.status == CheckStatus::Fail && !e.witness.empty()) b1 = true;
    REQUIRE(b1);
}

TEST_CASE("object relabeling yields a structure-preserving isomorphism") {
    auto c = fixtures::cyclic_category(2);
    auto f = fixtures::cyclic_fiber(c);
    Bialgebroid h = build_bialgebroid(f);

    // permuted presentation: objects listed as (g1, g0), unit at index 1
    CategoryBuilder b(FieldSpec::rationals(), {"g1", "g0"}, "g0");
    b.hom("g0", "g0", 1);
    b.hom("g1", "g1", 1);
    b.alloc_compose();
    for (std::size_t i = 0; i < 2; ++i) {
        b.identity_coords(i, Matrix::identity(1));
        b.compose_entry(i, i, i, 0, 0, Matrix::identity(1));
    }
    b.tensor_obj_table({{1, 0}, {0, 1}});
    b.alloc_tensor();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) b.tensor_entry(i, i, j, j, 0, 0, Matrix::identity(1));
    b.default_coherence();
    auto cp = b.build();
    REQUIRE(validate_category(*cp).passed());
    auto fp = fixtures::cyclic_fiber(cp);
    Bialgebroid hp = build_bialgebroid(fp);

    // relabeling isomorphism via the rank-1 tags: object i of c is object 1-i of cp
    Matrix n_iso(hp.dim, h.dim);
    for (std::size_t q = 0; q < h.dim; ++q) {
        const auto& tg = h.coend->tags[q];
        Matrix img = hp.coend->class_of(1 - tg.obj, basis(1, tg.uidx), basis(1, tg.vidx));
        for (std::size_t r = 0; r < hp.dim; ++r) n_iso.at(r, q) = img.at(r, 0);
    }
    REQUIRE(is_invertible(n_iso));
    for (std::size_t i = 0; i < h.dim; ++i)
        for (std::size_t j = 0; j < h.dim; ++j)
            REQUIRE(n_iso * h.mult(basis(h.dim, i), basis(h.dim, j)) ==
                    hp.mult(n_iso * basis(h.dim, i), n_iso * basis(h.dim, j)));
    REQUIRE(n_iso * h.unit == hp.unit);
    REQUIRE(n_iso * h.source == hp.source);
    REQUIRE(n_iso * h.target == hp.target);
    REQUIRE(hp.counit * n_iso == h.counit);
}

TEST_CASE("comodule_of_object") {
    auto c = fixtures::cyclic_category(2);
    auto f = fixtures::cyclic_fiber(c);
    Bialgebroid h = build_bialgebroid(f);

    SECTION("unit object carries the trivial coaction") {
        Comodule m = comodule_of_object(f, h, 0);
        Matrix lift = m.mbar.space.section() * m.coaction;
        REQUIRE(lift == m.mbar.space.section() * (m.mbar.space.projection() * kron(Matrix::identity(1), h.unit)));
        REQUIRE(validate_comodule(m, h).passed());
    }
    SECTION("graded object coacts by its weight") {
        Comodule m = comodule_of_object(f, h, 1);
        Matrix lift = m.mbar.space.section() * m.coaction;
        Matrix expect = m.mbar.space.section() *
                        (m.mbar.space.projection() * kron(Matrix::identity(1), basis(2, 1)));
        REQUIRE(lift == expect);
        REQUIRE(validate_comodule(m, h).passed());
    }
    SECTION("coaction is natural in the object") {
        auto nf = fixtures::nilpotent_fixture();
        Bialgebroid hh = build_bialgebroid(nf.fib);
        Comodule m = comodule_of_object(nf.fib, hh, 0);
        REQUIRE(validate_comodule(m, hh).passed());
        Arrow eps = nf.cat->basis_arrow(0, 0, 1);
        Matrix ft = nf.fib.apply(eps);
        Matrix induced = m.mbar.space.induce(m.mbar.space, kron(ft, Matrix::identity(hh.dim)));
        REQUIRE(induced * m.coaction == m.coaction * ft);
    }
}

TEST_CASE("comodule_tensor") {
    auto c = fixtures::cyclic_category(2);
    auto f = fixtures::cyclic_fiber(c);
    Bialgebroid h = build_bialgebroid(f);
    Comodule ks = comodule_of_object(f, h, 1);

    SECTION("tensoring with the unit comodule preserves the coaction") {
        Comodule u = unit_comodule(h);
        REQUIRE(validate_comodule(u, h).passed());
        Comodule t = comodule_tensor(ks, u, h);
        REQUIRE(t.underlying.dim == 1);
        REQUIRE(validate_comodule(t, h).passed());
        Matrix lift = t.mbar.space.section() * t.coaction;
        Matrix expect = t.mbar.space.section() *
                        (t.mbar.space.projection() * kron(Matrix::identity(1), basis(2, 1)));
        REQUIRE(lift == expect);
    }
    SECTION("grading arithmetic: k(s) (x) k(s) has weight e_0") {
        Comodule t = comodule_tensor(ks, ks, h);
        REQUIRE(t.underlying.dim == 1);
        REQUIRE(validate_comodule(t, h).passed());
        Matrix lift = t.mbar.space.section() * t.coaction;
        Matrix expect = t.mbar.space.section() *
                        (t.mbar.space.projection() * kron(Matrix::identity(1), basis(2, 0)));
        REQUIRE(lift == expect);
    }
}

TEST_CASE("export_weak_bialgebra") {
    SECTION("ground field: the export is the plain bialgebra") {
        auto c = fixtures::cyclic_category(2);
        Bialgebroid h = build_bialgebroid(fixtures::cyclic_fiber(c));
        FrobeniusDatum fr;
        fr.phi = Matrix::identity(1);
        fr.e = Matrix::identity(1);
        Report rep;
        WeakBialgebra w = export_weak_bialgebra(h, fr, rep);
        REQUIRE(rep.passed());
        REQUIRE(w.comult_k == h.hbar().space.section() * h.coproduct);
        REQUIRE(w.counit_k == h.counit);
    }
    SECTION("invalid Frobenius datum is rejected") {
        auto c = fixtures::cyclic_category(2);
        Bialgebroid h = build_bialgebroid(fixtures::cyclic_fiber(c));
        FrobeniusDatum fr;
        fr.phi = Matrix::identity(1);
        fr.e = Matrix(1, 1); // zero: fails separability
        Report rep;
        REQUIRE_THROWS_AS(export_weak_bialgebra(h, fr, rep), std::domain_error);
    }
}
