#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tannaka/coend.hpp"

using namespace tannaka;

namespace {

// canonical map  YB (x)_C F  ->  F(B),  s (x) x |-> F(s)x
bool yoneda_reduction_holds(const CategoryPresentation& cat, const FiberFunctor& f, std::size_t B) {
    PresheafData yb = representable_presheaf(cat, B);
    CovariantData fd = f.as_covariant();
    CoendSpace cs = tensor_over_C(cat, yb, fd);
    Matrix can(f.images[B].dim, cs.ambient_dim());
    for (std::size_t C = 0; C < cat.n_obj(); ++C)
        for (std::size_t si = 0; si < cat.hom_dim(C, B); ++si)
            for (std::size_t x = 0; x < f.images[C].dim; ++x) {
                Matrix v = f.apply(cat.basis_arrow(C, B, si)) * Matrix::basis_column(f.images[C].dim, x);
                for (std::size_t r = 0; r < v.rows(); ++r)
                    can.at(r, cs.amb_index(C, si, x)) = v.at(r, 0);
            }
    // the canonical map kills the relations and induces an isomorphism
    if (!(can * (Matrix::identity(cs.ambient_dim()) -
                 cs.space.section() * cs.space.projection()))
             .is_zero())
        return false;
    Matrix induced = can * cs.space.section();
    return cs.dim() == f.images[B].dim && is_invertible(induced);
}

} // namespace

TEST_CASE("tensor_over_C") {
    SECTION("trivial category gives a line") {
        auto c = fixtures::cyclic_category(1);
        auto f = fixtures::cyclic_fiber(c);
        auto g = pointwise_dual(f);
        CoendSpace cs = tensor_over_C(*c, g.as_presheaf(), f.as_covariant());
        REQUIRE(cs.dim() == 1);
    }
    SECTION("Z/2 coend has dimension two with per-object basis") {
        auto c = fixtures::cyclic_category(2);
        auto f = fixtures::cyclic_fiber(c);
        auto g = pointwise_dual(f);
        CoendSpace cs = tensor_over_C(*c, g.as_presheaf(), f.as_covariant());
        REQUIRE(cs.dim() == 2);
        REQUIRE(cs.tags[0].obj == 0);
        REQUIRE(cs.tags[1].obj == 1);
    }
    SECTION("an isomorphism between objects glues the summands") {
        // two objects joined by an invertible arrow; tensor data is not needed
        CategoryBuilder b(FieldSpec::rationals(), {"P", "Q"}, "P");
        b.hom("P", "P", 1);
        b.hom("Q", "Q", 1);
        b.hom("P", "Q", 1);
        b.hom("Q", "P", 1);
        b.alloc_compose();
        for (std::size_t o : {0, 1}) {
            b.identity_coords(o, Matrix::identity(1));
        }
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t bb = 0; bb < 2; ++bb)
                for (std::size_t cc = 0; cc < 2; ++cc)
                    b.compose_entry(a, bb, cc, 0, 0, Matrix::identity(1));
        auto cat = b.build();
        REQUIRE(validate_category(*cat).passed());
        PresheafData u;
        u.dims = {1, 1};
        u.act.assign(2, std::vector<std::vector<Matrix>>(2, {Matrix::identity(1)}));
        CovariantData v;
        v.dims = {1, 1};
        v.act.assign(2, std::vector<std::vector<Matrix>>(2, {Matrix::identity(1)}));
        CoendSpace cs = tensor_over_C(*cat, u, v);
        REQUIRE(cs.dim() == 1);
    }
    SECTION("Yoneda reduction at every object") {
        auto c = fixtures::cyclic_category(3);
        auto f = fixtures::cyclic_fiber(c);
        for (std::size_t B = 0; B < 3; ++B) REQUIRE(yoneda_reduction_holds(*c, f, B));
        auto nf = fixtures::nilpotent_fixture();
        REQUIRE(yoneda_reduction_holds(*nf.cat, nf.fib, 0));
    }
}

TEST_CASE("day_convolution_at") {
    SECTION("unit convolved with itself on the trivial category") {
        auto c = fixtures::cyclic_category(1);
        PresheafData yi = unit_presheaf(*c);
        DaySpace d = day_convolution_at(*c, yi, yi, 0);
        REQUIRE(d.dim() == 1);
    }
    SECTION("representables: (YA . YB)(C) has the dimension of hom(C, A(x)B)") {
        auto c = fixtures::cyclic_category(3);
        for (std::size_t A = 0; A < 3; ++A)
            for (std::size_t B = 0; B < 3; ++B)
                for (std::size_t C = 0; C < 3; ++C) {
                    DaySpace d = day_convolution_at(*c, representable_presheaf(*c, A),
                                                    representable_presheaf(*c, B), C);
                    REQUIRE(d.dim() == c->hom_dim(C, c->tensor(A, B)));
                }
        auto nf = fixtures::nilpotent_fixture();
        DaySpace d = day_convolution_at(*nf.cat, representable_presheaf(*nf.cat, 0),
                                        representable_presheaf(*nf.cat, 0), 0);
        REQUIRE(d.dim() == nf.cat->hom_dim(0, 0));
    }
    SECTION("Z/2 dual: (G . G)(g1) is two-dimensional before and after relations") {
        auto c = fixtures::cyclic_category(2);
        auto g = pointwise_dual(fixtures::cyclic_fiber(c));
        DaySpace d = day_convolution_at(*c, g.as_presheaf(), g.as_presheaf(), 1);
        REQUIRE(d.space.ambient_dim() == 2);
        REQUIRE(d.dim() == 2);
    }
    SECTION("confluence: rewriting a generator by one relation keeps the normal form") {
        auto cf = fixtures::nilpotent_fixture();
        auto g = pointwise_dual(cf.fib);
        PresheafData gp = g.as_presheaf();
        DaySpace d = day_convolution_at(*cf.cat, gp, gp, 0);
        Arrow eps = cf.cat->basis_arrow(0, 0, 1);
        Matrix x = Matrix::basis_column(gp.dims[0], 0);
        Matrix t = cf.cat->id(0).coords;
        // [G(eps)x, y, t] and [x, y, (eps (x) id) o t] have equal normal forms
        Matrix y = Matrix::basis_column(gp.dims[0], 1);
        Matrix lhs = d.normal_form(0, 0, g.apply(eps) * x, y, t);
        Arrow moved = cf.cat->compose(cf.cat->tensor_arrow(eps, cf.cat->id(0)), cf.cat->id(0));
        Matrix rhs = d.normal_form(0, 0, x, y, moved.coords);
        REQUIRE(lhs == rhs);
    }
    SECTION("unknown object is rejected") {
        auto c = fixtures::cyclic_category(1);
        PresheafData yi = unit_presheaf(*c);
        REQUIRE_THROWS_AS(day_convolution_at(*c, yi, yi, 5), std::invalid_argument);
    }
}

TEST_CASE("monoid_check") {
    SECTION("trivial category dual monoid") {
        auto c = fixtures::cyclic_category(1);
        REQUIRE(monoid_check(pointwise_dual(fixtures::cyclic_fiber(c))).passed());
    }
    SECTION("Z/2 dual monoid") {
        auto c = fixtures::cyclic_category(2);
        REQUIRE(monoid_check(pointwise_dual(fixtures::cyclic_fiber(c))).passed());
    }
    SECTION("flipped unit-row entry breaks associativity with a witness") {
        auto c = fixtures::cyclic_category(2);
        auto g = pointwise_dual(fixtures::cyclic_fiber(c));
        g.G2[0][1].at(0, 0) = Scalar(-1); // not a cocycle: associativity must fail
        Report r = monoid_check(g);
        bool assoc_fail = false;
        for (const auto& e : r.entries)
            if (e.name == "associativity" && e.status == CheckStatus::Fail && !e.witness.empty())
                assoc_fail = true;
        REQUIRE(assoc_fail);
    }
    SECTION("nilpotent base dual monoid") {
        auto nf = fixtures::nilpotent_fixture();
        REQUIRE(monoid_check(pointwise_dual(nf.fib)).passed());
    }
}
