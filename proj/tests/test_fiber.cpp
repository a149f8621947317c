#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace tannaka;

TEST_CASE("validate_fiber_functor") {
    SECTION("trivial category, identity functor") {
        auto c = fixtures::cyclic_category(1);
        auto f = fixtures::cyclic_fiber(c);
        REQUIRE(validate_fiber_functor(f).passed());
    }
    SECTION("Z/2 forgetful-style functor") {
        auto c = fixtures::cyclic_category(2);
        auto f = fixtures::cyclic_fiber(c);
        REQUIRE(validate_fiber_functor(f).passed());
    }
    SECTION("twisted Z/2 functor also validates") {
        auto c = fixtures::cyclic_category(2);
        auto f = fixtures::z2_twisted_fiber(c);
        REQUIRE(validate_fiber_functor(f).passed());
    }
    SECTION("nilpotent regular functor validates") {
        auto nf = fixtures::nilpotent_fixture();
        REQUIRE(validate_fiber_functor(nf.fib).passed());
    }
    SECTION("zero image of a basis arrow breaks faithfulness") {
        auto c = fixtures::cyclic_category(2);
        auto f = fixtures::cyclic_fiber(c);
        f.arrows[1][1][0] = Matrix(1, 1);
        Report r = validate_fiber_functor(f);
        bool faith_fail = false;
        for (const auto& e : r.entries)
            if (e.name == "faithful" && e.status == CheckStatus::Fail) faith_fail = true;
        REQUIRE(faith_fail);
    }
}

TEST_CASE("pointwise_dual") {
    SECTION("trivial: dual of the identity functor") {
        auto c = fixtures::cyclic_category(1);
        auto g = pointwise_dual(fixtures::cyclic_fiber(c));
        REQUIRE(g.spaces[0].dim == 1);
        REQUIRE(g.base_l->dim == 1);
    }
    SECTION("Z/2: one-dimensional duals with transposed scalars") {
        auto c = fixtures::cyclic_category(2);
        auto f = fixtures::cyclic_fiber(c);
        auto g = pointwise_dual(f);
        REQUIRE(g.spaces[1].dim == 1);
        REQUIRE(g.G2[1][1] == Matrix::identity(1));
        REQUIRE(g.arrows[1][1][0] == Matrix::identity(1));
    }
    SECTION("nilpotent base: duals are free of rank one over Q[eps]") {
        auto nf = fixtures::nilpotent_fixture();
        auto g = pointwise_dual(nf.fib);
        REQUIRE(g.spaces[0].dim == 2);
        REQUIRE(validate_bimodule(g.spaces[0]).passed());
        REQUIRE(is_invertible(g.G0));
    }
    SECTION("dual route agreement when duality data is present") {
        auto c = fixtures::cyclic_category(3);
        auto f = fixtures::cyclic_fiber(c);
        auto g = pointwise_dual(f);
        REQUIRE(check_dual_routes_agree(f, g).passed());
    }
    SECTION("double dual is conjugate to the original functor") {
        auto nf = fixtures::nilpotent_fixture();
        auto g = pointwise_dual(nf.fib);
        // canonical evaluation x |-> (f |-> f(x)) into the dual over L of G(C)
        auto dd = try_right_dual_data(g.spaces[0]);
        REQUIRE(dd);
        const Bimodule& m = nf.fib.images[0];
        Matrix can(dd->dual.dim, m.dim);
        for (std::size_t x = 0; x < m.dim; ++x) {
            Matrix func(g.base_l->dim, g.spaces[0].dim);
            for (std::size_t j = 0; j < g.spaces[0].dim; ++j) {
                Matrix val = g.duals[0].frame.basis[j] * Matrix::basis_column(m.dim, x);
                for (std::size_t r = 0; r < val.rows(); ++r) func.at(r, j) = val.at(r, 0);
            }
            auto coords = dd->frame.coords(func);
            REQUIRE(coords);
            for (std::size_t r = 0; r < dd->dual.dim; ++r) can.at(r, x) = coords->at(r, 0);
        }
        REQUIRE(is_invertible(can));
        // conjugation carries F(eps) to the double transpose of F(eps)
        Matrix g_eps = g.arrows[0][0][1];
        Matrix gg_eps(dd->dual.dim, dd->dual.dim);
        for (std::size_t j = 0; j < dd->dual.dim; ++j) {
            auto coords = dd->frame.coords(dd->frame.basis[j] * g_eps);
            REQUIRE(coords);
            for (std::size_t r = 0; r < dd->dual.dim; ++r) gg_eps.at(r, j) = coords->at(r, 0);
        }
        REQUIRE(gg_eps * can == can * nf.fib.arrows[0][0][1]);
    }
}

TEST_CASE("check_subcanonical_condition7") {
    SECTION("trivial category: image is everything") {
        auto c = fixtures::cyclic_category(1);
        REQUIRE(check_subcanonical_condition7(fixtures::cyclic_fiber(c)).passed());
    }
    SECTION("Z/2: one-dimensional hom spaces pass") {
        auto c = fixtures::cyclic_category(2);
        REQUIRE(check_subcanonical_condition7(fixtures::cyclic_fiber(c)).passed());
    }
    SECTION("two isomorphic-image objects with no connecting arrow fail") {
        auto sf = fixtures::span_fixture();
        Report r = check_subcanonical_condition7(sf.fib);
        REQUIRE(!r.passed());
    }
}

TEST_CASE("check_coarse") {
    SECTION("trivial and Z/2 functors are coarse") {
        auto c1 = fixtures::cyclic_category(1);
        REQUIRE(check_coarse(fixtures::cyclic_fiber(c1)).passed());
        auto c2 = fixtures::cyclic_category(2);
        REQUIRE(check_coarse(fixtures::cyclic_fiber(c2)).passed());
    }
    SECTION("epimorphic-image non-split arrow is caught") {
        auto sf = fixtures::span_fixture();
        Report r = check_coarse(sf.fib);
        REQUIRE(!r.passed());
        REQUIRE(!r.entries.empty());
        REQUIRE(!r.entries[0].witness.empty());
    }
}

TEST_CASE("invert_monoidal_nat") {
    auto c = fixtures::cyclic_category(2);
    auto f = fixtures::cyclic_fiber(c);
    SECTION("identity transformation inverts to the identity") {
        std::vector<Matrix> u = {Matrix::identity(1), Matrix::identity(1)};
        auto v = invert_monoidal_nat(f, f, u);
        REQUIRE(v[0] == Matrix::identity(1));
        REQUIRE(v[1] == Matrix::identity(1));
    }
    SECTION("unit-incompatible components are rejected") {
        std::vector<Matrix> u = {Matrix::identity(1), Matrix::identity(1)};
        u[0].at(0, 0) = Scalar(2);
        REQUIRE_THROWS_AS(invert_monoidal_nat(f, f, u), std::domain_error);
    }
    SECTION("monoidality forces the scalars to one on Z/2") {
        // u = (1, 2) is natural but fails the tensor square at (g1, g1)
        std::vector<Matrix> u = {Matrix::identity(1), Matrix::identity(1)};
        u[1].at(0, 0) = Scalar(2);
        REQUIRE_THROWS_AS(invert_monoidal_nat(f, f, u), std::domain_error);
    }
    SECTION("nontrivial base: Q[eps] identity transformation") {
        auto nf = fixtures::nilpotent_fixture();
        std::vector<Matrix> u = {Matrix::identity(2)};
        auto v = invert_monoidal_nat(nf.fib, nf.fib, u);
        REQUIRE(v[0] == Matrix::identity(2));
    }
}
