#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tannaka/bialgebroid.hpp"
#include "tannaka/fusion.hpp"

using namespace tannaka;

namespace {

// full fusion system on a cyclic category: I = all objects, A (x) C is
// itself an index object with the identity diagram
FusionSystem full_cyclic_fusion(const CategoryPresentation& c) {
    FusionSystem fs;
    const std::size_t n = c.n_obj();
    for (std::size_t i = 0; i < n; ++i) fs.index.push_back(i);
    fs.diagrams.assign(n, std::vector<std::vector<SummandDiagram>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t C = 0; C < n; ++C) {
            std::size_t AC = c.tensor(a, C);
            fs.diagrams[a][C] = {SummandDiagram{AC, c.id(AC), c.id(AC)}};
        }
    fs.bound.assign(n, 1);
    return fs;
}

} // namespace

TEST_CASE("validate_fusion_system") {
    SECTION("trivial category with the identity diagram") {
        auto c = fixtures::cyclic_category(1);
        REQUIRE(validate_fusion_system(*c, full_cyclic_fusion(*c)).passed());
    }
    SECTION("Z/2 with I = both objects") {
        auto c = fixtures::cyclic_category(2);
        REQUIRE(validate_fusion_system(*c, full_cyclic_fusion(*c)).passed());
    }
    SECTION("vacuous bound fails") {
        auto c = fixtures::cyclic_category(2);
        FusionSystem fs = full_cyclic_fusion(*c);
        fs.bound.assign(2, 0);
        Report r = validate_fusion_system(*c, fs);
        REQUIRE(!r.passed());
        bool mb = false;
        for (const auto& e : r.entries)
            if (e.name == "multiplicity-bound" && e.status == CheckStatus::Fail) mb = true;
        REQUIRE(mb);
    }
}

TEST_CASE("dual_basis_matrices and the PQ identity") {
    SECTION("trivial category: a single identity pair") {
        auto c = fixtures::cyclic_category(1);
        FusionSystem fs = full_cyclic_fusion(*c);
        PQMatrices pq = dual_basis_matrices(*c, fs, 0);
        REQUIRE(pq.m == 1);
        REQUIRE(pq.P[0][0][0].coords == c->identities[0]);
        REQUIRE(check_pq_identity(*c, fs, 0).passed());
    }
    SECTION("Z/2 at both tensor arguments") {
        auto c = fixtures::cyclic_category(2);
        FusionSystem fs = full_cyclic_fusion(*c);
        REQUIRE(check_pq_identity(*c, fs, 0).passed());
        REQUIRE(check_pq_identity(*c, fs, 1).passed());
        // the sigma-column is a block permutation: P[0][a][b] nonzero iff b = a+1
        PQMatrices pq = dual_basis_matrices(*c, fs, 1);
        REQUIRE(pq.m == 1);
        REQUIRE(pq.P[0][0][1].coords == c->identities[1]);
        REQUIRE(pq.P[0][1][0].coords == c->identities[0]);
        REQUIRE(pq.P[0][0][0].coords.is_zero());
    }
}

TEST_CASE("build_coarse_fiber on the trivial category") {
    auto c = fixtures::cyclic_category(1);
    FusionSystem fs = full_cyclic_fusion(*c);
    CoarseFiber cf = build_coarse_fiber(c, fs);
    REQUIRE(cf.functor.base->dim == 1);
    REQUIRE(validate_fiber_functor(cf.functor).passed());
    REQUIRE(check_coarse(cf.functor).passed());
}

TEST_CASE("build_coarse_fiber on Z/2") {
    auto c = fixtures::cyclic_category(2);
    FusionSystem fs = full_cyclic_fusion(*c);
    CoarseFiber cf = build_coarse_fiber(c, fs);
    const FiberFunctor& f = cf.functor;

    SECTION("the base ring is Q x Q on the diagonal blocks") {
        REQUIRE(f.base->dim == 2);
        // idempotent basis: e_i e_j = delta_ij e_i, unit = e_0 + e_1
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                Matrix prod = f.base->left_mult[i] * Matrix::basis_column(2, j);
                Matrix expect = (i == j) ? Matrix::basis_column(2, i) : Matrix(2, 1);
                REQUIRE(prod == expect);
            }
        REQUIRE(f.base->unit_col() == Matrix::column({Scalar(1), Scalar(1)}));
    }
    SECTION("images: F(1) is the regular module, F(s) the swapped one") {
        REQUIRE(f.images[0].dim == 2);
        REQUIRE(f.images[1].dim == 2);
        REQUIRE(validate_fiber_functor(f).passed());
    }
    SECTION("the functor is coarse and the site confirms it") {
        REQUIRE(check_coarse(f).passed());
        REQUIRE(coarse_site_check(*c, f, 2).passed());
    }
    SECTION("the PQ-assembled F2 inverse matches") {
        REQUIRE(coarse_f2_inverse_report(*c, fs, cf).passed());
    }
    SECTION("the reconstructed bialgebroid has rank four over Q x Q") {
        Bialgebroid h = build_bialgebroid(f);
        REQUIRE(h.dim == 8); // k-dimension 8 = rank 4 over the two-dimensional base
        REQUIRE(validate_right_bialgebroid(h).passed());
    }
}

TEST_CASE("build_coarse_fiber on Z/3 uses all three simples") {
    auto c = fixtures::cyclic_category(3);
    FusionSystem fs = full_cyclic_fusion(*c);
    CoarseFiber cf = build_coarse_fiber(c, fs);
    REQUIRE(cf.functor.base->dim == 3); // R = Q^3 on the diagonal
    REQUIRE(validate_fiber_functor(cf.functor).passed());
    REQUIRE(check_coarse(cf.functor).passed());
    REQUIRE(coarse_f2_inverse_report(*c, fs, cf).passed());
}

TEST_CASE("relabelling order does not change the result up to isomorphism") {
    auto c = fixtures::cyclic_category(2);
    FusionSystem fs = full_cyclic_fusion(*c);
    FusionSystem fs_swapped = fs;
    std::swap(fs_swapped.index[0], fs_swapped.index[1]);
    std::swap(fs_swapped.diagrams[0], fs_swapped.diagrams[1]);
    REQUIRE(validate_fusion_system(*c, fs_swapped).passed());
    CoarseFiber a = build_coarse_fiber(c, fs);
    CoarseFiber b = build_coarse_fiber(c, fs_swapped);
    REQUIRE(a.functor.base->dim == b.functor.base->dim);
    for (std::size_t C = 0; C < 2; ++C)
        REQUIRE(a.functor.images[C].dim == b.functor.images[C].dim);
    REQUIRE(validate_fiber_functor(b.functor).passed());
}
