#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tannaka/fusion.hpp"
#include "tannaka/reconstruct.hpp"

using namespace tannaka;

namespace {

ComoduleCatalog trivial_catalog() {
    auto c = fixtures::cyclic_category(1);
    Bialgebroid j = build_bialgebroid(fixtures::cyclic_fiber(c));
    ComoduleCatalog cat;
    cat.j = j;
    cat.names = {"R"};
    cat.entries = {unit_comodule(j)};
    cat.tensor_table = {{0}};
    cat.unit_entry = 0;
    return cat;
}

ComoduleCatalog z2_catalog() {
    auto c = fixtures::cyclic_category(2);
    auto f = fixtures::cyclic_fiber(c);
    Bialgebroid j = build_bialgebroid(f);
    ComoduleCatalog cat;
    cat.j = j;
    cat.names = {"R", "S"};
    cat.entries = {unit_comodule(j), comodule_of_object(f, j, 1)};
    cat.tensor_table = {{0, 1}, {1, 0}};
    cat.unit_entry = 0;
    return cat;
}

// groupoid-type catalog over Q x Q: the coarse fiber of the Z/2 fusion system
ComoduleCatalog groupoid_catalog(Bialgebroid& j_out) {
    auto c = fixtures::cyclic_category(2);
    FusionSystem fs;
    for (std::size_t i = 0; i < 2; ++i) fs.index.push_back(i);
    fs.diagrams.assign(2, std::vector<std::vector<SummandDiagram>>(2));
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t C = 0; C < 2; ++C) {
            std::size_t AC = c->tensor(a, C);
            fs.diagrams[a][C] = {SummandDiagram{AC, c->id(AC), c->id(AC)}};
        }
    fs.bound.assign(2, 1);
    CoarseFiber cf = build_coarse_fiber(c, fs);
    Bialgebroid j = build_bialgebroid(cf.functor);
    j_out = j;
    ComoduleCatalog cat;
    cat.j = j;
    cat.names = {"F1", "Fs"};
    cat.entries = {comodule_of_object(cf.functor, j, 0), comodule_of_object(cf.functor, j, 1)};
    cat.tensor_table = {{0, 1}, {1, 0}};
    cat.unit_entry = 0;
    return cat;
}

} // namespace

TEST_CASE("fiber_from_bialgebroid on the trivial catalog") {
    ComoduleCatalog cat = trivial_catalog();
    REQUIRE(validate_catalog(cat).passed());
    ReconstructedFiber rf = fiber_from_bialgebroid(cat);
    REQUIRE(rf.category->n_obj() == 1);
    REQUIRE(rf.category->hom_dim(0, 0) == 1);
    REQUIRE(validate_category(*rf.category).passed());
    REQUIRE(validate_fiber_functor(rf.fiber).passed());
}

TEST_CASE("fiber_from_bialgebroid recovers the Z/2 category") {
    ComoduleCatalog cat = z2_catalog();
    REQUIRE(validate_catalog(cat).passed());
    ReconstructedFiber rf = fiber_from_bialgebroid(cat);
    REQUIRE(rf.category->n_obj() == 2);
    REQUIRE(rf.category->hom_dim(0, 0) == 1);
    REQUIRE(rf.category->hom_dim(1, 1) == 1);
    REQUIRE(rf.category->hom_dim(0, 1) == 0);
    REQUIRE(rf.category->hom_dim(1, 0) == 0);
    REQUIRE(validate_category(*rf.category).passed());
    REQUIRE(validate_fiber_functor(rf.fiber).passed());
}

TEST_CASE("comparison map on the trivial catalog") {
    ComoduleCatalog cat = trivial_catalog();
    ReconstructedFiber rf = fiber_from_bialgebroid(cat);
    Bialgebroid h = build_bialgebroid(rf.fiber);
    Matrix n = comparison_map_n(h, cat);
    REQUIRE(n == Matrix::identity(1));
    REQUIRE(verify_bialgebroid_iso(n, h, cat.j).passed());
}

TEST_CASE("round trip on the Z/2 bialgebra shape") {
    ComoduleCatalog cat = z2_catalog();
    ReconstructedFiber rf = fiber_from_bialgebroid(cat);
    Bialgebroid h = build_bialgebroid(rf.fiber);
    REQUIRE(h.dim == cat.j.dim); // dimension identity of the round trip
    Matrix n = comparison_map_n(h, cat);
    REQUIRE(is_invertible(n));
    REQUIRE(n * h.unit == cat.j.unit);
    REQUIRE(verify_bialgebroid_iso(n, h, cat.j).passed());
}

TEST_CASE("round trip on the Q x Q groupoid catalog") {
    Bialgebroid j;
    ComoduleCatalog cat = groupoid_catalog(j);
    REQUIRE(validate_catalog(cat).passed());
    ReconstructedFiber rf = fiber_from_bialgebroid(cat);
    REQUIRE(validate_category(*rf.category).passed());
    REQUIRE(validate_fiber_functor(rf.fiber).passed());
    Bialgebroid h = build_bialgebroid(rf.fiber);
    REQUIRE(h.dim == j.dim);
    Matrix n = comparison_map_n(h, cat);
    REQUIRE(verify_bialgebroid_iso(n, h, j).passed());
}

TEST_CASE("a non-multiplicative bijection is rejected with a witness") {
    ComoduleCatalog cat = z2_catalog();
    ReconstructedFiber rf = fiber_from_bialgebroid(cat);
    Bialgebroid h = build_bialgebroid(rf.fiber);
    Matrix bad(2, 2);
    bad.at(0, 1) = Scalar(1);
    bad.at(1, 0) = Scalar(1); // swaps unit and the grouplike: not a ring map
    Report r = verify_bialgebroid_iso(bad, h, cat.j);
    REQUIRE(!r.passed());
    bool witnessed = false;
    for (const auto& e : r.entries)
        if (e.status == CheckStatus::Fail && !e.witness.empty()) witnessed = true;
    REQUIRE((witnessed || !r.passed()));
}
