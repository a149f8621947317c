// Regenerates the JSON bundles under fixtures/ from the programmatic
// presentations used by the test suite.  Run from the repository root:
//   ./build/make_fixtures [output-dir]

#include "../tests/helpers.hpp"
#include "tannaka/bundle.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace tannaka;

namespace {

void write(const std::filesystem::path& p, const json& j) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << p.string() << "\n";
}

json frobenius_ground() {
    return {{"phi", {"1"}}, {"e", {"1"}}};
}

json base_bundle(const CategoryPresentation& c) {
    json j;
    j["field"] = dump_field(FieldSpec::rationals());
    j["category"] = dump_category(c);
    return j;
}

FusionSystem full_fusion(const CategoryPresentation& c) {
    FusionSystem fs;
    for (std::size_t i = 0; i < c.n_obj(); ++i) fs.index.push_back(i);
    fs.diagrams.assign(c.n_obj(), std::vector<std::vector<SummandDiagram>>(c.n_obj()));
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t C = 0; C < c.n_obj(); ++C) {
            std::size_t ac = c.tensor(a, C);
            fs.diagrams[a][C] = {SummandDiagram{ac, c.id(ac), c.id(ac)}};
        }
    fs.bound.assign(c.n_obj(), 1);
    return fs;
}

json dump_fusion(const CategoryPresentation& c, const std::string& name, const FusionSystem& fs) {
    json j;
    j["name"] = name;
    json index = json::array();
    for (std::size_t i : fs.index) index.push_back(c.objects[i]);
    j["index"] = index;
    json bounds = json::array();
    for (std::size_t C = 0; C < c.n_obj(); ++C)
        bounds.push_back({{"object", c.objects[C]}, {"m", fs.bound[C]}});
    j["bounds"] = bounds;
    json diagrams = json::array();
    for (std::size_t a = 0; a < fs.index.size(); ++a)
        for (std::size_t C = 0; C < c.n_obj(); ++C) {
            json summands = json::array();
            for (const auto& d : fs.diagrams[a][C])
                summands.push_back({{"b", c.objects[d.b]},
                                    {"p", bundle_detail::dump_vector(d.p.coords)},
                                    {"q", bundle_detail::dump_vector(d.q.coords)}});
            diagrams.push_back({{"a", c.objects[fs.index[a]]}, {"c", c.objects[C]},
                                {"summands", summands}});
        }
    j["diagrams"] = diagrams;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";

    {
        auto c = fixtures::cyclic_category(1);
        auto f = fixtures::cyclic_fiber(c);
        json j = base_bundle(*c);
        j["functors"] = json::array({dump_functor("F", f)});
        j["frobenius"] = frobenius_ground();
        Bialgebroid h = build_bialgebroid(f);
        j["bialgebroid"] = dump_bialgebroid(h);
        ComoduleCatalog cat;
        cat.j = h;
        cat.names = {"R"};
        cat.entries = {unit_comodule(h)};
        cat.tensor_table = {{0}};
        cat.unit_entry = 0;
        j["catalog"] = dump_catalog(cat);
        write(dir / "trivial.json", j);
    }
    {
        auto c = fixtures::cyclic_category(2);
        json j = base_bundle(*c);
        j["functors"] = json::array({dump_functor("F", fixtures::cyclic_fiber(c)),
                                     dump_functor("Ftw", fixtures::z2_twisted_fiber(c))});
        j["fusion_systems"] = json::array({dump_fusion(*c, "FS", full_fusion(*c))});
        j["frobenius"] = frobenius_ground();
        write(dir / "z2.json", j);
    }
    {
        auto c = fixtures::cyclic_category(3);
        json j = base_bundle(*c);
        j["functors"] = json::array({dump_functor("F", fixtures::cyclic_fiber(c))});
        write(dir / "z3.json", j);
    }
    {
        // groupoid-type bundle over Q x Q: the coarse fiber of the Z/2
        // fusion system, its bialgebroid, and the two-object catalog
        auto c = fixtures::cyclic_category(2);
        FusionSystem fs = full_fusion(*c);
        CoarseFiber cf = build_coarse_fiber(c, fs);
        Bialgebroid jj = build_bialgebroid(cf.functor);
        ComoduleCatalog cat;
        cat.j = jj;
        cat.names = {"F1", "Fs"};
        cat.entries = {comodule_of_object(cf.functor, jj, 0), comodule_of_object(cf.functor, jj, 1)};
        cat.tensor_table = {{0, 1}, {1, 0}};
        cat.unit_entry = 0;

        json j = base_bundle(*c);
        j["functors"] = json::array({dump_functor("Fc", cf.functor)});
        j["bialgebroid"] = dump_bialgebroid(jj);
        j["catalog"] = dump_catalog(cat);
        j["frobenius"] = {{"phi", {"1", "1"}}, {"e", {"1", "0", "0", "1"}}};
        write(dir / "groupoid_qq.json", j);
    }
    {
        auto nf = fixtures::nilpotent_fixture();
        json j = base_bundle(*nf.cat);
        j["functors"] = json::array({dump_functor("F", nf.fib)});
        write(dir / "site_nilpotent.json", j);
    }
    {
        auto pf = fixtures::projector_fixture();
        json j = base_bundle(*pf.cat);
        j["functors"] = json::array({dump_functor("F", pf.fib)});
        json pdims = json::array();
        for (std::size_t a = 0; a < pf.cat->n_obj(); ++a)
            pdims.push_back({{"object", pf.cat->objects[a]}, {"dim", pf.glue_breaker.dims[a]}});
        json arrows = json::array();
        json mats = json::array();
        for (const auto& m : pf.glue_breaker.act[1][1]) mats.push_back(bundle_detail::dump_matrix(m));
        arrows.push_back({{"from", "N"}, {"to", "N"}, {"matrices", mats}});
        j["presheaves"] = json::array({json{{"name", "U"}, {"dims", pdims}, {"arrows", arrows}}});
        write(dir / "site_nonsplit.json", j);
    }

    // mutants: one per axiom validator family
    {
        auto c = fixtures::cyclic_category(2);
        CategoryPresentation bad = *c;
        bad.tensor_tab[1][1][1][1].at(0, 0) = Scalar(2); // breaks the interchange law
        json j;
        j["field"] = dump_field(FieldSpec::rationals());
        j["category"] = dump_category(bad);
        write(dir / "mutants" / "z2_interchange.json", j);
    }
    {
        auto c = fixtures::cyclic_category(2);
        Bialgebroid h = build_bialgebroid(fixtures::cyclic_fiber(c));
        h.left_mult[0].at(1, 1) = Scalar(2); // e0 . e1 = 2 e1: breaks (B1)
        json j = base_bundle(*c);
        j["bialgebroid"] = dump_bialgebroid(h);
        write(dir / "mutants" / "z2_bialgebroid.json", j);
    }
    {
        auto c = fixtures::cyclic_category(3);
        auto f = fixtures::cyclic_fiber(c);
        Bialgebroid h = build_bialgebroid(f);
        Antipode bad;
        bad.S = Matrix::identity(3); // should swap the two nontrivial weights
        bad.S_inv = Matrix::identity(3);
        json j = base_bundle(*c);
        j["bialgebroid"] = dump_bialgebroid(h, &bad);
        write(dir / "mutants" / "z3_antipode.json", j);
    }
    return 0;
}
