#pragma once

#include "tannaka/catbuild.hpp"
#include "tannaka/fusion.hpp"
#include "tannaka/hopf.hpp"
#include "tannaka/reconstruct.hpp"
#include "tannaka/site.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tannaka {

using nlohmann::json;

struct BundleError : std::runtime_error {
    explicit BundleError(const std::string& what) : std::runtime_error(what) {}
};

struct Bundle {
    FieldSpec field;
    std::shared_ptr<CategoryPresentation> category;
    std::vector<std::pair<std::string, FiberFunctor>> functors;
    std::optional<Bialgebroid> bialgebroid;
    std::optional<Antipode> antipode;
    std::vector<std::pair<std::string, FusionSystem>> fusion_systems;
    std::optional<FrobeniusDatum> frobenius;
    std::vector<std::pair<std::string, PresheafData>> presheaves;
    std::optional<ComoduleCatalog> catalog;

    const FiberFunctor& functor(const std::string& name) const {
        for (const auto& [n, f] : functors)
            if (n == name) return f;
        throw BundleError("no functor named '" + name + "'");
    }
    const FusionSystem& fusion(const std::string& name) const {
        for (const auto& [n, f] : fusion_systems)
            if (n == name) return f;
        throw BundleError("no fusion system named '" + name + "'");
    }
};

namespace bundle_detail {

inline void expect_keys(const json& j, const std::string& path, std::set<std::string> allowed) {
    if (!j.is_object()) throw BundleError(path + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw BundleError(path + ": unknown field '" + it.key() + "'");
}

inline const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw BundleError(path + ": missing field '" + key + "'");
    return j.at(key);
}

inline Scalar parse_scalar(const json& j, const FieldSpec& f, const std::string& path) {
    if (!j.is_string()) throw BundleError(path + ": field elements are strings");
    try {
        return Scalar::parse(j.get<std::string>(), f);
    } catch (const std::exception& e) {
        throw BundleError(path + ": " + e.what());
    }
}

inline Matrix parse_vector(const json& j, const FieldSpec& f, const std::string& path,
                           std::size_t expected) {
    if (!j.is_array()) throw BundleError(path + ": expected an array");
    if (j.size() != expected)
        throw BundleError(path + ": expected " + std::to_string(expected) + " entries, got " +
                          std::to_string(j.size()));
    Matrix m(expected, 1);
    for (std::size_t i = 0; i < expected; ++i)
        m.at(i, 0) = parse_scalar(j.at(i), f, path + "[" + std::to_string(i) + "]");
    return m;
}

inline Matrix parse_matrix(const json& j, const FieldSpec& f, const std::string& path,
                           std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw BundleError(path + ": expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw BundleError(path + ": row " + std::to_string(r) + " must have " +
                              std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = parse_scalar(row.at(c), f,
                                      path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

inline json dump_matrix(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
        rows.push_back(row);
    }
    return rows;
}

inline json dump_vector(const Matrix& m) {
    json row = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) row.push_back(m.at(r, 0).str());
    return row;
}

inline AlgebraPresentation parse_algebra(const json& j, const FieldSpec& f, const std::string& path) {
    expect_keys(j, path, {"dim", "unit", "mult"});
    AlgebraPresentation a;
    a.field = f;
    a.dim = need(j, "dim", path).get<std::size_t>();
    Matrix unit = parse_vector(need(j, "unit", path), f, path + ".unit", a.dim);
    a.unit = unit.col_vec(0);
    const json& mult = need(j, "mult", path);
    if (!mult.is_array() || mult.size() != a.dim)
        throw BundleError(path + ".mult: expected " + std::to_string(a.dim) + " rows");
    a.left_mult.assign(a.dim, Matrix(a.dim, a.dim));
    for (std::size_t i = 0; i < a.dim; ++i) {
        const json& row = mult.at(i);
        if (!row.is_array() || row.size() != a.dim)
            throw BundleError(path + ".mult: row " + std::to_string(i) + " malformed");
        for (std::size_t k = 0; k < a.dim; ++k) {
            Matrix coords = parse_vector(row.at(k), f,
                                         path + ".mult[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                                         a.dim);
            for (std::size_t l = 0; l < a.dim; ++l) a.left_mult[i].at(l, k) = coords.at(l, 0);
        }
    }
    return a;
}

inline json dump_algebra(const AlgebraPresentation& a) {
    json j;
    j["dim"] = a.dim;
    j["unit"] = dump_vector(a.unit_col());
    json mult = json::array();
    for (std::size_t i = 0; i < a.dim; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < a.dim; ++k)
            row.push_back(dump_vector(a.left_mult[i] * Matrix::basis_column(a.dim, k)));
        mult.push_back(row);
    }
    j["mult"] = mult;
    return j;
}

inline Arrow parse_arrow(const json& j, const CategoryPresentation& c, const FieldSpec& f,
                         const std::string& path, std::map<std::string, std::size_t>& obj_index) {
    expect_keys(j, path, {"from", "to", "coords"});
    auto from = need(j, "from", path).get<std::string>();
    auto to = need(j, "to", path).get<std::string>();
    if (!obj_index.count(from)) throw BundleError(path + ".from: unknown object '" + from + "'");
    if (!obj_index.count(to)) throw BundleError(path + ".to: unknown object '" + to + "'");
    std::size_t a = obj_index[from], b = obj_index[to];
    return Arrow{a, b, parse_vector(need(j, "coords", path), f, path + ".coords", c.hom_dim(a, b))};
}

} // namespace bundle_detail

inline std::shared_ptr<CategoryPresentation> parse_category(const json& j, const FieldSpec& field) {
    using namespace bundle_detail;
    const std::string path = "category";
    expect_keys(j, path,
                {"objects", "unit", "hom", "compose", "identities", "tensor_obj", "tensor_mor",
                 "associator", "left_unitor", "right_unitor", "duality", "pivot", "biproducts",
                 "weak_kernels"});
    std::vector<std::string> objects;
    for (const auto& o : need(j, "objects", path)) objects.push_back(o.get<std::string>());
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (idx.count(objects[i])) throw BundleError(path + ".objects: duplicate '" + objects[i] + "'");
        idx[objects[i]] = i;
    }
    std::string unit = need(j, "unit", path).get<std::string>();
    if (!idx.count(unit)) throw BundleError(path + ".unit: unknown object '" + unit + "'");

    CategoryBuilder b(field, objects, unit);
    auto obj_of = [&](const json& v, const std::string& p) {
        std::string name = v.get<std::string>();
        if (!idx.count(name)) throw BundleError(p + ": unknown object '" + name + "'");
        return idx[name];
    };

    for (const auto& h : need(j, "hom", path)) {
        expect_keys(h, path + ".hom[]", {"from", "to", "dim"});
        std::size_t from = obj_of(need(h, "from", path + ".hom"), path + ".hom.from");
        std::size_t to = obj_of(need(h, "to", path + ".hom"), path + ".hom.to");
        b.hom(objects[from], objects[to], need(h, "dim", path + ".hom").get<std::size_t>());
    }
    b.alloc_compose();
    auto& c = b.raw();

    for (const auto& e : need(j, "identities", path)) {
        expect_keys(e, path + ".identities[]", {"object", "coords"});
        std::size_t a = obj_of(need(e, "object", path), path + ".identities");
        b.identity_coords(a, parse_vector(need(e, "coords", path), field,
                                          path + ".identities.coords", c.hom_dims[a][a]));
    }
    for (const auto& e : need(j, "compose", path)) {
        expect_keys(e, path + ".compose[]", {"from", "mid", "to", "table"});
        std::size_t a = obj_of(need(e, "from", path), path + ".compose");
        std::size_t m = obj_of(need(e, "mid", path), path + ".compose");
        std::size_t cc = obj_of(need(e, "to", path), path + ".compose");
        const json& tab = need(e, "table", path + ".compose");
        if (tab.size() != c.hom_dims[m][cc]) throw BundleError(path + ".compose: table rows mismatch");
        for (std::size_t gi = 0; gi < c.hom_dims[m][cc]; ++gi) {
            if (tab.at(gi).size() != c.hom_dims[a][m])
                throw BundleError(path + ".compose: table columns mismatch");
            for (std::size_t fi = 0; fi < c.hom_dims[a][m]; ++fi)
                b.compose_entry(a, m, cc, gi, fi,
                                parse_vector(tab.at(gi).at(fi), field, path + ".compose.table",
                                             c.hom_dims[a][cc]));
        }
    }

    const json& tt = need(j, "tensor_obj", path);
    std::vector<std::vector<std::size_t>> table(objects.size(), std::vector<std::size_t>(objects.size()));
    if (tt.size() != objects.size()) throw BundleError(path + ".tensor_obj: wrong row count");
    for (std::size_t a = 0; a < objects.size(); ++a) {
        if (tt.at(a).size() != objects.size()) throw BundleError(path + ".tensor_obj: wrong column count");
        for (std::size_t bb = 0; bb < objects.size(); ++bb)
            table[a][bb] = obj_of(tt.at(a).at(bb), path + ".tensor_obj");
    }
    b.tensor_obj_table(table);
    b.alloc_tensor();
    for (const auto& e : need(j, "tensor_mor", path)) {
        expect_keys(e, path + ".tensor_mor[]", {"pair1", "pair2", "table"});
        const json& p1 = need(e, "pair1", path);
        const json& p2 = need(e, "pair2", path);
        std::size_t a = obj_of(p1.at(0), path), bb = obj_of(p1.at(1), path);
        std::size_t a2 = obj_of(p2.at(0), path), b2 = obj_of(p2.at(1), path);
        const json& tab = need(e, "table", path + ".tensor_mor");
        if (tab.size() != c.hom_dims[a][bb]) throw BundleError(path + ".tensor_mor: table rows mismatch");
        for (std::size_t fi = 0; fi < c.hom_dims[a][bb]; ++fi) {
            if (tab.at(fi).size() != c.hom_dims[a2][b2])
                throw BundleError(path + ".tensor_mor: table columns mismatch");
            for (std::size_t f2i = 0; f2i < c.hom_dims[a2][b2]; ++f2i)
                b.tensor_entry(a, bb, a2, b2, fi, f2i,
                               parse_vector(tab.at(fi).at(f2i), field, path + ".tensor_mor.table",
                                            c.hom_dims[c.tensor(a, a2)][c.tensor(bb, b2)]));
        }
    }

    // coherence: identity by default, explicit overrides allowed
    b.default_coherence();
    if (j.contains("associator"))
        for (const auto& e : j.at("associator")) {
            expect_keys(e, path + ".associator[]", {"objects", "coords"});
            const json& os = need(e, "objects", path);
            std::size_t a = obj_of(os.at(0), path), bb = obj_of(os.at(1), path), cc = obj_of(os.at(2), path);
            std::size_t src = c.tensor(a, c.tensor(bb, cc)), dst = c.tensor(c.tensor(a, bb), cc);
            c.alpha[a][bb][cc] = Arrow{src, dst,
                                       parse_vector(need(e, "coords", path), field,
                                                    path + ".associator.coords", c.hom_dims[src][dst])};
        }
    if (j.contains("left_unitor"))
        for (const auto& e : j.at("left_unitor")) {
            expect_keys(e, path + ".left_unitor[]", {"object", "coords"});
            std::size_t a = obj_of(need(e, "object", path), path);
            std::size_t src = c.tensor(c.unit, a);
            c.lunit[a] = Arrow{src, a, parse_vector(need(e, "coords", path), field,
                                                    path + ".left_unitor.coords", c.hom_dims[src][a])};
        }
    if (j.contains("right_unitor"))
        for (const auto& e : j.at("right_unitor")) {
            expect_keys(e, path + ".right_unitor[]", {"object", "coords"});
            std::size_t a = obj_of(need(e, "object", path), path);
            std::size_t src = c.tensor(a, c.unit);
            c.runit[a] = Arrow{src, a, parse_vector(need(e, "coords", path), field,
                                                    path + ".right_unitor.coords", c.hom_dims[src][a])};
        }

    if (j.contains("duality")) {
        const json& d = j.at("duality");
        expect_keys(d, path + ".duality", {"dual", "ev", "db", "u", "v"});
        DualityData dd;
        dd.dual.resize(objects.size());
        dd.ev.resize(objects.size());
        dd.db.resize(objects.size());
        dd.v.assign(objects.size(), std::vector<Arrow>(objects.size()));
        std::vector<bool> seen(objects.size(), false);
        for (const auto& pr : need(d, "dual", path)) {
            std::size_t a = obj_of(pr.at(0), path + ".duality.dual");
            dd.dual[a] = obj_of(pr.at(1), path + ".duality.dual");
            seen[a] = true;
        }
        for (std::size_t a = 0; a < objects.size(); ++a)
            if (!seen[a]) throw BundleError(path + ".duality.dual: missing entry for '" + objects[a] + "'");
        for (const auto& e : need(d, "ev", path)) {
            expect_keys(e, path + ".duality.ev[]", {"object", "coords"});
            std::size_t a = obj_of(need(e, "object", path), path);
            std::size_t src = c.tensor(dd.dual[a], a);
            dd.ev[a] = Arrow{src, c.unit, parse_vector(need(e, "coords", path), field,
                                                       path + ".duality.ev.coords",
                                                       c.hom_dims[src][c.unit])};
        }
        for (const auto& e : need(d, "db", path)) {
            expect_keys(e, path + ".duality.db[]", {"object", "coords"});
            std::size_t a = obj_of(need(e, "object", path), path);
            std::size_t dst = c.tensor(a, dd.dual[a]);
            dd.db[a] = Arrow{c.unit, dst, parse_vector(need(e, "coords", path), field,
                                                       path + ".duality.db.coords",
                                                       c.hom_dims[c.unit][dst])};
        }
        std::size_t us = dd.dual[c.unit];
        dd.u = Arrow{c.unit, us, parse_vector(need(d, "u", path), field, path + ".duality.u",
                                              c.hom_dims[c.unit][us])};
        for (const auto& e : need(d, "v", path)) {
            expect_keys(e, path + ".duality.v[]", {"objects", "coords"});
            const json& os = need(e, "objects", path);
            std::size_t cc = obj_of(os.at(0), path), ddx = obj_of(os.at(1), path);
            std::size_t src = c.tensor(dd.dual[ddx], dd.dual[cc]);
            std::size_t dst = dd.dual[c.tensor(cc, ddx)];
            dd.v[cc][ddx] = Arrow{src, dst, parse_vector(need(e, "coords", path), field,
                                                         path + ".duality.v.coords",
                                                         c.hom_dims[src][dst])};
        }
        c.duality = dd;
    }
    if (j.contains("pivot")) {
        if (!c.duality) throw BundleError(path + ".pivot: requires duality data");
        std::vector<Arrow> theta(objects.size());
        std::vector<bool> seen(objects.size(), false);
        for (const auto& e : j.at("pivot")) {
            expect_keys(e, path + ".pivot[]", {"object", "coords"});
            std::size_t a = obj_of(need(e, "object", path), path);
            std::size_t dst = c.duality->dual[c.duality->dual[a]];
            theta[a] = Arrow{a, dst, parse_vector(need(e, "coords", path), field,
                                                  path + ".pivot.coords", c.hom_dims[a][dst])};
            seen[a] = true;
        }
        for (std::size_t a = 0; a < objects.size(); ++a)
            if (!seen[a]) throw BundleError(path + ".pivot: missing entry for '" + objects[a] + "'");
        c.pivot = theta;
    }
    if (j.contains("biproducts"))
        for (const auto& e : j.at("biproducts")) {
            expect_keys(e, path + ".biproducts[]", {"target", "summands", "p", "q"});
            BiproductDiagram d;
            d.target = obj_of(need(e, "target", path), path + ".biproducts");
            for (const auto& s : need(e, "summands", path))
                d.summands.push_back(obj_of(s, path + ".biproducts.summands"));
            for (const auto& arrow : need(e, "p", path))
                d.p.push_back(parse_arrow(arrow, c, field, path + ".biproducts.p", idx));
            for (const auto& arrow : need(e, "q", path))
                d.q.push_back(parse_arrow(arrow, c, field, path + ".biproducts.q", idx));
            c.biproducts.push_back(d);
        }
    if (j.contains("weak_kernels"))
        for (const auto& e : j.at("weak_kernels")) {
            expect_keys(e, path + ".weak_kernels[]", {"arrow", "witness"});
            WeakKernelEntry w;
            w.arrow = parse_arrow(need(e, "arrow", path), c, field, path + ".weak_kernels.arrow", idx);
            w.witness = parse_arrow(need(e, "witness", path), c, field, path + ".weak_kernels.witness", idx);
            c.weak_kernels.push_back(w);
        }
    return b.build();
}

inline FiberFunctor parse_functor(const json& j, const FieldSpec& field, const CatPtr& cat,
                                  const std::string& path) {
    using namespace bundle_detail;
    expect_keys(j, path, {"name", "base", "images", "arrows", "f2", "f0"});
    const CategoryPresentation& c = *cat;
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < c.objects.size(); ++i) idx[c.objects[i]] = i;

    FiberFunctor f;
    f.category = cat;
    f.base = std::make_shared<AlgebraPresentation>(
        parse_algebra(need(j, "base", path), field, path + ".base"));
    const std::size_t nr = f.base->dim;

    f.images.resize(c.n_obj());
    std::vector<bool> seen(c.n_obj(), false);
    for (const auto& e : need(j, "images", path)) {
        expect_keys(e, path + ".images[]", {"object", "dim", "left", "right"});
        std::string name = need(e, "object", path).get<std::string>();
        if (!idx.count(name)) throw BundleError(path + ".images: unknown object '" + name + "'");
        std::size_t a = idx[name];
        Bimodule m;
        m.algebra = f.base;
        m.dim = need(e, "dim", path).get<std::size_t>();
        const json& left = need(e, "left", path);
        const json& right = need(e, "right", path);
        if (left.size() != nr || right.size() != nr)
            throw BundleError(path + ".images." + name + ": need one action matrix per base element");
        for (std::size_t k = 0; k < nr; ++k) {
            m.left.push_back(parse_matrix(left.at(k), field, path + ".images." + name + ".left", m.dim, m.dim));
            m.right.push_back(parse_matrix(right.at(k), field, path + ".images." + name + ".right", m.dim, m.dim));
        }
        f.images[a] = std::move(m);
        seen[a] = true;
    }
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        if (!seen[a]) throw BundleError(path + ".images: missing object '" + c.objects[a] + "'");

    f.arrows.assign(c.n_obj(), std::vector<std::vector<Matrix>>(c.n_obj()));
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t bb = 0; bb < c.n_obj(); ++bb)
            f.arrows[a][bb].assign(c.hom_dim(a, bb),
                                   Matrix(f.images[bb].dim, f.images[a].dim));
    for (const auto& e : need(j, "arrows", path)) {
        expect_keys(e, path + ".arrows[]", {"from", "to", "matrices"});
        std::string from = need(e, "from", path).get<std::string>();
        std::string to = need(e, "to", path).get<std::string>();
        if (!idx.count(from) || !idx.count(to))
            throw BundleError(path + ".arrows: unknown object in (" + from + " -> " + to + ")");
        std::size_t a = idx[from], bb = idx[to];
        const json& mats = need(e, "matrices", path);
        if (mats.size() != c.hom_dim(a, bb))
            throw BundleError(path + ".arrows: need one matrix per hom basis element");
        for (std::size_t i = 0; i < mats.size(); ++i)
            f.arrows[a][bb][i] = parse_matrix(mats.at(i), field, path + ".arrows.matrices",
                                              f.images[bb].dim, f.images[a].dim);
    }

    f.F2.assign(c.n_obj(), std::vector<Matrix>(c.n_obj()));
    std::vector<std::vector<bool>> f2seen(c.n_obj(), std::vector<bool>(c.n_obj(), false));
    for (const auto& e : need(j, "f2", path)) {
        expect_keys(e, path + ".f2[]", {"objects", "matrix_amb"});
        const json& os = need(e, "objects", path);
        std::string n1 = os.at(0).get<std::string>(), n2 = os.at(1).get<std::string>();
        if (!idx.count(n1) || !idx.count(n2)) throw BundleError(path + ".f2: unknown objects");
        std::size_t a = idx[n1], bb = idx[n2];
        Matrix amb = parse_matrix(need(e, "matrix_amb", path), field, path + ".f2.matrix_amb",
                                  f.images[c.tensor(a, bb)].dim,
                                  f.images[a].dim * f.images[bb].dim);
        BimoduleTensor t = bimodule_tensor(f.images[a], f.images[bb]);
        f.F2[a][bb] = amb * t.space.section();
        f2seen[a][bb] = true;
    }
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t bb = 0; bb < c.n_obj(); ++bb)
            if (!f2seen[a][bb])
                throw BundleError(path + ".f2: missing pair (" + c.objects[a] + ", " + c.objects[bb] + ")");
    f.F0 = parse_matrix(need(j, "f0", path), field, path + ".f0", f.images[c.unit].dim, nr);
    f.finalize();
    return f;
}

inline Bialgebroid parse_bialgebroid(const json& j, const FieldSpec& field, const std::string& path,
                                     std::optional<Antipode>& antipode_out) {
    using namespace bundle_detail;
    expect_keys(j, path, {"base", "dim", "mult", "unit", "source", "target", "counit",
                          "coproduct_amb", "antipode"});
    Bialgebroid h;
    h.base = std::make_shared<AlgebraPresentation>(
        parse_algebra(need(j, "base", path), field, path + ".base"));
    h.dim = need(j, "dim", path).get<std::size_t>();
    const std::size_t d = h.dim, nr = h.base->dim;
    const json& mult = need(j, "mult", path);
    if (mult.size() != d) throw BundleError(path + ".mult: wrong size");
    h.left_mult.assign(d, Matrix(d, d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            Matrix coords = parse_vector(mult.at(i).at(k), field, path + ".mult", d);
            for (std::size_t l = 0; l < d; ++l) h.left_mult[i].at(l, k) = coords.at(l, 0);
        }
    h.unit = parse_vector(need(j, "unit", path), field, path + ".unit", d);
    h.source = parse_matrix(need(j, "source", path), field, path + ".source", d, nr);
    h.target = parse_matrix(need(j, "target", path), field, path + ".target", d, nr);
    h.counit = parse_matrix(need(j, "counit", path), field, path + ".counit", nr, d);
    Matrix cop_amb = parse_matrix(need(j, "coproduct_amb", path), field, path + ".coproduct_amb",
                                  d * d, d);
    h.coproduct = h.hbar().space.projection() * cop_amb;
    if (j.contains("antipode")) {
        const json& a = j.at("antipode");
        expect_keys(a, path + ".antipode", {"s", "s_inv"});
        Antipode s;
        s.S = parse_matrix(need(a, "s", path), field, path + ".antipode.s", d, d);
        s.S_inv = parse_matrix(need(a, "s_inv", path), field, path + ".antipode.s_inv", d, d);
        antipode_out = s;
    }
    return h;
}

inline Bundle parse_bundle_json(const json& j) {
    using namespace bundle_detail;
    expect_keys(j, "bundle",
                {"field", "category", "functors", "bialgebroid", "fusion_systems", "frobenius",
                 "presheaves", "catalog"});
    Bundle b;
    const json& fj = need(j, "field", "bundle");
    expect_keys(fj, "field", {"kind", "p"});
    std::string kind = need(fj, "kind", "field").get<std::string>();
    if (kind == "rationals") {
        b.field = FieldSpec::rationals();
    } else if (kind == "prime") {
        try {
            b.field = FieldSpec::prime(need(fj, "p", "field").get<std::int64_t>());
        } catch (const std::invalid_argument& e) {
            throw BundleError(std::string("field.p: ") + e.what());
        }
    } else {
        throw BundleError("field.kind: expected 'rationals' or 'prime'");
    }

    b.category = parse_category(need(j, "category", "bundle"), b.field);

    if (j.contains("functors"))
        for (const auto& e : j.at("functors")) {
            std::string name = need(e, "name", "functors[]").get<std::string>();
            b.functors.emplace_back(name, parse_functor(e, b.field, b.category, "functors." + name));
        }

    if (j.contains("bialgebroid"))
        b.bialgebroid = parse_bialgebroid(j.at("bialgebroid"), b.field, "bialgebroid", b.antipode);

    if (j.contains("fusion_systems"))
        for (const auto& e : j.at("fusion_systems")) {
            expect_keys(e, "fusion_systems[]", {"name", "index", "bounds", "diagrams"});
            std::string name = need(e, "name", "fusion_systems[]").get<std::string>();
            const std::string path = "fusion_systems." + name;
            FusionSystem fs;
            std::map<std::string, std::size_t> idx;
            for (std::size_t i = 0; i < b.category->objects.size(); ++i)
                idx[b.category->objects[i]] = i;
            std::map<std::string, std::size_t> ipos;
            for (const auto& o : need(e, "index", path)) {
                std::string on = o.get<std::string>();
                if (!idx.count(on)) throw BundleError(path + ".index: unknown object '" + on + "'");
                ipos[on] = fs.index.size();
                fs.index.push_back(idx[on]);
            }
            fs.bound.assign(b.category->n_obj(), 0);
            for (const auto& bd : need(e, "bounds", path)) {
                expect_keys(bd, path + ".bounds[]", {"object", "m"});
                std::string on = need(bd, "object", path).get<std::string>();
                if (!idx.count(on)) throw BundleError(path + ".bounds: unknown object '" + on + "'");
                fs.bound[idx[on]] = need(bd, "m", path).get<std::size_t>();
            }
            fs.diagrams.assign(fs.index.size(),
                               std::vector<std::vector<SummandDiagram>>(b.category->n_obj()));
            for (const auto& dg : need(e, "diagrams", path)) {
                expect_keys(dg, path + ".diagrams[]", {"a", "c", "summands"});
                std::string an = need(dg, "a", path).get<std::string>();
                std::string cn = need(dg, "c", path).get<std::string>();
                if (!ipos.count(an)) throw BundleError(path + ".diagrams: '" + an + "' not in index");
                if (!idx.count(cn)) throw BundleError(path + ".diagrams: unknown object '" + cn + "'");
                std::size_t apos = ipos[an], cobj = idx[cn];
                std::size_t ac = b.category->tensor(fs.index[apos], cobj);
                for (const auto& sm : need(dg, "summands", path)) {
                    expect_keys(sm, path + ".diagrams.summands[]", {"b", "p", "q"});
                    std::string bn = need(sm, "b", path).get<std::string>();
                    if (!idx.count(bn)) throw BundleError(path + ".diagrams: unknown object '" + bn + "'");
                    SummandDiagram sd;
                    sd.b = idx[bn];
                    sd.p = Arrow{sd.b, ac,
                                 parse_vector(need(sm, "p", path), b.field, path + ".diagrams.p",
                                              b.category->hom_dim(sd.b, ac))};
                    sd.q = Arrow{ac, sd.b,
                                 parse_vector(need(sm, "q", path), b.field, path + ".diagrams.q",
                                              b.category->hom_dim(ac, sd.b))};
                    fs.diagrams[apos][cobj].push_back(sd);
                }
            }
            b.fusion_systems.emplace_back(name, std::move(fs));
        }

    if (j.contains("frobenius")) {
        const json& e = j.at("frobenius");
        expect_keys(e, "frobenius", {"phi", "e"});
        if (b.functors.empty() && !b.bialgebroid)
            throw BundleError("frobenius: needs a functor or bialgebroid to fix the base ring");
        std::size_t nr = b.bialgebroid ? b.bialgebroid->base->dim : b.functors[0].second.base->dim;
        FrobeniusDatum d;
        d.phi = bundle_detail::parse_vector(need(e, "phi", "frobenius"), b.field, "frobenius.phi", nr)
                    .transpose();
        d.e = bundle_detail::parse_vector(need(e, "e", "frobenius"), b.field, "frobenius.e", nr * nr);
        b.frobenius = d;
    }

    if (j.contains("presheaves"))
        for (const auto& e : j.at("presheaves")) {
            expect_keys(e, "presheaves[]", {"name", "dims", "arrows"});
            std::string name = need(e, "name", "presheaves[]").get<std::string>();
            const std::string path = "presheaves." + name;
            std::map<std::string, std::size_t> idx;
            for (std::size_t i = 0; i < b.category->objects.size(); ++i)
                idx[b.category->objects[i]] = i;
            PresheafData u;
            u.dims.assign(b.category->n_obj(), 0);
            for (const auto& de : need(e, "dims", path)) {
                expect_keys(de, path + ".dims[]", {"object", "dim"});
                std::string on = need(de, "object", path).get<std::string>();
                if (!idx.count(on)) throw BundleError(path + ".dims: unknown object '" + on + "'");
                u.dims[idx[on]] = need(de, "dim", path).get<std::size_t>();
            }
            u.act.assign(b.category->n_obj(), std::vector<std::vector<Matrix>>(b.category->n_obj()));
            for (std::size_t a = 0; a < b.category->n_obj(); ++a)
                for (std::size_t bb = 0; bb < b.category->n_obj(); ++bb)
                    u.act[a][bb].assign(b.category->hom_dim(a, bb), Matrix(u.dims[a], u.dims[bb]));
            for (const auto& ae : need(e, "arrows", path)) {
                expect_keys(ae, path + ".arrows[]", {"from", "to", "matrices"});
                std::string fn = need(ae, "from", path).get<std::string>();
                std::string tn = need(ae, "to", path).get<std::string>();
                if (!idx.count(fn) || !idx.count(tn))
                    throw BundleError(path + ".arrows: unknown objects");
                std::size_t a = idx[fn], bb = idx[tn];
                const json& mats = need(ae, "matrices", path);
                if (mats.size() != b.category->hom_dim(a, bb))
                    throw BundleError(path + ".arrows: one matrix per hom basis element");
                for (std::size_t i = 0; i < mats.size(); ++i)
                    u.act[a][bb][i] = bundle_detail::parse_matrix(mats.at(i), b.field, path,
                                                                  u.dims[a], u.dims[bb]);
            }
            b.presheaves.emplace_back(name, std::move(u));
        }

    if (j.contains("catalog")) {
        const json& e = j.at("catalog");
        expect_keys(e, "catalog", {"entries", "tensor_table", "unit_entry"});
        if (!b.bialgebroid) throw BundleError("catalog: requires the bialgebroid section");
        ComoduleCatalog cat;
        cat.j = *b.bialgebroid;
        std::map<std::string, std::size_t> epos;
        for (const auto& en : need(e, "entries", "catalog")) {
            expect_keys(en, "catalog.entries[]", {"name", "dim", "left", "right", "coaction_amb"});
            std::string name = need(en, "name", "catalog").get<std::string>();
            Comodule m;
            m.underlying.algebra = cat.j.base;
            m.underlying.dim = need(en, "dim", "catalog").get<std::size_t>();
            const std::size_t nr = cat.j.base->dim;
            const json& left = need(en, "left", "catalog");
            const json& right = need(en, "right", "catalog");
            if (left.size() != nr || right.size() != nr)
                throw BundleError("catalog.entries." + name + ": one action matrix per base element");
            for (std::size_t k = 0; k < nr; ++k) {
                m.underlying.left.push_back(bundle_detail::parse_matrix(
                    left.at(k), b.field, "catalog.left", m.underlying.dim, m.underlying.dim));
                m.underlying.right.push_back(bundle_detail::parse_matrix(
                    right.at(k), b.field, "catalog.right", m.underlying.dim, m.underlying.dim));
            }
            m.mbar = comodule_bar_tensor(m.underlying, cat.j);
            Matrix amb = bundle_detail::parse_matrix(need(en, "coaction_amb", "catalog"), b.field,
                                                     "catalog.coaction_amb",
                                                     m.underlying.dim * cat.j.dim, m.underlying.dim);
            m.coaction = m.mbar.space.projection() * amb;
            epos[name] = cat.entries.size();
            cat.names.push_back(name);
            cat.entries.push_back(std::move(m));
        }
        for (const auto& row : need(e, "tensor_table", "catalog")) {
            std::vector<std::size_t> r;
            for (const auto& v : row) {
                std::string name = v.get<std::string>();
                if (!epos.count(name)) throw BundleError("catalog.tensor_table: unknown entry '" + name + "'");
                r.push_back(epos[name]);
            }
            cat.tensor_table.push_back(r);
        }
        std::string un = need(e, "unit_entry", "catalog").get<std::string>();
        if (!epos.count(un)) throw BundleError("catalog.unit_entry: unknown entry '" + un + "'");
        cat.unit_entry = epos[un];
        b.catalog = std::move(cat);
    }
    return b;
}

inline Bundle parse_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BundleError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw BundleError(std::string("JSON parse error: ") + e.what());
    }
    return parse_bundle_json(j);
}

// ---- serialization ---------------------------------------------------------

inline json dump_category(const CategoryPresentation& c) {
    using namespace bundle_detail;
    json j;
    j["objects"] = c.objects;
    j["unit"] = c.objects[c.unit];
    json hom = json::array(), comp = json::array(), ids = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t b = 0; b < c.n_obj(); ++b)
            if (c.hom_dim(a, b) > 0)
                hom.push_back({{"from", c.objects[a]}, {"to", c.objects[b]}, {"dim", c.hom_dim(a, b)}});
    j["hom"] = hom;
    for (std::size_t a = 0; a < c.n_obj(); ++a) {
        if (c.hom_dim(a, a) == 0) continue;
        ids.push_back({{"object", c.objects[a]}, {"coords", dump_vector(c.identities[a])}});
    }
    j["identities"] = ids;
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t m = 0; m < c.n_obj(); ++m)
            for (std::size_t cc = 0; cc < c.n_obj(); ++cc) {
                if (c.hom_dim(a, m) * c.hom_dim(m, cc) == 0 || c.hom_dim(a, cc) == 0) continue;
                json table = json::array();
                for (std::size_t gi = 0; gi < c.hom_dim(m, cc); ++gi) {
                    json row = json::array();
                    for (std::size_t fi = 0; fi < c.hom_dim(a, m); ++fi)
                        row.push_back(dump_vector(
                            c.compose(c.basis_arrow(m, cc, gi), c.basis_arrow(a, m, fi)).coords));
                    table.push_back(row);
                }
                comp.push_back({{"from", c.objects[a]}, {"mid", c.objects[m]}, {"to", c.objects[cc]},
                                {"table", table}});
            }
    j["compose"] = comp;
    json tt = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < c.n_obj(); ++b) row.push_back(c.objects[c.tensor(a, b)]);
        tt.push_back(row);
    }
    j["tensor_obj"] = tt;
    json tm = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t b = 0; b < c.n_obj(); ++b)
            for (std::size_t a2 = 0; a2 < c.n_obj(); ++a2)
                for (std::size_t b2 = 0; b2 < c.n_obj(); ++b2) {
                    if (c.hom_dim(a, b) * c.hom_dim(a2, b2) == 0) continue;
                    if (c.hom_dim(c.tensor(a, a2), c.tensor(b, b2)) == 0) continue;
                    json table = json::array();
                    for (std::size_t fi = 0; fi < c.hom_dim(a, b); ++fi) {
                        json row = json::array();
                        for (std::size_t f2i = 0; f2i < c.hom_dim(a2, b2); ++f2i)
                            row.push_back(dump_vector(
                                c.tensor_arrow(c.basis_arrow(a, b, fi), c.basis_arrow(a2, b2, f2i)).coords));
                        table.push_back(row);
                    }
                    tm.push_back({{"pair1", {c.objects[a], c.objects[b]}},
                                  {"pair2", {c.objects[a2], c.objects[b2]}},
                                  {"table", table}});
                }
    j["tensor_mor"] = tm;
    json assoc = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t b = 0; b < c.n_obj(); ++b)
            for (std::size_t cc = 0; cc < c.n_obj(); ++cc)
                assoc.push_back({{"objects", {c.objects[a], c.objects[b], c.objects[cc]}},
                                 {"coords", dump_vector(c.alpha[a][b][cc].coords)}});
    j["associator"] = assoc;
    json lu = json::array(), ru = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a) {
        lu.push_back({{"object", c.objects[a]}, {"coords", dump_vector(c.lunit[a].coords)}});
        ru.push_back({{"object", c.objects[a]}, {"coords", dump_vector(c.runit[a].coords)}});
    }
    j["left_unitor"] = lu;
    j["right_unitor"] = ru;
    if (c.duality) {
        json d;
        json dual = json::array(), ev = json::array(), db = json::array(), v = json::array();
        for (std::size_t a = 0; a < c.n_obj(); ++a) {
            dual.push_back({c.objects[a], c.objects[c.duality->dual[a]]});
            ev.push_back({{"object", c.objects[a]}, {"coords", dump_vector(c.duality->ev[a].coords)}});
            db.push_back({{"object", c.objects[a]}, {"coords", dump_vector(c.duality->db[a].coords)}});
            for (std::size_t b = 0; b < c.n_obj(); ++b)
                v.push_back({{"objects", {c.objects[a], c.objects[b]}},
                             {"coords", dump_vector(c.duality->v[a][b].coords)}});
        }
        d["dual"] = dual;
        d["ev"] = ev;
        d["db"] = db;
        d["u"] = dump_vector(c.duality->u.coords);
        d["v"] = v;
        j["duality"] = d;
    }
    if (c.pivot) {
        json p = json::array();
        for (std::size_t a = 0; a < c.n_obj(); ++a)
            p.push_back({{"object", c.objects[a]}, {"coords", dump_vector((*c.pivot)[a].coords)}});
        j["pivot"] = p;
    }
    return j;
}

inline json dump_functor(const std::string& name, const FiberFunctor& f) {
    using namespace bundle_detail;
    const CategoryPresentation& c = *f.category;
    json j;
    j["name"] = name;
    j["base"] = dump_algebra(*f.base);
    json images = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a) {
        json left = json::array(), right = json::array();
        for (std::size_t k = 0; k < f.base->dim; ++k) {
            left.push_back(dump_matrix(f.images[a].left[k]));
            right.push_back(dump_matrix(f.images[a].right[k]));
        }
        images.push_back({{"object", c.objects[a]}, {"dim", f.images[a].dim},
                          {"left", left}, {"right", right}});
    }
    j["images"] = images;
    json arrows = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t b = 0; b < c.n_obj(); ++b) {
            if (c.hom_dim(a, b) == 0) continue;
            json mats = json::array();
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) mats.push_back(dump_matrix(f.arrows[a][b][i]));
            arrows.push_back({{"from", c.objects[a]}, {"to", c.objects[b]}, {"matrices", mats}});
        }
    j["arrows"] = arrows;
    json f2 = json::array();
    for (std::size_t a = 0; a < c.n_obj(); ++a)
        for (std::size_t b = 0; b < c.n_obj(); ++b)
            f2.push_back({{"objects", {c.objects[a], c.objects[b]}},
                          {"matrix_amb", dump_matrix(f.f2_amb(a, b))}});
    j["f2"] = f2;
    j["f0"] = dump_matrix(f.F0);
    return j;
}

inline json dump_bialgebroid(const Bialgebroid& h, const Antipode* s = nullptr) {
    using namespace bundle_detail;
    json j;
    j["base"] = dump_algebra(*h.base);
    j["dim"] = h.dim;
    json mult = json::array();
    for (std::size_t i = 0; i < h.dim; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < h.dim; ++k)
            row.push_back(dump_vector(h.left_mult[i] * Matrix::basis_column(h.dim, k)));
        mult.push_back(row);
    }
    j["mult"] = mult;
    j["unit"] = dump_vector(h.unit);
    j["source"] = dump_matrix(h.source);
    j["target"] = dump_matrix(h.target);
    j["counit"] = dump_matrix(h.counit);
    j["coproduct_amb"] = dump_matrix(h.hbar().space.section() * h.coproduct);
    if (s) j["antipode"] = {{"s", dump_matrix(s->S)}, {"s_inv", dump_matrix(s->S_inv)}};
    return j;
}

inline json dump_catalog(const ComoduleCatalog& cat) {
    using namespace bundle_detail;
    json j;
    json entries = json::array();
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
        const Comodule& m = cat.entries[i];
        json left = json::array(), right = json::array();
        for (std::size_t k = 0; k < cat.j.base->dim; ++k) {
            left.push_back(dump_matrix(m.underlying.left[k]));
            right.push_back(dump_matrix(m.underlying.right[k]));
        }
        entries.push_back({{"name", cat.names[i]}, {"dim", m.underlying.dim},
                           {"left", left}, {"right", right},
                           {"coaction_amb", dump_matrix(m.mbar.space.section() * m.coaction)}});
    }
    j["entries"] = entries;
    json table = json::array();
    for (const auto& row : cat.tensor_table) {
        json r = json::array();
        for (std::size_t e : row) r.push_back(cat.names[e]);
        table.push_back(r);
    }
    j["tensor_table"] = table;
    j["unit_entry"] = cat.names[cat.unit_entry];
    return j;
}

inline json dump_field(const FieldSpec& f) {
    json j;
    if (f.is_rational()) {
        j["kind"] = "rationals";
    } else {
        j["kind"] = "prime";
        j["p"] = f.p;
    }
    return j;
}

inline json report_to_json(const Report& rep) {
    json j;
    j["scope"] = rep.scope;
    j["passed"] = rep.passed();
    json checks = json::array();
    for (const auto& e : rep.entries) {
        json c;
        c["name"] = e.name;
        c["status"] = to_string(e.status);
        c["anchor"] = e.anchor;
        if (!e.witness.empty()) c["witness"] = e.witness;
        checks.push_back(c);
    }
    j["checks"] = checks;
    return j;
}

} // namespace tannaka
