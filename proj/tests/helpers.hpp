#pragma once

#include "tannaka/catbuild.hpp"
#include "tannaka/fiber.hpp"

#include <string>
#include <vector>

namespace fixtures {

using namespace tannaka;

// Cyclic group category Z/n over Q: objects g0..g(n-1), one-dimensional hom
// spaces on the diagonal, strict coherence, self-inverse duality data and
// identity pivot.
inline std::shared_ptr<CategoryPresentation> cyclic_category(std::size_t n, bool with_duality = true,
                                                             FieldSpec field = FieldSpec::rationals()) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
    CategoryBuilder b(field, names, "g0");
    for (std::size_t i = 0; i < n; ++i) b.hom(names[i], names[i], 1);
    b.alloc_compose();
    for (std::size_t i = 0; i < n; ++i) {
        b.identity_coords(i, Matrix::identity(1));
        b.compose_entry(i, i, i, 0, 0, Matrix::identity(1));
    }
    std::vector<std::vector<std::size_t>> tt(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) tt[i][j] = (i + j) % n;
    b.tensor_obj_table(tt);
    b.alloc_tensor();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b.tensor_entry(i, i, j, j, 0, 0, Matrix::identity(1));
    b.default_coherence();
    if (with_duality) {
        auto& c = b.raw();
        DualityData d;
        d.dual.resize(n);
        d.ev.resize(n);
        d.db.resize(n);
        d.v.assign(n, std::vector<Arrow>(n));
        for (std::size_t i = 0; i < n; ++i) {
            d.dual[i] = (n - i) % n;
            d.ev[i] = Arrow{0, 0, Matrix::identity(1)};
            d.db[i] = Arrow{0, 0, Matrix::identity(1)};
            for (std::size_t j = 0; j < n; ++j)
                d.v[i][j] = Arrow{(2 * n - i - j) % n, (2 * n - i - j) % n, Matrix::identity(1)};
        }
        d.u = Arrow{0, 0, Matrix::identity(1)};
        c.duality = d;
        std::vector<Arrow> theta(n);
        for (std::size_t i = 0; i < n; ++i) theta[i] = Arrow{i, i, Matrix::identity(1)};
        c.pivot = theta;
    }
    return b.build();
}

// Fiber functor on a cyclic category with base Q and one-dimensional images;
// chi is a 2-cochain of nonzero scalars entering F2 (all ones by default).
inline FiberFunctor cyclic_fiber(const CatPtr& cat, std::vector<std::vector<Scalar>> chi = {}) {
    const std::size_t n = cat->n_obj();
    if (chi.empty()) chi.assign(n, std::vector<Scalar>(n, Scalar(1)));
    FiberFunctor f;
    f.category = cat;
    f.base = std::make_shared<AlgebraPresentation>(AlgebraPresentation::ground_field(cat->field));
    Bimodule line;
    line.algebra = f.base;
    line.dim = 1;
    line.left = {Matrix::identity(1)};
    line.right = {Matrix::identity(1)};
    f.images.assign(n, line);
    f.arrows.assign(n, std::vector<std::vector<Matrix>>(n));
    for (std::size_t a = 0; a < n; ++a) f.arrows[a][a] = {Matrix::identity(1)};
    f.F2.assign(n, std::vector<Matrix>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Matrix m(1, 1);
            m.at(0, 0) = chi[a][b];
            f.F2[a][b] = m;
        }
    f.F0 = Matrix::identity(1);
    f.finalize();
    return f;
}

// sign 2-cocycle on Z/2: chi(g1,g1) = -1, a genuinely twisted fiber functor
inline FiberFunctor z2_twisted_fiber(const CatPtr& cat) {
    std::vector<std::vector<Scalar>> chi(2, std::vector<Scalar>(2, Scalar(1)));
    chi[1][1] = Scalar(-1);
    return cyclic_fiber(cat, chi);
}

// Four objects I, W, A, B with arrows w1 : W -> A and w2 : W -> B and no
// arrow between A and B.  Tensor of non-unit objects lands at W through the
// coefficient pairing, which keeps the tensor functorial.
struct SpanFixture {
    std::shared_ptr<CategoryPresentation> cat;
    FiberFunctor fib;
};

inline SpanFixture span_fixture() {
    CategoryBuilder b(FieldSpec::rationals(), {"I", "W", "A", "B"}, "I");
    for (const char* o : {"I", "W", "A", "B"}) b.hom(o, o, 1);
    b.hom("W", "A", 1);
    b.hom("W", "B", 1);
    b.alloc_compose();
    const std::size_t I = 0, W = 1, A = 2, B = 3;
    for (std::size_t o : {I, W, A, B}) {
        b.identity_coords(o, Matrix::identity(1));
        b.compose_entry(o, o, o, 0, 0, Matrix::identity(1));
    }
    b.compose_entry(W, W, A, 0, 0, Matrix::identity(1)); // w1 o id_W
    b.compose_entry(W, A, A, 0, 0, Matrix::identity(1)); // id_A o w1
    b.compose_entry(W, W, B, 0, 0, Matrix::identity(1));
    b.compose_entry(W, B, B, 0, 0, Matrix::identity(1));
    std::vector<std::vector<std::size_t>> tt(4, std::vector<std::size_t>(4, W));
    for (std::size_t o = 0; o < 4; ++o) { tt[I][o] = o; tt[o][I] = o; }
    b.tensor_obj_table(tt);
    b.alloc_tensor();
    // unit rows are the identity pairing; non-unit pairs multiply coefficients into id_W
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t bb = 0; bb < 4; ++bb) {
            if (b.raw().hom_dims[a][bb] == 0) continue;
            b.tensor_entry(I, I, a, bb, 0, 0, Matrix::identity(1));
            if (a != I || bb != I) b.tensor_entry(a, bb, I, I, 0, 0, Matrix::identity(1));
            for (std::size_t a2 = 0; a2 < 4; ++a2)
                for (std::size_t b2 = 0; b2 < 4; ++b2) {
                    if (b.raw().hom_dims[a2][b2] == 0) continue;
                    if (a == I && bb == I) continue;
                    if (a2 == I && b2 == I) continue;
                    b.tensor_entry(a, bb, a2, b2, 0, 0, Matrix::identity(1));
                }
        }
    b.default_coherence();
    SpanFixture out;
    out.cat = b.build();

    FiberFunctor f;
    f.category = out.cat;
    f.base = std::make_shared<AlgebraPresentation>(AlgebraPresentation::ground_field(FieldSpec::rationals()));
    Bimodule line;
    line.algebra = f.base;
    line.dim = 1;
    line.left = {Matrix::identity(1)};
    line.right = {Matrix::identity(1)};
    f.images.assign(4, line);
    f.arrows.assign(4, std::vector<std::vector<Matrix>>(4));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t bb = 0; bb < 4; ++bb)
            if (out.cat->hom_dim(a, bb) == 1) f.arrows[a][bb] = {Matrix::identity(1)};
    f.F2.assign(4, std::vector<Matrix>(4, Matrix::identity(1)));
    f.F0 = Matrix::identity(1);
    f.finalize();
    out.fib = f;
    return out;
}

// One object with endomorphism ring Q[eps]/(eps^2); tensor is ring
// multiplication.  The regular fiber functor has base Q[eps].
struct NilpotentFixture {
    std::shared_ptr<CategoryPresentation> cat;
    FiberFunctor fib;
};

inline NilpotentFixture nilpotent_fixture() {
    CategoryBuilder b(FieldSpec::rationals(), {"I"}, "I");
    b.hom("I", "I", 2); // basis: id, eps
    b.alloc_compose();
    Matrix id_c = Matrix::basis_column(2, 0);
    Matrix eps_c = Matrix::basis_column(2, 1);
    b.identity_coords(0, id_c);
    b.compose_entry(0, 0, 0, 0, 0, id_c);
    b.compose_entry(0, 0, 0, 0, 1, eps_c);
    b.compose_entry(0, 0, 0, 1, 0, eps_c);
    b.compose_entry(0, 0, 0, 1, 1, Matrix(2, 1));
    b.tensor_obj_table({{0}});
    b.alloc_tensor();
    b.tensor_entry(0, 0, 0, 0, 0, 0, id_c);
    b.tensor_entry(0, 0, 0, 0, 0, 1, eps_c);
    b.tensor_entry(0, 0, 0, 0, 1, 0, eps_c);
    b.tensor_entry(0, 0, 0, 0, 1, 1, Matrix(2, 1));
    b.default_coherence();
    {
        auto& c = b.raw();
        DualityData d;
        d.dual = {0};
        d.ev = {Arrow{0, 0, id_c}};
        d.db = {Arrow{0, 0, id_c}};
        d.u = Arrow{0, 0, id_c};
        d.v = {{Arrow{0, 0, id_c}}};
        c.duality = d;
        c.pivot = std::vector<Arrow>{Arrow{0, 0, id_c}};
    }
    NilpotentFixture out;
    out.cat = b.build();

    AlgebraPresentation r;
    r.field = FieldSpec::rationals();
    r.dim = 2;
    Matrix mul_eps(2, 2);
    mul_eps.at(1, 0) = Scalar(1);
    r.left_mult = {Matrix::identity(2), mul_eps};
    r.unit = {Scalar(1), Scalar(0)};
    auto rp = std::make_shared<AlgebraPresentation>(std::move(r));

    FiberFunctor f;
    f.category = out.cat;
    f.base = rp;
    f.images = {Bimodule::regular(rp)};
    f.arrows.assign(1, std::vector<std::vector<Matrix>>(1));
    f.arrows[0][0] = {Matrix::identity(2), mul_eps};
    // F2 : quot(R (x)_R R) -> R is induced by multiplication
    BimoduleTensor rr = bimodule_tensor(f.images[0], f.images[0]);
    Matrix mult_amb(2, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Matrix prod = rp->left_mult[i] * Matrix::basis_column(2, j);
            for (std::size_t l = 0; l < 2; ++l) mult_amb.at(l, i * 2 + j) = prod.at(l, 0);
        }
    f.F2.assign(1, std::vector<Matrix>(1, mult_amb * rr.space.section()));
    f.F0 = Matrix::identity(2);
    f.finalize();
    out.fib = f;
    return out;
}

// Objects I and N with End(N) = Q x Q; the fiber projects onto the first
// coordinate, so the sieve generated by e1 is covering but not maximal.
struct ProjectorFixture {
    std::shared_ptr<CategoryPresentation> cat;
    FiberFunctor fib;
    PresheafData glue_breaker; // presheaf supported on the e2 corner
};

inline ProjectorFixture projector_fixture() {
    CategoryBuilder b(FieldSpec::rationals(), {"I", "N"}, "I");
    b.hom("I", "I", 1);
    b.hom("N", "N", 2); // basis: e1, e2
    b.alloc_compose();
    b.identity_coords(0, Matrix::identity(1));
    b.compose_entry(0, 0, 0, 0, 0, Matrix::identity(1));
    Matrix idN(2, 1);
    idN.at(0, 0) = Scalar(1);
    idN.at(1, 0) = Scalar(1);
    b.identity_coords(1, idN);
    b.compose_entry(1, 1, 1, 0, 0, Matrix::basis_column(2, 0));
    b.compose_entry(1, 1, 1, 0, 1, Matrix(2, 1));
    b.compose_entry(1, 1, 1, 1, 0, Matrix(2, 1));
    b.compose_entry(1, 1, 1, 1, 1, Matrix::basis_column(2, 1));
    b.tensor_obj_table({{0, 1}, {1, 1}});
    b.alloc_tensor();
    b.tensor_entry(0, 0, 0, 0, 0, 0, Matrix::identity(1));
    for (std::size_t i = 0; i < 2; ++i) {
        b.tensor_entry(0, 0, 1, 1, 0, i, Matrix::basis_column(2, i));
        b.tensor_entry(1, 1, 0, 0, i, 0, Matrix::basis_column(2, i));
    }
    b.tensor_entry(1, 1, 1, 1, 0, 0, Matrix::basis_column(2, 0));
    b.tensor_entry(1, 1, 1, 1, 0, 1, Matrix(2, 1));
    b.tensor_entry(1, 1, 1, 1, 1, 0, Matrix(2, 1));
    b.tensor_entry(1, 1, 1, 1, 1, 1, Matrix::basis_column(2, 1));
    b.default_coherence();
    ProjectorFixture out;
    out.cat = b.build();

    FiberFunctor f;
    f.category = out.cat;
    f.base = std::make_shared<AlgebraPresentation>(AlgebraPresentation::ground_field(FieldSpec::rationals()));
    Bimodule line;
    line.algebra = f.base;
    line.dim = 1;
    line.left = {Matrix::identity(1)};
    line.right = {Matrix::identity(1)};
    f.images = {line, line};
    f.arrows.assign(2, std::vector<std::vector<Matrix>>(2));
    f.arrows[0][0] = {Matrix::identity(1)};
    Matrix one(1, 1), zero(1, 1);
    one.at(0, 0) = Scalar(1);
    f.arrows[1][1] = {one, zero};
    f.F2.assign(2, std::vector<Matrix>(2, Matrix::identity(1)));
    f.F0 = Matrix::identity(1);
    f.finalize();
    out.fib = f;

    PresheafData u;
    u.dims = {0, 1};
    u.act.assign(2, std::vector<std::vector<Matrix>>(2));
    u.act[0][0] = {Matrix(0, 0)};
    u.act[1][1] = {Matrix(1, 1), Matrix::identity(1)}; // U(e1) = 0, U(e2) = 1
    u.act[0][1] = {};
    u.act[1][0] = {};
    out.glue_breaker = u;
    return out;
}

} // namespace fixtures
