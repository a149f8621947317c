#include <catch2/catch_amalgamated.hpp>

#include "tannaka/matrix.hpp"
#include "tannaka/quotient.hpp"

#include <random>

using namespace tannaka;

namespace {

Matrix mat(std::size_t r, std::size_t c, std::vector<std::int64_t> v, std::int64_t p = 0) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(BigRat(v[i * c + j]), p);
    return m;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::int64_t p) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            std::int64_t v = static_cast<std::int64_t>(rng() % 11) - 5;
            m.at(i, j) = Scalar(BigRat(v), p);
        }
    return m;
}

} // namespace

TEST_CASE("rref on frozen examples") {
    SECTION("identity is its own reduced form") {
        auto r = rref(Matrix::identity(2));
        REQUIRE(r.reduced == Matrix::identity(2));
        REQUIRE(r.pivot_columns == std::vector<std::size_t>{0, 1});
        REQUIRE(r.rank == 2);
    }
    SECTION("proportional rows collapse") {
        auto r = rref(mat(2, 2, {1, 2, 2, 4}));
        REQUIRE(r.reduced == mat(2, 2, {1, 2, 0, 0}));
        REQUIRE(r.rank == 1);
    }
    SECTION("full rank over F2") {
        auto r = rref(mat(2, 2, {1, 1, 1, 2}, 2));
        REQUIRE(r.rank == 2);
    }
}

TEST_CASE("kernel_basis on frozen examples") {
    REQUIRE(kernel_basis(Matrix::identity(3)).cols() == 0);

    Matrix z(2, 3);
    Matrix k = kernel_basis(z);
    REQUIRE(k.cols() == 3);
    REQUIRE(rank(k) == 3);

    Matrix k2 = kernel_basis(mat(1, 2, {1, 2}));
    REQUIRE(k2.cols() == 1);
    // proportional to (-2, 1)^T
    REQUIRE(k2.at(0, 0) * Scalar(1) == Scalar(-2) * k2.at(1, 0));
    REQUIRE(!k2.col(0).is_zero());
}

TEST_CASE("split_idempotent on frozen examples") {
    SECTION("identity") {
        auto s = split_idempotent(Matrix::identity(2));
        REQUIRE(s.section == Matrix::identity(2));
        REQUIRE(s.retraction == Matrix::identity(2));
    }
    SECTION("zero matrix") {
        auto s = split_idempotent(Matrix(3, 3));
        REQUIRE(s.section.cols() == 0);
        REQUIRE(s.retraction.rows() == 0);
    }
    SECTION("diag(1,0)") {
        auto s = split_idempotent(mat(2, 2, {1, 0, 0, 0}));
        REQUIRE(s.section == mat(2, 1, {1, 0}));
        REQUIRE(s.retraction == mat(1, 2, {1, 0}));
    }
    SECTION("rejects non-idempotents") {
        REQUIRE_THROWS_AS(split_idempotent(mat(2, 2, {1, 1, 1, 1})), std::domain_error);
    }
}

TEST_CASE("solve and inverse") {
    Matrix a = mat(2, 2, {1, 2, 3, 4});
    auto inv = inverse(a);
    REQUIRE(inv);
    REQUIRE((*inv * a).is_identity());
    REQUIRE((a * *inv).is_identity());
    REQUIRE(!inverse(mat(2, 2, {1, 2, 2, 4})));

    auto none = solve(mat(2, 1, {0, 0}), mat(2, 1, {1, 0}));
    REQUIRE(!none);
}

TEST_CASE("rank-nullity, rref idempotence, split round trip on seeded samples") {
    std::mt19937_64 rng(12345);
    for (std::int64_t p : {std::int64_t(0), std::int64_t(2), std::int64_t(7)}) {
        for (int iter = 0; iter < 25; ++iter) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            Matrix m = random_matrix(rng, r, c, p);

            Matrix k = kernel_basis(m);
            REQUIRE((m * k).is_zero());
            REQUIRE(rank(m) + k.cols() == c);

            auto rr = rref(m);
            REQUIRE(rref(rr.reduced).reduced == rr.reduced);

            // make an idempotent e = s T with T s = id, s of full column rank
            Matrix s = random_matrix(rng, r, 1 + rng() % r, p);
            if (rank(s) == s.cols()) {
                auto tt = solve(s.transpose(), Matrix::identity(s.cols()));
                if (tt) {
                    Matrix e = s * tt->transpose();
                    REQUIRE(e * e == e);
                    auto sp = split_idempotent(e);
                    REQUIRE((sp.retraction * sp.section).is_identity());
                    REQUIRE(sp.section * sp.retraction == e);
                }
            }
        }
    }
}

TEST_CASE("quotient space by relation span") {
    // quotient of k^3 by span{(1,1,0)} leaves coordinates 1,2 as normal forms
    Matrix rel = mat(3, 1, {1, 1, 0});
    QuotientSpace q(3, rel);
    REQUIRE(q.dim() == 2);
    REQUIRE((q.projection() * q.section()).is_identity());
    REQUIRE(q.kills(rel));
    // e0 and -e1 agree in the quotient
    Matrix e0 = Matrix::basis_column(3, 0), e1 = Matrix::basis_column(3, 1);
    REQUIRE(q.projection() * e0 == q.projection() * (Scalar(-1) * e1));
}

TEST_CASE("scalar parsing and printing round trip") {
    FieldSpec q = FieldSpec::rationals();
    REQUIRE(Scalar::parse("-1/2", q).str() == "-1/2");
    REQUIRE(Scalar::parse("4/2", q).str() == "2");
    FieldSpec f5 = FieldSpec::prime(5);
    REQUIRE(Scalar::parse("7", f5).str() == "2");
    REQUIRE(Scalar::parse("1/2", f5).str() == "3"); // 2*3 = 6 = 1 mod 5
    REQUIRE_THROWS(FieldSpec::prime(6));
    REQUIRE_THROWS(Scalar::parse("x", q));
}
