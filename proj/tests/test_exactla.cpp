#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "preproj/exactla.hpp"

#include <random>

using namespace preproj;

TEST_CASE("field spec rejects characteristic 2 and composites")
{
    CHECK_THROWS_WITH_AS(FieldSpec(2), doctest::Contains("characteristic 2"), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(9), std::invalid_argument);
    CHECK_NOTHROW(FieldSpec(0));
    CHECK_NOTHROW(FieldSpec(7));
}

TEST_CASE("scalar arithmetic")
{
    FieldSpec q(0), f5(5);
    CHECK((Scalar(q, 1) / Scalar(q, 2)).str() == "1/2");
    CHECK((Scalar(f5, 3) * Scalar(f5, 4)).str() == "2");
    CHECK((Scalar(f5, 1) / Scalar(f5, 2)).str() == "-2");
    CHECK(Scalar(f5, -3).str() == "2");
    CHECK(Scalar(f5, 5).is_zero());
    CHECK_THROWS(Scalar(q, 0).inverse());
}

TEST_CASE("echelonize examples")
{
    FieldSpec q(0), f5(5);
    CHECK(echelonize(Matrix::identity(q, 2)).rank == 2);
    CHECK(echelonize(Matrix(q, 3, 4)).rank == 0);
    auto c = Matrix::from_ints(f5, {{-2, 1}, {1, -3}});
    CHECK(echelonize(c).rank == 1);
    CHECK(echelonize(Matrix::from_ints(q, {{-2, 1}, {1, -3}})).rank == 2);
    auto e = echelonize(Matrix::from_ints(q, {{0, 2, 4}, {0, 1, 2}, {1, 0, 1}}));
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.reduced.at(0, 0).is_one());
    CHECK(e.reduced.at(1, 2).str() == "2");
}

TEST_CASE("kernel basis examples")
{
    FieldSpec q(0);
    CHECK(kernel_basis(Matrix::identity(q, 3)).empty());
    auto k0 = kernel_basis(Matrix(q, 2, 2));
    REQUIRE(k0.size() == 2);
    CHECK(k0[0][0].is_one());
    CHECK(k0[1][1].is_one());
    auto k = kernel_basis(Matrix::from_ints(q, {{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0].str() == "-1");
    CHECK(k[0][1].str() == "1");
}

TEST_CASE("solve examples")
{
    FieldSpec q(0);
    Vector b{Scalar(q, 3), Scalar(q, -4)};
    CHECK(*solve(Matrix::identity(q, 2), b) == b);
    CHECK_FALSE(solve(Matrix(q, 2, 2), b).has_value());
    auto x = solve(Matrix::from_ints(q, {{2}}), Vector{Scalar(q, 1)});
    REQUIRE(x);
    CHECK((*x)[0].str() == "1/2");
}

TEST_CASE("reversed pivots give a different particular solution")
{
    FieldSpec q(0);
    auto m = Matrix::from_ints(q, {{1, 1}});
    Vector b{Scalar(q, 5)};
    auto x = solve(m, b);
    auto y = solve(m, b, true);
    CHECK((*x)[0].str() == "5");
    CHECK((*x)[1].is_zero());
    CHECK((*y)[0].is_zero());
    CHECK((*y)[1].str() == "5");
    Solver s(m, true);
    CHECK(*s.solve(b) == *y);
}

TEST_CASE("random matrices: rank identities and solver consistency")
{
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> val(-3, 3), dim(1, 7);
    for (std::uint32_t p : {0u, 3u, 5u, 7u}) {
        FieldSpec f(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t r = dim(rng), c = dim(rng);
            Matrix m(f, r, c);
            std::vector<SparseRow> sparse(r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) {
                    int v = val(rng) * (rng() % 3 == 0);
                    m.at(i, j) = Scalar(f, v);
                    if (v) sparse[i].emplace_back(static_cast<std::uint32_t>(j), v);
                }
            std::size_t rk = rank(m);
            CHECK(rk == rank(m.transpose()));
            CHECK(rk == sparse_rank(f, sparse));
            auto ker = kernel_basis(m);
            CHECK(ker.size() + rk == c);
            for (const auto& v : ker) CHECK(is_zero(m.apply(v)));
            Vector x0 = zero_vector(f, c);
            for (auto& s : x0) s = Scalar(f, val(rng));
            Vector b = m.apply(x0);
            Solver solver(m);
            for (bool rev : {false, true}) {
                auto x = solve(m, b, rev);
                REQUIRE(x);
                CHECK(m.apply(*x) == b);
            }
            CHECK(m.apply(*solver.solve(b)) == b);
        }
    }
}
