#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "preproj/algebra.hpp"

#include <random>

using namespace preproj;

namespace {

// Cartan entries computed from the closed count 2(n - max(i,j) + 1), independent of the build
long long cartan_entry(int n, int i, int j) { return 2LL * (n - std::max(i, j) + 1); }

} // namespace

TEST_CASE("small algebras")
{
    FieldSpec q(0);
    auto a1 = Algebra::build(1, q);
    CHECK(a1.dim() == 2);
    CHECK(a1.mono(a1.socle(1)).path == std::vector<int>{0});
    CHECK(Algebra::build(2, q).dim() == 10);
    CHECK(Algebra::build(3, q).dim() == 28);
}

TEST_CASE("dimension and cartan across characteristics")
{
    for (std::uint32_t p : {0u, 3u, 5u, 7u})
        for (int n = 1; n <= 6; ++n) {
            auto A = Algebra::build(n, FieldSpec(p));
            CHECK(A.dim() == static_cast<std::size_t>(n * (n + 1) * (2 * n + 1) / 3));
            auto c = A.cartan_matrix();
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) CHECK(c[i - 1][j - 1] == cartan_entry(n, i, j));
            CHECK(determinant(c) == (1LL << n));
        }
    auto c2 = Algebra::build(2, FieldSpec(0)).cartan_matrix();
    CHECK(c2 == std::vector<std::vector<long long>>{{4, 2}, {2, 2}});
}

TEST_CASE("relations at the vertices")
{
    FieldSpec q(0);
    for (int n = 2; n <= 5; ++n) {
        auto A = Algebra::build(n, q);
        auto ee = A.path_value({A.eps(), A.eps()}, 1);
        auto aa = A.path_value({A.a(1), A.abar(1)}, 1);
        REQUIRE(!ee.zero());
        CHECK(ee.id == aa.id);
        CHECK(ee.sign == -aa.sign);
        CHECK(A.path_value({A.abar(n - 1), A.a(n - 1)}, n).zero());
        // e_i . b = b
        for (const auto& m : A.basis()) {
            auto p = A.product(A.vertex(m.source), m.id);
            CHECK(p == SignedMono{1, m.id});
        }
    }
    auto A1 = Algebra::build(1, q);
    CHECK(A1.path_value({0, 0}, 1).zero());
}

TEST_CASE("associativity full scan n <= 3")
{
    for (int n = 1; n <= 3; ++n) {
        auto A = Algebra::build(n, FieldSpec(0));
        for (const auto& b : A.basis())
            for (const auto& c : A.basis())
                for (const auto& d : A.basis()) {
                    auto bc = A.product(b.id, c.id);
                    auto cd = A.product(c.id, d.id);
                    SignedMono left, right;
                    if (!bc.zero()) {
                        left = A.product(bc.id, d.id);
                        left.sign *= bc.sign;
                    }
                    if (!cd.zero()) {
                        right = A.product(b.id, cd.id);
                        right.sign *= cd.sign;
                    }
                    if (b.target != c.source || c.target != d.source) continue;
                    CHECK(left == right);
                }
    }
}

TEST_CASE("center and socle")
{
    for (int n = 1; n <= 6; ++n) {
        auto A = Algebra::build(n, FieldSpec(0));
        CHECK(A.center_dimension() == static_cast<std::size_t>(2 * n));
        auto x = A.x0();
        CHECK(A.power(x, n).empty());
        for (int i = 1; i <= n; ++i) {
            CHECK(A.multiply(x, A.element(A.socle(i))).empty());
            CHECK(A.mono(A.socle(i)).degree == 2 * n - 1);
        }
        for (const auto& ar : A.arrows()) {
            auto xa = A.multiply(x, A.element(A.arrow_mono(ar.id)));
            auto ax = A.multiply(A.element(A.arrow_mono(ar.id)), x);
            CHECK(xa == ax);
            CHECK(A.product(A.arrow_mono(ar.id), A.socle(ar.target)).zero());
            CHECK(A.product(A.socle(ar.source), A.arrow_mono(ar.id)).zero());
        }
        if (n >= 2) {
            auto eps2 = A.path_value({0, 0}, 1);
            CHECK(A.power(x, 1).count(eps2.id));
            CHECK(A.power(x, 1).at(eps2.id) == Scalar(FieldSpec(0), eps2.sign));
        }
    }
}

TEST_CASE("structural identities")
{
    for (std::uint32_t p : {0u, 3u})
        for (int n = 1; n <= 6; ++n) {
            auto A = Algebra::build(n, FieldSpec(p));
            auto r = check_structure(A, n <= 4);
            INFO("n=" << n << " p=" << p);
            for (const auto& f : r.failures) FAIL_CHECK(f);
            CHECK(r.pass());
        }
    auto v = Algebra::build(3, FieldSpec(0), SocleSign::unsigned_top);
    CHECK(check_structure(v, true).pass());
}

TEST_CASE("associativity on random triples for n = 7, 8")
{
    std::mt19937 rng(7);
    for (int n : {7, 8}) {
        auto A = Algebra::build(n, FieldSpec(0));
        std::uniform_int_distribution<int> pick(0, static_cast<int>(A.dim()) - 1);
        int checked = 0;
        while (checked < 100000) {
            int b = pick(rng);
            auto next = A.starting_at(A.mono(b).target);
            int c = next[rng() % next.size()];
            auto last = A.starting_at(A.mono(c).target);
            int d = last[rng() % last.size()];
            auto bc = A.product(b, c), cd = A.product(c, d);
            SignedMono left, right;
            if (!bc.zero()) {
                left = A.product(bc.id, d);
                left.sign *= bc.sign;
            }
            if (!cd.zero()) {
                right = A.product(b, cd.id);
                right.sign *= cd.sign;
            }
            if (!(left == right)) FAIL("non-associative triple");
            ++checked;
        }
    }
}
