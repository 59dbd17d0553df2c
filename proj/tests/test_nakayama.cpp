#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "preproj/nakayama.hpp"

using namespace preproj;

TEST_CASE("canonical basis is dualizable")
{
    for (std::uint32_t p : {0u, 3u, 5u, 7u})
        for (int n = 1; n <= 6; ++n) {
            auto A = Algebra::build(n, FieldSpec(p));
            auto f = NakayamaForm::associated(A);
            auto r = certify_dualizable(f);
            CHECK(r.pass());
            CHECK(r.witnesses.empty());
            CHECK(f.gram_rank() == A.dim());
            CHECK(dagger_identities(f));
        }
}

TEST_CASE("form values")
{
    for (int n = 1; n <= 5; ++n) {
        auto A = Algebra::build(n, FieldSpec(0));
        auto f = NakayamaForm::associated(A);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) CHECK(f.pair(A.vertex(i), A.vertex(j)) == 0);
        int eps = A.arrow_mono(A.eps());
        int top2 = A.find(1, 1, 2 * n - 2);
        CHECK(f.pair(eps, top2) == 1);
        CHECK(f.dual(eps) == SignedMono{1, top2});
        for (int i = 1; i <= n; ++i) {
            CHECK(f.dual(A.vertex(i)) == SignedMono{1, A.socle(i)});
            CHECK(f.dual(A.socle(i)) == SignedMono{1, A.vertex(i)});
        }
        // a_i* = (-1)^{i(i+1)/2} abar_i ... abar_1 eps^{2(n-i-1)+1} a_1 ... a_{i-1}
        for (int i = 1; i < n; ++i) {
            std::vector<int> path;
            for (int s = i; s >= 1; --s) path.push_back(A.abar(s));
            for (int s = 0; s < 2 * (n - i - 1) + 1; ++s) path.push_back(A.eps());
            for (int s = 1; s < i; ++s) path.push_back(A.a(s));
            SignedMono v = A.path_value(path, i + 1);
            REQUIRE(!v.zero());
            int sign = ((i * (i + 1) / 2) % 2) ? -1 : 1;
            CHECK(f.dual(A.arrow_mono(A.a(i))) == SignedMono{sign * v.sign, v.id});
        }
    }
}

TEST_CASE("unsigned socle variant fails with the expected witness")
{
    auto V1 = Algebra::build(1, FieldSpec(0), SocleSign::unsigned_top);
    CHECK(certify_dualizable(NakayamaForm::associated(V1)).pass());
    for (int n = 2; n <= 6; ++n) {
        auto V = Algebra::build(n, FieldSpec(0), SocleSign::unsigned_top);
        auto f = NakayamaForm::associated(V);
        auto r = certify_dualizable(f);
        CHECK_FALSE(r.pass());
        CHECK_FALSE(r.arrow_condition);
        CHECK_FALSE(r.double_dual);
        CHECK_FALSE(r.symmetric);
        CHECK_FALSE(r.witnesses.empty());
        for (int i = 1; i < n; ++i) {
            int sign = (i % 2) ? -1 : 1;
            CHECK(arrow_dual_product(f, V.a(i)) == SignedMono{sign, V.socle(i + 1)});
        }
    }
}

TEST_CASE("associativity of the form on basis triples")
{
    auto A = Algebra::build(3, FieldSpec(0));
    auto f = NakayamaForm::associated(A);
    for (const auto& x : A.basis())
        for (const auto& ar : A.arrows())
            for (const auto& y : A.basis()) {
                auto a = A.element(A.arrow_mono(ar.id));
                auto xe = A.element(x.id), ye = A.element(y.id);
                CHECK(f.form(A.multiply(xe, a), ye) == f.form(xe, A.multiply(a, ye)));
            }
}
