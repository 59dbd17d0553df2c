#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "preproj/resolution.hpp"

#include <chrono>

using namespace preproj;

namespace {

bool has_term(const std::vector<Term>& v, int target, int left, int right, long long c)
{
    for (const auto& t : v)
        if (t.target == target && t.left == left && t.right == right && t.coef.as_integer() == c) return true;
    return false;
}

} // namespace

TEST_CASE("initial differentials")
{
    auto A = Algebra::build(3, FieldSpec(0));
    auto f = NakayamaForm::associated(A);
    auto delta = make_delta(A);
    int eps = A.arrow_mono(A.eps());
    CHECK(delta.values[0].size() == 2);
    CHECK(has_term(delta.values[0], 0, eps, A.vertex(1), 1));
    CHECK(has_term(delta.values[0], 0, A.vertex(1), eps, -1));
    auto R = make_R(A);
    int n = 3;
    // at vertex n: e_n (x) a_{n-1} in summand abar_{n-1}, abar_{n-1} (x) e_n in summand a_{n-1}
    CHECK(R.values[n - 1].size() == 2);
    CHECK(has_term(R.values[n - 1], A.abar(n - 1), A.vertex(n), A.arrow_mono(A.a(n - 1)), 1));
    CHECK(has_term(R.values[n - 1], A.a(n - 1), A.arrow_mono(A.abar(n - 1)), A.vertex(n), 1));

    auto A1 = Algebra::build(1, FieldSpec(0));
    auto f1 = NakayamaForm::associated(A1);
    auto k1 = make_k(A1, f1);
    REQUIRE(k1.values[0].size() == 2);
    CHECK(has_term(k1.values[0], 0, A1.vertex(1), A1.arrow_mono(0), 1));
    CHECK(has_term(k1.values[0], 0, A1.arrow_mono(0), A1.vertex(1), -1));
    (void)f;
}

TEST_CASE("twist")
{
    auto A = Algebra::build(2, FieldSpec(0));
    auto delta = make_delta(A);
    auto dt = tau_twist(A, delta);
    int eps = A.arrow_mono(A.eps());
    CHECK(has_term(dt.values[0], 0, eps, A.vertex(1), 1));
    CHECK(has_term(dt.values[0], 0, A.vertex(1), eps, 1));
    CHECK(same_map(A, tau_twist(A, dt), delta));
}

TEST_CASE("exactness windows")
{
    for (std::uint32_t p : {0u, 3u, 5u}) {
        for (int n = 1; n <= 4; ++n) {
            auto A = Algebra::build(n, FieldSpec(p));
            auto f = NakayamaForm::associated(A);
            auto r = Resolution::build(A, f, 13);
            auto rep = certify_exact(r);
            CHECK(rep.pass());
            for (const auto& s : rep.failures) MESSAGE(s);
            // kernel of d^-5 equals the image of d^-6 and has dimension dim Lambda
            CHECK(rep.entries[5].rank_in == A.dim());
            CHECK(flat_dim(A, r.term(5)) - rep.entries[5].rank_out == A.dim());
        }
    }
}

TEST_CASE("n = 2 depth 7 window")
{
    auto A = Algebra::build(2, FieldSpec(0));
    auto f = NakayamaForm::associated(A);
    auto r = Resolution::build(A, f, 7);
    auto rep = certify_exact(r);
    CHECK(rep.pass());
    CHECK(flat_rank(A, r.differential(6)) == 10);
}
