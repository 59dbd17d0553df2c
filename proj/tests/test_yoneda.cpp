#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "preproj/yoneda.hpp"

using namespace preproj;

namespace {

struct Setup {
    Algebra A;
    NakayamaForm f;
    Resolution r;
    CochainComplex c;
    CanonicalBasis b;
    Setup(int n, std::uint32_t p)
        : A(Algebra::build(n, FieldSpec(p))), f(NakayamaForm::associated(A)), r(Resolution::build(A, f, 14)),
          c(CochainComplex::build(r, 13)), b(c, 12)
    {
    }
};

Scalar S(const Algebra& A, long long v) { return Scalar(A.field(), v); }

// single-class vector times a scalar
Vector basis_vec(const CanonicalBasis& b, int deg, std::size_t k, const Scalar& c)
{
    Vector v = zero_vector(b.complex().algebra().field(), b.size(deg));
    v[k] = c;
    return v;
}

int sgn(int e) { return e % 2 ? -1 : 1; }

} // namespace

TEST_CASE("C matrix three ways")
{
    for (std::uint32_t p : {0u, 3u, 5u, 7u})
        for (int n = 1; n <= 6; ++n) {
            Setup s(n, p);
            YonedaEngine e(s.r, s.b);
            auto rep = c_matrix(s.A, &e);
            INFO("n=" << n << " p=" << p);
            CHECK(rep.agree);
            CHECK(rep.determinant_magnitude);
            CHECK(rep.adjacency_identity);
        }
    CHECK(c_matrix_closed_form(2) == std::vector<std::vector<long long>>{{-2, 1}, {1, -3}});
}

TEST_CASE("rank of C is 1 when p divides 2n+1 and n otherwise")
{
    for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{{1, 3}, {2, 5}, {3, 7}, {7, 3}, {7, 5}}) {
        Algebra A = Algebra::build(n, FieldSpec(p));
        auto rep = c_matrix(A, nullptr);
        CHECK(rep.rank == 1);
    }
    for (int n = 1; n <= 7; ++n) CHECK(c_matrix(Algebra::build(n, FieldSpec(0)), nullptr).rank == std::size_t(n));
}

TEST_CASE("product identities")
{
    for (std::uint32_t p : {0u, 3u, 5u, 7u})
        for (int n = 1; n <= 4; ++n) {
            Setup s(n, p);
            YonedaEngine e(s.r, s.b);
            const Algebra& A = s.A;
            auto C = c_matrix_closed_form(n);
            INFO("n=" << n << " p=" << p);
            std::size_t top = static_cast<std::size_t>(n - 1); // x0^{n-1} index in degrees 4..6
            for (int j = 1; j <= n; ++j) {
                for (int k = 1; k <= n; ++k) {
                    // z_j z_k = C_jk x0^{n-1} gamma
                    CHECK(e.basis_product(2, j - 1, 2, k - 1) == basis_vec(s.b, 4, top, S(A, C[j - 1][k - 1])));
                    // z_k t_j = delta_jk x0^{n-1} y gamma
                    CHECK(e.basis_product(2, k - 1, 3, j - 1) == basis_vec(s.b, 5, top, S(A, j == k)));
                }
                // z_j gamma = (-1)^j (n-j+1) x0^{n-1} h
                CHECK(e.basis_product(2, j - 1, 4, 0) == basis_vec(s.b, 6, top, S(A, sgn(j) * (n - j + 1))));
                // t_j gamma = delta_1j x0^{n-1} y h
                CHECK(e.basis_product(3, j - 1, 4, 0) == basis_vec(s.b, 7, top, S(A, j == 1)));
                // y z_j is C e_j on the t classes
                Vector yz = zero_vector(A.field(), s.b.size(3));
                for (int i = 1; i <= n; ++i) yz[i - 1] = S(A, C[i - 1][j - 1]);
                CHECK(e.basis_product(1, 0, 2, j - 1) == yz);
            }
            // y^2 = 0, gamma^2 = z_1 h
            CHECK(is_zero(e.basis_product(1, 0, 1, 0)));
            CHECK(e.basis_product(4, 0, 4, 0) == basis_vec(s.b, 8, 0, S(A, 1)));
        }
}

TEST_CASE("graded commutativity and associativity")
{
    Setup s(3, 0);
    YonedaEngine e(s.r, s.b);
    for (int p = 1; p <= 6; ++p)
        for (int q = 1; p + q <= 12; ++q)
            for (std::size_t a = 0; a < s.b.size(p); ++a)
                for (std::size_t b = 0; b < s.b.size(q); ++b) {
                    Vector ab = e.basis_product(p, a, q, b);
                    Vector ba = e.basis_product(q, b, p, a);
                    if (p * q % 2)
                        for (auto& x : ba) x = -x;
                    CHECK(ab == ba);
                }
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            for (int r = 1; p + q + r <= 12 && r <= 4; ++r) {
                auto x = e.unit_class(p, 0), y = e.unit_class(q, s.b.size(q) - 1), z = e.unit_class(r, 0);
                CHECK(e.cup(e.cup(x, y), z).coords == e.cup(x, e.cup(y, z)).coords);
            }
}

TEST_CASE("products do not depend on the chosen lift")
{
    for (std::uint32_t p : {0u, 5u}) {
        Setup s(3, p);
        YonedaEngine e(s.r, s.b), rev(s.r, s.b, true);
        for (int a = 1; a <= 6; ++a)
            for (int q = 1; a + q <= 12; ++q)
                for (std::size_t i = 0; i < s.b.size(a); ++i)
                    for (std::size_t k = 0; k < s.b.size(q); ++k)
                        CHECK(e.basis_product(a, i, q, k) == rev.basis_product(a, i, q, k));
    }
}

TEST_CASE("identity maps lift h and h acts periodically")
{
    Setup s(3, 0);
    YonedaEngine e(s.r, s.b);
    CHECK(e.identity_lifts_h(6));
    for (int q = 1; q <= 6; ++q)
        for (std::size_t k = 0; k < s.b.size(q); ++k)
            CHECK(e.basis_product(6, 0, q, k) == basis_vec(s.b, q + 6, k, Scalar::one(s.A.field())));
}

TEST_CASE("HH^3 annihilates odd degrees")
{
    for (std::uint32_t p : {0u, 3u}) {
        Setup s(4, p);
        YonedaEngine e(s.r, s.b);
        for (int q : {1, 3, 5, 7, 9})
            for (std::size_t a = 0; a < s.b.size(3); ++a)
                for (std::size_t b = 0; b < s.b.size(q); ++b) CHECK(is_zero(e.basis_product(3, a, q, b)));
    }
}

TEST_CASE("lifting rejects non-cocycles")
{
    Setup s(2, 0);
    YonedaEngine e(s.r, s.b);
    Vector v = zero_vector(s.A.field(), s.c.dim(1));
    bool found = false;
    for (std::size_t k = 0; k < v.size() && !found; ++k) {
        v.assign(v.size(), Scalar::zero(s.A.field()));
        v[k] = Scalar::one(s.A.field());
        if (!s.b.is_cocycle(1, v)) found = true;
    }
    REQUIRE(found);
    CHECK_THROWS_WITH(e.lift(1, v, 2), "not a cocycle");
}

TEST_CASE("identification of socle and loop-power cocycles")
{
    for (int n = 1; n <= 4; ++n) {
        Setup s(n, 0);
        const Algebra& A = s.A;
        std::size_t top = static_cast<std::size_t>(n - 1);
        std::vector<AlgebraElement> comps(n);
        comps[0] = A.element(A.socle(1));
        CHECK(s.b.identify(5, s.c.vector_from(5, comps)) == basis_vec(s.b, 5, top, S(A, 1)));
        comps[0] = A.power(A.element(A.arrow_mono(A.eps())), 2 * n - 2);
        CHECK(s.b.identify(6, s.c.vector_from(6, comps)) == basis_vec(s.b, 6, top, S(A, 1)));
    }
}
