// one PASS/FAIL line per acceptance criterion; argv[1] is the CLI used for the determinism check
#include "preproj/certificate.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace preproj;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string note;
    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) note = what;
        pass = pass && ok;
    }
};

const std::vector<std::uint32_t> chars{0, 3, 5, 7};

struct Window {
    Algebra A;
    NakayamaForm f;
    Resolution r;
    CochainComplex c;
    Window(int n, std::uint32_t p)
        : A(Algebra::build(n, FieldSpec(p))), f(NakayamaForm::associated(A)), r(Resolution::build(A, f, 14)),
          c(CochainComplex::build(r, 13))
    {
    }
};

struct Full : Window {
    CanonicalBasis b;
    YonedaEngine e;
    Full(int n, std::uint32_t p) : Window(n, p), b(c, 12), e(r, b) {}
};

std::vector<std::size_t> expected_hh(int n)
{
    std::vector<std::size_t> d(13, static_cast<std::size_t>(n));
    d[0] = 2 * n;
    return d;
}

std::string tag(int n, std::uint32_t p) { return " (n=" + std::to_string(n) + ", char " + std::to_string(p) + ")"; }

Outcome dimensions()
{
    Outcome o;
    auto t0 = Clock::now();
    for (int n = 1; n <= 6; ++n)
        for (auto p : chars) {
            Window w(n, p);
            o.require(hh_dims(w.c, 12) == expected_hh(n), "HH^i mismatch" + tag(n, p));
        }
    double s = seconds_since(t0);
    o.require(s < 60, "grid took " + std::to_string(s) + " s");
    if (o.pass) o.note = "grid in " + std::to_string(s).substr(0, 5) + " s";
    return o;
}

Outcome duality()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n)
        for (auto p : chars) {
            Window w(n, p);
            o.require(homology_dims(w.r, 12) == hh_dims(w.c, 12), "HH_i != HH^i" + tag(n, p));
        }
    return o;
}

Outcome cartan()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n)
        for (auto p : chars)
            o.require(determinant(Algebra::build(n, FieldSpec(p)).cartan_matrix()) == (1LL << n), "det" + tag(n, p));
    return o;
}

Outcome algebra_sanity()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n)
        for (auto p : chars) {
            Algebra A = Algebra::build(n, FieldSpec(p));
            o.require(A.dim() == static_cast<std::size_t>(n * (n + 1) * (2 * n + 1) / 3), "dim" + tag(n, p));
            auto s = check_structure(A, n <= 4);
            o.require(s.pass(), (s.failures.empty() ? std::string("structure") : s.failures.front()) + tag(n, p));
        }
    return o;
}

Outcome dualizability()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n) {
        Algebra A = Algebra::build(n, FieldSpec(0));
        NakayamaForm f = NakayamaForm::associated(A);
        o.require(certify_dualizable(f).pass(), "canonical basis" + tag(n, 0));
        if (n == 1) continue;
        Algebra V = Algebra::build(n, FieldSpec(0), SocleSign::unsigned_top);
        NakayamaForm g = NakayamaForm::associated(V);
        auto rep = certify_dualizable(g);
        o.require(!rep.arrow_condition && !rep.double_dual && !rep.symmetric, "variant not rejected" + tag(n, 0));
        for (int i = 1; i < n; ++i) {
            SignedMono w = arrow_dual_product(g, V.a(i));
            o.require(w.id == V.socle(i + 1) && w.sign == (i % 2 ? -1 : 1), "variant witness a" + std::to_string(i));
        }
    }
    return o;
}

Outcome resolution()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n) {
        Algebra A = Algebra::build(n, FieldSpec(0));
        NakayamaForm f = NakayamaForm::associated(A);
        Resolution r = Resolution::build(A, f, 13);
        auto rep = certify_exact(r);
        o.require(rep.pass(), (rep.failures.empty() ? std::string("exactness") : rep.failures.front()) + tag(n, 0));
        try {
            CochainComplex::build(Resolution::build(A, f, 14), 13);
        } catch (const std::exception& e) {
            o.require(false, e.what() + tag(n, 0));
        }
    }
    return o;
}

Outcome cmatrix()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n) {
        Full w(n, 0);
        auto rep = c_matrix(w.A, &w.e);
        o.require(rep.agree, "three computations disagree" + tag(n, 0));
        o.require(rep.rank == static_cast<std::size_t>(n), "rank" + tag(n, 0));
        o.require(rep.adjacency_identity, "-C(2I+D)" + tag(n, 0));
        o.require(rep.determinant_magnitude, "|det C|" + tag(n, 0));
        o.note += (o.note.empty() ? "det C: " : ", ") + std::to_string(rep.determinant);
    }
    for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{{1, 3}, {2, 5}, {3, 7}, {7, 3}, {7, 5}})
        o.require(c_matrix(Algebra::build(n, FieldSpec(p)), nullptr).rank == 1, "modular rank" + tag(n, p));
    return o;
}

Outcome product_identities()
{
    Outcome o;
    std::vector<std::pair<int, std::uint32_t>> grid{{1, 0}, {2, 0}, {3, 0}, {4, 0}, {2, 5}};
    for (auto [n, p] : grid) {
        Full w(n, p);
        const FieldSpec& F = w.A.field();
        std::size_t top = static_cast<std::size_t>(n - 1);
        auto unit = [&](int deg, std::size_t k, long long c) {
            Vector v = zero_vector(F, w.b.size(deg));
            v[k] = Scalar(F, c);
            return v;
        };
        o.require(is_zero(w.e.basis_product(1, 0, 1, 0)), "y^2" + tag(n, p));
        o.require(w.e.basis_product(4, 0, 4, 0) == unit(8, 0, 1), "gamma^2" + tag(n, p));
        for (int j = 1; j <= n; ++j) {
            o.require(w.e.basis_product(2, j - 1, 4, 0) == unit(6, top, (j % 2 ? -1 : 1) * (n - j + 1)),
                      "z_j gamma" + tag(n, p));
            o.require(w.e.basis_product(3, j - 1, 4, 0) == unit(7, top, j == 1), "t_j gamma" + tag(n, p));
            for (int k = 1; k <= n; ++k)
                o.require(w.e.basis_product(2, k - 1, 3, j - 1) == unit(5, top, j == k), "z_k t_j" + tag(n, p));
        }
        for (int q = 1; q + 3 <= 12; q += 2)
            for (std::size_t a = 0; a < w.b.size(3); ++a)
                for (std::size_t c = 0; c < w.b.size(q); ++c)
                    o.require(is_zero(w.e.basis_product(3, a, q, c)), "HH^3 HH^odd" + tag(n, p));
    }
    return o;
}

std::vector<std::pair<int, std::uint32_t>> presentation_grid()
{
    std::vector<std::pair<int, std::uint32_t>> g;
    for (int n = 1; n <= 4; ++n)
        for (std::uint32_t p : {0u, 3u, 5u})
            if (p == 0 || (2 * n + 1) % p != 0) g.emplace_back(n, p);
    for (auto m : std::vector<std::pair<int, std::uint32_t>>{{2, 5}, {3, 7}, {7, 3}}) g.push_back(m);
    return g;
}

Outcome presentations()
{
    Outcome o;
    auto t0 = Clock::now();
    for (auto [n, p] : presentation_grid()) {
        auto ti = Clock::now();
        Full w(n, p);
        auto spec = presentation_spec(n, w.A.field());
        bool modular = p != 0 && (2 * n + 1) % p == 0;
        o.require((spec.regime == Regime::modular) == modular, "regime" + tag(n, p));
        auto rep = verify(spec, w.e);
        for (const auto& r : rep.relations) o.require(r.holds, r.text + tag(n, p));
        for (const auto& a : rep.audit)
            o.require(a.ok() && a.expected == expected_hh(n)[a.degree], "audit degree " + std::to_string(a.degree) + tag(n, p));
        if (n == 7) o.require(seconds_since(ti) < 600, "n=7 over 10 minutes");
    }
    if (o.pass) o.note = std::to_string(presentation_grid().size()) + " pairs in " + std::to_string(seconds_since(t0)).substr(0, 5) + " s";
    return o;
}

Outcome stable()
{
    Outcome o;
    for (auto [n, p] : presentation_grid()) {
        Full w(n, p);
        auto rep = stable_check(w.e);
        o.require(rep.bijective, "h not bijective" + tag(n, p));
        o.require(rep.kernel_is_socle, "degree 0 kernel" + tag(n, p));
    }
    return o;
}

Outcome oracle()
{
    Outcome o;
    {
        Window w(1, 0);
        auto t0 = Clock::now();
        auto c = compare(w.A, w.c, 6);
        double s = seconds_since(t0);
        o.require(c.equal && c.squares_zero, "n=1 mismatch");
        o.require(s < 5, "n=1 took " + std::to_string(s) + " s");
    }
    {
        Window w(2, 0);
        auto t0 = Clock::now();
        auto c = compare(w.A, w.c, 3);
        double s = seconds_since(t0);
        o.require(c.equal && c.squares_zero, "n=2 mismatch");
        o.require(s < 60, "n=2 took " + std::to_string(s) + " s");
        OracleOptions bad;
        bad.perturb_degree = 2;
        auto neg = compare(w.A, w.c, 3, bad);
        o.require(!neg.equal && neg.first_mismatch == 2, "perturbation not detected");
    }
    return o;
}

Outcome cyclic()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n) {
        Window w(n, 0);
        auto rep = cyclic_dims(w.A, homology_dims(w.r, 12), 12);
        o.require(rep.pass, "HC" + tag(n, 0));
        for (int i = 0; i <= 12; ++i) {
            o.require(rep.hc[i] == (i % 2 ? 0u : static_cast<std::size_t>(2 * n)), "HC_" + std::to_string(i) + tag(n, 0));
            o.require(rep.connes_image[i] == (i % 2 ? 0 : n), "B^" + std::to_string(i) + tag(n, 0));
        }
    }
    return o;
}

std::string strip_header(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    std::string line, out;
    bool skipping = false;
    while (std::getline(in, line)) {
        if (line == "  \"header\": {") {
            skipping = true;
            continue;
        }
        if (skipping) {
            if (line == "  }," || line == "  }") skipping = false;
            continue;
        }
        out += line + "\n";
    }
    return out;
}

Outcome determinism(const std::string& cli)
{
    Outcome o;
    if (cli.empty()) {
        o.require(false, "no CLI path given");
        return o;
    }
    fs::path base = fs::temp_directory_path() / ("preproj_acceptance_" + std::to_string(::getpid()));
    std::vector<fs::path> dirs{base / "a", base / "b"};
    for (const auto& d : dirs) {
        std::string cmd = "\"" + cli + "\" run --n 1..3 --char 0,3,5 --out \"" + d.string() + "\" > /dev/null";
        o.require(std::system(cmd.c_str()) == 0, "run failed");
    }
    std::size_t files = 0;
    if (fs::exists(dirs[0]))
        for (const auto& f : fs::directory_iterator(dirs[0])) {
            ++files;
            fs::path other = dirs[1] / f.path().filename();
            o.require(fs::exists(other), "missing " + other.string());
            if (fs::exists(other))
                o.require(strip_header(f.path()) == strip_header(other), "bytes differ in " + f.path().filename().string());
        }
    o.require(files == 9, "expected 9 certificates");
    fs::remove_all(base);
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    std::string cli = argc > 1 ? argv[1] : "";
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"dimensions of HH^i on the grid", dimensions},
        {"homology equals cohomology", duality},
        {"Cartan determinant", cartan},
        {"algebra sanity and identities", algebra_sanity},
        {"dualizability and the unsigned variant", dualizability},
        {"resolution exactness and explicit differentials", resolution},
        {"C matrix", cmatrix},
        {"product identities", product_identities},
        {"presentations", presentations},
        {"stable ring", stable},
        {"bar complex oracle", oracle},
        {"cyclic homology", cyclic},
        {"certificate determinism", [&] { return determinism(cli); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << ". " << criteria[i].first;
        if (!o.note.empty()) line << ": " << o.note;
        line << " [" << std::to_string(seconds_since(t0)).substr(0, 5) << " s]";
        std::cout << line.str() << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
