#include "preproj/oracle.hpp"

#include <future>
#include <map>
#include <random>

namespace preproj {

BudgetExceeded::BudgetExceeded(int degree, std::uint64_t size, std::uint64_t budget)
    : std::runtime_error("budget exceeded at degree " + std::to_string(degree) + ": " + std::to_string(size) +
                         " > " + std::to_string(budget)),
      degree_(degree)
{
}

namespace {

constexpr std::uint32_t screen_prime = 2147483629u;

// d^k : C^k -> C^{k+1}, rows indexed by coordinates of C^{k+1}, grouped by weight
struct BarDifferential {
    std::map<std::vector<int>, std::vector<SparseRow>> blocks;
    std::vector<std::pair<std::uint64_t, SparseRow>> rows; // (row coordinate, entries)
};

struct Bar {
    const Algebra& A;
    std::vector<int> reduced;        // reduced index -> monomial id
    std::vector<int> to_reduced;     // monomial id -> reduced index or -1
    std::vector<std::vector<int>> weight; // per monomial: internal degree, then Z^{Q_0} coordinates

    explicit Bar(const Algebra& A_) : A(A_), to_reduced(A_.dim(), -1)
    {
        int drop = A.vertex(A.n());
        for (std::size_t b = 0; b < A.dim(); ++b) {
            if (static_cast<int>(b) != drop) {
                to_reduced[b] = static_cast<int>(reduced.size());
                reduced.push_back(static_cast<int>(b));
            }
            const Monomial& m = A.mono(static_cast<int>(b));
            std::vector<int> w(static_cast<std::size_t>(A.n()) + 1, 0);
            w[0] = m.degree;
            w[m.target] += 1;
            w[m.source] -= 1;
            weight.push_back(w);
        }
    }

    std::uint64_t rdim() const { return reduced.size(); }

    // class of sign * m in the quotient by the unit: list of (reduced index, coefficient)
    void project(int sign, int m, std::vector<std::pair<int, int>>& out) const
    {
        out.clear();
        if (to_reduced[m] >= 0) {
            out.emplace_back(to_reduced[m], sign);
            return;
        }
        for (int i = 1; i < A.n(); ++i) out.emplace_back(to_reduced[A.vertex(i)], -sign);
    }

    BarDifferential build(int k) const
    {
        BarDifferential d;
        const std::uint64_t rd = rdim(), dim = A.dim();
        std::vector<int> a(static_cast<std::size_t>(k) + 1, 0);
        std::vector<std::pair<int, int>> proj;
        std::uint64_t tuples = 1;
        for (int i = 0; i <= k; ++i) tuples *= rd;
        auto col = [&](const std::vector<int>& args, int out) {
            std::uint64_t c = 0;
            for (int x : args) c = c * rd + static_cast<std::uint64_t>(x);
            return static_cast<std::uint32_t>(c * dim + static_cast<std::uint64_t>(out));
        };
        std::vector<int> args(static_cast<std::size_t>(k));
        for (std::uint64_t code = 0; code < tuples; ++code) {
            std::uint64_t rest = code;
            for (int i = k; i >= 0; --i) {
                a[i] = static_cast<int>(rest % rd);
                rest /= rd;
            }
            std::vector<int> win(static_cast<std::size_t>(A.n()) + 1, 0);
            for (int i = 0; i <= k; ++i)
                for (std::size_t t = 0; t < win.size(); ++t) win[t] += weight[reduced[a[i]]][t];
            for (std::size_t o = 0; o < dim; ++o) {
                std::map<std::uint32_t, long long> row;
                int oid = static_cast<int>(o);
                // a_0 f(a_1..a_k)
                {
                    for (int i = 0; i < k; ++i) args[i] = a[i + 1];
                    int lm = reduced[a[0]];
                    for (std::size_t c = 0; c < dim; ++c) {
                        SignedMono p = A.product(lm, static_cast<int>(c));
                        if (!p.zero() && p.id == oid) row[col(args, static_cast<int>(c))] += p.sign;
                    }
                }
                // sum (-1)^{i+1} f(.., a_i a_{i+1}, ..)
                for (int i = 0; i < k; ++i) {
                    SignedMono p = A.product(reduced[a[i]], reduced[a[i + 1]]);
                    if (p.zero()) continue;
                    int s = (i + 1) % 2 ? -1 : 1;
                    project(s * p.sign, p.id, proj);
                    for (int j = 0, m = 0; j <= k; ++j) {
                        if (j == i + 1) continue;
                        args[m++] = a[j];
                    }
                    for (auto [r, cf] : proj) {
                        args[i] = r;
                        row[col(args, oid)] += cf;
                    }
                }
                // (-1)^{k+1} f(a_0..a_{k-1}) a_k
                {
                    for (int i = 0; i < k; ++i) args[i] = a[i];
                    int s = (k + 1) % 2 ? -1 : 1;
                    int rm = reduced[a[k]];
                    for (std::size_t c = 0; c < dim; ++c) {
                        SignedMono p = A.product(static_cast<int>(c), rm);
                        if (!p.zero() && p.id == oid) row[col(args, static_cast<int>(c))] += s * p.sign;
                    }
                }
                SparseRow sr;
                for (auto [c, v] : row)
                    if (v) sr.emplace_back(c, v);
                if (sr.empty()) continue;
                std::vector<int> w = weight[oid];
                for (std::size_t t = 0; t < w.size(); ++t) w[t] -= win[t];
                d.rows.emplace_back(code * dim + o, sr);
                d.blocks[w].push_back(std::move(sr));
            }
        }
        return d;
    }
};

std::size_t block_rank(const FieldSpec& f, const BarDifferential& d)
{
    std::size_t r = 0;
    for (const auto& [w, rows] : d.blocks) r += sparse_rank(f, rows);
    return r;
}

// d^{k} d^{k-1} = 0 on random vectors modulo the screen prime
bool squares_vanish(const BarDifferential& first, const BarDifferential& second, std::uint64_t src_dim,
                    std::uint64_t mid_dim)
{
    const std::uint64_t p = screen_prime;
    auto norm = [&](long long v) { return static_cast<std::uint64_t>(((v % (long long)p) + (long long)p) % (long long)p); };
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 2; ++trial) {
        std::vector<std::uint64_t> x(src_dim);
        for (auto& v : x) v = rng() % p;
        std::vector<std::uint64_t> y(mid_dim, 0);
        for (const auto& [r, row] : first.rows) {
            std::uint64_t acc = 0;
            for (auto [c, v] : row) acc = (acc + norm(v) * x[c]) % p;
            y[r] = acc;
        }
        for (const auto& [r, row] : second.rows) {
            std::uint64_t acc = 0;
            for (auto [c, v] : row) acc = (acc + norm(v) * y[c]) % p;
            if (acc) return false;
        }
    }
    return true;
}

} // namespace

OracleResult bar_dims(const Algebra& A, int upto, const OracleOptions& opt)
{
    Bar bar(A);
    const std::uint64_t rd = bar.rdim(), dim = A.dim();
    std::vector<std::uint64_t> cdim;
    std::uint64_t s = dim;
    for (int k = 0; k <= upto + 1; ++k) {
        if (s > opt.budget || s > UINT32_MAX) throw BudgetExceeded(std::max(k - 1, 0), s, opt.budget);
        cdim.push_back(s);
        s *= rd;
    }
    std::vector<BarDifferential> d(static_cast<std::size_t>(upto) + 1);
    auto make = [&](int k) { return k == opt.perturb_degree ? BarDifferential{} : bar.build(k); };
    unsigned threads = std::max(1u, opt.threads);
    for (int k0 = 0; k0 <= upto; k0 += static_cast<int>(threads)) {
        std::vector<std::future<BarDifferential>> jobs;
        for (int k = k0; k <= upto && k < k0 + static_cast<int>(threads); ++k)
            jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, make, k));
        for (int k = k0; k < k0 + static_cast<int>(jobs.size()); ++k) d[k] = jobs[k - k0].get();
    }

    OracleResult res;
    FieldSpec screen(screen_prime);
    std::vector<std::size_t> rk(static_cast<std::size_t>(upto) + 1), rk_screen(rk.size());
    for (int k = 0; k <= upto; ++k) rk_screen[k] = block_rank(A.field().rational() ? screen : A.field(), d[k]);
    auto dims_from = [&](const std::vector<std::size_t>& r) {
        std::vector<std::size_t> out;
        for (int k = 0; k <= upto; ++k) out.push_back(cdim[k] - r[k] - (k ? r[k - 1] : 0));
        return out;
    };
    res.screen_dims = dims_from(rk_screen);
    if (A.field().rational())
        for (int k = 0; k <= upto; ++k) rk[k] = block_rank(A.field(), d[k]);
    else
        rk = rk_screen;
    res.ranks = rk;
    res.dims = dims_from(rk);
    if (opt.check_squares)
        for (int k = 1; k <= upto; ++k)
            if (!squares_vanish(d[k - 1], d[k], cdim[k - 1], cdim[k])) res.squares_zero = false;
    return res;
}

OracleComparison compare(const Algebra& A, const CochainComplex& c, int upto, const OracleOptions& opt)
{
    OracleComparison cmp;
    OracleResult r = bar_dims(A, upto, opt);
    cmp.oracle = r.dims;
    cmp.squares_zero = r.squares_zero;
    cmp.resolution = hh_dims(c, upto);
    for (int k = 0; k <= upto; ++k)
        if (cmp.oracle[k] != cmp.resolution[k]) {
            cmp.equal = false;
            if (cmp.first_mismatch < 0) cmp.first_mismatch = k;
        }
    return cmp;
}

} // namespace preproj
