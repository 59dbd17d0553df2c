#include "preproj/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace preproj {

namespace {

struct RawMono {
    int source, target;
    std::vector<int> path;
    int sign;
};

std::vector<int> repeat(int arrow, int k) { return std::vector<int>(static_cast<std::size_t>(k), arrow); }

void append(std::vector<int>& dst, const std::vector<int>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

std::string path_name(const std::vector<Arrow>& arrows, const std::vector<int>& path, int source)
{
    if (path.empty()) return "e" + std::to_string(source);
    std::string out;
    for (std::size_t k = 0; k < path.size();) {
        std::size_t run = k;
        while (run < path.size() && path[run] == path[k]) ++run;
        if (!out.empty()) out += ' ';
        out += arrows[path[k]].name;
        if (run - k > 1) out += '^' + std::to_string(run - k);
        k = run;
    }
    return out;
}

} // namespace

Algebra Algebra::build(int n, const FieldSpec& field, SocleSign convention)
{
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    Algebra A;
    A.n_ = n;
    A.field_ = field;
    A.convention_ = convention;

    A.arrows_.push_back({0, 1, 1, 0, "eps"});
    for (int i = 1; i < n; ++i) A.arrows_.push_back({i, i, i + 1, n - 1 + i, "a" + std::to_string(i)});
    for (int i = 1; i < n; ++i) A.arrows_.push_back({n - 1 + i, i + 1, i, i, "abar" + std::to_string(i)});

    auto a_run = [&](int from, int to) { // a_from ... a_to
        std::vector<int> p;
        for (int k = from; k <= to; ++k) p.push_back(A.a(k));
        return p;
    };
    auto abar_run = [&](int from, int to) { // abar_from ... abar_to, descending
        std::vector<int> p;
        for (int k = from; k >= to; --k) p.push_back(A.abar(k));
        return p;
    };

    std::vector<RawMono> raw;
    for (int k = 0; k <= 2 * n - 1; ++k) raw.push_back({1, 1, repeat(A.eps(), k), 1});
    for (int j = 2; j <= n; ++j)
        for (int k = 0; k <= 2 * (n - j) + 1; ++k) {
            auto p = repeat(A.eps(), k);
            append(p, a_run(1, j - 1));
            raw.push_back({1, j, p, 1});
        }
    for (int i = 2; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            for (int m = j - 1; m <= n - 1; ++m) {
                auto p = a_run(i, m);
                append(p, abar_run(m, j));
                raw.push_back({i, j, p, 1});
            }
            for (int t = 0; t <= n - j; ++t) {
                auto p = abar_run(i - 1, 1);
                append(p, repeat(A.eps(), 2 * t + 1));
                append(p, a_run(1, j - 1));
                int sign = 1;
                if (i == j && t == n - j && convention == SocleSign::canonical && (i * (i - 1) / 2) % 2 == 1)
                    sign = -1;
                raw.push_back({i, j, p, sign});
            }
        }
    std::size_t upper = raw.size();
    for (std::size_t k = 0; k < upper; ++k) {
        const RawMono& r = raw[k];
        if (r.source == r.target) continue;
        std::vector<int> p(r.path.rbegin(), r.path.rend());
        for (int& x : p) x = A.arrows_[x].bar;
        raw.push_back({r.target, r.source, p, r.sign});
    }
    std::sort(raw.begin(), raw.end(), [](const RawMono& x, const RawMono& y) {
        return std::make_tuple(x.source, x.target, x.path.size()) < std::make_tuple(y.source, y.target, y.path.size());
    });

    for (std::size_t k = 0; k < raw.size(); ++k) {
        const RawMono& r = raw[k];
        int at = r.source;
        for (int x : r.path) {
            if (A.arrows_[x].source != at) throw std::logic_error("basis mismatch: path not composable");
            at = A.arrows_[x].target;
        }
        if (at != r.target) throw std::logic_error("basis mismatch: path endpoints");
        Monomial m;
        m.id = static_cast<int>(k);
        m.source = r.source;
        m.target = r.target;
        m.degree = static_cast<int>(r.path.size());
        m.path = r.path;
        m.sign = r.sign;
        m.name = (r.sign < 0 ? "-" : "") + path_name(A.arrows_, r.path, r.source);
        if (k > 0 && raw[k - 1].source == r.source && raw[k - 1].target == r.target &&
            raw[k - 1].path.size() == r.path.size())
            throw std::logic_error("basis mismatch: repeated degree");
        A.basis_.push_back(std::move(m));
    }

    const std::size_t dim = A.basis_.size();
    A.blocks_.assign(static_cast<std::size_t>(n * n), {});
    A.starting_.assign(n, {});
    A.ending_.assign(n, {});
    A.vertex_ids_.assign(n, -1);
    A.socle_ids_.assign(n, -1);
    A.arrow_ids_.assign(A.arrows_.size(), -1);
    for (const auto& m : A.basis_) {
        A.blocks_[(m.source - 1) * n + (m.target - 1)].push_back(m.id);
        A.starting_[m.source - 1].push_back(m.id);
        A.ending_[m.target - 1].push_back(m.id);
        if (m.degree == 0) A.vertex_ids_[m.source - 1] = m.id;
        if (m.degree == 2 * n - 1 && m.source == m.target) A.socle_ids_[m.source - 1] = m.id;
        if (m.degree == 1) A.arrow_ids_[m.path[0]] = m.id;
    }

    // left action of arrows, filled degree by degree
    const std::size_t na = A.arrows_.size();
    std::vector<SignedMono> left(na * dim);
    auto L = [&](int a, SignedMono b) -> SignedMono {
        if (b.zero()) return b;
        SignedMono r = left[a * dim + b.id];
        r.sign *= b.sign;
        return r;
    };
    for (const auto& ar : A.arrows_) left[ar.id * dim + A.vertex(ar.target)] = {1, A.arrow_ids_[ar.id]};

    auto value_of = [&](const std::vector<int>& path, std::size_t from, int end_vertex) {
        SignedMono v{1, A.vertex(end_vertex)};
        for (std::size_t k = path.size(); k-- > from;) v = L(path[k], v);
        return v;
    };

    for (int d = 2; d <= 2 * n; ++d) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                std::vector<std::pair<int, int>> span; // (arrow, basis id of degree d-1)
                for (const auto& ar : A.arrows_) {
                    if (ar.source != i) continue;
                    int b = A.find(ar.target, j, d - 1);
                    if (b >= 0) span.emplace_back(ar.id, b);
                }
                int target_id = A.find(i, j, d);
                if (span.empty()) {
                    if (target_id >= 0) throw std::logic_error("basis mismatch: element outside span");
                    continue;
                }
                auto index_of = [&](int a, int b) {
                    for (std::size_t k = 0; k < span.size(); ++k)
                        if (span[k].first == a && span[k].second == b) return static_cast<long>(k);
                    return -1L;
                };
                std::vector<Vector> cols;
                if (target_id >= 0) {
                    const Monomial& m = A.basis_[target_id];
                    SignedMono rest = value_of(m.path, 1, j);
                    if (rest.zero()) throw std::logic_error("basis mismatch: " + m.name + " vanishes");
                    long k = index_of(m.path[0], rest.id);
                    if (k < 0) throw std::logic_error("basis mismatch: " + m.name);
                    Vector v = zero_vector(field, span.size());
                    v[k] = Scalar(field, m.sign * rest.sign);
                    cols.push_back(v);
                }
                int q = A.find(i, j, d - 2);
                if (q >= 0) {
                    Vector v = zero_vector(field, span.size());
                    for (const auto& ar : A.arrows_) {
                        if (ar.source != i) continue;
                        SignedMono r = L(ar.bar, {1, q});
                        if (r.zero()) continue;
                        long k = index_of(ar.id, r.id);
                        if (k < 0) throw std::logic_error("basis mismatch: relation term");
                        v[k] += Scalar(field, r.sign);
                    }
                    cols.push_back(v);
                }
                Matrix M(field, span.size(), cols.size());
                for (std::size_t c = 0; c < cols.size(); ++c)
                    for (std::size_t r = 0; r < span.size(); ++r) M.at(r, c) = cols[c][r];
                Solver solver(M);
                if (solver.rank() != span.size() || solver.rank() != cols.size())
                    throw std::logic_error("basis mismatch at degree " + std::to_string(d) + " block (" +
                                           std::to_string(i) + "," + std::to_string(j) + ")");
                for (std::size_t k = 0; k < span.size(); ++k) {
                    Vector e = zero_vector(field, span.size());
                    e[k] = Scalar::one(field);
                    auto x = solver.solve(e);
                    SignedMono r;
                    if (target_id >= 0) {
                        auto s = (*x)[0].as_unit_sign();
                        if (!s) throw std::logic_error("basis mismatch: non-unit structure constant");
                        r = *s ? SignedMono{*s, target_id} : SignedMono{};
                    }
                    left[span[k].first * dim + span[k].second] = r;
                }
            }
    }

    A.table_.assign(dim * dim, SignedMono{});
    for (const auto& b : A.basis_)
        for (int c : A.starting_[b.target - 1]) {
            SignedMono v{1, c};
            for (std::size_t k = b.path.size(); k-- > 0 && !v.zero();) v = L(b.path[k], v);
            v.sign *= b.sign;
            A.table_[b.id * dim + c] = v;
        }
    return A;
}

int Algebra::find(int i, int j, int deg) const
{
    if (i < 1 || j < 1 || i > n_ || j > n_) return -1;
    for (int id : block(i, j))
        if (basis_[id].degree == deg) return id;
    return -1;
}

SignedMono Algebra::path_value(const std::vector<int>& path, int start_vertex) const
{
    SignedMono v{1, vertex(start_vertex)};
    for (int a : path) {
        if (v.zero()) break;
        if (basis_[v.id].target != arrows_[a].source) return {};
        SignedMono r = product(v.id, arrow_mono(a));
        r.sign *= v.sign;
        v = r;
    }
    return v;
}

AlgebraElement Algebra::unit() const
{
    AlgebraElement u;
    for (int i = 1; i <= n_; ++i) u.emplace(vertex(i), Scalar::one(field_));
    return u;
}

AlgebraElement Algebra::element(int id) const { return {{id, Scalar::one(field_)}}; }

AlgebraElement Algebra::multiply(const AlgebraElement& x, const AlgebraElement& y) const
{
    AlgebraElement out;
    for (const auto& [b, cb] : x)
        for (const auto& [c, cc] : y) {
            SignedMono p = product(b, c);
            if (p.zero()) continue;
            Scalar v = cb * cc;
            if (p.sign < 0) v = -v;
            auto it = out.find(p.id);
            if (it == out.end())
                out.emplace(p.id, v);
            else
                it->second += v;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

AlgebraElement Algebra::add(const AlgebraElement& x, const AlgebraElement& y, const Scalar& c) const
{
    AlgebraElement out = x;
    for (const auto& [id, v] : y) {
        auto it = out.find(id);
        if (it == out.end())
            out.emplace(id, c * v);
        else
            it->second += c * v;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

AlgebraElement Algebra::power(const AlgebraElement& x, int k) const
{
    AlgebraElement out = unit();
    for (int s = 0; s < k; ++s) out = multiply(out, x);
    return out;
}

std::vector<std::vector<long long>> Algebra::cartan_matrix() const
{
    std::vector<std::vector<long long>> c(n_, std::vector<long long>(n_, 0));
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) c[i - 1][j - 1] = static_cast<long long>(block(i, j).size());
    return c;
}

AlgebraElement Algebra::x0() const
{
    AlgebraElement x;
    for (int i = 1; i < n_; ++i) {
        SignedMono v = path_value({a(i), abar(i)}, i);
        if (v.zero()) continue;
        x = add(x, element(v.id), Scalar(field_, (i % 2 ? -1 : 1) * v.sign));
    }
    return x;
}

std::vector<AlgebraElement> Algebra::center_basis() const
{
    std::vector<AlgebraElement> out;
    AlgebraElement x = x0();
    for (int k = 0; k < n_; ++k) out.push_back(power(x, k));
    for (int i = 1; i <= n_; ++i) out.push_back(element(socle(i)));
    return out;
}

std::size_t Algebra::center_dimension() const
{
    // one sparse row per basis element b: the coordinates of [b, a] over (arrow, result id)
    std::vector<SparseRow> rows;
    for (const auto& b : basis_) {
        SparseRow row;
        for (const auto& ar : arrows_) {
            SignedMono ba = product(b.id, arrow_mono(ar.id));
            SignedMono ab = product(arrow_mono(ar.id), b.id);
            std::map<int, long long> acc;
            if (!ba.zero()) acc[ba.id] += ba.sign;
            if (!ab.zero()) acc[ab.id] -= ab.sign;
            for (const auto& [id, v] : acc)
                if (v) row.emplace_back(static_cast<std::uint32_t>(ar.id * dim() + id), v);
        }
        rows.push_back(row);
    }
    return dim() - sparse_rank(field_, rows);
}

std::vector<AlgebraElement> Algebra::socle_basis() const
{
    std::vector<AlgebraElement> out;
    for (int i = 1; i <= n_; ++i) out.push_back(element(socle(i)));
    return out;
}

std::string Algebra::element_str(const AlgebraElement& x) const
{
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [id, c] : x) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*[" + basis_[id].name + "]";
    }
    return out;
}

long long determinant(const std::vector<std::vector<long long>>& m)
{
    std::size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[s], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    mpz_class d = a[n - 1][n - 1] * sign;
    return d.get_si();
}

} // namespace preproj

namespace preproj {

namespace {

std::vector<int> arrow_run(const Algebra& A, bool bar, int from, int to)
{
    std::vector<int> p;
    if (from <= to)
        for (int k = from; k <= to; ++k) p.push_back(bar ? A.abar(k) : A.a(k));
    else
        for (int k = from; k >= to; --k) p.push_back(bar ? A.abar(k) : A.a(k));
    return p;
}

std::vector<int> cat(std::vector<int> a, const std::vector<int>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

SignedMono scaled(SignedMono m, int sign)
{
    m.sign *= sign;
    return m;
}

} // namespace

StructureReport check_structure(const Algebra& A, bool full_associativity)
{
    StructureReport r;
    const int n = A.n();
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        r.failures.push_back(what);
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::set<int> seen;
            for (int b : A.block(i, j))
                if (!seen.insert(A.mono(b).degree).second)
                    fail(r.graded_pieces, "two monomials of one degree in e" + std::to_string(i) + " B e" + std::to_string(j));
            int lo = std::min(i, j), hi = std::max(i, j);
            std::set<int> expect;
            for (int d = hi - lo; d <= 2 * n - (lo + hi); d += 2) expect.insert(d);
            for (int d = lo + hi - 1; d <= lo + hi + 2 * (n - hi) - 1; d += 2) expect.insert(d);
            if (seen != expect) fail(r.degree_sets, "degree set of e" + std::to_string(i) + " B e" + std::to_string(j));
        }
    const std::vector<int> eps2{A.eps(), A.eps()};
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 0; k <= 2 * n; ++k) {
                std::vector<int> path = i > 1 ? arrow_run(A, true, i - 1, 1) : std::vector<int>{};
                for (int e = 0; e < 2 * k; ++e) path.push_back(A.eps());
                if (j > 1) path = cat(path, arrow_run(A, false, 1, j - 1));
                if (!A.path_value(path, i).zero() && k > n - i - j + 1)
                    fail(r.vanishing_bound, "nonzero beyond the bound at i=" + std::to_string(i) + " j=" +
                                                std::to_string(j) + " k=" + std::to_string(k));
            }
    for (int j = 2; j <= n; ++j) {
        auto lhs = A.path_value(cat(arrow_run(A, false, 1, j - 1), arrow_run(A, true, j - 1, 1)), 1);
        std::vector<int> e(static_cast<std::size_t>(2 * (j - 1)), A.eps());
        auto rhs = scaled(A.path_value(e, 1), (j * (j - 1) / 2) % 2 ? -1 : 1);
        if (lhs.zero() || !(lhs == rhs)) fail(r.identity_loop, "loop identity at j=" + std::to_string(j));

        auto lhs4 = A.path_value(cat(arrow_run(A, false, 1, j - 1), {A.abar(j - 1)}), 1);
        std::vector<int> p4 = eps2;
        if (j > 2) p4 = cat(p4, arrow_run(A, false, 1, j - 2));
        auto rhs4 = scaled(A.path_value(p4, 1), (j - 1) % 2 ? -1 : 1);
        if (!(lhs4 == rhs4)) fail(r.identity_turn, "turn identity at j=" + std::to_string(j));
    }
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) {
            auto lhs = A.path_value(cat({A.abar(i)}, arrow_run(A, false, i, j)), i + 1);
            SignedMono rhs; // a_n = 0
            if (j + 1 < n) rhs = scaled(A.path_value(cat(arrow_run(A, false, i + 1, j + 1), {A.abar(j + 1)}), i + 1),
                                        (j - i + 1) % 2 ? -1 : 1);
            if (!(lhs == rhs)) fail(r.identity_shift, "shift identity at i=" + std::to_string(i) + " j=" + std::to_string(j));
        }
    if (full_associativity)
        for (const auto& b : A.basis())
            for (const auto& c : A.basis()) {
                if (b.target != c.source) continue;
                SignedMono bc = A.product(b.id, c.id);
                for (int d : A.starting_at(c.target)) {
                    SignedMono left, right;
                    if (!bc.zero()) left = scaled(A.product(bc.id, d), bc.sign);
                    SignedMono cd = A.product(c.id, d);
                    if (!cd.zero()) right = scaled(A.product(b.id, cd.id), cd.sign);
                    if (!(left == right)) {
                        fail(r.associative, "associativity at (" + b.name + ", " + c.name + ", " + A.mono(d).name + ")");
                        return r;
                    }
                }
            }
    return r;
}

} // namespace preproj
