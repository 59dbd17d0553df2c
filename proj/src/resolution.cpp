#include "preproj/resolution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace preproj {

ProjectiveBimodule vertex_module(const Algebra& A)
{
    ProjectiveBimodule P;
    for (int i = 1; i <= A.n(); ++i) P.summands.push_back({i, i, -1});
    return P;
}

ProjectiveBimodule arrow_module(const Algebra& A)
{
    ProjectiveBimodule Q;
    Q.arrow_indexed = true;
    for (const auto& a : A.arrows()) Q.summands.push_back({a.source, a.target, a.id});
    return Q;
}

void BimoduleElement::add(int summand, int left, int right, const Scalar& c)
{
    if (c.is_zero()) return;
    const std::uint64_t dim = alg_->dim();
    std::uint64_t key = (static_cast<std::uint64_t>(summand) * dim + left) * dim + right;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void BimoduleElement::add(int summand, SignedMono left, SignedMono right, const Scalar& c)
{
    if (left.zero() || right.zero()) return;
    add(summand, left.id, right.id, left.sign * right.sign > 0 ? c : -c);
}

std::vector<Term> BimoduleElement::terms() const
{
    const std::uint64_t dim = alg_->dim();
    std::vector<std::pair<std::uint64_t, Scalar>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (const auto& [key, c] : sorted)
        out.push_back({c, static_cast<int>(key / (dim * dim)), static_cast<int>((key / dim) % dim),
                       static_cast<int>(key % dim)});
    return out;
}

BimoduleMap tau_twist(const Algebra& A, const BimoduleMap& m)
{
    BimoduleMap t = m;
    for (auto& vals : t.values)
        for (auto& term : vals)
            if (A.mono(term.right).degree % 2) term.coef = -term.coef;
    return t;
}

void apply_to(const Algebra& A, const BimoduleMap& m, int s, SignedMono x, SignedMono y, const Scalar& c,
              BimoduleElement& out)
{
    if (x.zero() || y.zero() || c.is_zero()) return;
    for (const auto& term : m.values[s]) {
        SignedMono l = A.product(x.id, term.left);
        if (l.zero()) continue;
        SignedMono r = A.product(term.right, y.id);
        if (r.zero()) continue;
        l.sign *= x.sign;
        r.sign *= y.sign;
        out.add(term.target, l, r, c * term.coef);
    }
}

BimoduleMap compose(const Algebra& A, const BimoduleMap& g, const BimoduleMap& f)
{
    BimoduleMap h;
    h.source = f.source;
    h.target = g.target;
    h.shift = f.shift + g.shift;
    for (const auto& vals : f.values) {
        BimoduleElement e(A);
        for (const auto& term : vals) apply_to(A, g, term.target, {1, term.left}, {1, term.right}, term.coef, e);
        h.values.push_back(e.terms());
    }
    return h;
}

bool is_zero_map(const BimoduleMap& m)
{
    for (const auto& v : m.values)
        if (!v.empty()) return false;
    return true;
}

bool same_map(const Algebra& A, const BimoduleMap& f, const BimoduleMap& g)
{
    if (f.values.size() != g.values.size()) return false;
    for (std::size_t s = 0; s < f.values.size(); ++s) {
        BimoduleElement e(A);
        for (const auto& t : f.values[s]) e.add(t.target, t.left, t.right, t.coef);
        for (const auto& t : g.values[s]) e.add(t.target, t.left, t.right, -t.coef);
        if (!e.empty()) return false;
    }
    return true;
}

std::size_t flat_dim(const Algebra& A, const ProjectiveBimodule& P)
{
    std::size_t d = 0;
    for (const auto& S : P.summands) d += A.ending_at(S.s).size() * A.starting_at(S.t).size();
    return d;
}

namespace {

using BlockKey = std::tuple<int, int, int>;

long long integer_coef(const Scalar& c)
{
    auto v = c.as_integer();
    if (!v) throw std::logic_error("non-integral differential coefficient");
    return *v;
}

} // namespace

std::size_t flat_rank(const Algebra& A, const BimoduleMap& m)
{
    std::map<BlockKey, std::vector<SparseRow>> blocks;
    for (std::size_t s = 0; s < m.source.summands.size(); ++s) {
        const Summand& S = m.source.summands[s];
        for (int l : A.ending_at(S.s))
            for (int r : A.starting_at(S.t)) {
                BimoduleElement e(A);
                apply_to(A, m, static_cast<int>(s), {1, l}, {1, r}, Scalar::one(A.field()), e);
                SparseRow row;
                for (const auto& [key, c] : e.raw()) row.emplace_back(static_cast<std::uint32_t>(key), integer_coef(c));
                if (row.empty()) continue;
                blocks[{A.mono(l).source, A.mono(r).target, A.mono(l).degree + A.mono(r).degree}].push_back(
                    std::move(row));
            }
    }
    std::size_t rk = 0;
    for (const auto& [key, rows] : blocks) rk += sparse_rank(A.field(), rows);
    return rk;
}

std::size_t multiplication_rank(const Algebra& A)
{
    std::map<BlockKey, std::vector<SparseRow>> blocks;
    for (int i = 1; i <= A.n(); ++i)
        for (int l : A.ending_at(i))
            for (int r : A.starting_at(i)) {
                SignedMono p = A.product(l, r);
                if (p.zero()) continue;
                blocks[{A.mono(l).source, A.mono(r).target, A.mono(l).degree + A.mono(r).degree}].push_back(
                    {{static_cast<std::uint32_t>(p.id), p.sign}});
            }
    std::size_t rk = 0;
    for (const auto& [key, rows] : blocks) rk += sparse_rank(A.field(), rows);
    return rk;
}

BimoduleMap make_delta(const Algebra& A)
{
    BimoduleMap d;
    d.source = arrow_module(A);
    d.target = vertex_module(A);
    d.shift = 1;
    const FieldSpec& f = A.field();
    for (const auto& a : A.arrows()) {
        int b = A.arrow_mono(a.id);
        d.values.push_back({{Scalar(f, 1), a.target - 1, b, A.vertex(a.target)},
                            {Scalar(f, -1), a.source - 1, A.vertex(a.source), b}});
    }
    return d;
}

BimoduleMap make_R(const Algebra& A)
{
    BimoduleMap d;
    d.source = vertex_module(A);
    d.target = arrow_module(A);
    d.shift = 1;
    const FieldSpec& f = A.field();
    for (int i = 1; i <= A.n(); ++i) {
        BimoduleElement e(A);
        for (const auto& a : A.arrows()) {
            if (a.source != i) continue;
            e.add(a.id, A.vertex(i), A.arrow_mono(a.bar), Scalar(f, 1));
            e.add(a.bar, A.arrow_mono(a.id), A.vertex(i), Scalar(f, 1));
        }
        d.values.push_back(e.terms());
    }
    return d;
}

BimoduleMap make_k(const Algebra& A, const NakayamaForm& form)
{
    BimoduleMap d;
    d.source = vertex_module(A);
    d.target = vertex_module(A);
    d.shift = A.top_degree();
    const FieldSpec& f = A.field();
    for (int i = 1; i <= A.n(); ++i) {
        BimoduleElement e(A);
        for (int x : A.starting_at(i)) {
            SignedMono xs = form.dual(x);
            int sign = (A.mono(x).degree % 2 ? -1 : 1) * xs.sign;
            e.add(A.mono(x).target - 1, x, xs.id, Scalar(f, sign));
        }
        d.values.push_back(e.terms());
    }
    return d;
}

Resolution Resolution::build(const Algebra& A, const NakayamaForm& f, int depth)
{
    if (depth < 3) throw std::invalid_argument("resolution depth must be at least 3");
    if (&f.algebra() != &A) throw std::invalid_argument("form belongs to a different algebra");
    Resolution r;
    r.alg_ = &A;
    r.P_ = vertex_module(A);
    r.Q_ = arrow_module(A);
    r.diff_.push_back(make_delta(A));
    r.diff_.push_back(make_R(A));
    r.diff_.push_back(make_k(A, f));
    for (int m = 4; m <= depth; ++m) r.diff_.push_back(tau_twist(A, r.diff_[m - 4]));
    return r;
}

ExactnessReport certify_exact(const Resolution& r)
{
    const Algebra& A = r.algebra();
    ExactnessReport rep;
    const BimoduleMap& d1 = r.differential(1);
    for (std::size_t s = 0; s < d1.values.size(); ++s) {
        AlgebraElement acc;
        for (const auto& t : d1.values[s]) {
            SignedMono p = A.product(t.left, t.right);
            if (!p.zero()) acc = A.add(acc, A.element(p.id), p.sign > 0 ? t.coef : -t.coef);
        }
        if (!acc.empty()) rep.augmentation_zero = false;
    }
    if (!rep.augmentation_zero) rep.failures.push_back("u o d^-1 != 0");
    for (int m = 1; m < r.depth(); ++m)
        if (!is_zero_map(compose(A, r.differential(m), r.differential(m + 1)))) {
            rep.squares_zero = false;
            rep.failures.push_back("d^-" + std::to_string(m) + " o d^-" + std::to_string(m + 1) + " != 0");
        }
    for (int m = 1; m + 6 <= r.depth(); ++m)
        if (!same_map(A, r.differential(m), r.differential(m + 6))) {
            rep.period_six = false;
            rep.failures.push_back("d^-" + std::to_string(m + 6) + " != d^-" + std::to_string(m));
        }
    std::vector<std::size_t> ranks(static_cast<std::size_t>(r.depth()) + 1);
    ranks[0] = multiplication_rank(A);
    if (ranks[0] != A.dim()) rep.failures.push_back("multiplication map not onto");
    for (int m = 1; m <= r.depth(); ++m) ranks[m] = flat_rank(A, r.differential(m));
    for (int m = 0; m < r.depth(); ++m) {
        ExactnessEntry e;
        e.index = m;
        e.dim = flat_dim(A, r.term(m));
        e.rank_out = ranks[m];
        e.rank_in = ranks[m + 1];
        if (!e.exact()) {
            rep.exact = false;
            rep.failures.push_back("not exact at P^-" + std::to_string(m));
        }
        rep.entries.push_back(e);
    }
    if (ranks[0] != A.dim()) rep.exact = false;
    return rep;
}

} // namespace preproj
