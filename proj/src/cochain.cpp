#include "preproj/cochain.hpp"

#include <stdexcept>

namespace preproj {

CochainComplex CochainComplex::skeleton(const Algebra& A, int maxdeg)
{
    if (maxdeg < 1) throw std::invalid_argument("maxdeg must be positive");
    CochainComplex c;
    c.alg_ = &A;
    ProjectiveBimodule P = vertex_module(A), Q = arrow_module(A);
    for (int i = 0; i <= maxdeg; ++i) {
        const ProjectiveBimodule& T = i % 3 == 1 ? Q : P;
        std::vector<CochainCoord> coords;
        for (std::size_t s = 0; s < T.summands.size(); ++s)
            for (int m : A.block(T.summands[s].s, T.summands[s].t)) coords.push_back({static_cast<int>(s), m});
        c.spaces_.push_back(std::move(coords));
    }
    return c;
}

int CochainComplex::index_of(int i, int summand, int mono) const
{
    const auto& sp = spaces_.at(i);
    // coordinates are sorted by (summand, mono)
    std::size_t lo = 0, hi = sp.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (sp[mid].summand < summand || (sp[mid].summand == summand && sp[mid].mono < mono))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == sp.size() || sp[lo].summand != summand || sp[lo].mono != mono) return -1;
    return static_cast<int>(lo);
}

CochainComplex CochainComplex::dualized(const Resolution& r, int maxdeg)
{
    if (r.depth() < maxdeg) throw std::invalid_argument("resolution window too short");
    const Algebra& A = r.algebra();
    CochainComplex c = skeleton(A, maxdeg);
    for (int i = 0; i < maxdeg; ++i) {
        const BimoduleMap& d = r.differential(i + 1);
        Matrix m(A.field(), c.dim(i + 1), c.dim(i));
        for (std::size_t s = 0; s < d.values.size(); ++s)
            for (const auto& t : d.values[s]) {
                const Summand& T = d.target.summands[t.target];
                for (int w : A.block(T.s, T.t)) {
                    SignedMono xw = A.product(t.left, w);
                    if (xw.zero()) continue;
                    SignedMono p = A.product(xw.id, t.right);
                    if (p.zero()) continue;
                    int row = c.index_of(i + 1, static_cast<int>(s), p.id);
                    int col = c.index_of(i, t.target, w);
                    if (row < 0 || col < 0) throw std::logic_error("cochain coordinate out of range");
                    Scalar v = xw.sign * p.sign > 0 ? t.coef : -t.coef;
                    m.at(row, col) += v;
                }
            }
        c.diff_.push_back(std::move(m));
    }
    return c;
}

CochainComplex CochainComplex::explicit_formulas(const Algebra& A, int maxdeg, RtauSign sign)
{
    CochainComplex c = skeleton(A, maxdeg);
    const FieldSpec& f = A.field();
    auto cartan = A.cartan_matrix();
    for (int i = 0; i < maxdeg; ++i) {
        Matrix m(f, c.dim(i + 1), c.dim(i));
        auto put = [&](int summand, SignedMono p, int col, int coef) {
            if (p.zero()) return;
            int row = c.index_of(i + 1, summand, p.id);
            if (row < 0) throw std::logic_error("cochain coordinate out of range");
            m.at(row, col) += Scalar(f, coef * p.sign);
        };
        int kind = i % 6;
        for (std::size_t col = 0; col < c.dim(i); ++col) {
            const CochainCoord& x = c.basis(i)[col];
            int mono = x.mono;
            int cl = static_cast<int>(col);
            if (kind == 0 || kind == 3) {
                // delta*(c) = a_{i-1}c - c abar_{i-1} + abar_i c - c a_i ; the tau version has all signs +
                int v = x.summand + 1;
                int minus = kind == 0 ? -1 : 1;
                for (const auto& ar : A.arrows()) {
                    if (ar.target == v) put(ar.id, A.product(A.arrow_mono(ar.id), mono), cl, 1);
                    if (ar.source == v) put(ar.id, A.product(mono, A.arrow_mono(ar.id)), cl, minus);
                }
            } else if (kind == 1 || kind == 4) {
                // R*(p) = p abar + abar p ; R_tau*(p) = abar p - p abar
                const Arrow& ar = A.arrows()[x.summand];
                int right = kind == 1 ? 1 : (sign == RtauSign::dualized ? -1 : 1);
                int left = kind == 1 ? 1 : (sign == RtauSign::dualized ? 1 : -1);
                put(ar.source - 1, A.product(mono, A.arrow_mono(ar.bar)), cl, right);
                put(ar.target - 1, A.product(A.arrow_mono(ar.bar), mono), cl, left);
            } else if (kind == 5) {
                // k_tau*(e_t) = - sum_j dim(e_j Lambda e_t) w_j
                if (A.mono(mono).degree != 0) continue;
                int t = x.summand + 1;
                for (int j = 1; j <= A.n(); ++j)
                    put(j - 1, {1, A.socle(j)}, cl, -static_cast<int>(cartan[j - 1][t - 1]));
            }
            // kind == 2: k* vanishes
        }
        c.diff_.push_back(std::move(m));
    }
    return c;
}

CochainComplex CochainComplex::build(const Resolution& r, int maxdeg)
{
    CochainComplex e = explicit_formulas(r.algebra(), maxdeg);
    CochainComplex d = dualized(r, maxdeg);
    for (int i = 0; i < maxdeg; ++i)
        if (!(e.differential(i) == d.differential(i)))
            throw std::logic_error("complex mismatch at degree " + std::to_string(i));
    return e;
}

Vector CochainComplex::vector_from(int i, const std::vector<AlgebraElement>& components) const
{
    Vector v = zero_vector(alg_->field(), dim(i));
    for (std::size_t s = 0; s < components.size(); ++s)
        for (const auto& [id, c] : components[s]) {
            int k = index_of(i, static_cast<int>(s), id);
            if (k < 0) throw std::invalid_argument("component outside its summand");
            v[k] += c;
        }
    return v;
}

std::vector<AlgebraElement> CochainComplex::components(int i, const Vector& v) const
{
    std::size_t summands = i % 3 == 1 ? alg_->arrows().size() : static_cast<std::size_t>(alg_->n());
    std::vector<AlgebraElement> out(summands);
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) out[basis(i)[k].summand][basis(i)[k].mono] = v[k];
    return out;
}

Vector CochainComplex::central_action(int i, const AlgebraElement& z, const Vector& v) const
{
    auto comps = components(i, v);
    for (auto& x : comps) x = alg_->multiply(z, x);
    return vector_from(i, comps);
}

std::vector<std::size_t> hh_dims(const CochainComplex& c, int upto)
{
    if (upto > c.maxdeg() - 1) throw std::invalid_argument("degree beyond the complex");
    std::vector<std::size_t> ranks;
    for (int i = 0; i <= upto; ++i) ranks.push_back(rank(c.differential(i)));
    std::vector<std::size_t> dims;
    for (int i = 0; i <= upto; ++i) dims.push_back(c.dim(i) - ranks[i] - (i ? ranks[i - 1] : 0));
    return dims;
}

std::vector<std::size_t> homology_dims(const Resolution& r, int upto)
{
    if (r.depth() < upto + 1) throw std::invalid_argument("resolution window too short");
    const Algebra& A = r.algebra();
    auto space_dim = [&](int m) {
        std::size_t d = 0;
        for (const auto& S : r.term(m).summands) d += A.block(S.t, S.s).size();
        return d;
    };
    std::vector<std::size_t> ranks(static_cast<std::size_t>(upto) + 2, 0);
    for (int m = 1; m <= upto + 1; ++m) {
        const BimoduleMap& d = r.differential(m);
        std::vector<SparseRow> rows;
        for (std::size_t s = 0; s < d.values.size(); ++s) {
            const Summand& S = d.source.summands[s];
            for (int z : A.block(S.t, S.s)) {
                std::map<std::uint32_t, long long> acc;
                for (const auto& t : d.values[s]) {
                    SignedMono yz = A.product(t.right, z);
                    if (yz.zero()) continue;
                    SignedMono p = A.product(yz.id, t.left);
                    if (p.zero()) continue;
                    auto c = t.coef.as_integer();
                    acc[static_cast<std::uint32_t>(t.target * A.dim() + p.id)] += *c * yz.sign * p.sign;
                }
                SparseRow row;
                for (const auto& [k, v] : acc)
                    if (v) row.emplace_back(k, v);
                rows.push_back(std::move(row));
            }
        }
        ranks[m] = sparse_rank(A.field(), rows);
    }
    std::vector<std::size_t> dims;
    for (int m = 0; m <= upto; ++m) dims.push_back(space_dim(m) - ranks[m] - ranks[m + 1]);
    return dims;
}

std::size_t commutator_quotient_dim(const Algebra& A)
{
    std::vector<SparseRow> rows;
    for (const auto& b : A.basis())
        for (const auto& c : A.basis()) {
            if (b.id >= c.id) continue;
            std::map<std::uint32_t, long long> acc;
            SignedMono bc = A.product(b.id, c.id), cb = A.product(c.id, b.id);
            if (b.target == c.source && !bc.zero()) acc[bc.id] += bc.sign;
            if (c.target == b.source && !cb.zero()) acc[cb.id] -= cb.sign;
            SparseRow row;
            for (const auto& [k, v] : acc)
                if (v) row.emplace_back(k, v);
            if (!row.empty()) rows.push_back(std::move(row));
        }
    return A.dim() - sparse_rank(A.field(), rows);
}

CyclicReport cyclic_dims(const Algebra& A, const std::vector<std::size_t>& homology, int upto)
{
    if (!A.field().rational()) throw std::invalid_argument("unsupported characteristic");
    if (static_cast<int>(homology.size()) <= upto) throw std::invalid_argument("homology table too short");
    CyclicReport r;
    const long long n = A.n();
    long long prev = 0;
    for (int i = 0; i <= upto; ++i) {
        long long b = i == 0 ? static_cast<long long>(homology[0]) - n : static_cast<long long>(homology[i]) - prev;
        r.connes_image.push_back(b);
        long long hc = (i % 2 == 0 ? n : 0) + b;
        r.hc.push_back(hc < 0 ? 0 : static_cast<std::size_t>(hc));
        if (b != (i % 2 == 0 ? n : 0) || hc != (i % 2 == 0 ? 2 * n : 0)) r.pass = false;
        prev = b;
    }
    return r;
}

namespace {

std::string power_label(const std::string& sym, int k)
{
    if (k == 0) return "";
    if (k == 1) return sym;
    return sym + "^" + std::to_string(k);
}

std::string join_label(std::initializer_list<std::string> parts)
{
    std::string out;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out.empty() ? "1" : out;
}

} // namespace

CanonicalBasis::CanonicalBasis(const CochainComplex& c, int upto) : c_(&c)
{
    if (upto > c.maxdeg() - 1) throw std::invalid_argument("degree beyond the complex");
    const Algebra& A = c.algebra();
    const int n = A.n();
    const FieldSpec& f = A.field();
    AlgebraElement x0 = A.x0();
    std::vector<AlgebraElement> x0pow;
    for (int k = 0; k < n; ++k) x0pow.push_back(A.power(x0, k));
    auto by_vertex = [&](const AlgebraElement& z) {
        std::vector<AlgebraElement> comps(n);
        for (const auto& [id, v] : z) comps[A.mono(id).source - 1][id] = v;
        return comps;
    };
    auto vertex1 = [&](const AlgebraElement& z, int extra) {
        AlgebraElement e = A.multiply(z, extra ? A.element(A.arrow_mono(A.eps())) : A.element(A.vertex(1)));
        return e;
    };

    for (int i = 0; i <= upto; ++i) {
        std::vector<CanonicalClass> cls;
        int pattern = i == 0 ? 0 : (i - 1) % 6 + 1;
        int hq = i == 0 ? 0 : (i - 1) / 6;
        std::string hs = power_label("h", hq);
        if (pattern == 0) {
            for (int k = 0; k < n; ++k)
                cls.push_back({join_label({power_label("x0", k)}), c.vector_from(i, by_vertex(x0pow[k]))});
            for (int j = 1; j <= n; ++j) {
                std::vector<AlgebraElement> comps(n);
                comps[j - 1] = A.element(A.socle(j));
                cls.push_back({"x" + std::to_string(j), c.vector_from(i, comps)});
            }
        } else if (pattern == 1) {
            for (int k = 0; k < n; ++k) {
                std::vector<AlgebraElement> comps(A.arrows().size());
                for (const auto& ar : A.arrows()) comps[ar.id] = A.multiply(x0pow[k], A.element(A.arrow_mono(ar.id)));
                cls.push_back({join_label({power_label("x0", k), "y", hs}), c.vector_from(i, comps)});
            }
        } else if (pattern == 2 || pattern == 3) {
            for (int j = 1; j <= n; ++j) {
                std::vector<AlgebraElement> comps(n);
                comps[j - 1] = A.element(pattern == 2 ? A.vertex(j) : A.socle(j));
                cls.push_back({join_label({(pattern == 2 ? "z" : "t") + std::to_string(j), hs}), c.vector_from(i, comps)});
            }
        } else if (pattern == 4) {
            for (int k = 0; k < n; ++k) {
                std::vector<AlgebraElement> comps(A.arrows().size());
                comps[A.eps()] = vertex1(x0pow[k], 0);
                cls.push_back({join_label({power_label("x0", k), "gamma", hs}), c.vector_from(i, comps)});
            }
        } else if (pattern == 5) {
            for (int k = 0; k < n; ++k) {
                std::vector<AlgebraElement> comps(n);
                comps[0] = vertex1(x0pow[k], 1);
                cls.push_back({join_label({power_label("x0", k), "y", "gamma", hs}), c.vector_from(i, comps)});
            }
        } else {
            for (int k = 0; k < n; ++k)
                cls.push_back({join_label({power_label("x0", k), power_label("h", hq + 1)}),
                               c.vector_from(i, by_vertex(x0pow[k]))});
        }

        std::size_t dv = c.dim(i);
        std::size_t nb = i ? c.differential(i - 1).cols() : 0;
        Matrix M(f, dv, cls.size() + nb);
        for (std::size_t k = 0; k < cls.size(); ++k) {
            if (!is_zero(c.differential(i).apply(cls[k].cocycle)))
                throw std::logic_error("canonical basis failure: degree " + std::to_string(i) + ", " + cls[k].label +
                                       " is not a cocycle");
            for (std::size_t r = 0; r < dv; ++r) M.at(r, k) = cls[k].cocycle[r];
        }
        for (std::size_t k = 0; k < nb; ++k)
            for (std::size_t r = 0; r < dv; ++r) M.at(r, cls.size() + k) = c.differential(i - 1).at(r, k);
        std::size_t brank = i ? rank(c.differential(i - 1)) : 0;
        Solver s(M);
        std::size_t ker = dv - rank(c.differential(i));
        if (s.rank() != brank + cls.size() || ker != brank + cls.size())
            throw std::logic_error("canonical basis failure: degree " + std::to_string(i));
        classes_.push_back(std::move(cls));
        identify_.push_back(std::move(s));
        boundary_rank_.push_back(brank);
    }
}

bool CanonicalBasis::is_cocycle(int i, const Vector& v) const { return is_zero(c_->differential(i).apply(v)); }

bool CanonicalBasis::is_coboundary(int i, const Vector& v) const
{
    if (!is_cocycle(i, v)) return false;
    return is_zero(identify(i, v));
}

Vector CanonicalBasis::identify(int i, const Vector& cocycle) const
{
    if (!is_cocycle(i, cocycle)) throw std::logic_error("not a cocycle");
    auto x = identify_.at(i).solve(cocycle);
    if (!x) throw std::logic_error("identification failure");
    return Vector(x->begin(), x->begin() + static_cast<long>(classes_[i].size()));
}

ZModuleReport zmodule_checks(const CanonicalBasis& b)
{
    const CochainComplex& c = b.complex();
    const Algebra& A = c.algebra();
    ZModuleReport r;
    AlgebraElement x0 = A.x0();
    AlgebraElement xtop = A.power(x0, A.n() - 1);
    for (int i = 1; i <= b.upto(); ++i) {
        int pattern = (i - 1) % 6 + 1;
        for (const auto& cl : b.classes(i)) {
            for (int j = 1; j <= A.n(); ++j)
                if (!b.is_coboundary(i, c.central_action(i, A.element(A.socle(j)), cl.cocycle))) {
                    r.socle_kills = false;
                    r.failures.push_back("x" + std::to_string(j) + " * " + cl.label + " != 0");
                }
            if ((pattern == 2 || pattern == 3) && !b.is_coboundary(i, c.central_action(i, x0, cl.cocycle))) {
                r.x0_kills_23 = false;
                r.failures.push_back("x0 * " + cl.label + " != 0");
            }
        }
        if (pattern != 2 && pattern != 3) {
            const auto& gen = b.classes(i).front();
            if (b.is_coboundary(i, c.central_action(i, xtop, gen.cocycle))) {
                r.x0_power_nonzero = false;
                r.failures.push_back("x0^(n-1) * " + gen.label + " = 0");
            }
        }
    }
    return r;
}

} // namespace preproj
