#include "preproj/yoneda.hpp"

#include <algorithm>
#include <stdexcept>

namespace preproj {

YonedaEngine::YonedaEngine(const Resolution& r, const CanonicalBasis& basis, bool reversed_pivots)
    : alg_(&r.algebra()), res_(&r), basis_(&basis), reversed_(reversed_pivots)
{
    if (&basis.complex().algebra() != alg_) throw std::invalid_argument("basis belongs to a different algebra");
    if (r.depth() < basis.upto() + 1) throw std::invalid_argument("resolution window too short");
}

const YonedaEngine::System& YonedaEngine::system(int j, int s, int t, int degree) const
{
    int jr = j == 0 ? 0 : (j - 1) % 6 + 1;
    SystemKey key{jr, s, t, degree};
    auto it = systems_.find(key);
    if (it != systems_.end()) return *it->second;

    const Algebra& A = *alg_;
    const std::uint64_t dim = A.dim();
    auto sys = std::make_unique<System>();
    auto enumerate = [&](const ProjectiveBimodule& P, int deg, auto&& emit) {
        for (std::size_t ti = 0; ti < P.summands.size(); ++ti) {
            const Summand& T = P.summands[ti];
            for (int l : A.block(s, T.s)) {
                int r = A.find(T.t, t, deg - A.mono(l).degree);
                if (r >= 0) emit(static_cast<int>(ti), l, r);
            }
        }
    };
    enumerate(module(jr), degree, [&](int ti, int l, int r) { sys->columns.emplace_back(ti, l, r); });
    if (jr == 0) {
        int m = A.find(s, t, degree);
        if (m >= 0) sys->rows.emplace(static_cast<std::uint64_t>(m), 0);
    } else {
        const BimoduleMap& d = res_->differential(jr);
        enumerate(module(jr - 1), degree + d.shift, [&](int ti, int l, int r) {
            std::uint64_t k = (static_cast<std::uint64_t>(ti) * dim + l) * dim + r;
            sys->rows.emplace(k, sys->rows.size());
        });
    }
    Matrix M(A.field(), sys->rows.size(), sys->columns.size());
    for (std::size_t c = 0; c < sys->columns.size(); ++c) {
        auto [ti, l, r] = sys->columns[c];
        if (jr == 0) {
            SignedMono p = A.product(l, r);
            if (!p.zero()) M.at(sys->rows.at(p.id), c) += Scalar(A.field(), p.sign);
            continue;
        }
        BimoduleElement e(A);
        apply_to(A, res_->differential(jr), ti, {1, l}, {1, r}, Scalar::one(A.field()), e);
        for (const auto& [k, v] : e.raw()) {
            auto row = sys->rows.find(k);
            if (row == sys->rows.end()) throw std::logic_error("lifting system out of range");
            M.at(row->second, c) += v;
        }
    }
    sys->solver = Solver(M, reversed_);
    auto& ref = *sys;
    systems_.emplace(key, std::move(sys));
    return ref;
}

ChainMapSegment YonedaEngine::lift(int degree, const Vector& cocycle, int steps) const
{
    const Algebra& A = *alg_;
    const CochainComplex& c = basis_->complex();
    if (degree + steps > res_->depth()) throw std::invalid_argument("lift beyond the resolution window");
    if (!basis_->is_cocycle(degree, cocycle)) throw std::logic_error("not a cocycle");
    const std::uint64_t dim = A.dim();
    ChainMapSegment seg;
    seg.degree = degree;

    // solve one homogeneous piece; rhs keys are system row keys
    auto solve_piece = [&](int j, int s, int t, int deg, const std::map<std::uint64_t, Scalar>& rhs,
                           BimoduleElement& out) {
        const System& sys = system(j, s, t, deg);
        Vector b = zero_vector(A.field(), sys.rows.size());
        for (const auto& [k, v] : rhs) {
            auto row = sys.rows.find(k);
            if (row == sys.rows.end()) throw std::logic_error("lift failed");
            b[row->second] += v;
        }
        auto x = sys.solver.solve(b);
        if (!x) throw std::logic_error("lift failed");
        for (std::size_t k = 0; k < x->size(); ++k) {
            if ((*x)[k].is_zero()) continue;
            auto [ti, l, r] = sys.columns[k];
            out.add(ti, l, r, (*x)[k]);
        }
    };

    const ProjectiveBimodule& src0 = module(degree);
    BimoduleMap f0;
    f0.source = src0;
    f0.target = module(0);
    auto comps = c.components(degree, cocycle);
    for (std::size_t s = 0; s < src0.summands.size(); ++s) {
        const Summand& S = src0.summands[s];
        std::map<int, std::map<std::uint64_t, Scalar>> pieces;
        for (const auto& [id, v] : comps[s]) pieces[A.mono(id).degree][static_cast<std::uint64_t>(id)] = v;
        BimoduleElement e(A);
        for (const auto& [deg, rhs] : pieces) solve_piece(0, S.s, S.t, deg, rhs, e);
        f0.values.push_back(e.terms());
    }
    seg.maps.push_back(std::move(f0));

    for (int j = 1; j <= steps; ++j) {
        const BimoduleMap& d = res_->differential(degree + j);
        const BimoduleMap& prev = seg.maps.back();
        int shift = res_->differential(j).shift;
        BimoduleMap fj;
        fj.source = module(degree + j);
        fj.target = module(j);
        for (std::size_t s = 0; s < d.values.size(); ++s) {
            const Summand& S = fj.source.summands[s];
            BimoduleElement rhs(A);
            for (const auto& t : d.values[s]) apply_to(A, prev, t.target, {1, t.left}, {1, t.right}, t.coef, rhs);
            std::map<int, std::map<std::uint64_t, Scalar>> pieces;
            for (const auto& [k, v] : rhs.raw()) {
                int l = static_cast<int>((k / dim) % dim), r = static_cast<int>(k % dim);
                pieces[A.mono(l).degree + A.mono(r).degree][k] = v;
            }
            BimoduleElement e(A);
            for (const auto& [deg, piece] : pieces) solve_piece(j, S.s, S.t, deg - shift, piece, e);
            fj.values.push_back(e.terms());
        }
        seg.maps.push_back(std::move(fj));
    }
    return seg;
}

Vector YonedaEngine::compose_cocycle(int p, const Vector& phi, int q, const BimoduleMap& f) const
{
    const Algebra& A = *alg_;
    const CochainComplex& c = basis_->complex();
    auto comps = c.components(p, phi);
    std::vector<AlgebraElement> out(f.source.summands.size());
    for (std::size_t s = 0; s < f.values.size(); ++s)
        for (const auto& t : f.values[s])
            for (const auto& [w, v] : comps[t.target]) {
                SignedMono lw = A.product(t.left, w);
                if (lw.zero()) continue;
                SignedMono lwr = A.product(lw.id, t.right);
                if (lwr.zero()) continue;
                Scalar coef = t.coef * v;
                out[s] = A.add(out[s], A.element(lwr.id), lw.sign * lwr.sign > 0 ? coef : -coef);
            }
    return c.vector_from(p + q, out);
}

const ChainMapSegment& YonedaEngine::cached_lift(int q, std::size_t b, int steps)
{
    auto key = std::make_pair(q, b);
    auto it = lifts_.find(key);
    if (it != lifts_.end() && static_cast<int>(it->second.maps.size()) > steps) return it->second;
    int want = std::max(steps, max_degree() - q);
    auto seg = lift(q, basis_->classes(q).at(b).cocycle, want);
    return lifts_[key] = std::move(seg);
}

const Vector& YonedaEngine::basis_product(int p, std::size_t a, int q, std::size_t b)
{
    if (p < 0 || q < 0 || p + q > max_degree()) throw std::out_of_range("product degree outside the window");
    auto key = std::make_tuple(p, a, q, b);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    const ChainMapSegment& seg = cached_lift(q, b, p);
    Vector v = compose_cocycle(p, basis_->classes(p).at(a).cocycle, q, seg.maps.at(p));
    return products_[key] = basis_->identify(p + q, v);
}

CohomologyClass YonedaEngine::cup(const CohomologyClass& x, const CohomologyClass& y)
{
    int d = x.degree + y.degree;
    CohomologyClass out = zero_class(d);
    for (std::size_t a = 0; a < x.coords.size(); ++a) {
        if (x.coords[a].is_zero()) continue;
        for (std::size_t b = 0; b < y.coords.size(); ++b) {
            if (y.coords[b].is_zero()) continue;
            Scalar c = x.coords[a] * y.coords[b];
            const Vector& pr = basis_product(x.degree, a, y.degree, b);
            for (std::size_t k = 0; k < pr.size(); ++k) out.coords[k] += c * pr[k];
        }
    }
    return out;
}

CohomologyClass YonedaEngine::unit_class(int degree, std::size_t index) const
{
    CohomologyClass c = zero_class(degree);
    c.coords.at(index) = Scalar::one(alg_->field());
    return c;
}

CohomologyClass YonedaEngine::zero_class(int degree) const
{
    return {degree, zero_vector(alg_->field(), basis_->size(degree))};
}

CohomologyClass YonedaEngine::identify(int degree, const Vector& cocycle) const
{
    return {degree, basis_->identify(degree, cocycle)};
}

bool YonedaEngine::identity_lifts_h(int steps) const
{
    const Algebra& A = *alg_;
    if (6 + steps > res_->depth()) return false;
    // u o id = h~ : every vertex generator goes to its idempotent, which is the unit cocycle
    for (int j = 1; j <= steps; ++j)
        if (!same_map(A, res_->differential(j), res_->differential(j + 6))) return false;
    const CochainComplex& c = basis_->complex();
    std::vector<AlgebraElement> unit;
    for (int i = 1; i <= A.n(); ++i) unit.push_back(A.element(A.vertex(i)));
    Vector h = c.vector_from(6, unit);
    if (!basis_->is_cocycle(6, h)) return false;
    Vector coords = basis_->identify(6, h);
    // h is x0^0 h, the first canonical class in degree 6
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k] != (k == 0 ? Scalar::one(A.field()) : Scalar::zero(A.field()))) return false;
    return true;
}

std::vector<std::vector<long long>> c_matrix_combinatorial(const Algebra& A)
{
    int n = A.n();
    std::vector<std::vector<long long>> C(n, std::vector<long long>(n, 0));
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
            for (int x : A.block(j, k)) {
                int d = A.mono(x).degree;
                C[j - 1][k - 1] += (d % 2 ? -1 : 1) * d;
            }
    return C;
}

std::vector<std::vector<long long>> c_matrix_closed_form(int n)
{
    std::vector<std::vector<long long>> C(n, std::vector<long long>(n, 0));
    for (int j = 1; j <= n; ++j)
        for (int k = j; k <= n; ++k) {
            long long v = ((k - j + 1) % 2 ? -1 : 1) * static_cast<long long>(2 * j - 1) * (n - k + 1);
            C[j - 1][k - 1] = C[k - 1][j - 1] = v;
        }
    return C;
}

CMatrixReport c_matrix(const Algebra& A, YonedaEngine* engine)
{
    CMatrixReport rep;
    int n = A.n();
    rep.combinatorial = c_matrix_combinatorial(A);
    rep.closed_form = c_matrix_closed_form(n);
    if (rep.combinatorial != rep.closed_form) {
        rep.agree = false;
        rep.mismatches.push_back("combinatorial != closed form");
    }
    const FieldSpec& f = A.field();
    Matrix field_c = Matrix::from_ints(f, rep.closed_form);
    if (engine) {
        rep.cup.assign(n, std::vector<std::string>(n));
        for (int k = 1; k <= n; ++k) {
            const Vector& pr = engine->basis_product(1, 0, 2, static_cast<std::size_t>(k - 1));
            for (int j = 1; j <= n; ++j) {
                rep.cup[j - 1][k - 1] = pr.at(j - 1).str();
                if (pr.at(j - 1) != field_c.at(j - 1, k - 1)) {
                    rep.agree = false;
                    rep.mismatches.push_back("cup C[" + std::to_string(j) + "][" + std::to_string(k) + "] = " +
                                             pr.at(j - 1).str());
                }
            }
        }
    }
    rep.rank = preproj::rank(field_c);
    rep.determinant = determinant(rep.closed_form);
    long long expect = 1;
    for (int i = 1; i < n; ++i) expect *= 2 * n + 1;
    rep.determinant_magnitude = (rep.determinant < 0 ? -rep.determinant : rep.determinant) == expect;
    // D: adjacency of the vertices with the loop at vertex 1
    for (int j = 0; j < n && rep.adjacency_identity; ++j)
        for (int k = 0; k < n; ++k) {
            long long acc = 0;
            for (int m = 0; m < n; ++m) {
                long long d = (m == k ? 2 : 0) + ((m - k == 1 || k - m == 1) ? 1 : 0) + (m == 0 && k == 0 ? 1 : 0);
                acc += rep.closed_form[j][m] * d;
            }
            if (-acc != (j == k ? 2 * n + 1 : 0)) {
                rep.adjacency_identity = false;
                break;
            }
        }
    return rep;
}

} // namespace preproj
