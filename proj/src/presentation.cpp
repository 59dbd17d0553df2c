#include "preproj/presentation.hpp"

#include <stdexcept>

namespace preproj {

int PresentationSpec::find(const std::string& name) const
{
    for (std::size_t g = 0; g < generators.size(); ++g)
        if (generators[g].name == name) return static_cast<int>(g);
    throw std::out_of_range("unknown generator " + name);
}

namespace {

int sgn(int e) { return e % 2 ? -1 : 1; }

struct Builder {
    PresentationSpec& spec;

    std::vector<int> x0pow(int k) const { return std::vector<int>(static_cast<std::size_t>(k), spec.find("x0")); }

    std::vector<int> mono(std::vector<int> head, const std::vector<std::string>& tail) const
    {
        for (const auto& t : tail) head.push_back(spec.find(t));
        return head;
    }

    std::string term_text(const PolyTerm& t) const
    {
        std::string s;
        if (t.coef != 1 || t.factors.empty()) s = std::to_string(t.coef);
        for (std::size_t i = 0; i < t.factors.size();) {
            std::size_t j = i;
            while (j < t.factors.size() && t.factors[j] == t.factors[i]) ++j;
            if (!s.empty()) s += (s == "-1" ? "" : "*");
            if (s == "-1") s = "-";
            s += spec.generators[t.factors[i]].name;
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        return s;
    }

    std::string side_text(const std::vector<PolyTerm>& side) const
    {
        if (side.empty()) return "0";
        std::string s;
        for (const auto& t : side) s += (s.empty() ? "" : " + ") + term_text(t);
        return s;
    }

    void add(const std::string& label, std::vector<PolyTerm> lhs, std::vector<PolyTerm> rhs, bool derived = false)
    {
        Relation r;
        r.label = label;
        r.derived = derived;
        r.lhs = std::move(lhs);
        r.rhs = std::move(rhs);
        const auto& t = r.lhs.front().factors;
        for (int f : t) r.degree += spec.generators[f].degree;
        for (auto* side : {&r.lhs, &r.rhs}) {
            std::vector<PolyTerm> kept;
            for (auto& term : *side)
                if (term.coef != 0) kept.push_back(std::move(term));
            *side = std::move(kept);
        }
        r.text = side_text(r.lhs) + " = " + side_text(r.rhs);
        spec.relations.push_back(std::move(r));
    }
};

} // namespace

PresentationSpec presentation_spec(int n, const FieldSpec& field)
{
    if (field.characteristic() == 2) throw std::invalid_argument("characteristic 2 unsupported");
    if (n < 1) throw std::invalid_argument("n must be positive");
    PresentationSpec spec;
    spec.n = n;
    std::uint32_t p = field.characteristic();
    spec.regime = p != 0 && (2 * n + 1) % p == 0 ? Regime::modular : Regime::generic;
    bool modular = spec.regime == Regime::modular;
    auto si = [](int i) { return std::to_string(i); };

    for (int i = 0; i <= n; ++i) spec.generators.push_back({"x" + si(i), 0});
    spec.generators.push_back({"y", 1});
    for (int j = 1; j <= n; ++j) spec.generators.push_back({"z" + si(j), 2});
    spec.generators.push_back({"gamma", 4});
    spec.generators.push_back({"h", 6});
    for (int j = 1; j <= n; ++j) spec.generators.push_back({"t" + si(j), 3, !modular || j == n});

    Builder b{spec};
    std::vector<int> free_gens; // everything except the auxiliary classes
    for (std::size_t g = 0; g < spec.generators.size(); ++g)
        if (!spec.generators[g].auxiliary) free_gens.push_back(static_cast<int>(g));

    for (int i = 1; i <= n; ++i)
        for (int g : free_gens) {
            const std::string& name = spec.generators[g].name;
            if (name[0] == 'x' && name != "x0" && std::stoi(name.substr(1)) < i) continue;
            b.add("socle", {{1, {spec.find("x" + si(i)), g}}}, {});
        }
    b.add("vanishing", {{1, b.x0pow(n)}}, {});
    b.add("vanishing", {{1, b.mono({}, {"y", "y"})}}, {});
    for (int j = 1; j <= n; ++j) b.add("vanishing", {{1, b.mono({}, {"x0", "z" + si(j)})}}, {});
    for (int j = 1; j <= n; ++j)
        for (int k = j; k <= n; ++k)
            b.add("zz", {{1, b.mono({}, {"z" + si(j), "z" + si(k)})}},
                  {{sgn(k - j + 1) * (2LL * j - 1) * (n - k + 1), b.mono(b.x0pow(n - 1), {"gamma"})}});
    for (int j = 1; j <= n; ++j)
        b.add("z-gamma", {{1, b.mono({}, {"z" + si(j), "gamma"})}},
              {{sgn(j) * static_cast<long long>(n - j + 1), b.mono(b.x0pow(n - 1), {"h"})}});
    b.add("gamma-square", {{1, b.mono({}, {"gamma", "gamma"})}}, {{1, b.mono({}, {"z1", "h"})}});

    if (modular) {
        for (int i = 1; i < n; ++i) {
            b.add("vanishing", {{1, b.mono({}, {"x0", "t" + si(i)})}}, {});
            b.add("vanishing", {{1, b.mono({}, {"y", "t" + si(i)})}}, {});
            for (int k = i; k < n; ++k) b.add("vanishing", {{1, b.mono({}, {"t" + si(i), "t" + si(k)})}}, {});
        }
        for (int j = 2; j <= n; ++j)
            b.add("yz", {{1, b.mono({}, {"y", "z" + si(j)})}},
                  {{sgn(j - 1) * (2LL * j - 1), b.mono({}, {"y", "z1"})}});
    } else {
        // y z_k expands over the t classes through C
        for (int k = 1; k <= n; ++k) {
            std::vector<PolyTerm> rhs;
            for (int j = 1; j <= n; ++j)
                rhs.push_back({sgn(k - j + 1) * (2LL * std::min(j, k) - 1) * (n - std::max(j, k) + 1),
                               b.mono({}, {"t" + si(j)})});
            b.add("yz-expansion", {{1, b.mono({}, {"y", "z" + si(k)})}}, rhs, true);
        }
    }
    // z t and t gamma; derived identities when t_j is not a generator
    for (int j = 1; j <= n; ++j) {
        bool aux = spec.generators[spec.find("t" + si(j))].auxiliary;
        for (int k = 1; k <= n; ++k)
            b.add("zt", {{1, b.mono({}, {"z" + si(k), "t" + si(j)})}},
                  {{j == k ? 1 : 0, b.mono(b.x0pow(n - 1), {"y", "gamma"})}}, aux);
        b.add("t-gamma", {{1, b.mono({}, {"t" + si(j), "gamma"})}}, {{j == 1 ? 1 : 0, b.mono(b.x0pow(n - 1), {"y", "h"})}},
              aux);
    }
    return spec;
}

CohomologyClass generator_class(const PresentationSpec& spec, int g, YonedaEngine& engine)
{
    const Generator& gen = spec.generators.at(g);
    const Algebra& A = engine.algebra();
    int n = A.n();
    const std::string& name = gen.name;
    if (name == "x0") {
        const CochainComplex& c = engine.basis().complex();
        std::vector<AlgebraElement> comps(n);
        for (const auto& [id, v] : A.x0()) comps[A.mono(id).source - 1][id] = v;
        return engine.identify(0, c.vector_from(0, comps));
    }
    if (name[0] == 'x') return engine.unit_class(0, static_cast<std::size_t>(n - 1 + std::stoi(name.substr(1))));
    if (name == "y") return engine.unit_class(1, 0);
    if (name[0] == 'z') return engine.unit_class(2, static_cast<std::size_t>(std::stoi(name.substr(1)) - 1));
    if (name[0] == 't') return engine.unit_class(3, static_cast<std::size_t>(std::stoi(name.substr(1)) - 1));
    if (name == "gamma") return engine.unit_class(4, 0);
    if (name == "h") return engine.unit_class(6, 0);
    throw std::out_of_range("unknown generator " + name);
}

namespace {

Vector evaluate(const std::vector<PolyTerm>& side, int degree, const std::vector<CohomologyClass>& gens,
                YonedaEngine& engine)
{
    const FieldSpec& f = engine.algebra().field();
    CohomologyClass acc = engine.zero_class(degree);
    for (const auto& t : side) {
        CohomologyClass m = engine.unit_class(0, 0);
        for (int g : t.factors) m = engine.cup(m, gens[g]);
        Scalar c(f, t.coef);
        for (std::size_t k = 0; k < acc.coords.size(); ++k) acc.coords[k] += c * m.coords[k];
    }
    return acc.coords;
}

std::size_t span_rank(const FieldSpec& f, const std::vector<Vector>& vs, std::size_t dim)
{
    if (vs.empty() || dim == 0) return 0;
    Matrix m(f, vs.size(), dim);
    for (std::size_t r = 0; r < vs.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = vs[r][c];
    return rank(m);
}

// independent subset, keeping the input order
std::vector<Vector> prune(const FieldSpec& f, const std::vector<Vector>& vs, std::size_t dim)
{
    std::vector<Vector> kept;
    for (const auto& v : vs) {
        if (is_zero(v)) continue;
        kept.push_back(v);
        if (span_rank(f, kept, dim) < kept.size()) kept.pop_back();
        if (kept.size() == dim) break;
    }
    return kept;
}

} // namespace

VerificationReport verify(const PresentationSpec& spec, YonedaEngine& engine)
{
    const FieldSpec& f = engine.algebra().field();
    const CanonicalBasis& basis = engine.basis();
    VerificationReport rep;
    rep.regime = spec.regime;
    std::vector<CohomologyClass> gens;
    for (std::size_t g = 0; g < spec.generators.size(); ++g)
        gens.push_back(generator_class(spec, static_cast<int>(g), engine));

    for (const auto& r : spec.relations) {
        RelationResult res;
        res.label = r.label;
        res.text = r.text;
        res.degree = r.degree;
        res.derived = r.derived;
        res.lhs = evaluate(r.lhs, r.degree, gens, engine);
        res.rhs = evaluate(r.rhs, r.degree, gens, engine);
        res.holds = res.lhs == res.rhs;
        if (!res.holds) rep.pass = false;
        rep.relations.push_back(std::move(res));
    }

    // span of generator monomials, degree by degree
    int top = engine.max_degree();
    std::vector<std::vector<Vector>> span(static_cast<std::size_t>(top) + 1);
    auto close_degree0 = [&](int i) {
        std::size_t dim = basis.size(i);
        for (bool grew = true; grew;) {
            std::size_t before = span[i].size();
            std::vector<Vector> cand = span[i];
            for (const auto& v : span[i])
                for (std::size_t g = 0; g < gens.size(); ++g)
                    if (!spec.generators[g].auxiliary && spec.generators[g].degree == 0)
                        cand.push_back(engine.cup(gens[g], {i, v}).coords);
            span[i] = prune(f, cand, dim);
            grew = span[i].size() > before;
        }
    };
    span[0] = {engine.unit_class(0, 0).coords};
    close_degree0(0);
    for (int i = 0; i <= top; ++i) {
        if (i > 0) {
            std::vector<Vector> cand;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                int d = spec.generators[g].degree;
                if (spec.generators[g].auxiliary || d == 0 || d > i) continue;
                for (const auto& v : span[i - d]) cand.push_back(engine.cup(gens[g], {i - d, v}).coords);
            }
            span[i] = prune(f, cand, basis.size(i));
            close_degree0(i);
        }
        DegreeAudit a{i, span[i].size(), basis.size(i)};
        if (!a.ok()) rep.pass = false;
        rep.audit.push_back(a);
    }
    return rep;
}

StableReport stable_check(YonedaEngine& engine)
{
    const Algebra& A = engine.algebra();
    const FieldSpec& f = A.field();
    const CanonicalBasis& basis = engine.basis();
    int n = A.n();
    StableReport rep;
    Matrix h0;
    for (int i = 0; i <= 6 && i + 6 <= engine.max_degree(); ++i) {
        Matrix m(f, basis.size(i + 6), basis.size(i));
        for (std::size_t k = 0; k < basis.size(i); ++k) {
            const Vector& v = engine.basis_product(6, 0, i, k);
            for (std::size_t r = 0; r < v.size(); ++r) m.at(r, k) = v[r];
        }
        std::size_t rk = rank(m);
        rep.h_rank.push_back(rk);
        if (i == 0) h0 = m;
        else if (rk != basis.size(i) || rk != basis.size(i + 6))
            rep.bijective = false;
    }
    if (rep.h_rank.size() < 7) rep.bijective = false;
    // degree 0 canonical order: x0^0..x0^{n-1}, then x_1..x_n
    auto ker = kernel_basis(h0);
    if (ker.size() != static_cast<std::size_t>(n)) rep.kernel_is_socle = false;
    for (const auto& v : ker)
        for (int k = 0; k < n; ++k)
            if (!v[k].is_zero()) rep.kernel_is_socle = false;
    rep.top_power_survives = !is_zero(engine.basis_product(6, 0, 0, static_cast<std::size_t>(n - 1)));
    return rep;
}

} // namespace preproj
