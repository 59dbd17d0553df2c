#include "preproj/certificate.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace preproj {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class F>
auto timed(std::map<std::string, double>& t, const std::string& key, F&& f)
{
    auto t0 = Clock::now();
    auto r = f();
    t[key] += ms_since(t0);
    return r;
}

Json strings(const Vector& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

// nonzero coordinates keyed by canonical label
Json labelled(const CanonicalBasis& b, int degree, const Vector& v)
{
    Json o = Json::object();
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) o[b.classes(degree)[k].label] = v[k].str();
    return o;
}

std::string regime_name(Regime r) { return r == Regime::generic ? "generic" : "modular"; }

} // namespace

Pipeline::Pipeline(int n, std::uint32_t characteristic, int maxdeg) : maxdeg_(maxdeg)
{
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (maxdeg < 7) throw std::invalid_argument("maxdeg must be at least 7");
    FieldSpec f(characteristic);
    auto t0 = Clock::now();
    A_ = std::make_unique<Algebra>(Algebra::build(n, f));
    form_ = std::make_unique<NakayamaForm>(NakayamaForm::associated(*A_));
    timings_["algebra"] = ms_since(t0);
    t0 = Clock::now();
    res_ = std::make_unique<Resolution>(Resolution::build(*A_, *form_, maxdeg + 1));
    complex_ = std::make_unique<CochainComplex>(CochainComplex::build(*res_, maxdeg));
    basis_ = std::make_unique<CanonicalBasis>(*complex_, maxdeg - 1);
    engine_ = std::make_unique<YonedaEngine>(*res_, *basis_);
    timings_["complex"] = ms_since(t0);
}

Json algebra_section(Pipeline& p)
{
    const Algebra& A = p.algebra();
    auto cartan = A.cartan_matrix();
    Json j;
    j["dim"] = A.dim();
    j["top_degree"] = A.top_degree();
    j["cartan"] = cartan;
    j["cartan_det"] = std::to_string(determinant(cartan));
    j["center_dim"] = A.center_dimension();
    return j;
}

Json dualizability_section(Pipeline& p)
{
    auto canon = certify_dualizable(p.form());
    Algebra variant = Algebra::build(p.algebra().n(), p.algebra().field(), SocleSign::unsigned_top);
    auto vrep = certify_dualizable(NakayamaForm::associated(variant));
    Json j;
    j["pass"] = canon.pass();
    j["arrow_condition"] = canon.arrow_condition;
    j["double_dual"] = canon.double_dual;
    j["symmetric"] = canon.symmetric;
    j["unsigned_variant"] = {{"pass", vrep.pass()}, {"witnesses", vrep.witnesses}};
    return j;
}

Json exactness_section(Pipeline& p)
{
    auto rep = certify_exact(p.resolution());
    Json j;
    j["pass"] = rep.pass();
    j["squares_zero"] = rep.squares_zero;
    j["augmentation_zero"] = rep.augmentation_zero;
    j["exact"] = rep.exact;
    j["period_six"] = rep.period_six;
    j["depth"] = p.resolution().depth();
    Json e = Json::array();
    for (const auto& x : rep.entries)
        e.push_back({{"term", x.index}, {"dim", x.dim}, {"rank_in", x.rank_in}, {"rank_out", x.rank_out}});
    j["entries"] = e;
    j["failures"] = rep.failures;
    return j;
}

Json dimensions_section(Pipeline& p)
{
    const Algebra& A = p.algebra();
    int upto = p.maxdeg() - 1;
    auto t0 = Clock::now();
    auto hh = hh_dims(p.complex(), upto);
    auto hl = homology_dims(p.resolution(), upto);
    Json j;
    j["upto"] = upto;
    j["HH"] = hh;
    j["HH_lower"] = hl;
    std::vector<std::size_t> expected(hh.size(), static_cast<std::size_t>(A.n()));
    expected[0] = 2 * A.n();
    j["matches_expected"] = hh == expected;
    j["duality"] = hh == hl;
    if (A.field().rational()) {
        auto cyc = cyclic_dims(A, hl, upto);
        j["HC"] = cyc.hc;
        j["connes_image"] = cyc.connes_image;
        j["cyclic_pass"] = cyc.pass;
    } else {
        j["HC"] = "unsupported characteristic";
    }
    p.timings()["dimensions"] += ms_since(t0);
    return j;
}

Json cmatrix_section(Pipeline& p)
{
    const Algebra& A = p.algebra();
    auto rep = timed(p.timings(), "cmatrix", [&] { return c_matrix(A, &p.engine()); });
    int n = A.n();
    std::uint32_t ch = A.field().characteristic();
    std::size_t expect_rank = ch != 0 && (2 * n + 1) % ch == 0 ? 1 : static_cast<std::size_t>(n);
    Json j;
    j["combinatorial"] = rep.combinatorial;
    j["closed_form"] = rep.closed_form;
    j["cup"] = rep.cup;
    j["agree"] = rep.agree;
    j["rank"] = rep.rank;
    j["rank_expected"] = expect_rank;
    j["determinant"] = std::to_string(rep.determinant);
    j["determinant_sign"] = rep.determinant < 0 ? -1 : 1;
    j["determinant_magnitude"] = rep.determinant_magnitude;
    j["adjacency_identity"] = rep.adjacency_identity;
    j["mismatches"] = rep.mismatches;
    j["pass"] = rep.agree && rep.rank == expect_rank && rep.determinant_magnitude && rep.adjacency_identity;
    return j;
}

Json products_section(Pipeline& p)
{
    auto t0 = Clock::now();
    YonedaEngine& e = p.engine();
    auto spec = presentation_spec(p.algebra().n(), p.algebra().field());
    std::vector<CohomologyClass> gens;
    for (std::size_t g = 0; g < spec.generators.size(); ++g)
        gens.push_back(generator_class(spec, static_cast<int>(g), e));
    Json arr = Json::array();
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a; b < gens.size(); ++b) {
            int d = gens[a].degree + gens[b].degree;
            if (d > e.max_degree()) continue;
            auto prod = e.cup(gens[a], gens[b]);
            arr.push_back({{"left", spec.generators[a].name},
                           {"right", spec.generators[b].name},
                           {"degree", d},
                           {"value", labelled(p.basis(), d, prod.coords)}});
        }
    p.timings()["products"] += ms_since(t0);
    return arr;
}

Json presentation_section(Pipeline& p)
{
    auto t0 = Clock::now();
    auto spec = presentation_spec(p.algebra().n(), p.algebra().field());
    auto rep = verify(spec, p.engine());
    Json j;
    j["regime"] = regime_name(rep.regime);
    Json gens = Json::array();
    for (const auto& g : spec.generators)
        if (!g.auxiliary) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    j["generators"] = gens;
    Json rels = Json::array();
    for (const auto& r : rep.relations)
        rels.push_back({{"label", r.label},
                        {"relation", r.text},
                        {"degree", r.degree},
                        {"derived", r.derived},
                        {"lhs", strings(r.lhs)},
                        {"rhs", strings(r.rhs)},
                        {"holds", r.holds}});
    j["relations"] = rels;
    Json audit = Json::array();
    for (const auto& a : rep.audit)
        audit.push_back({{"degree", a.degree}, {"spanned", a.spanned}, {"dim", a.expected}});
    j["audit"] = audit;
    j["pass"] = rep.pass;
    p.timings()["presentation"] += ms_since(t0);
    return j;
}

Json stable_section(Pipeline& p)
{
    auto rep = timed(p.timings(), "stable", [&] { return stable_check(p.engine()); });
    Json j;
    j["h_rank"] = rep.h_rank;
    j["bijective"] = rep.bijective;
    j["kernel_is_socle"] = rep.kernel_is_socle;
    j["top_power_survives"] = rep.top_power_survives;
    j["pass"] = rep.pass();
    return j;
}

Json oracle_section(Pipeline& p, int upto, std::uint64_t budget, int perturb_degree)
{
    OracleOptions opt;
    opt.budget = budget;
    opt.perturb_degree = perturb_degree;
    auto cmp = timed(p.timings(), "oracle", [&] { return compare(p.algebra(), p.complex(), upto, opt); });
    Json j;
    j["upto"] = upto;
    j["bar"] = cmp.oracle;
    j["resolution"] = cmp.resolution;
    j["squares_zero"] = cmp.squares_zero;
    j["equal"] = cmp.equal;
    if (cmp.first_mismatch >= 0) j["first_mismatch"] = cmp.first_mismatch;
    j["pass"] = cmp.equal && cmp.squares_zero;
    return j;
}

Json certificate(Pipeline& p, const CertificateOptions& opt)
{
    const Algebra& A = p.algebra();
    int n = A.n();
    int upto = opt.oracle_upto;
    if (upto == -1) upto = n == 1 ? 6 : n == 2 ? 3 : -2;
    Json c;
    c["schema"] = 1;
    c["tool"] = {{"name", "preproj"}, {"version", tool_version}};
    c["config"] = {{"n", n},
                   {"characteristic", A.field().characteristic()},
                   {"maxdeg", p.maxdeg()},
                   {"oracle_upto", upto},
                   {"budget", opt.budget}};
    c["algebra"] = algebra_section(p);
    c["dualizability"] = dualizability_section(p);
    c["exactness"] = timed(p.timings(), "exactness", [&] { return exactness_section(p); });
    c["dimensions"] = dimensions_section(p);
    c["cmatrix"] = cmatrix_section(p);
    c["products"] = products_section(p);
    c["presentation"] = presentation_section(p);
    c["stable"] = stable_section(p);
    c["oracle"] = upto >= 0 ? oracle_section(p, upto, opt.budget) : Json{{"skipped", true}};

    const auto& dims = c["dimensions"];
    Json v;
    v["cartan_det"] = c["algebra"]["cartan_det"] == std::to_string(1LL << n);
    v["dualizable"] = c["dualizability"]["pass"].get<bool>() && (n == 1 || !c["dualizability"]["unsigned_variant"]["pass"].get<bool>());
    v["exact"] = c["exactness"]["pass"];
    v["dimensions"] = dims["matches_expected"];
    v["duality"] = dims["duality"];
    if (dims.contains("cyclic_pass")) v["cyclic"] = dims["cyclic_pass"];
    v["cmatrix"] = c["cmatrix"]["pass"];
    v["presentation"] = c["presentation"]["pass"];
    v["stable"] = c["stable"]["pass"];
    if (upto >= 0) v["oracle"] = c["oracle"]["pass"];
    bool pass = true;
    for (const auto& [k, x] : v.items()) pass = pass && x.get<bool>();
    c["verdicts"] = v;
    c["pass"] = pass;

    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    Json t = Json::object();
    for (const auto& [k, ms] : p.timings()) t[k] = std::to_string(static_cast<long long>(ms + 0.5));
    c["header"] = {{"timestamp", stamp}, {"timings_ms", t}};
    return c;
}

bool certificate_pass(const Json& cert) { return cert.value("pass", false); }

namespace {

std::string join(const Json& arr)
{
    std::string s;
    for (const auto& x : arr) s += (s.empty() ? "" : ", ") + (x.is_string() ? x.get<std::string>() : x.dump());
    return s;
}

} // namespace

std::string render_markdown(const Json& cert)
{
    std::ostringstream o;
    const auto& cfg = cert.at("config");
    o << "## n = " << cfg.at("n") << ", characteristic " << cfg.at("characteristic") << "\n\n";
    o << "- verdict: " << (certificate_pass(cert) ? "PASS" : "FAIL") << "\n";
    o << "- dim: " << cert["algebra"]["dim"] << ", Cartan det " << cert["algebra"]["cartan_det"].get<std::string>()
      << "\n";
    const auto& d = cert.at("dimensions");
    o << "- HH^i: " << join(d.at("HH")) << "\n";
    o << "- HH_i: " << join(d.at("HH_lower")) << "\n";
    if (d.at("HC").is_array()) o << "- HC_i: " << join(d.at("HC")) << "\n";
    const auto& cm = cert.at("cmatrix");
    o << "- C: rank " << cm.at("rank") << ", det " << cm.at("determinant").get<std::string>() << "\n";
    const auto& pr = cert.at("presentation");
    o << "- presentation (" << pr.at("regime").get<std::string>() << "): " << (pr.at("pass").get<bool>() ? "pass" : "fail")
      << ", " << pr.at("relations").size() << " relations\n";
    o << "- stable: " << (cert["stable"]["pass"].get<bool>() ? "pass" : "fail") << "\n";
    if (cert["oracle"].contains("bar"))
        o << "- oracle through degree " << cert["oracle"]["upto"] << ": " << join(cert["oracle"]["bar"])
          << (cert["oracle"]["pass"].get<bool>() ? " (agrees)" : " (DISAGREES)") << "\n";
    o << "\n| check | result |\n|---|---|\n";
    for (const auto& [k, v] : cert.at("verdicts").items()) o << "| " << k << " | " << (v.get<bool>() ? "pass" : "FAIL") << " |\n";
    o << "\n";
    return o.str();
}

std::string render_csv(const Json& cert, bool with_header)
{
    std::ostringstream o;
    if (with_header) o << "n,characteristic,degree,HH,HH_lower,HC\n";
    const auto& d = cert.at("dimensions");
    const auto& cfg = cert.at("config");
    for (std::size_t i = 0; i < d.at("HH").size(); ++i) {
        o << cfg.at("n") << "," << cfg.at("characteristic") << "," << i << "," << d["HH"][i] << "," << d["HH_lower"][i] << ",";
        if (d.at("HC").is_array()) o << d["HC"][i];
        o << "\n";
    }
    return o.str();
}

} // namespace preproj
