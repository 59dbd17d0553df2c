#include "preproj/preproj.h"

#include "preproj/certificate.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

struct preproj_engine {
    preproj::Pipeline pipeline;
    std::mutex lock;
    preproj_engine(int n, std::uint32_t p, int maxdeg) : pipeline(n, p, maxdeg) {}
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
int guard(F&& f)
{
    last_error.clear();
    try {
        f();
        return PREPROJ_OK;
    } catch (const preproj::BudgetExceeded& e) {
        last_error = e.what();
        return PREPROJ_ERR_BUDGET;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        std::string m = e.what();
        if (m.find("characteristic 2") != std::string::npos) return PREPROJ_ERR_CHAR2;
        if (m.find("unsupported") != std::string::npos) return PREPROJ_ERR_UNSUPPORTED;
        return PREPROJ_ERR_INVALID_ARGUMENT;
    } catch (const std::out_of_range& e) {
        last_error = e.what();
        return PREPROJ_ERR_INVALID_ARGUMENT;
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return PREPROJ_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return PREPROJ_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return PREPROJ_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what)
{
    if (!ok) throw std::invalid_argument(what);
}

template <class F>
int section(preproj_engine* e, char** out, F&& f)
{
    return guard([&] {
        require(e && out, "null argument");
        std::lock_guard<std::mutex> g(e->lock);
        *out = copy_out(f(e->pipeline).dump(2));
    });
}

} // namespace

extern "C" {

const char* preproj_version(void) { return preproj::tool_version; }

const char* preproj_last_error(void) { return last_error.c_str(); }

void preproj_string_free(char* s) { std::free(s); }

int preproj_engine_create(int n, uint32_t characteristic, int maxdeg, preproj_engine** out)
{
    return guard([&] {
        require(out != nullptr, "null argument");
        *out = nullptr;
        *out = new preproj_engine(n, characteristic, maxdeg);
    });
}

void preproj_engine_destroy(preproj_engine* e) { delete e; }

int preproj_algebra_json(preproj_engine* e, char** out)
{
    return section(e, out, [](preproj::Pipeline& p) {
        auto j = preproj::algebra_section(p);
        j["dualizability"] = preproj::dualizability_section(p);
        return j;
    });
}

int preproj_dims_json(preproj_engine* e, char** out)
{
    return section(e, out, [](preproj::Pipeline& p) { return preproj::dimensions_section(p); });
}

int preproj_cmatrix_json(preproj_engine* e, char** out)
{
    return section(e, out, [](preproj::Pipeline& p) { return preproj::cmatrix_section(p); });
}

int preproj_products_json(preproj_engine* e, char** out)
{
    return section(e, out, [](preproj::Pipeline& p) { return preproj::products_section(p); });
}

int preproj_verify_json(preproj_engine* e, char** out, int* pass)
{
    return section(e, out, [&](preproj::Pipeline& p) {
        preproj::Json j;
        j["presentation"] = preproj::presentation_section(p);
        j["stable"] = preproj::stable_section(p);
        bool ok = j["presentation"]["pass"].get<bool>() && j["stable"]["pass"].get<bool>();
        j["pass"] = ok;
        if (pass) *pass = ok;
        return j;
    });
}

int preproj_oracle_json(preproj_engine* e, int upto, uint64_t budget, int perturb_degree, char** out, int* pass)
{
    return section(e, out, [&](preproj::Pipeline& p) {
        require(upto >= 0 && upto < p.maxdeg(), "oracle degree outside the window");
        auto j = preproj::oracle_section(p, upto, budget, perturb_degree);
        if (pass) *pass = j["pass"].get<bool>();
        return j;
    });
}

int preproj_certificate_json(preproj_engine* e, const preproj_run_options* opt, char** out, int* pass)
{
    return section(e, out, [&](preproj::Pipeline& p) {
        preproj::CertificateOptions o;
        if (opt) {
            o.oracle_upto = opt->oracle_upto;
            o.budget = opt->budget;
        }
        require(o.oracle_upto >= -2 && o.oracle_upto < p.maxdeg(), "oracle degree outside the window");
        auto j = preproj::certificate(p, o);
        if (pass) *pass = preproj::certificate_pass(j);
        return j;
    });
}

int preproj_render(const char* certificate_json, const char* format, int csv_header, char** out)
{
    return guard([&] {
        require(certificate_json && format && out, "null argument");
        auto j = preproj::Json::parse(certificate_json);
        std::string f = format;
        if (f == "json")
            *out = copy_out(j.dump(2) + "\n");
        else if (f == "markdown")
            *out = copy_out(preproj::render_markdown(j));
        else if (f == "csv")
            *out = copy_out(preproj::render_csv(j, csv_header != 0));
        else
            throw std::invalid_argument("unknown format " + f);
    });
}

} // extern "C"
