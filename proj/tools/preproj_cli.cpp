#include "preproj/preproj.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

enum Exit { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_budget = 3 };

struct Config {
    std::string n_spec = "1..4";
    std::string char_spec = "0";
    int maxdeg = 13;
    std::uint64_t budget = 20'000'000;
    std::string format = "text";
    std::string out;
    int oracle_upto = -1;
    int perturb = -1;
    int upto = 6;
    std::string in;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_list(const std::string& spec, const char* what)
{
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) {
            auto dots = item.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stoi(item));
                continue;
            }
            int a = std::stoi(item.substr(0, dots)), b = std::stoi(item.substr(dots + 2));
            if (b < a) throw UsageError(std::string("empty range in ") + what);
            for (int v = a; v <= b; ++v) out.push_back(v);
        }
    } catch (const std::logic_error&) {
        throw UsageError(std::string("cannot parse ") + what + " '" + spec + "'");
    }
    if (out.empty()) throw UsageError(std::string("no values for ") + what);
    return out;
}

struct Pair {
    int n;
    std::uint32_t p;
};

std::vector<Pair> grid(const Config& c)
{
    auto ns = parse_list(c.n_spec, "--n");
    auto ps = parse_list(c.char_spec, "--char");
    std::vector<Pair> g;
    for (int p : ps) {
        if (p < 0) throw UsageError("characteristic must be 0 or an odd prime");
        if (p == 2)
            throw UsageError("characteristic 2 unsupported: the results require a ground field of characteristic "
                             "different from 2");
    }
    for (int n : ns) {
        if (n < 1) throw UsageError("n must be positive");
        for (int p : ps) g.push_back({n, static_cast<std::uint32_t>(p)});
    }
    return g;
}

unsigned thread_count(std::size_t jobs)
{
    unsigned t = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PREPROJ_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) t = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

// outcome of one grid point
struct Outcome {
    int status = PREPROJ_OK;
    std::string error;
    std::string text;
    bool pass = true;
};

class Engine {
public:
    Engine(const Pair& pr, int maxdeg)
    {
        status_ = preproj_engine_create(pr.n, pr.p, maxdeg, &e_);
        if (status_) error_ = preproj_last_error();
    }
    ~Engine() { preproj_engine_destroy(e_); }
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;
    preproj_engine* get() const { return e_; }
    int status() const { return status_; }
    const std::string& error() const { return error_; }

private:
    preproj_engine* e_ = nullptr;
    int status_ = PREPROJ_OK;
    std::string error_;
};

// calls a json-producing C function and parses its output
template <class F>
Json call(Outcome& o, F&& f)
{
    char* s = nullptr;
    o.status = f(&s);
    if (o.status != PREPROJ_OK) {
        o.error = preproj_last_error();
        return {};
    }
    Json j = Json::parse(s);
    preproj_string_free(s);
    return j;
}

std::string render(const Json& cert, const std::string& format, bool csv_header)
{
    char* s = nullptr;
    std::string dumped = cert.dump();
    if (preproj_render(dumped.c_str(), format.c_str(), csv_header, &s) != PREPROJ_OK)
        throw std::runtime_error(preproj_last_error());
    std::string out = s;
    preproj_string_free(s);
    return out;
}

void write_atomic(const fs::path& path, const std::string& data)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << data;
        if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string tag(const Pair& p) { return "n=" + std::to_string(p.n) + " char=" + std::to_string(p.p); }

std::string compact(const Json& arr)
{
    std::string s = "[";
    for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? ", " : "") + arr[i].dump();
    return s + "]";
}

std::string matrix_text(const Json& m)
{
    std::string s;
    for (const auto& row : m) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + (row[i].is_string() ? row[i].get<std::string>() : row[i].dump());
        s += "\n";
    }
    return s;
}

using Task = std::function<void(const Pair&, preproj_engine*, Outcome&)>;

// runs task over the grid in parallel and prints outputs in grid order
int run_grid(const Config& c, const Task& task)
{
    auto g = grid(c);
    std::vector<Outcome> out(g.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < g.size();) {
            Engine e(g[i], c.maxdeg);
            if (e.status()) {
                out[i].status = e.status();
                out[i].error = e.error();
                continue;
            }
            try {
                task(g[i], e.get(), out[i]);
            } catch (const std::exception& ex) {
                out[i].status = PREPROJ_ERR_INTERNAL;
                out[i].error = ex.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < thread_count(g.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int code = exit_pass;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Outcome& o = out[i];
        std::cout << o.text;
        if (o.status == PREPROJ_ERR_BUDGET) {
            std::cerr << tag(g[i]) << ": " << o.error << "\n";
            code = std::max<int>(code, exit_budget);
        } else if (o.status == PREPROJ_ERR_INVALID_ARGUMENT || o.status == PREPROJ_ERR_CHAR2 ||
                   o.status == PREPROJ_ERR_UNSUPPORTED) {
            std::cerr << tag(g[i]) << ": " << o.error << "\n";
            code = std::max<int>(code, exit_usage);
        } else if (o.status != PREPROJ_OK) {
            std::cerr << tag(g[i]) << ": internal error: " << o.error << "\n";
            code = std::max<int>(code, exit_fail);
        } else if (!o.pass) {
            code = std::max<int>(code, exit_fail);
        }
    }
    return code;
}

std::string format_section(const Config& c, const Pair& p, const Json& j, const std::string& text)
{
    if (c.format == "json") return Json{{"n", p.n}, {"characteristic", p.p}, {"result", j}}.dump(2) + "\n";
    return text;
}

int cmd_build(const Config& c)
{
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        Json j = call(o, [&](char** s) { return preproj_algebra_json(e, s); });
        if (o.status) return;
        o.pass = j["dualizability"]["pass"].get<bool>();
        o.text = format_section(c, p, j,
                                tag(p) + ": dim " + j["dim"].dump() + ", top degree " + j["top_degree"].dump() +
                                    ", dualizable " + (o.pass ? "yes" : "no") + "\n");
    });
}

int cmd_dims(const Config& c)
{
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        Json j = call(o, [&](char** s) { return preproj_dims_json(e, s); });
        if (o.status) return;
        o.pass = j["matches_expected"].get<bool>() && j["duality"].get<bool>();
        Json hh = Json::array();
        for (int i = 0; i <= std::min(c.upto, j["upto"].get<int>()); ++i) hh.push_back(j["HH"][i]);
        std::string text = compact(hh) + "\n";
        if (c.format == "markdown") text = "- " + tag(p) + ": HH^i = " + compact(hh) + "\n";
        if (c.format == "csv") {
            text.clear();
            for (std::size_t i = 0; i < hh.size(); ++i)
                text += std::to_string(p.n) + "," + std::to_string(p.p) + "," + std::to_string(i) + "," + hh[i].dump() +
                        "\n";
        }
        o.text = format_section(c, p, j, text);
    });
}

int cmd_cartan(const Config& c)
{
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        Json j = call(o, [&](char** s) { return preproj_algebra_json(e, s); });
        if (o.status) return;
        o.pass = j["cartan_det"] == std::to_string(1LL << p.n);
        o.text = format_section(c, p, Json{{"cartan", j["cartan"]}, {"det", j["cartan_det"]}},
                                tag(p) + ": det " + j["cartan_det"].get<std::string>() + "\n" + matrix_text(j["cartan"]));
    });
}

int cmd_cmatrix(const Config& c)
{
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        Json j = call(o, [&](char** s) { return preproj_cmatrix_json(e, s); });
        if (o.status) return;
        o.pass = j["pass"].get<bool>();
        o.text = format_section(c, p, j,
                                tag(p) + ": rank " + j["rank"].dump() + ", det " + j["determinant"].get<std::string>() +
                                    (o.pass ? "" : " (FAIL)") + "\n" + matrix_text(j["cup"]));
    });
}

int cmd_products(const Config& c)
{
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        Json j = call(o, [&](char** s) { return preproj_products_json(e, s); });
        if (o.status) return;
        std::string text = tag(p) + "\n";
        for (const auto& x : j) {
            std::string v;
            for (const auto& [label, coef] : x["value"].items()) v += (v.empty() ? "" : " + ") + coef.get<std::string>() + "*" + label;
            text += "  " + x["left"].get<std::string>() + " * " + x["right"].get<std::string>() + " = " +
                    (v.empty() ? "0" : v) + "\n";
        }
        o.text = format_section(c, p, j, text);
    });
}

int cmd_verify(const Config& c)
{
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        int pass = 0;
        Json j = call(o, [&](char** s) { return preproj_verify_json(e, s, &pass); });
        if (o.status) return;
        o.pass = pass != 0;
        std::string text = tag(p) + ": " + j["presentation"]["regime"].get<std::string>() + " presentation " +
                           (j["presentation"]["pass"].get<bool>() ? "pass" : "FAIL") + ", stable " +
                           (j["stable"]["pass"].get<bool>() ? "pass" : "FAIL") + "\n";
        for (const auto& r : j["presentation"]["relations"])
            if (!r["holds"].get<bool>()) text += "  failed: " + r["relation"].get<std::string>() + "\n";
        o.text = format_section(c, p, j, text);
    });
}

int cmd_oracle(const Config& c)
{
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        int pass = 0;
        int upto = c.oracle_upto >= 0 ? c.oracle_upto : (p.n == 1 ? 6 : 3);
        Json j = call(o, [&](char** s) { return preproj_oracle_json(e, upto, c.budget, c.perturb, s, &pass); });
        if (o.status) return;
        o.pass = pass != 0;
        std::string text = tag(p) + ": bar " + compact(j["bar"]) + " resolution " + compact(j["resolution"]) +
                           (o.pass ? " agree" : " DISAGREE");
        if (j.contains("first_mismatch")) text += " at degree " + j["first_mismatch"].dump();
        o.text = format_section(c, p, j, text + "\n");
    });
}

std::string cert_name(const Pair& p, const std::string& format)
{
    std::string ext = format == "markdown" ? "md" : format;
    return "cert_n" + std::to_string(p.n) + "_p" + std::to_string(p.p) + "." + ext;
}

int cmd_run(const Config& cfg)
{
    Config c = cfg;
    if (c.format == "text") c.format = "json";
    fs::path dir = c.out.empty() ? fs::path("certificates") : fs::path(c.out);
    fs::create_directories(dir);
    return run_grid(c, [&](const Pair& p, preproj_engine* e, Outcome& o) {
        preproj_run_options opt{c.oracle_upto, c.budget};
        int pass = 0;
        Json j = call(o, [&](char** s) { return preproj_certificate_json(e, &opt, s, &pass); });
        if (o.status) return;
        o.pass = pass != 0;
        std::string body = c.format == "json" ? j.dump(2) + "\n" : render(j, c.format, true);
        write_atomic(dir / cert_name(p, c.format), body);
        std::string failed;
        for (const auto& [k, v] : j["verdicts"].items())
            if (!v.get<bool>()) failed += " " + k;
        o.text = tag(p) + ": " + (o.pass ? "PASS" : "FAIL:" + failed) + "\n";
    });
}

int cmd_report(const Config& cfg)
{
    Config c = cfg;
    if (c.format == "text") c.format = "markdown";
    fs::path in = c.in.empty() ? fs::path(c.out.empty() ? "certificates" : c.out) : fs::path(c.in);
    std::vector<fs::path> files;
    if (fs::is_directory(in)) {
        for (const auto& entry : fs::directory_iterator(in))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
    } else if (fs::exists(in)) {
        files.push_back(in);
    }
    if (files.empty()) throw UsageError("no certificates found in " + in.string());
    std::sort(files.begin(), files.end());
    bool all = true;
    bool first = true;
    for (const auto& f : files) {
        std::ifstream s(f);
        Json j = Json::parse(s, nullptr, false);
        if (j.is_discarded() || !j.contains("schema")) throw UsageError("not a certificate: " + f.string());
        all = all && j.value("pass", false);
        std::cout << render(j, c.format, first);
        first = false;
    }
    return all ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hochschild cohomology of preprojective algebras of type L_n"};
    app.require_subcommand(1);
    app.set_version_flag("--version", preproj_version());
    Config c;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--n", c.n_spec, "values of n: 3, 1..4 or 1,3,5")->capture_default_str();
        s->add_option("--char", c.char_spec, "characteristics: 0 or odd primes, comma separated")->capture_default_str();
        s->add_option("--maxdeg", c.maxdeg, "top cochain degree of the window")->capture_default_str()->check(CLI::Range(7, 64));
        s->add_option("--budget", c.budget, "bound on bar complex sizes")->capture_default_str();
        s->add_option("--format", c.format, "text, json, csv or markdown (run and report treat text as json and markdown)")
            ->capture_default_str()
            ->check(CLI::IsMember({"text", "json", "csv", "markdown"}));
        s->add_option("--out", c.out, "certificate directory");
    };
    std::map<std::string, std::function<int(const Config&)>> commands = {
        {"build", cmd_build},     {"dims", cmd_dims},     {"cartan", cmd_cartan}, {"cmatrix", cmd_cmatrix},
        {"products", cmd_products}, {"verify", cmd_verify}, {"oracle", cmd_oracle}, {"run", cmd_run},
        {"report", cmd_report}};
    std::map<std::string, std::string> help = {
        {"build", "build the algebra and certify its basis"},
        {"dims", "Hochschild cohomology dimensions"},
        {"cartan", "Cartan matrix and determinant"},
        {"cmatrix", "the matrix of y* : HH^2 -> HH^3"},
        {"products", "products of generators in canonical coordinates"},
        {"verify", "check the generator and relation presentation"},
        {"oracle", "compare with the reduced bar complex"},
        {"run", "full pipeline, one certificate per grid point"},
        {"report", "re-render stored certificates"}};
    for (const auto& [name, fn] : commands) {
        auto* s = app.add_subcommand(name, help[name]);
        add_common(s);
        if (name == "dims") s->add_option("--upto", c.upto, "last degree printed")->capture_default_str();
        if (name == "oracle" || name == "run")
            s->add_option("--oracle-upto", c.oracle_upto, "bar complex degree (-1 automatic, -2 skip)");
        if (name == "oracle") s->add_option("--perturb", c.perturb, "zero this bar differential (negative control)");
        if (name == "report") s->add_option("--in", c.in, "certificate file or directory");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : exit_usage;
    }
    try {
        for (const auto& [name, fn] : commands)
            if (app.got_subcommand(name)) return fn(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_fail;
    }
    return exit_usage;
}
