#pragma once

#include "preproj/oracle.hpp"
#include "preproj/presentation.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <string>

namespace preproj {

inline constexpr const char* tool_version = "1.0.0";

// everything derived for one (n, characteristic) pair
class Pipeline {
public:
    Pipeline(int n, std::uint32_t characteristic, int maxdeg = 13);

    const Algebra& algebra() const { return *A_; }
    const NakayamaForm& form() const { return *form_; }
    const Resolution& resolution() const { return *res_; }
    const CochainComplex& complex() const { return *complex_; }
    const CanonicalBasis& basis() const { return *basis_; }
    YonedaEngine& engine() { return *engine_; }
    int maxdeg() const { return maxdeg_; }
    // milliseconds per stage
    std::map<std::string, double>& timings() { return timings_; }

private:
    int maxdeg_;
    std::unique_ptr<Algebra> A_;
    std::unique_ptr<NakayamaForm> form_;
    std::unique_ptr<Resolution> res_;
    std::unique_ptr<CochainComplex> complex_;
    std::unique_ptr<CanonicalBasis> basis_;
    std::unique_ptr<YonedaEngine> engine_;
    std::map<std::string, double> timings_;
};

struct CertificateOptions {
    int oracle_upto = -1; // -1: 6 for n = 1, 3 for n = 2, skipped otherwise; -2: skipped
    std::uint64_t budget = 20'000'000;
};

using Json = nlohmann::json;

Json algebra_section(Pipeline& p);
Json dualizability_section(Pipeline& p);
Json exactness_section(Pipeline& p);
Json dimensions_section(Pipeline& p);
Json cmatrix_section(Pipeline& p);
Json products_section(Pipeline& p);
Json presentation_section(Pipeline& p);
Json stable_section(Pipeline& p);
// throws BudgetExceeded
Json oracle_section(Pipeline& p, int upto, std::uint64_t budget, int perturb_degree = -1);

// full certificate; "header" carries the timestamp and timings and is the only nondeterministic member
Json certificate(Pipeline& p, const CertificateOptions& opt);
bool certificate_pass(const Json& cert);

std::string render_markdown(const Json& cert);
std::string render_csv(const Json& cert, bool with_header = true);

} // namespace preproj
