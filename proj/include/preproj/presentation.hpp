#pragma once

#include "preproj/yoneda.hpp"

#include <string>
#include <vector>

namespace preproj {

enum class Regime { generic, modular };

struct Generator {
    std::string name;
    int degree = 0;
    bool auxiliary = false; // canonical class used only in derived identities
};

// coef * product of generators (indices into PresentationSpec::generators)
struct PolyTerm {
    long long coef = 1;
    std::vector<int> factors;
};

struct Relation {
    std::string label; // family, e.g. "zz"
    std::string text;
    int degree = 0;
    std::vector<PolyTerm> lhs, rhs;
    bool derived = false; // consequence checked as an identity, not part of the presentation
};

struct PresentationSpec {
    int n = 0;
    Regime regime = Regime::generic;
    std::vector<Generator> generators;
    std::vector<Relation> relations;
    int find(const std::string& name) const;
};

// throws std::invalid_argument("characteristic 2 unsupported") for p = 2
PresentationSpec presentation_spec(int n, const FieldSpec& field);

struct RelationResult {
    std::string label, text;
    int degree = 0;
    bool derived = false;
    Vector lhs, rhs;
    bool holds = false;
};

struct DegreeAudit {
    int degree = 0;
    std::size_t spanned = 0;
    std::size_t expected = 0;
    bool ok() const { return spanned == expected; }
};

struct VerificationReport {
    Regime regime = Regime::generic;
    std::vector<RelationResult> relations;
    std::vector<DegreeAudit> audit;
    bool pass = true;
};

// canonical coordinates of a generator
CohomologyClass generator_class(const PresentationSpec& spec, int g, YonedaEngine& engine);
VerificationReport verify(const PresentationSpec& spec, YonedaEngine& engine);

struct StableReport {
    std::vector<std::size_t> h_rank; // rank of h. : HH^i -> HH^{i+6}, i = 0..6
    bool bijective = true;           // i = 1..6
    bool kernel_is_socle = true;     // degree 0 kernel = span{x_1..x_n}
    bool top_power_survives = true;  // x0^{n-1} h != 0
    bool pass() const { return bijective && kernel_is_socle && top_power_survives; }
};

StableReport stable_check(YonedaEngine& engine);

} // namespace preproj
