#pragma once

#include "preproj/cochain.hpp"

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace preproj {

// f_j : P^{-degree-j} -> P^{-j}, j = 0..length
struct ChainMapSegment {
    int degree = 0;
    std::vector<BimoduleMap> maps;
};

struct CohomologyClass {
    int degree = 0;
    Vector coords; // over the canonical classes of that degree
};

class YonedaEngine {
public:
    // reversed_pivots selects the alternative particular solution in every lifting system
    YonedaEngine(const Resolution& r, const CanonicalBasis& basis, bool reversed_pivots = false);

    const Algebra& algebra() const { return *alg_; }
    const CanonicalBasis& basis() const { return *basis_; }
    int max_degree() const { return basis_->upto(); }

    // throws std::logic_error("not a cocycle") / ("lift failed")
    ChainMapSegment lift(int degree, const Vector& cocycle, int steps) const;
    // phi o f for phi in V^p and f : P^{-p-q} -> P^{-p}
    Vector compose_cocycle(int p, const Vector& phi, int q, const BimoduleMap& f) const;

    // product of canonical classes (p, a) and (q, b) in canonical coordinates
    const Vector& basis_product(int p, std::size_t a, int q, std::size_t b);
    CohomologyClass cup(const CohomologyClass& x, const CohomologyClass& y);
    CohomologyClass unit_class(int degree, std::size_t index) const;
    CohomologyClass zero_class(int degree) const;
    CohomologyClass identify(int degree, const Vector& cocycle) const;

    // checks that the identity maps satisfy the lifting equations of h
    bool identity_lifts_h(int steps) const;

private:
    struct SystemKey {
        int j;
        int s, t, degree;
        bool operator<(const SystemKey& o) const
        {
            return std::tie(j, s, t, degree) < std::tie(o.j, o.s, o.t, o.degree);
        }
    };
    struct System {
        std::vector<std::tuple<int, int, int>> columns; // (summand, left, right)
        std::unordered_map<std::uint64_t, std::size_t> rows;
        Solver solver;
    };
    const System& system(int j, int s, int t, int degree) const;
    const ProjectiveBimodule& module(int m) const { return res_->term(m); }
    const ChainMapSegment& cached_lift(int q, std::size_t b, int steps);

    const Algebra* alg_;
    const Resolution* res_;
    const CanonicalBasis* basis_;
    bool reversed_;
    mutable std::map<SystemKey, std::unique_ptr<System>> systems_;
    std::map<std::pair<int, std::size_t>, ChainMapSegment> lifts_;
    std::map<std::tuple<int, std::size_t, int, std::size_t>, Vector> products_;
};

struct CMatrixReport {
    std::vector<std::vector<long long>> combinatorial;
    std::vector<std::vector<long long>> closed_form;
    std::vector<std::vector<std::string>> cup; // exact field values
    bool agree = true;
    std::size_t rank = 0;
    long long determinant = 0;
    bool determinant_magnitude = true; // |det| = (2n+1)^{n-1}
    bool adjacency_identity = true;    // -C(2I + D) = (2n+1) I
    std::vector<std::string> mismatches;
};

std::vector<std::vector<long long>> c_matrix_combinatorial(const Algebra& A);
std::vector<std::vector<long long>> c_matrix_closed_form(int n);
// engine may be null, in which case the cup route is skipped
CMatrixReport c_matrix(const Algebra& A, YonedaEngine* engine);

} // namespace preproj
