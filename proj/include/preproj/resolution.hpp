#pragma once

#include "preproj/nakayama.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace preproj {

// Lambda e_s (x) e_t Lambda; arrow >= 0 for the arrow-indexed summands of Q
struct Summand {
    int s = 0;
    int t = 0;
    int arrow = -1;
};

struct ProjectiveBimodule {
    bool arrow_indexed = false;
    std::vector<Summand> summands;
};

ProjectiveBimodule vertex_module(const Algebra& A); // P
ProjectiveBimodule arrow_module(const Algebra& A);  // Q

// coef * left (x) right placed in target summand
struct Term {
    Scalar coef;
    int target = 0;
    int left = 0;
    int right = 0;
};

// Element of a projective bimodule: (summand, left id, right id) -> coefficient
class BimoduleElement {
public:
    explicit BimoduleElement(const Algebra& A) : alg_(&A) {}
    void add(int summand, int left, int right, const Scalar& c);
    void add(int summand, SignedMono left, SignedMono right, const Scalar& c);
    bool empty() const { return terms_.empty(); }
    std::vector<Term> terms() const;
    const std::unordered_map<std::uint64_t, Scalar>& raw() const { return terms_; }

private:
    const Algebra* alg_;
    std::unordered_map<std::uint64_t, Scalar> terms_;
};

struct BimoduleMap {
    ProjectiveBimodule source, target;
    std::vector<std::vector<Term>> values; // per source summand generator
    int shift = 0;                         // internal degree added
};

BimoduleMap tau_twist(const Algebra& A, const BimoduleMap& m);
// image of x (x) y placed in summand s of m.source
void apply_to(const Algebra& A, const BimoduleMap& m, int s, SignedMono x, SignedMono y, const Scalar& c,
              BimoduleElement& out);
// g o f
BimoduleMap compose(const Algebra& A, const BimoduleMap& g, const BimoduleMap& f);
bool is_zero_map(const BimoduleMap& m);
bool same_map(const Algebra& A, const BimoduleMap& f, const BimoduleMap& g);

std::size_t flat_dim(const Algebra& A, const ProjectiveBimodule& P);
// rank of the underlying linear map, computed blockwise
std::size_t flat_rank(const Algebra& A, const BimoduleMap& m);
// rank of the multiplication map P -> Lambda
std::size_t multiplication_rank(const Algebra& A);

class Resolution {
public:
    // d^{-1} = delta, d^{-2} = R, d^{-3} = k, d^{-m} = tau twist of d^{-(m-3)}
    static Resolution build(const Algebra& A, const NakayamaForm& f, int depth);

    const Algebra& algebra() const { return *alg_; }
    int depth() const { return static_cast<int>(diff_.size()); }
    const ProjectiveBimodule& term(int m) const { return m % 3 == 1 ? Q_ : P_; }
    const BimoduleMap& differential(int m) const { return diff_.at(m - 1); }

private:
    const Algebra* alg_ = nullptr;
    ProjectiveBimodule P_, Q_;
    std::vector<BimoduleMap> diff_;
};

BimoduleMap make_delta(const Algebra& A);
BimoduleMap make_R(const Algebra& A);
BimoduleMap make_k(const Algebra& A, const NakayamaForm& f);

struct ExactnessEntry {
    int index = 0; // term P^{-index}
    std::size_t dim = 0;
    std::size_t rank_in = 0;  // rank of d^{-index-1}
    std::size_t rank_out = 0; // rank of d^{-index} (u at index 0)
    bool exact() const { return dim == rank_in + rank_out; }
};

struct ExactnessReport {
    bool squares_zero = true;
    bool augmentation_zero = true; // u o d^{-1} = 0
    bool exact = true;
    bool period_six = true; // d^{-m-6} = d^{-m}
    std::vector<ExactnessEntry> entries;
    std::vector<std::string> failures;
    bool pass() const { return squares_zero && augmentation_zero && exact && period_six; }
};

ExactnessReport certify_exact(const Resolution& r);

} // namespace preproj
