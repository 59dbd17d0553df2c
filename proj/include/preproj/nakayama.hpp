#pragma once

#include "preproj/algebra.hpp"

#include <string>
#include <vector>

namespace preproj {

class NakayamaForm {
public:
    // throws std::logic_error("degenerate form") when the gram matrix is singular
    static NakayamaForm associated(const Algebra& A);

    const Algebra& algebra() const { return *alg_; }
    // (b, c) for basis monomials
    int pair(int b, int c) const { return gram_[static_cast<std::size_t>(b) * alg_->dim() + c]; }
    // b* as a signed basis monomial
    SignedMono dual(int b) const { return dual_[b]; }
    Scalar form(const AlgebraElement& x, const AlgebraElement& y) const;
    std::size_t gram_rank() const { return gram_rank_; }

private:
    const Algebra* alg_ = nullptr;
    std::vector<int> gram_;
    std::vector<SignedMono> dual_;
    std::size_t gram_rank_ = 0;
};

struct DualizabilityReport {
    bool arrow_condition = true; // a* a = w_{t(a)}
    bool double_dual = true;     // b** = b
    bool symmetric = true;       // (b, c) = (c, b)
    std::vector<std::string> witnesses;
    bool pass() const { return arrow_condition && double_dual && symmetric; }
};

DualizabilityReport certify_dualizable(const NakayamaForm& f);

// a* a as a signed basis monomial
SignedMono arrow_dual_product(const NakayamaForm& f, int arrow);

// x x^dagger = (-1)^{i(i-1)/2} w_i for every x in e_i B e_1
bool dagger_identities(const NakayamaForm& f, std::string* failure = nullptr);

} // namespace preproj
