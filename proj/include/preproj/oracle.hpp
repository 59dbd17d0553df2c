#pragma once

#include "preproj/cochain.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace preproj {

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(int degree, std::uint64_t size, std::uint64_t budget);
    int degree() const { return degree_; }

private:
    int degree_;
};

struct OracleOptions {
    std::uint64_t budget = 20'000'000; // bound on (dim Lambda-bar)^{k+1} * dim Lambda
    int perturb_degree = -1;           // negative control: replace d^k by zero
    bool check_squares = true;
    unsigned threads = 1;
};

struct OracleResult {
    std::vector<std::size_t> dims;        // HH^0..HH^upto
    std::vector<std::size_t> screen_dims; // same ranks modulo a large prime
    std::vector<std::size_t> ranks;       // rank d^k, k = 0..upto
    bool squares_zero = true;
};

// reduced bar complex; throws BudgetExceeded ("budget exceeded at degree k ...")
OracleResult bar_dims(const Algebra& A, int upto, const OracleOptions& opt = {});

struct OracleComparison {
    std::vector<std::size_t> oracle, resolution;
    bool equal = true;
    int first_mismatch = -1;
    bool squares_zero = true;
};

OracleComparison compare(const Algebra& A, const CochainComplex& c, int upto, const OracleOptions& opt = {});

} // namespace preproj
