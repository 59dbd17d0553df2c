#pragma once

#include "preproj/resolution.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace preproj {

// coordinate of V^i = Hom(P^{-i}, Lambda), identified with (+) e_s Lambda e_t
struct CochainCoord {
    int summand = 0;
    int mono = 0;
};

enum class RtauSign { dualized, flipped };

class CochainComplex {
public:
    // Explicit formulas, cross-checked against the dualized resolution;
    // throws std::logic_error("complex mismatch") on disagreement.
    static CochainComplex build(const Resolution& r, int maxdeg);
    // Hom(-, Lambda) applied to the resolution differentials
    static CochainComplex dualized(const Resolution& r, int maxdeg);
    // delta*, R*, k*, delta_tau*, R_tau*, k_tau* repeated with period 6
    static CochainComplex explicit_formulas(const Algebra& A, int maxdeg, RtauSign sign = RtauSign::dualized);

    const Algebra& algebra() const { return *alg_; }
    int maxdeg() const { return static_cast<int>(spaces_.size()) - 1; }
    bool loops(int i) const { return i % 3 != 1; }
    const std::vector<CochainCoord>& basis(int i) const { return spaces_.at(i); }
    std::size_t dim(int i) const { return spaces_.at(i).size(); }
    // V^i -> V^{i+1}
    const Matrix& differential(int i) const { return diff_.at(i); }
    int index_of(int i, int summand, int mono) const;

    // component-wise construction; components[s] lies in e_s Lambda e_t of summand s
    Vector vector_from(int i, const std::vector<AlgebraElement>& components) const;
    std::vector<AlgebraElement> components(int i, const Vector& v) const;
    // left multiplication by a central element
    Vector central_action(int i, const AlgebraElement& z, const Vector& v) const;

private:
    static CochainComplex skeleton(const Algebra& A, int maxdeg);
    const Algebra* alg_ = nullptr;
    std::vector<std::vector<CochainCoord>> spaces_;
    std::vector<Matrix> diff_;
};

std::vector<std::size_t> hh_dims(const CochainComplex& c, int upto);
std::vector<std::size_t> homology_dims(const Resolution& r, int upto);
std::size_t commutator_quotient_dim(const Algebra& A);

struct CyclicReport {
    std::vector<std::size_t> hc;
    std::vector<long long> connes_image; // dim B^i
    bool pass = true;
};
// throws std::invalid_argument("unsupported characteristic") outside characteristic 0
CyclicReport cyclic_dims(const Algebra& A, const std::vector<std::size_t>& homology, int upto);

struct CanonicalClass {
    std::string label;
    Vector cocycle;
};

// canonical cocycles in degrees 0..maxdeg-1, extended with period 6
class CanonicalBasis {
public:
    // throws std::logic_error("canonical basis failure: ...") if a degree is not spanned
    CanonicalBasis(const CochainComplex& c, int upto);

    const CochainComplex& complex() const { return *c_; }
    int upto() const { return static_cast<int>(classes_.size()) - 1; }
    const std::vector<CanonicalClass>& classes(int i) const { return classes_.at(i); }
    std::size_t size(int i) const { return classes_.at(i).size(); }
    bool is_cocycle(int i, const Vector& v) const;
    bool is_coboundary(int i, const Vector& v) const;
    // coordinates over the canonical classes; throws on a non-cocycle or failed identification
    Vector identify(int i, const Vector& cocycle) const;

private:
    const CochainComplex* c_;
    std::vector<std::vector<CanonicalClass>> classes_;
    std::vector<Solver> identify_;
    std::vector<std::size_t> boundary_rank_;
};

struct ZModuleReport {
    bool socle_kills = true;
    bool x0_kills_23 = true;
    bool x0_power_nonzero = true;
    std::vector<std::string> failures;
    bool pass() const { return socle_kills && x0_kills_23 && x0_power_nonzero; }
};

ZModuleReport zmodule_checks(const CanonicalBasis& b);

} // namespace preproj
