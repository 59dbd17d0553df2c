#pragma once

#include "preproj/exactla.hpp"

#include <map>
#include <string>
#include <vector>

namespace preproj {

// Arrow ids: 0 is the loop eps at vertex 1, 1..n-1 are a_i : i -> i+1,
// n..2n-2 are abar_i : i+1 -> i. Vertices are numbered from 1.
struct Arrow {
    int id = 0;
    int source = 0;
    int target = 0;
    int bar = 0;
    std::string name;
};

struct Monomial {
    int id = 0;
    int source = 0;
    int target = 0;
    int degree = 0;
    std::vector<int> path; // arrow ids, left to right
    int sign = 1;
    std::string name;
};

// sign * basis[id]; sign == 0 encodes the zero element.
struct SignedMono {
    int sign = 0;
    int id = -1;
    bool zero() const { return sign == 0; }
    bool operator==(const SignedMono& o) const { return sign == o.sign && (sign == 0 || id == o.id); }
};

using AlgebraElement = std::map<int, Scalar>;

enum class SocleSign { canonical, unsigned_top };

class Algebra {
public:
    static Algebra build(int n, const FieldSpec& field, SocleSign convention = SocleSign::canonical);

    int n() const { return n_; }
    const FieldSpec& field() const { return field_; }
    SocleSign convention() const { return convention_; }
    std::size_t dim() const { return basis_.size(); }
    int top_degree() const { return 2 * n_ - 1; }

    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    const Monomial& mono(int id) const { return basis_[id]; }

    int eps() const { return 0; }
    int a(int i) const { return i; }
    int abar(int i) const { return n_ - 1 + i; }

    int vertex(int i) const { return vertex_ids_[i - 1]; }
    int socle(int i) const { return socle_ids_[i - 1]; }
    int arrow_mono(int a) const { return arrow_ids_[a]; }
    // id of the basis monomial in e_i Lambda_deg e_j, or -1
    int find(int i, int j, int deg) const;
    const std::vector<int>& block(int i, int j) const { return blocks_[(i - 1) * n_ + (j - 1)]; }
    // all basis monomials starting (ending) at vertex v
    const std::vector<int>& starting_at(int v) const { return starting_[v - 1]; }
    const std::vector<int>& ending_at(int v) const { return ending_[v - 1]; }

    SignedMono product(int b, int c) const { return table_[static_cast<std::size_t>(b) * dim() + c]; }
    SignedMono path_value(const std::vector<int>& path, int start_vertex) const;

    AlgebraElement unit() const;
    AlgebraElement element(int id) const;
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
    AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y, const Scalar& c) const;
    AlgebraElement power(const AlgebraElement& x, int k) const;

    std::vector<std::vector<long long>> cartan_matrix() const;

    // x_0 = sum_{i=1}^{n-1} (-1)^i a_i abar_i
    AlgebraElement x0() const;
    // {1, x_0, ..., x_0^{n-1}, w_1, ..., w_n}
    std::vector<AlgebraElement> center_basis() const;
    // dimension of the commutant of all arrows, by direct solve
    std::size_t center_dimension() const;
    std::vector<AlgebraElement> socle_basis() const;

    std::string element_str(const AlgebraElement& x) const;

private:
    int n_ = 0;
    FieldSpec field_;
    SocleSign convention_ = SocleSign::canonical;
    std::vector<Arrow> arrows_;
    std::vector<Monomial> basis_;
    std::vector<int> vertex_ids_, socle_ids_, arrow_ids_;
    std::vector<std::vector<int>> blocks_, starting_, ending_;
    std::vector<SignedMono> table_;
};

long long determinant(const std::vector<std::vector<long long>>& m);

struct StructureReport {
    bool graded_pieces = true;   // dim e_i Lambda_d e_j <= 1
    bool degree_sets = true;     // degrees occurring in e_i B e_j
    bool vanishing_bound = true; // abar..abar eps^2k a..a = 0 beyond k = n-i-j+1
    bool identity_loop = true;   // a_1..a_{j-1} abar_{j-1}..abar_1 = (-1)^{j(j-1)/2} eps^{2(j-1)}
    bool identity_turn = true;   // a_1..a_{j-1} abar_{j-1} = (-1)^{j-1} eps^2 a_1..a_{j-2}
    bool identity_shift = true;  // abar_i a_i..a_j = (-1)^{j-i+1} a_{i+1}..a_{j+1} abar_{j+1}
    bool associative = true;     // only when requested
    std::vector<std::string> failures;
    bool pass() const
    {
        return graded_pieces && degree_sets && vanishing_bound && identity_loop && identity_turn && identity_shift &&
               associative;
    }
};

StructureReport check_structure(const Algebra& A, bool full_associativity);

} // namespace preproj
