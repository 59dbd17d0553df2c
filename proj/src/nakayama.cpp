#include "preproj/nakayama.hpp"

#include <stdexcept>

namespace preproj {

NakayamaForm NakayamaForm::associated(const Algebra& A)
{
    NakayamaForm f;
    f.alg_ = &A;
    const std::size_t dim = A.dim();
    const int top = A.top_degree();
    f.gram_.assign(dim * dim, 0);
    std::vector<SparseRow> rows(dim);
    for (const auto& b : A.basis())
        for (int c : A.starting_at(b.target)) {
            if (A.mono(c).target != b.source || b.degree + A.mono(c).degree != top) continue;
            SignedMono p = A.product(b.id, c);
            if (p.zero() || p.id != A.socle(b.source)) continue;
            f.gram_[b.id * dim + c] = p.sign;
            rows[b.id].emplace_back(static_cast<std::uint32_t>(c), p.sign);
        }
    f.gram_rank_ = sparse_rank(A.field(), rows);
    if (f.gram_rank_ != dim) throw std::logic_error("degenerate form");
    f.dual_.resize(dim);
    for (const auto& b : A.basis()) {
        int partner = A.find(b.target, b.source, top - b.degree);
        int g = partner >= 0 ? f.pair(b.id, partner) : 0;
        if (g == 0) throw std::logic_error("degenerate form");
        f.dual_[b.id] = {g, partner};
    }
    return f;
}

Scalar NakayamaForm::form(const AlgebraElement& x, const AlgebraElement& y) const
{
    AlgebraElement p = alg_->multiply(x, y);
    Scalar s = Scalar::zero(alg_->field());
    for (int i = 1; i <= alg_->n(); ++i) {
        auto it = p.find(alg_->socle(i));
        if (it != p.end()) s += it->second;
    }
    return s;
}

SignedMono arrow_dual_product(const NakayamaForm& f, int arrow)
{
    const Algebra& A = f.algebra();
    SignedMono d = f.dual(A.arrow_mono(arrow));
    SignedMono p = A.product(d.id, A.arrow_mono(arrow));
    p.sign *= d.sign;
    return p;
}

DualizabilityReport certify_dualizable(const NakayamaForm& f)
{
    const Algebra& A = f.algebra();
    DualizabilityReport r;
    for (const auto& ar : A.arrows()) {
        SignedMono p = arrow_dual_product(f, ar.id);
        if (!(p == SignedMono{1, A.socle(ar.target)})) {
            r.arrow_condition = false;
            std::string rhs = p.zero() ? "0" : (p.sign < 0 ? "-" : "") + std::string("[") + A.mono(p.id).name + "]";
            r.witnesses.push_back(ar.name + "* " + ar.name + " = " + rhs + ", expected w" +
                                  std::to_string(ar.target));
        }
    }
    for (const auto& b : A.basis()) {
        SignedMono d = f.dual(b.id);
        SignedMono dd = f.dual(d.id);
        dd.sign *= d.sign;
        if (!(dd == SignedMono{1, b.id})) {
            r.double_dual = false;
            r.witnesses.push_back("[" + b.name + "]** = -[" + b.name + "]");
        }
    }
    for (const auto& b : A.basis())
        for (const auto& c : A.basis())
            if (b.id < c.id && f.pair(b.id, c.id) != f.pair(c.id, b.id)) {
                r.symmetric = false;
                r.witnesses.push_back("([" + b.name + "], [" + c.name + "]) != ([" + c.name + "], [" + b.name + "])");
            }
    return r;
}

bool dagger_identities(const NakayamaForm& f, std::string* failure)
{
    const Algebra& A = f.algebra();
    const int n = A.n();
    for (int i = 1; i <= n; ++i)
        for (int x : A.block(i, 1)) {
            const Monomial& m = A.mono(x);
            int k = m.degree - (i - 1);
            std::vector<int> dag(static_cast<std::size_t>(2 * (n - i) + 1 - k), A.eps());
            for (int s = 1; s < i; ++s) dag.push_back(A.a(s));
            SignedMono d = A.path_value(dag, 1);
            SignedMono p;
            if (!d.zero()) {
                p = A.product(x, d.id);
                p.sign *= d.sign;
            }
            int expect = ((i * (i - 1) / 2) % 2) ? -1 : 1;
            if (!(p == SignedMono{expect, A.socle(i)})) {
                if (failure) *failure = "x x^dagger fails for x = " + m.name;
                return false;
            }
        }
    return true;
}

} // namespace preproj
