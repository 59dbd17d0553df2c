#include "preproj/exactla.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace preproj {

bool is_prime(std::uint64_t v)
{
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

FieldSpec::FieldSpec(std::uint32_t characteristic) : p_(characteristic)
{
    if (p_ == 2)
        throw std::invalid_argument(
            "characteristic 2 unsupported: the ground field must have characteristic different from 2");
    if (p_ != 0 && !is_prime(p_))
        throw std::invalid_argument("characteristic " + std::to_string(p_) + " is not prime");
    if (p_ >= (1u << 31))
        throw std::invalid_argument("characteristic too large");
}

namespace {

std::uint64_t mod_reduce(long long v, std::uint32_t p)
{
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += p;
    return static_cast<std::uint64_t>(m);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p)
{
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p), nr = static_cast<long long>(a);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("division by zero");
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace

Scalar::Scalar(const FieldSpec& f, long long v) : p_(f.characteristic())
{
    if (p_ == 0)
        q_ = mpq_class(mpz_class(static_cast<long>(v)));
    else
        r_ = mod_reduce(v, p_);
}

Scalar Scalar::fraction(const FieldSpec& f, long long num, long long den)
{
    if (den == 0) throw std::domain_error("division by zero");
    return Scalar(f, num) / Scalar(f, den);
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }

bool Scalar::is_one() const { return p_ ? r_ == 1 : q_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const
{
    Scalar s(*this);
    s += o;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const
{
    Scalar s(*this);
    s -= o;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const
{
    Scalar s(*this);
    s *= o;
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const
{
    Scalar s(*this);
    if (p_)
        s.r_ = r_ ? p_ - r_ : 0;
    else
        s.q_ = -q_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (p_) {
        r_ += o.r_;
        if (r_ >= p_) r_ -= p_;
    } else {
        q_ += o.q_;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    if (p_)
        r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_;
    else
        q_ -= o.q_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (p_)
        r_ = (r_ * o.r_) % p_;
    else
        q_ *= o.q_;
    return *this;
}

Scalar Scalar::inverse() const
{
    if (is_zero()) throw std::domain_error("division by zero");
    Scalar s(*this);
    if (p_)
        s.r_ = mod_inverse(r_, p_);
    else
        s.q_ = 1 / q_;
    return s;
}

bool Scalar::operator==(const Scalar& o) const { return p_ ? r_ == o.r_ : q_ == o.q_; }

std::optional<int> Scalar::as_unit_sign() const
{
    auto v = as_integer();
    if (v && *v >= -1 && *v <= 1) return static_cast<int>(*v);
    return std::nullopt;
}

std::optional<long long> Scalar::as_integer() const
{
    if (p_) {
        long long v = static_cast<long long>(r_);
        if (v > static_cast<long long>(p_ / 2)) v -= p_;
        return v;
    }
    if (q_.get_den() != 1 || !q_.get_num().fits_slong_p()) return std::nullopt;
    return q_.get_num().get_si();
}

std::string Scalar::str() const
{
    if (p_) return std::to_string(*as_integer());
    return q_.get_str();
}

Vector zero_vector(const FieldSpec& f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

bool is_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix::Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f))
{
}

Matrix Matrix::transpose() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Vector Matrix::apply(const Vector& v) const
{
    if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
    Vector out = zero_vector(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
    return out;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch");
    Matrix m(field_, rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(r, k).is_zero()) continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                if (!o.at(k, c).is_zero()) m.at(r, c) += at(r, k) * o.at(k, c);
        }
    return m;
}

bool Matrix::operator==(const Matrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::identity(const FieldSpec& f, std::size_t n)
{
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_ints(const FieldSpec& f, const std::vector<std::vector<long long>>& rows)
{
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = Scalar(f, rows[r][c]);
    }
    return m;
}

namespace {

// In-place reduced row echelon form restricted to the first `limit` columns
// for pivot search; row operations act on the whole row.
std::vector<std::size_t> rref_in_place(Matrix& m, std::size_t limit)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < limit && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
        Scalar inv = m.at(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c)
            if (!m.at(row, c).is_zero()) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Scalar f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m.at(row, c).is_zero()) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

Matrix reverse_columns(const Matrix& m)
{
    Matrix out(m.field(), m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, m.cols() - 1 - c) = m.at(r, c);
    return out;
}

} // namespace

Echelon echelonize(const Matrix& m)
{
    Echelon e;
    e.reduced = m;
    e.pivots = rref_in_place(e.reduced, m.cols());
    e.rank = e.pivots.size();
    return e;
}

std::size_t rank(const Matrix& m) { return echelonize(m).rank; }

std::vector<Vector> kernel_basis(const Matrix& m)
{
    Echelon e = echelonize(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v = zero_vector(m.field(), m.cols());
        v[f] = Scalar::one(m.field());
        for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = -e.reduced.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b, bool reversed_pivots)
{
    if (b.size() != m.rows()) throw std::invalid_argument("dimension mismatch");
    Matrix src = reversed_pivots ? reverse_columns(m) : m;
    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = src.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    auto pivots = rref_in_place(aug, m.cols());
    for (std::size_t r = pivots.size(); r < m.rows(); ++r)
        if (!aug.at(r, m.cols()).is_zero()) return std::nullopt;
    Vector x = zero_vector(m.field(), m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::size_t c = reversed_pivots ? m.cols() - 1 - pivots[r] : pivots[r];
        x[c] = aug.at(r, m.cols());
    }
    return x;
}

Solver::Solver(const Matrix& m, bool reversed_pivots)
    : field_(m.field()), rows_(m.rows()), cols_(m.cols()), reversed_(reversed_pivots)
{
    Matrix src = reversed_pivots ? reverse_columns(m) : m;
    Matrix aug(field_, rows_, cols_ + rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = src.at(r, c);
        aug.at(r, cols_ + r) = Scalar::one(field_);
    }
    pivots_ = rref_in_place(aug, cols_);
    rank_ = pivots_.size();
    transform_ = Matrix(field_, rows_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < rows_; ++c) transform_.at(r, c) = aug.at(r, cols_ + c);
}

std::optional<Vector> Solver::solve(const Vector& b) const
{
    if (b.size() != rows_) throw std::invalid_argument("dimension mismatch");
    Vector t = transform_.apply(b);
    for (std::size_t r = rank_; r < rows_; ++r)
        if (!t[r].is_zero()) return std::nullopt;
    Vector x = zero_vector(field_, cols_);
    for (std::size_t r = 0; r < rank_; ++r) {
        std::size_t c = reversed_ ? cols_ - 1 - pivots_[r] : pivots_[r];
        x[c] = t[r];
    }
    return x;
}

namespace {

template <class T, class Ops>
std::size_t sparse_rank_impl(const std::vector<SparseRow>& rows, const Ops& ops)
{
    using Row = std::vector<std::pair<std::uint32_t, T>>;
    std::vector<Row> pivot_rows;
    std::unordered_map<std::uint32_t, std::size_t> pivot_of;
    for (const auto& src : rows) {
        Row row;
        for (const auto& [c, v] : src) {
            T x = ops.from(v);
            if (!ops.zero(x)) row.emplace_back(c, x);
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        while (!row.empty()) {
            auto it = pivot_of.find(row.front().first);
            if (it == pivot_of.end()) {
                T inv = ops.inv(row.front().second);
                for (auto& e : row) e.second = ops.mul(e.second, inv);
                pivot_of.emplace(row.front().first, pivot_rows.size());
                pivot_rows.push_back(std::move(row));
                break;
            }
            const Row& piv = pivot_rows[it->second];
            T f = row.front().second;
            Row out;
            out.reserve(row.size() + piv.size());
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < piv.size()) {
                if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                    out.push_back(row[i++]);
                } else if (i == row.size() || piv[j].first < row[i].first) {
                    out.emplace_back(piv[j].first, ops.neg(ops.mul(f, piv[j].second)));
                    ++j;
                } else {
                    T x = ops.sub(row[i].second, ops.mul(f, piv[j].second));
                    if (!ops.zero(x)) out.emplace_back(row[i].first, x);
                    ++i;
                    ++j;
                }
            }
            row = std::move(out);
        }
    }
    return pivot_rows.size();
}

struct ModOps {
    std::uint64_t p;
    std::uint64_t from(long long v) const { return mod_reduce(v, static_cast<std::uint32_t>(p)); }
    bool zero(std::uint64_t x) const { return x == 0; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t neg(std::uint64_t a) const { return a ? p - a : 0; }
    std::uint64_t inv(std::uint64_t a) const { return mod_inverse(a, p); }
};

struct RatOps {
    mpq_class from(long long v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
    bool zero(const mpq_class& x) const { return sgn(x) == 0; }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return a * b; }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return a - b; }
    mpq_class neg(const mpq_class& a) const { return -a; }
    mpq_class inv(const mpq_class& a) const { return 1 / a; }
};

} // namespace

std::size_t sparse_rank(const FieldSpec& f, const std::vector<SparseRow>& rows)
{
    if (f.rational()) return sparse_rank_impl<mpq_class>(rows, RatOps{});
    return sparse_rank_impl<std::uint64_t>(rows, ModOps{f.characteristic()});
}

} // namespace preproj
