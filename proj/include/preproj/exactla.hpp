#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace preproj {

// Ground field: 0 stands for the rationals, otherwise an odd prime.
class FieldSpec {
public:
    explicit FieldSpec(std::uint32_t characteristic = 0);

    std::uint32_t characteristic() const { return p_; }
    bool rational() const { return p_ == 0; }
    bool divides(long long v) const { return p_ != 0 && v % static_cast<long long>(p_) == 0; }

    bool operator==(const FieldSpec& o) const { return p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return p_ != o.p_; }

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t v);

class Scalar {
public:
    Scalar() = default;
    Scalar(const FieldSpec& f, long long v);
    static Scalar zero(const FieldSpec& f) { return Scalar(f, 0); }
    static Scalar one(const FieldSpec& f) { return Scalar(f, 1); }
    static Scalar fraction(const FieldSpec& f, long long num, long long den);

    std::uint32_t characteristic() const { return p_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // -1, 0, 1 or nullopt when the value is anything else
    std::optional<int> as_unit_sign() const;
    // exact integer value when one exists (rationals with denominator 1,
    // residues in symmetric range)
    std::optional<long long> as_integer() const;
    std::string str() const;

private:
    std::uint32_t p_ = 0;
    std::uint64_t r_ = 0;
    mpq_class q_;
};

using Vector = std::vector<Scalar>;

Vector zero_vector(const FieldSpec& f, std::size_t n);
bool is_zero(const Vector& v);

class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Matrix transpose() const;
    Vector apply(const Vector& v) const;
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool zero() const;

    static Matrix identity(const FieldSpec& f, std::size_t n);
    static Matrix from_ints(const FieldSpec& f, const std::vector<std::vector<long long>>& rows);

private:
    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

struct Echelon {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    Matrix reduced;
};

Echelon echelonize(const Matrix& m);
std::size_t rank(const Matrix& m);
std::vector<Vector> kernel_basis(const Matrix& m);

// Echelon-canonical solution (free variables zero). With reversed_pivots the
// column order is reversed before elimination, which picks a different
// particular solution when the kernel is nontrivial.
std::optional<Vector> solve(const Matrix& m, const Vector& b, bool reversed_pivots = false);

// Factor once, solve for many right-hand sides.
class Solver {
public:
    Solver() = default;
    Solver(const Matrix& m, bool reversed_pivots = false);
    std::optional<Vector> solve(const Vector& b) const;
    std::size_t rank() const { return rank_; }
    std::size_t cols() const { return cols_; }

private:
    FieldSpec field_;
    std::size_t rows_ = 0, cols_ = 0, rank_ = 0;
    bool reversed_ = false;
    std::vector<std::size_t> pivots_;
    Matrix transform_;
};

// Rank of an integer matrix given by sparse rows (column, value).
using SparseRow = std::vector<std::pair<std::uint32_t, long long>>;
std::size_t sparse_rank(const FieldSpec& f, const std::vector<SparseRow>& rows);

} // namespace preproj
