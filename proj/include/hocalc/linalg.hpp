#pragma once

// Exact dense linear algebra over Q or a prime field F_p.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "hocalc/error.hpp"

namespace hocalc {

/// Ground field: the rationals (modulus 0) or F_p for a prime p < 2^31.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint32_t p);
    /// Parses "q", "f2", "f3", "fp:<p>".
    static Field parse(std::string_view spec);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t modulus() const { return p_; }
    std::string name() const;

    friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;
};

class Scalar {
public:
    explicit Scalar(Field f) : field_(f), value_(std::uint32_t{0}) { init_zero(); }
    Scalar(Field f, long v);
    Scalar(Field f, const mpq_class& q);

    /// Accepts "a/b", "-a", "a" in decimal. Over F_p the value is reduced.
    static Scalar parse(Field f, std::string_view text);

    Field field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Residue in [0, p) for prime fields.
    std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
    const mpq_class& rational() const { return std::get<mpq_class>(value_); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Integer for F_p, "a/b" or "a" for Q.
    std::string str() const;

private:
    void init_zero();

    Field field_;
    std::variant<std::uint32_t, mpq_class> value_;
};

using Vec = std::vector<Scalar>;

Vec zero_vec(Field f, std::size_t n);
Vec unit_vec(Field f, std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& v);

/// Row-major dense matrix.
class Mat {
public:
    Mat(Field f, std::size_t rows, std::size_t cols);

    static Mat identity(Field f, std::size_t n);
    static Mat from_ints(Field f, const std::vector<std::vector<long>>& rows);
    /// Columns must all have length `rows`.
    static Mat from_columns(Field f, std::size_t rows, std::span<const Vec> cols);
    static Mat from_rows(Field f, std::size_t cols, std::span<const Vec> rows);

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    Vec column(std::size_t c) const;
    Vec row(std::size_t r) const;
    std::vector<Vec> columns() const;

    Mat transpose() const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& m);

    bool is_zero() const;

    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Scalar& s) const;

    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

Mat hstack(Field f, std::size_t rows, std::span<const Mat> blocks);
Mat vstack(Field f, std::size_t cols, std::span<const Mat> blocks);
Mat direct_sum(const Mat& a, const Mat& b);

struct RrefResult {
    Mat reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
std::vector<Vec> kernel_basis(const Mat& m);

/// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<Vec> solve(const Mat& m, const Vec& b);

/// Some X with m X = b (column by column), or nullopt if any column fails.
std::optional<Mat> solve_many(const Mat& m, const Mat& b);

/// Basis of the column space, taken from the pivot columns of m.
std::vector<Vec> column_space_basis(const Mat& m);
/// Reduced basis of span(vectors) in dimension n.
std::vector<Vec> span_basis(Field f, std::size_t n, std::span<const Vec> vectors);
bool in_span(Field f, std::size_t n, std::span<const Vec> basis, const Vec& v);

/// Linear map q : K^n -> K^(n - r) whose kernel is exactly span(subspace),
/// r = dim span(subspace). Rows are indexed by the non-pivot coordinates of the
/// reduced subspace basis, so q restricted to those coordinates is the identity.
struct QuotientMap {
    Mat projection;
    /// Ambient coordinates of the complement (non-pivot) directions, in row order.
    std::vector<std::size_t> complement;

    /// Vector in the ambient space mapping to the given quotient coordinates.
    Vec section(const Vec& coords) const;
};

QuotientMap quotient_coords(Field f, std::size_t ambient_dim, std::span<const Vec> subspace);

} // namespace hocalc
