#include "hocalc/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <utility>

namespace hocalc {

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p)
{
    std::uint64_t result = 1;
    base %= p;
    while (exp) {
        if (exp & 1)
            result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) { return mod_pow(a, p - 2, p); }

std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p)
{
    mpz_class r = z % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

void require_same(Field a, Field b)
{
    if (!(a == b))
        throw std::logic_error("field mismatch: " + a.name() + " vs " + b.name());
}

// Dense residue matrix for the F_p fast path.
struct ModMat {
    std::size_t rows, cols;
    std::uint32_t p;
    std::vector<std::uint32_t> a;
    std::uint32_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

ModMat to_mod(const Mat& m)
{
    ModMat out{m.rows(), m.cols(), m.field().modulus(), std::vector<std::uint32_t>(m.rows() * m.cols())};
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out.a[r * m.cols() + c] = m(r, c).residue();
    return out;
}

RrefResult rref_mod(const Mat& m)
{
    ModMat a = to_mod(m);
    const std::uint64_t p = a.p;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t piv = r;
        while (piv < a.rows && a.at(piv, c) == 0)
            ++piv;
        if (piv == a.rows)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < a.cols; ++j)
                std::swap(a.at(piv, j), a.at(r, j));
        std::uint64_t inv = mod_inverse(a.at(r, c), a.p);
        for (std::size_t j = c; j < a.cols; ++j)
            a.at(r, j) = static_cast<std::uint32_t>(a.at(r, j) * inv % p);
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == r || a.at(i, c) == 0)
                continue;
            std::uint64_t factor = p - a.at(i, c);
            for (std::size_t j = c; j < a.cols; ++j)
                a.at(i, j) = static_cast<std::uint32_t>((a.at(i, j) + factor * a.at(r, j)) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    Mat out(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            out(i, j) = Scalar(m.field(), static_cast<long>(a.at(i, j)));
    return {std::move(out), pivots, pivots.size()};
}

// Fraction-free Gauss-Jordan: rows are first cleared of denominators, then every
// update divides exactly by the previous pivot, so entries stay integral minors.
RrefResult rref_rational(const Mat& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<mpz_class> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < cols; ++c)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).rational().get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) {
            const mpq_class& q = m(r, c).rational();
            a[r * cols + c] = q.get_num() * (l / q.get_den());
        }
    }
    auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return a[r * cols + c]; };

    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t r = 0;
    mpz_class t;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && at(piv, c) == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(at(piv, j), at(r, j));
        const mpz_class p = at(r, c);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            const mpz_class f = at(i, c);
            for (std::size_t j = 0; j < cols; ++j) {
                t = p * at(i, j) - f * at(r, j);
                assert(mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()));
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = p;
        pivots.push_back(c);
        ++r;
    }
    Mat out(m.field(), rows, cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const mpz_class& p = at(i, pivots[i]);
        for (std::size_t j = 0; j < cols; ++j)
            out(i, j) = Scalar(m.field(), mpq_class(at(i, j), p));
    }
    return {std::move(out), pivots, pivots.size()};
}

} // namespace

// --- Field -----------------------------------------------------------------

Field Field::prime(std::uint32_t p)
{
    if (p >= (1u << 31) || !is_prime(p))
        throw SchemaError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
    return Field(p);
}

Field Field::parse(std::string_view spec)
{
    if (spec == "q" || spec == "Q")
        return rationals();
    if (spec == "f2")
        return prime(2);
    if (spec == "f3")
        return prime(3);
    if (spec.starts_with("fp:")) {
        std::uint32_t p = 0;
        auto body = spec.substr(3);
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
        if (ec != std::errc() || ptr != body.data() + body.size())
            throw SchemaError("bad field modulus in '" + std::string(spec) + "'");
        return prime(p);
    }
    throw SchemaError("unknown field '" + std::string(spec) + "' (expected q, f2, f3 or fp:<p>)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

// --- Scalar ----------------------------------------------------------------

void Scalar::init_zero()
{
    if (field_.is_rational())
        value_ = mpq_class(0);
}

Scalar::Scalar(Field f, long v) : field_(f), value_(std::uint32_t{0})
{
    if (f.is_rational()) {
        value_ = mpq_class(v);
    } else {
        long p = f.modulus();
        long r = v % p;
        if (r < 0)
            r += p;
        value_ = static_cast<std::uint32_t>(r);
    }
}

Scalar::Scalar(Field f, const mpq_class& q) : field_(f), value_(std::uint32_t{0})
{
    if (f.is_rational()) {
        mpq_class c = q;
        c.canonicalize();
        value_ = c;
    } else {
        std::uint32_t p = f.modulus();
        std::uint32_t den = reduce_mpz(q.get_den(), p);
        if (den == 0)
            throw SchemaError("denominator vanishes in " + f.name());
        value_ = static_cast<std::uint32_t>(std::uint64_t(reduce_mpz(q.get_num(), p)) * mod_inverse(den, p) % p);
    }
}

Scalar Scalar::parse(Field f, std::string_view text)
{
    mpq_class q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0)
        throw SchemaError("malformed scalar '" + std::string(text) + "'");
    if (q.get_den() == 0)
        throw SchemaError("zero denominator in '" + std::string(text) + "'");
    return Scalar(f, q);
}

bool Scalar::is_zero() const
{
    return field_.is_rational() ? rational() == 0 : residue() == 0;
}

bool Scalar::is_one() const
{
    return field_.is_rational() ? rational() == 1 : residue() == 1;
}

Scalar Scalar::operator+(const Scalar& o) const
{
    require_same(field_, o.field_);
    if (field_.is_rational())
        return Scalar(field_, mpq_class(rational() + o.rational()));
    Scalar s(field_);
    s.value_ = static_cast<std::uint32_t>((std::uint64_t(residue()) + o.residue()) % field_.modulus());
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const
{
    if (field_.is_rational())
        return Scalar(field_, mpq_class(-rational()));
    Scalar s(field_);
    s.value_ = residue() == 0 ? 0u : field_.modulus() - residue();
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const
{
    require_same(field_, o.field_);
    if (field_.is_rational())
        return Scalar(field_, mpq_class(rational() * o.rational()));
    Scalar s(field_);
    s.value_ = static_cast<std::uint32_t>(std::uint64_t(residue()) * o.residue() % field_.modulus());
    return s;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw std::domain_error("inverse of zero");
    if (field_.is_rational())
        return Scalar(field_, mpq_class(1 / rational()));
    Scalar s(field_);
    s.value_ = mod_inverse(residue(), field_.modulus());
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const
{
    if (!(field_ == o.field_))
        return false;
    return field_.is_rational() ? rational() == o.rational() : residue() == o.residue();
}

std::string Scalar::str() const
{
    if (field_.is_rational())
        return rational().get_str();
    return std::to_string(residue());
}

// --- Vec -------------------------------------------------------------------

Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar(f)); }

Vec unit_vec(Field f, std::size_t n, std::size_t i)
{
    Vec v = zero_vec(f, n);
    v.at(i) = Scalar(f, 1);
    return v;
}

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec add(const Vec& a, const Vec& b)
{
    assert(a.size() == b.size());
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b)
{
    assert(a.size() == b.size());
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

Vec scale(const Scalar& s, const Vec& v)
{
    Vec out = v;
    for (auto& x : out)
        x *= s;
    return out;
}

// --- Mat -------------------------------------------------------------------

Mat::Mat(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar(f))
{
}

Mat Mat::identity(Field f, std::size_t n)
{
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Scalar(f, 1);
    return m;
}

Mat Mat::from_ints(Field f, const std::vector<std::vector<long>>& rows)
{
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    Mat m(f, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < nc; ++c)
            m(r, c) = Scalar(f, rows[r][c]);
    }
    return m;
}

Mat Mat::from_columns(Field f, std::size_t rows, std::span<const Vec> cols)
{
    Mat m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = cols[c][r];
    }
    return m;
}

Mat Mat::from_rows(Field f, std::size_t cols, std::span<const Vec> rows)
{
    Mat m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Vec Mat::column(std::size_t c) const
{
    Vec v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v.push_back((*this)(r, c));
    return v;
}

Vec Mat::row(std::size_t r) const
{
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<Vec> Mat::columns() const
{
    std::vector<Vec> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        out.push_back(column(c));
    return out;
}

Mat Mat::transpose() const
{
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    assert(r0 + nr <= rows_ && c0 + nc <= cols_);
    Mat b(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& m)
{
    assert(r0 + m.rows() <= rows_ && c0 + m.cols() <= cols_);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            (*this)(r0 + r, c0 + c) = m(r, c);
}

bool Mat::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Mat Mat::operator*(const Mat& o) const
{
    require_same(field_, o.field_);
    if (cols_ != o.rows_)
        throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                                    std::to_string(o.cols_));
    Mat out(field_, rows_, o.cols_);
    if (field_.is_rational()) {
        mpq_class acc;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < o.cols_; ++c) {
                acc = 0;
                for (std::size_t k = 0; k < cols_; ++k) {
                    const auto& a = (*this)(r, k).rational();
                    if (a != 0)
                        acc += a * o(k, c).rational();
                }
                out(r, c) = Scalar(field_, acc);
            }
        return out;
    }
    const std::uint64_t p = field_.modulus();
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = (*this)(r, k).residue();
            if (a == 0)
                continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                acc[c] = (acc[c] + a * o(k, c).residue()) % p;
        }
        for (std::size_t c = 0; c < o.cols_; ++c)
            out(r, c) = Scalar(field_, static_cast<long>(acc[c]));
    }
    return out;
}

Vec Mat::operator*(const Vec& v) const
{
    Mat col = Mat::from_columns(field_, v.size(), std::span<const Vec>(&v, 1));
    return ((*this) * col).column(0);
}

Mat Mat::operator+(const Mat& o) const
{
    require_same(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix sum shape mismatch");
    Mat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += o.data_[i];
    return out;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const
{
    Mat out = *this;
    for (auto& x : out.data_)
        x = -x;
    return out;
}

Mat Mat::scaled(const Scalar& s) const
{
    Mat out = *this;
    for (auto& x : out.data_)
        x *= s;
    return out;
}

bool Mat::operator==(const Mat& o) const
{
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Mat hstack(Field f, std::size_t rows, std::span<const Mat> blocks)
{
    std::size_t cols = 0;
    for (const auto& b : blocks)
        cols += b.cols();
    Mat out(f, rows, cols);
    std::size_t c = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows)
            throw std::invalid_argument("hstack row mismatch");
        out.set_block(0, c, b);
        c += b.cols();
    }
    return out;
}

Mat vstack(Field f, std::size_t cols, std::span<const Mat> blocks)
{
    std::size_t rows = 0;
    for (const auto& b : blocks)
        rows += b.rows();
    Mat out(f, rows, cols);
    std::size_t r = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw std::invalid_argument("vstack column mismatch");
        out.set_block(r, 0, b);
        r += b.rows();
    }
    return out;
}

Mat direct_sum(const Mat& a, const Mat& b)
{
    Mat out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

// --- elimination -----------------------------------------------------------

RrefResult rref(const Mat& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return {m, {}, 0};
    return m.field().is_rational() ? rref_rational(m) : rref_mod(m);
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

std::vector<Vec> kernel_basis(const Mat& m)
{
    const Field f = m.field();
    auto [red, pivots, rk] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vec v = zero_vec(f, m.cols());
        v[free] = Scalar(f, 1);
        for (std::size_t k = 0; k < rk; ++k)
            v[pivots[k]] = -red(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side has wrong length");
    const Field f = m.field();
    Mat aug(f, m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t r = 0; r < m.rows(); ++r)
        aug(r, m.cols()) = b[r];
    auto [red, pivots, rk] = rref(aug);
    if (rk > 0 && pivots.back() == m.cols())
        return std::nullopt;
    Vec x = zero_vec(f, m.cols());
    for (std::size_t k = 0; k < rk; ++k)
        x[pivots[k]] = red(k, m.cols());
    return x;
}

std::optional<Mat> solve_many(const Mat& m, const Mat& b)
{
    if (b.rows() != m.rows())
        throw std::invalid_argument("solve_many: right-hand side has wrong height");
    const Field f = m.field();
    Mat aug(f, m.rows(), m.cols() + b.cols());
    aug.set_block(0, 0, m);
    aug.set_block(0, m.cols(), b);
    auto [red, pivots, rk] = rref(aug);
    Mat x(f, m.cols(), b.cols());
    for (std::size_t k = 0; k < rk; ++k) {
        if (pivots[k] >= m.cols())
            return std::nullopt;
        for (std::size_t c = 0; c < b.cols(); ++c)
            x(pivots[k], c) = red(k, m.cols() + c);
    }
    return x;
}

std::vector<Vec> column_space_basis(const Mat& m)
{
    std::vector<Vec> out;
    for (auto p : rref(m).pivots)
        out.push_back(m.column(p));
    return out;
}

std::vector<Vec> span_basis(Field f, std::size_t n, std::span<const Vec> vectors)
{
    if (vectors.empty())
        return {};
    auto red = rref(Mat::from_rows(f, n, vectors));
    std::vector<Vec> out;
    for (std::size_t k = 0; k < red.rank; ++k)
        out.push_back(red.reduced.row(k));
    return out;
}

bool in_span(Field f, std::size_t n, std::span<const Vec> basis, const Vec& v)
{
    if (is_zero(v))
        return true;
    if (basis.empty())
        return false;
    return solve(Mat::from_columns(f, n, basis), v).has_value();
}

Vec QuotientMap::section(const Vec& coords) const
{
    const Field f = projection.field();
    Vec v = zero_vec(f, projection.cols());
    for (std::size_t t = 0; t < complement.size(); ++t)
        v[complement[t]] = coords.at(t);
    return v;
}

QuotientMap quotient_coords(Field f, std::size_t ambient_dim, std::span<const Vec> subspace)
{
    std::vector<Vec> rows(subspace.begin(), subspace.end());
    RrefResult red = rows.empty() ? RrefResult{Mat(f, 0, ambient_dim), {}, 0}
                                  : rref(Mat::from_rows(f, ambient_dim, rows));
    std::vector<bool> is_pivot(ambient_dim, false);
    for (auto p : red.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> complement;
    for (std::size_t j = 0; j < ambient_dim; ++j)
        if (!is_pivot[j])
            complement.push_back(j);

    // q(v)_t = v[j_t] - sum_k v[p_k] * R[k][j_t]
    Mat q(f, complement.size(), ambient_dim);
    for (std::size_t t = 0; t < complement.size(); ++t) {
        q(t, complement[t]) = Scalar(f, 1);
        for (std::size_t k = 0; k < red.rank; ++k)
            q(t, red.pivots[k]) = -red.reduced(k, complement[t]);
    }
    return {std::move(q), std::move(complement)};
}

} // namespace hocalc
