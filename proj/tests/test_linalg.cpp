#include "doctest.h"

#include <random>

#include "hocalc/linalg.hpp"

using namespace hocalc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

Mat random_mat(Field f, std::size_t r, std::size_t c, std::mt19937_64& rng, int lo = -4, int hi = 4)
{
    std::uniform_int_distribution<int> d(lo, hi);
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = Scalar(f, d(rng));
    return m;
}

// Textbook Gauss-Jordan with division at every step; the oracle for the
// fraction-free reduction.
Mat naive_rref(Mat m)
{
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        while (p < m.rows() && m(p, c).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::swap(m(row, j), m(p, j));
        Scalar inv = m(row, c).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, c).is_zero())
                continue;
            Scalar k = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = m(i, j) - k * m(row, j);
        }
        ++row;
    }
    return m;
}

} // namespace

TEST_CASE("field construction and parsing")
{
    CHECK(Field::parse("q").is_rational());
    CHECK(Field::parse("f2").modulus() == 2);
    CHECK(Field::parse("f3").modulus() == 3);
    CHECK(Field::parse("fp:101").modulus() == 101);
    CHECK_THROWS_AS(Field::prime(4), SchemaError);
    CHECK_THROWS_AS(Field::parse("fp:1"), SchemaError);
    CHECK_THROWS_AS(Field::parse("r"), SchemaError);
}

TEST_CASE("scalar arithmetic is exact")
{
    Scalar a = Scalar::parse(Q, "2/3");
    Scalar b = Scalar::parse(Q, "-5/7");
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(a.str() == "2/3");
    CHECK(Scalar::parse(Q, "4/2").str() == "2");
    Scalar c(F3, 5);
    CHECK(c.residue() == 2);
    CHECK(c * c.inverse() == Scalar(F3, 1));
    CHECK(Scalar(F3, -1).residue() == 2);
    CHECK_THROWS(Scalar(Q, 0).inverse());

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int t = 0; t < 200; ++t) {
        Scalar x(Q, mpq_class(d(rng), 1 + std::abs(d(rng))));
        Scalar y(Q, mpq_class(d(rng), 1 + std::abs(d(rng))));
        CHECK((x + y) - y == x);
        Scalar u(Field::prime(101), d(rng)), v(Field::prime(101), d(rng));
        CHECK((u + v) - v == u);
    }
}

TEST_CASE("rref examples")
{
    auto id = Mat::identity(Q, 3);
    auto r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
    CHECK(r.rank == 3);

    Mat z(Q, 2, 4);
    auto rz = rref(z);
    CHECK(rz.reduced == z);
    CHECK(rz.pivots.empty());
    CHECK(rz.rank == 0);

    auto rr = rref(Mat::from_ints(Q, {{1, 2}, {2, 4}}));
    CHECK(rr.reduced == Mat::from_ints(Q, {{1, 2}, {0, 0}}));
    CHECK(rr.rank == 1);
}

TEST_CASE("kernel examples")
{
    CHECK(kernel_basis(Mat::identity(F3, 4)).empty());
    CHECK(kernel_basis(Mat(Q, 3, 3)).size() == 3);
    auto k = kernel_basis(Mat::from_ints(F2, {{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vec{Scalar(F2, 1), Scalar(F2, 1)});
}

TEST_CASE("solve examples")
{
    Vec b{Scalar(Q, 3), Scalar(Q, -2)};
    auto x = solve(Mat::identity(Q, 2), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve(Mat(Q, 2, 2), b));
    auto h = solve(Mat::from_ints(Q, {{2}}), Vec{Scalar(Q, 1)});
    REQUIRE(h);
    CHECK((*h)[0] == Scalar::parse(Q, "1/2"));
}

TEST_CASE("quotient_coords examples")
{
    std::vector<Vec> full{unit_vec(F2, 2, 0), unit_vec(F2, 2, 1)};
    CHECK(quotient_coords(F2, 2, full).projection.rows() == 0);

    auto q0 = quotient_coords(F2, 2, std::vector<Vec>{});
    CHECK(q0.projection == Mat::identity(F2, 2));

    std::vector<Vec> diag{Vec{Scalar(F2, 1), Scalar(F2, 1)}};
    auto q = quotient_coords(F2, 2, diag);
    REQUIRE(q.projection.rows() == 1);
    Vec a = q.projection * unit_vec(F2, 2, 0);
    Vec c = q.projection * unit_vec(F2, 2, 1);
    CHECK(a == c);
    CHECK_FALSE(is_zero(a));
}

TEST_CASE("fraction-free rref agrees with naive elimination over Q")
{
    std::mt19937_64 rng(0x5eed);
    for (int t = 0; t < 150; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
        Mat m = random_mat(Q, r, c, rng, -9, 9);
        if (t % 3 == 0) {
            // force dependent rows
            for (std::size_t j = 0; j < c; ++j)
                m(r - 1, j) = m(0, j) * Scalar(Q, 3) - m(r / 2, j);
        }
        CHECK(rref(m).reduced == naive_rref(m));
    }
}

TEST_CASE("prime-field rref agrees with naive elimination")
{
    std::mt19937_64 rng(11);
    for (Field f : {F2, F3, Field::prime(7), Field::prime(2147483647)}) {
        for (int t = 0; t < 60; ++t) {
            Mat m = random_mat(f, 1 + rng() % 6, 1 + rng() % 6, rng);
            CHECK(rref(m).reduced == naive_rref(m));
        }
    }
}

TEST_CASE("linear algebra invariants on random matrices")
{
    std::mt19937_64 rng(2024);
    for (Field f : {Q, F2, F3}) {
        for (int t = 0; t < 80; ++t) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
            Mat m = random_mat(f, r, c, rng, -2, 2);
            auto ker = kernel_basis(m);
            for (const auto& k : ker)
                CHECK(is_zero(m * k));
            auto red = rref(m);
            CHECK(red.rank + ker.size() == c);
            CHECK(rref(red.reduced).reduced == red.reduced);
            for (std::size_t k = 1; k < red.pivots.size(); ++k)
                CHECK(red.pivots[k - 1] < red.pivots[k]);

            Vec b(r, Scalar(f));
            for (auto& s : b)
                s = Scalar(f, static_cast<long>(rng() % 5) - 2);
            if (auto x = solve(m, b))
                CHECK(m * *x == b);
            Vec in_image = m * Vec(c, Scalar(f, 1));
            auto y = solve(m, in_image);
            REQUIRE(y);
            CHECK(m * *y == in_image);
        }
    }
}

TEST_CASE("quotient map kernel is exactly the subspace")
{
    std::mt19937_64 rng(99);
    for (Field f : {Q, F2, F3}) {
        for (int t = 0; t < 50; ++t) {
            std::size_t n = 1 + rng() % 5, k = rng() % 4;
            std::vector<Vec> sub;
            for (std::size_t i = 0; i < k; ++i)
                sub.push_back(random_mat(f, n, 1, rng, -2, 2).column(0));
            auto q = quotient_coords(f, n, sub);
            std::size_t dim_sub = span_basis(f, n, sub).size();
            CHECK(q.projection.rows() == n - dim_sub);
            for (const auto& s : sub)
                CHECK(is_zero(q.projection * s));
            CHECK(kernel_basis(q.projection).size() == dim_sub);
            Vec coords = random_mat(f, q.projection.rows(), 1, rng).column(0);
            CHECK(q.projection * q.section(coords) == coords);
        }
    }
}
