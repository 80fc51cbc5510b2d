#include "doctest.h"

#include "fixtures.hpp"

using namespace hocalc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

bool associative(const Algebra& a)
{
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ei = unit_vec(a.field(), n, i), ej = unit_vec(a.field(), n, j), ek = unit_vec(a.field(), n, k);
                if (a.multiply(a.multiply(ei, ej), ek) != a.multiply(ei, a.multiply(ej, ek)))
                    return false;
            }
    return true;
}

bool unital(const Algebra& a)
{
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec ei = unit_vec(a.field(), a.dim(), i);
        if (a.multiply(a.unit(), ei) != ei || a.multiply(ei, a.unit()) != ei)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("algebra validation rejects bad structure constants")
{
    // x * x = 1 and 1 * x = 0 breaks the unit law
    std::vector<std::vector<Vec>> mult{{unit_vec(Q, 2, 0), Vec{Scalar(Q), Scalar(Q)}},
                                       {unit_vec(Q, 2, 1), unit_vec(Q, 2, 0)}};
    CHECK_THROWS_AS(Algebra(Q, mult, unit_vec(Q, 2, 0)), SchemaError);
}

TEST_CASE("submodule_quotient examples")
{
    auto a = fx::kx3(Q);
    ModulePtr m = share(Module::regular(a));

    auto zero_sub = subspace_submodule(m, {});
    auto q0 = submodule_quotient(m, zero_sub);
    CHECK(q0.module->dim() == 3);
    CHECK(rank(q0.projection.matrix) == 3);

    auto q1 = submodule_quotient(m, ModuleHom::identity(m));
    CHECK(q1.module->dim() == 0);

    auto q = submodule_quotient(m, fx::ideal(a, 2));
    REQUIRE(q.module->dim() == 2);
    Mat x = q.module->action(1);
    CHECK_FALSE(x.is_zero());
    CHECK((x * x).is_zero());
    CHECK(x == Mat::from_ints(Q, {{0, 0}, {1, 0}}));
}

TEST_CASE("submodule_quotient rejects non-submodules")
{
    auto a = fx::kx3(F3);
    ModulePtr m = share(Module::regular(a));
    CHECK_THROWS_AS(subspace_submodule(m, {unit_vec(F3, 3, 0)}), NotSubmodule);
    // injective linear map that does not intertwine
    ModulePtr k = fx::truncated(a, 1);
    ModuleHom bad(k, m, Mat::from_ints(F3, {{1}, {0}, {0}}));
    CHECK_THROWS_AS(submodule_quotient(m, bad), NotSubmodule);
}

TEST_CASE("hom_space examples")
{
    auto a = fx::kx3(Q);
    ModulePtr reg = share(Module::regular(a));
    ModulePtr k = fx::truncated(a, 1);
    auto end = hom_space(reg, reg);
    std::vector<Vec> flat;
    for (const auto& h : end) {
        Vec v;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                v.push_back(h.matrix(r, c));
        flat.push_back(v);
    }
    Vec id;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            id.push_back(Scalar(Q, r == c ? 1 : 0));
    CHECK(in_span(Q, 9, span_basis(Q, 9, flat), id));

    CHECK(hom_space(k, reg).size() == 1);
    for (std::size_t d = 1; d <= 3; ++d)
        CHECK(hom_space(reg, fx::truncated(a, d)).size() == d);
}

TEST_CASE("free_module examples")
{
    auto a = fx::kx3(F2);
    CHECK(free_module(a, 0).dim() == 0);
    auto one = free_module(a, 1);
    CHECK(one.act(a->unit()) == Mat::identity(F2, 3));
    auto two = free_module(a, 2);
    CHECK(two.dim() == 6);
    Mat x = two.action(1);
    CHECK_FALSE((x * x).is_zero());
    CHECK((x * x * x).is_zero());
}

TEST_CASE("random_bound_quiver_algebra examples and invariants")
{
    CHECK(Algebra::path_algebra(Q, Quiver{1, {}}, 2)->dim() == 1);
    CHECK(Algebra::path_algebra(Q, Quiver{2, {{0, 1}}}, 2)->dim() == 3);
    CHECK(Algebra::path_algebra(Q, Quiver{3, {{0, 1}, {1, 2}}}, 2)->dim() == 5);
    CHECK(Algebra::path_algebra(Q, Quiver{3, {{0, 1}, {1, 2}}}, 3)->dim() == 6);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto r = random_bound_quiver_algebra(seed % 2 ? F2 : F3, seed, 8);
        CHECK(r.algebra->dim() <= 8);
        CHECK(associative(*r.algebra));
        CHECK(unital(*r.algebra));
        auto again = random_bound_quiver_algebra(seed % 2 ? F2 : F3, seed, 8);
        CHECK(again.algebra->content_hash() == r.algebra->content_hash());
    }
}

TEST_CASE("projective summands of a path algebra")
{
    auto a = fx::a3_rad2(Q);
    // A e_v is spanned by paths starting at v
    CHECK(a->projective_basis(0).size() == 2);
    CHECK(a->projective_basis(1).size() == 2);
    CHECK(a->projective_basis(2).size() == 1);
    auto p = projective_module(a, {0, 2});
    CHECK(p.module->dim() == 3);
    ModulePtr s0 = share(Module::simple(a, 0));
    CHECK(hom_space(p.module, s0).size() == 1);
}

TEST_CASE("quotient then inclusion composes to zero")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto r = random_bound_quiver_algebra(F2, seed, 6);
        ModulePtr reg = share(Module::regular(r.algebra));
        std::mt19937_64 rng(seed);
        auto incl = generated_submodule(reg, {random_vec(F2, reg->dim(), rng)});
        auto q = submodule_quotient(reg, incl);
        CHECK((q.projection.matrix * incl.matrix).is_zero());
        CHECK(q.module->dim() + incl.source->dim() == reg->dim());
        CHECK(q.projection.is_intertwining());
    }
}

TEST_CASE("third isomorphism theorem on filtrations")
{
    auto a = fx::kx3(Q);
    ModulePtr g = share(Module::regular(a));
    Filtration flt{g, fx::ideal(a, 2), fx::ideal(a, 1)};
    flt.validate();
    auto g_f1 = submodule_quotient(g, flt.f1);
    auto g_f2 = submodule_quotient(g, flt.f2);
    // F2/F1 inside G/F1
    std::vector<Vec> img;
    for (const auto& c : flt.f2.matrix.columns())
        img.push_back(g_f1.projection.matrix * c);
    auto f2f1 = subspace_submodule(g_f1.module, span_basis(Q, g_f1.module->dim(), img));
    auto iterated = submodule_quotient(g_f1.module, f2f1);
    REQUIRE(iterated.module->dim() == g_f2.module->dim());
    bool found_iso = false;
    for (const auto& h : hom_space(iterated.module, g_f2.module))
        if (rank(h.matrix) == g_f2.module->dim())
            found_iso = true;
    CHECK(found_iso);
}

TEST_CASE("filtration validation")
{
    auto a = fx::kx3(F2);
    ModulePtr g = share(Module::regular(a));
    Filtration wrong{g, fx::ideal(a, 1), fx::ideal(a, 2)};
    CHECK_THROWS_AS(wrong.validate(), SchemaError);
}

TEST_CASE("homogeneous generators of a submodule")
{
    auto a = fx::a3_rad2(F3);
    ModulePtr reg = share(Module::regular(a));
    std::vector<Vec> all;
    for (std::size_t i = 0; i < reg->dim(); ++i)
        all.push_back(unit_vec(F3, reg->dim(), i));
    auto gens = homogeneous_generators(*reg, all);
    CHECK(gens.size() == 3);
}
