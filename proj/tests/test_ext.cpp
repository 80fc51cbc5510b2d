#include "doctest.h"

#include "fixtures.hpp"
#include "hocalc/ext.hpp"

using namespace hocalc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

std::vector<std::size_t> ranks(const Resolution& r)
{
    std::vector<std::size_t> out;
    for (int k = 0; k <= r.truncation(); ++k)
        out.push_back(r.term(k).rank());
    return out;
}

// 0 -> (x)/(x^2) -> A/(x^2) -> A/(x) -> 0 over k[x]/(x^3)
ExtensionSeq nonsplit_kx3(Field f)
{
    auto a = fx::kx3(f);
    ModulePtr k = fx::truncated(a, 1);
    ModulePtr m2 = fx::truncated(a, 2);
    ModuleHom incl(k, m2, Mat::from_ints(f, {{0}, {1}}));
    ModuleHom proj(m2, k, Mat::from_ints(f, {{1, 0}}));
    return ExtensionSeq::short_exact(incl, proj);
}

ExtensionSeq split(ModulePtr a, ModulePtr b)
{
    const Field f = a->field();
    ModulePtr s = share(direct_sum(*a, *b));
    Mat incl(f, s->dim(), a->dim());
    incl.set_block(0, 0, Mat::identity(f, a->dim()));
    Mat proj(f, b->dim(), s->dim());
    proj.set_block(0, a->dim(), Mat::identity(f, b->dim()));
    return ExtensionSeq::short_exact(ModuleHom(a, s, incl), ModuleHom(s, b, proj));
}

Filtration kx3_filtration(Field f)
{
    auto a = fx::kx3(f);
    return Filtration{share(Module::regular(a)), fx::ideal(a, 2), fx::ideal(a, 1)};
}

bool same_class(const ExtElement& a, const ExtElement& b) { return a.coords == b.coords; }

} // namespace

TEST_CASE("free_resolution examples")
{
    auto a = fx::kx3(Q);
    ModulePtr reg = share(Module::regular(a));
    auto r = free_resolution(reg, 3);
    CHECK(ranks(*r) == std::vector<std::size_t>{1, 0, 0, 0});
    CHECK(r->is_exact());

    ModulePtr k = fx::truncated(a, 1);
    auto rk = free_resolution(k, 5);
    CHECK(ranks(*rk) == std::vector<std::size_t>{1, 1, 1, 1, 1, 1});
    CHECK(rk->is_exact());
    for (int i = 1; i <= 5; ++i)
        CHECK(rank(rk->differential(i)) == (i % 2 ? 2u : 1u));

    auto b = fx::a3_rad2(F3);
    ModulePtr s1 = share(Module::simple(b, 0));
    auto rs = free_resolution(s1, 4);
    CHECK(ranks(*rs) == std::vector<std::size_t>{1, 1, 1, 0, 0});
    CHECK(rs->is_exact());
}

TEST_CASE("resolutions are prefix-stable and exact on random modules")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        auto alg = random_bound_quiver_algebra(t % 2 ? F2 : F3, rng(), 7).algebra;
        ModulePtr m = random_module(alg, rng, 5);
        auto shallow = free_resolution(m, 1);
        std::vector<Mat> first(shallow->maps.begin(), shallow->maps.end());
        auto deep = free_resolution(m, 3);
        CHECK(deep->is_exact());
        for (std::size_t k = 0; k < first.size(); ++k)
            CHECK(deep->maps[k] == first[k]);
        auto c = deep->as_complex(3);
        CHECK(c.d_squared_zero());
        for (int k = 0; k <= 3; ++k)
            CHECK(ModuleHom(deep->term(k).module, k ? deep->term(k - 1).module : m, deep->maps[k]).is_intertwining());
    }
}

TEST_CASE("ext_group examples")
{
    auto a = fx::kx3(Q);
    ModulePtr reg = share(Module::regular(a));
    ModulePtr k = fx::truncated(a, 1);
    ModulePtr m2 = fx::truncated(a, 2);
    CHECK(ext_group(m2, reg, 0)->dim() == hom_space(m2, reg).size());
    CHECK(ext_group(k, m2, 0)->dim() == hom_space(k, m2).size());
    for (int i = 1; i <= 3; ++i)
        CHECK(ext_group(reg, k, i)->dim() == 0);
    for (int i = 0; i <= 4; ++i)
        CHECK(ext_group(k, k, i)->dim() == 1);

    auto b = fx::a3_rad2(Q);
    ModulePtr s1 = share(Module::simple(b, 0)), s2 = share(Module::simple(b, 1)), s3 = share(Module::simple(b, 2));
    CHECK(ext_group(s1, s2, 1)->dim() == 1);
    CHECK(ext_group(s2, s3, 1)->dim() == 1);
    CHECK(ext_group(s1, s3, 2)->dim() == 1);
    CHECK(ext_group(s1, s3, 1)->dim() == 0);
    CHECK(ext_group(s2, s1, 1)->dim() == 0);
}

TEST_CASE("Ext^0 matches hom_space on random pairs")
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        auto alg = random_bound_quiver_algebra(F2, rng(), 6).algebra;
        ModulePtr m = random_module(alg, rng, 4), n = random_module(alg, rng, 4);
        CHECK(ext_group(m, n, 0)->dim() == hom_space(m, n).size());
    }
}

TEST_CASE("truncation is enforced")
{
    auto a = fx::kx3(F2);
    ModulePtr k = fx::truncated(a, 1);
    CHECK_THROWS_AS(ext_group(k, k, 3, 3), TruncationError);
    CHECK_NOTHROW(ext_group(k, k, 3, 4));
    CHECK_THROWS_AS(free_resolution(k, 1)->as_complex(5), TruncationError);
}

TEST_CASE("canonical coordinates ignore coboundaries")
{
    auto a = fx::kx3(F3);
    ModulePtr k = fx::truncated(a, 1);
    ModulePtr m2 = fx::truncated(a, 2);
    std::mt19937_64 rng(1);
    for (int i = 1; i <= 3; ++i) {
        auto g = ext_group(k, m2, i);
        for (const auto& e : g->basis()) {
            Mat shifted = e.cocycle;
            for (const auto& b : g->coboundaries())
                shifted = shifted + b.scaled(random_scalar(F3, rng));
            CHECK(g->coordinates(shifted) == e.coords);
        }
    }
}

TEST_CASE("class_of_extension examples")
{
    auto a = fx::kx3(Q);
    ModulePtr k = fx::truncated(a, 1);
    CHECK(is_trivial(class_of_extension(split(k, k))));

    auto e = nonsplit_kx3(Q);
    auto c = class_of_extension(e);
    CHECK_FALSE(is_trivial(c));
    CHECK(c.group->dim() == 1);

    auto seqs = filtration_sequences(kx3_filtration(Q));
    auto alpha = class_of_extension(seqs.four_term);
    CHECK(alpha.degree() == 2);
    CHECK(alpha.group->dim() == 1);
    CHECK(is_trivial(alpha));
}

TEST_CASE("extension validation names the failing node")
{
    auto a = fx::kx3(F2);
    ModulePtr k = fx::truncated(a, 1);
    ModulePtr m2 = fx::truncated(a, 2);
    ExtensionSeq bad{{k, m2, k}, {Mat::from_ints(F2, {{0}, {1}}), Mat::from_ints(F2, {{0, 1}})}};
    try {
        bad.validate();
        FAIL("expected a validation error");
    } catch (const SchemaError& err) {
        CHECK(std::string(err.what()).find("node") != std::string::npos);
    }
}

TEST_CASE("class_of_extension is lift independent")
{
    std::mt19937_64 rng(77);
    for (int t = 0; t < 25; ++t) {
        auto alg = random_bound_quiver_algebra(t % 2 ? F2 : F3, rng(), 6).algebra;
        auto e = random_short_exact(alg, rng, 5);
        auto base = class_of_extension(e);
        for (int r = 0; r < 3; ++r)
            CHECK(same_class(class_of_extension(e, &rng), base));
    }
    auto seqs = filtration_sequences(kx3_filtration(F3));
    auto base = class_of_extension(seqs.four_term);
    for (int r = 0; r < 5; ++r)
        CHECK(same_class(class_of_extension(seqs.four_term, &rng), base));
}

TEST_CASE("yoneda_product examples")
{
    auto a = fx::kx3(Q);
    ModulePtr k = fx::truncated(a, 1);
    auto c = class_of_extension(nonsplit_kx3(Q));
    auto id_k = ext_group(k, k, 0)->element(free_resolution(k, 1)->augmentation());
    CHECK(same_class(yoneda_product(id_k, c), c));
    CHECK(same_class(yoneda_product(c, id_k), c));
    auto sq = yoneda_product(c, c);
    CHECK(sq.degree() == 2);
    CHECK(is_trivial(sq));

    for (Field f : {Q, F2, F3}) {
        auto b = fx::a3_rad2(f);
        ModulePtr s1 = share(Module::simple(b, 0)), s2 = share(Module::simple(b, 1)), s3 = share(Module::simple(b, 2));
        auto alpha = ext_group(s1, s2, 1)->basis().at(0);
        auto beta = ext_group(s2, s3, 1)->basis().at(0);
        auto prod = yoneda_product(alpha, beta);
        CHECK(prod.degree() == 2);
        CHECK_FALSE(is_trivial(prod));
    }
}

TEST_CASE("splice examples")
{
    for (Field f : {Q, F2, F3}) {
        auto seqs = filtration_sequences(kx3_filtration(f));
        auto spliced = splice(seqs.e1, seqs.e2);
        REQUIRE(spliced.objects.size() == seqs.four_term.objects.size());
        for (std::size_t k = 0; k < spliced.objects.size(); ++k)
            CHECK(spliced.objects[k] == seqs.four_term.objects[k]);
        for (std::size_t k = 0; k < spliced.maps.size(); ++k)
            CHECK(spliced.maps[k] == seqs.four_term.maps[k]);

        auto a1 = class_of_extension(seqs.e1);
        auto a2 = class_of_extension(seqs.e2);
        CHECK_FALSE(is_trivial(a1));
        CHECK_FALSE(is_trivial(a2));
        CHECK(is_trivial(class_of_extension(spliced)));
        CHECK(is_trivial(yoneda_product(a2, a1)));
    }

    auto a = fx::kx3(F3);
    ModulePtr k = fx::truncated(a, 1);
    auto e = nonsplit_kx3(F3);
    CHECK(is_trivial(class_of_extension(splice(split(k, k), e))));
    CHECK(is_trivial(class_of_extension(splice(e, split(k, k)))));
    ModulePtr m2 = fx::truncated(a, 2);
    CHECK_THROWS_AS(splice(e, split(m2, k)), MiddleMismatch);
}

TEST_CASE("splice class equals the Yoneda product with the pinned sign")
{
    std::mt19937_64 rng(123);
    int nonzero = 0;
    for (int t = 0; t < 60; ++t) {
        Field f = t % 3 == 0 ? Q : t % 3 == 1 ? F2 : F3;
        auto alg = random_bound_quiver_algebra(f, rng(), 7).algebra;
        auto right = random_short_exact(alg, rng, 5);
        auto left = random_short_exact_onto(right.start(), rng, 3);
        auto product = yoneda_product(class_of_extension(right), class_of_extension(left));
        auto spliced = class_of_extension(splice(left, right));
        CHECK(spliced.coords == scale(Scalar(f, SPLICE_SIGN), product).coords);
        nonzero += !is_trivial(product);
    }
    CHECK(nonzero > 0);
}

TEST_CASE("yoneda_product is bilinear and associative")
{
    std::mt19937_64 rng(2718);
    int nonzero_triples = 0;
    for (int t = 0; t < 60; ++t) {
        Field f = t % 2 ? F2 : F3;
        auto alg = random_bound_quiver_algebra(f, rng(), 6).algebra;
        ModulePtr m = random_module(alg, rng, 4), n = random_module(alg, rng, 4), l = random_module(alg, rng, 4),
                  p = random_module(alg, rng, 4);
        int i = static_cast<int>(rng() % 2), j = 1, k = static_cast<int>(rng() % 2);
        auto gmn = ext_group(m, n, i), gnl = ext_group(n, l, j), glp = ext_group(l, p, k);
        auto pick = [&](const ExtGroupPtr& g) {
            return g->from_coords(random_vec(f, g->dim(), rng));
        };
        auto a = pick(gmn), a2 = pick(gmn), b = pick(gnl), b2 = pick(gnl), c = pick(glp);
        Scalar s = random_scalar(f, rng);
        CHECK(yoneda_product(add(a, scale(s, a2)), b).coords ==
              add(yoneda_product(a, b), scale(s, yoneda_product(a2, b))).coords);
        CHECK(yoneda_product(a, add(b, scale(s, b2))).coords ==
              add(yoneda_product(a, b), scale(s, yoneda_product(a, b2))).coords);
        auto left = yoneda_product(yoneda_product(a, b), c);
        auto right = yoneda_product(a, yoneda_product(b, c));
        CHECK(left.coords == right.coords);
        nonzero_triples += !is_trivial(left);
    }
    MESSAGE("nonzero triple products: " << nonzero_triples);
}

TEST_CASE("associativity on products with nonzero values")
{
    // Ext^*(k, k) over k[x]/(x^3): degree 1 times degree 2 is nonzero.
    for (Field f : {Q, F2, F3}) {
        auto a = fx::kx3(f);
        ModulePtr k = fx::truncated(a, 1);
        auto e1 = ext_group(k, k, 1)->basis().at(0);
        auto e2 = ext_group(k, k, 2)->basis().at(0);
        CHECK_FALSE(is_trivial(yoneda_product(e1, e2)));
        CHECK_FALSE(is_trivial(yoneda_product(e2, e1)));
        auto lhs = yoneda_product(yoneda_product(e1, e2), e2);
        auto rhs = yoneda_product(e1, yoneda_product(e2, e2));
        CHECK_FALSE(is_trivial(lhs));
        CHECK(lhs.coords == rhs.coords);
    }
    // simple modules over random bound quivers
    std::mt19937_64 rng(31);
    int nonzero = 0;
    for (int t = 0; t < 60; ++t) {
        Field f = t % 2 ? F2 : F3;
        auto r = random_bound_quiver_algebra(f, rng(), 8);
        const std::size_t nv = r.quiver.vertices;
        auto simple = [&] { return share(Module::simple(r.algebra, rng() % nv)); };
        ModulePtr m = simple(), n = simple(), l = simple(), p = simple();
        auto gmn = ext_group(m, n, 1), gnl = ext_group(n, l, 1), glp = ext_group(l, p, 1);
        auto pick = [&](const ExtGroupPtr& g) { return g->from_coords(random_vec(f, g->dim(), rng)); };
        auto a = pick(gmn), b = pick(gnl), c = pick(glp);
        auto lhs = yoneda_product(yoneda_product(a, b), c);
        auto rhs = yoneda_product(a, yoneda_product(b, c));
        CHECK(lhs.coords == rhs.coords);
        nonzero += !is_trivial(lhs);
    }
    CHECK(nonzero > 0);
}
