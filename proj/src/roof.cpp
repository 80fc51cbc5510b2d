#include "hocalc/roof.hpp"

namespace hocalc {

namespace {

bool shifted_module(const Complex& x) { return !x.empty() && x.lo() == x.hi(); }

Vec flatten(const Mat& m)
{
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            v.push_back(m(r, c));
    return v;
}

// Projection of X1^n (+) X2^n (+) B^(n-1) onto one of the first two summands.
ChainMap apex_projection(const ComplexPtr& apex, const ComplexPtr& x1, const ComplexPtr& x2, bool first)
{
    const Field f = apex->field();
    std::map<int, Mat> comps;
    const ComplexPtr& target = first ? x1 : x2;
    for (int n = apex->lo(); n <= apex->hi(); ++n) {
        Mat p(f, target->dim(n), apex->dim(n));
        p.set_block(0, first ? 0 : x1->dim(n), Mat::identity(f, target->dim(n)));
        comps.emplace(n, std::move(p));
    }
    return ChainMap(apex, target, std::move(comps));
}

} // namespace

Roof::Roof(ChainMap s, ChainMap g) : s_(std::move(s)), g_(std::move(g))
{
    if (!(s_.source() == g_.source() || *s_.source() == *g_.source()))
        throw SchemaError("roof legs must share the apex");
    if (!s_.commutes() || !g_.commutes())
        throw SchemaError("roof legs must be chain maps");
    if (!is_quasi_iso(s_).is_quasi_iso)
        throw SchemaError("roof leg s is not a quasi-isomorphism");
}

Roof Roof::from_map(const ChainMap& f) { return Roof(ChainMap::identity(f.source()), f); }

Roof Roof::identity(const ComplexPtr& x) { return from_map(ChainMap::identity(x)); }

Roof Roof::zero(const ComplexPtr& x, const ComplexPtr& y) { return from_map(ChainMap::zero(x, y)); }

Roof ses_to_roof(const ExtensionSeq& e)
{
    e.validate();
    if (e.length() != 1)
        throw SchemaError("ses_to_roof needs a short exact sequence");
    const ModulePtr& a = e.objects[0];
    const ModulePtr& c = e.objects[2];
    const AlgebraPtr& alg = a->algebra();
    auto apex = share(Complex(alg, -1, {a, e.objects[1]}, {e.maps[0]}, true));
    auto source = share(Complex::concentrated(c, 0));
    auto target = share(Complex::concentrated(a, -1));
    ChainMap s(apex, source, {{0, e.maps[1]}});
    ChainMap g(apex, target, {{-1, Mat::identity(a->field(), a->dim())}});
    return Roof(std::move(s), std::move(g));
}

Roof shift(const Roof& r, int k)
{
    auto apex = share(shift(*r.apex(), k));
    auto src = share(shift(*r.source(), k));
    auto tgt = share(shift(*r.target(), k));
    return Roof(shift(r.s(), k, apex, src), shift(r.g(), k, apex, tgt));
}

RoofComposite compose_roofs_detailed(const Roof& r1, const Roof& r2)
{
    if (!(*r1.target() == *r2.source()))
        throw MiddleMismatch("roof composition needs target(r1) = source(r2)");
    const ComplexPtr& x1 = r1.apex();
    const ComplexPtr& x2 = r2.apex();
    const ComplexPtr& b = r1.target();
    const Field f = b->field();

    auto sum = share(direct_sum(*x1, *x2));
    std::map<int, Mat> phi;
    for (int n = sum->lo(); n <= sum->hi(); ++n) {
        Mat m(f, b->dim(n), sum->dim(n));
        m.set_block(0, 0, r1.g().component(n));
        m.set_block(0, x1->dim(n), -r2.s().component(n));
        phi.emplace(n, std::move(m));
    }
    auto apex = share(shift(cone(ChainMap(sum, b, std::move(phi))), -1));

    ChainMap p1 = apex_projection(apex, x1, x2, true);
    ChainMap p2 = apex_projection(apex, x1, x2, false);
    Homotopy h;
    for (int n = apex->lo(); n <= apex->hi(); ++n) {
        const std::size_t xs = sum->dim(n), bs = b->dim(n - 1);
        Mat m(f, bs, xs + bs);
        m.set_block(0, xs, -Mat::identity(f, bs));
        h.components.emplace(n, std::move(m));
    }
    Roof roof(compose(r1.s(), p1), compose(r2.g(), p2));
    return {std::move(roof), std::move(p1), std::move(p2), std::move(h)};
}

Roof compose_roofs(const Roof& r1, const Roof& r2) { return compose_roofs_detailed(r1, r2).roof; }

int roof_ext_sign(int k) { return (k * (k - 1) / 2) % 2 == 0 ? 1 : -1; }

ExtElement to_ext_class(const Roof& r0)
{
    if (!shifted_module(*r0.source()) || !shifted_module(*r0.target()))
        throw UnsupportedEndpoints("source and target must each be a module in a single degree");
    const int a = -r0.source()->lo();
    const Roof r = a == 0 ? r0 : shift(r0, -a);
    const int k = -r.target()->lo();
    if (k < 0)
        throw UnsupportedEndpoints("target sits above the source; Ext in negative degree");

    const ModulePtr& m = r.source()->object(0);
    const ModulePtr& n = r.target()->object(-k);
    const Complex& x = *r.apex();
    const Field f = m->field();
    auto res = free_resolution(m, k + 1);

    // unknown phi^(-j) : P_j -> X^(-j), j = 0..k+1
    struct Block {
        std::vector<Mat> basis;
        std::size_t offset;
    };
    std::vector<Block> blocks;
    std::size_t unknowns = 0;
    for (int j = 0; j <= k + 1; ++j) {
        blocks.push_back({projective_hom_basis(res->term(j), x.object(-j)), unknowns});
        unknowns += blocks.back().basis.size();
    }

    // rows: s^0 phi^0 = eps; d_X^0 phi^0 = 0; d_X phi^(-j) = phi^(-j+1) d_j
    std::vector<std::vector<Vec>> columns(unknowns);
    Vec rhs;
    const Mat& eps = res->augmentation();
    const Mat s0 = r.s().component(0);
    std::size_t row = 0;
    auto add_rows = [&](std::size_t count) {
        for (auto& col : columns)
            col.emplace_back(zero_vec(f, count));
        row += count;
    };
    auto set = [&](std::size_t block_row, std::size_t col, const Vec& v) {
        columns[col][block_row] = add(columns[col][block_row], v);
    };

    std::size_t eq = 0;
    add_rows(eps.rows() * eps.cols());
    {
        Vec e = flatten(eps);
        rhs.insert(rhs.end(), e.begin(), e.end());
        for (std::size_t t = 0; t < blocks[0].basis.size(); ++t)
            set(eq, blocks[0].offset + t, flatten(s0 * blocks[0].basis[t]));
    }
    ++eq;
    {
        Mat d0 = x.differential(0);
        add_rows(d0.rows() * res->term(0).module->dim());
        Vec z = zero_vec(f, d0.rows() * res->term(0).module->dim());
        rhs.insert(rhs.end(), z.begin(), z.end());
        for (std::size_t t = 0; t < blocks[0].basis.size(); ++t)
            set(eq, blocks[0].offset + t, flatten(d0 * blocks[0].basis[t]));
    }
    ++eq;
    for (int j = 1; j <= k + 1; ++j, ++eq) {
        Mat dx = x.differential(-j);
        const Mat& dp = res->differential(j);
        const std::size_t count = dx.rows() * dp.cols();
        add_rows(count);
        Vec z = zero_vec(f, count);
        rhs.insert(rhs.end(), z.begin(), z.end());
        for (std::size_t t = 0; t < blocks[j].basis.size(); ++t)
            set(eq, blocks[j].offset + t, flatten(dx * blocks[j].basis[t]));
        for (std::size_t t = 0; t < blocks[j - 1].basis.size(); ++t)
            set(eq, blocks[j - 1].offset + t, scale(Scalar(f, -1), flatten(blocks[j - 1].basis[t] * dp)));
    }

    std::vector<Vec> flat_cols;
    for (const auto& col : columns) {
        Vec v;
        v.reserve(row);
        for (const auto& part : col)
            v.insert(v.end(), part.begin(), part.end());
        flat_cols.push_back(std::move(v));
    }
    std::optional<Vec> sol;
    if (unknowns == 0)
        sol = is_zero(rhs) ? std::optional<Vec>(Vec{}) : std::nullopt;
    else
        sol = solve(Mat::from_columns(f, row, flat_cols), rhs);
    if (!sol)
        throw std::logic_error("to_ext_class: no strict lift through the quasi-isomorphism");

    Mat phi_k(f, x.dim(-k), res->term(k).module->dim());
    for (std::size_t t = 0; t < blocks[k].basis.size(); ++t)
        phi_k = phi_k + blocks[k].basis[t].scaled((*sol)[blocks[k].offset + t]);
    Mat cocycle = (r.g().component(-k) * phi_k).scaled(Scalar(f, roof_ext_sign(k)));
    return ext_group(m, n, k)->element(cocycle);
}

bool roof_equal(const Roof& r1, const Roof& r2)
{
    if (!shifted_module(*r1.source()) || !shifted_module(*r1.target()) || !shifted_module(*r2.source()) ||
        !shifted_module(*r2.target()))
        throw UnsupportedEndpoints("roof_equal compares roofs between shifted modules only");
    if (!(*r1.source() == *r2.source()) || !(*r1.target() == *r2.target()))
        throw UnsupportedEndpoints("roofs have different endpoints");
    return to_ext_class(r1).coords == to_ext_class(r2).coords;
}

FiltrationClasses filtration_two_class(const Filtration& flt)
{
    flt.validate();
    const std::size_t d1 = flt.f1.source->dim(), d2 = flt.f2.source->dim(), dg = flt.g->dim();
    if (d1 == d2)
        throw DegenerateFiltration("F1 = F2, so F2/F1 = 0");
    if (d2 == dg)
        throw DegenerateFiltration("F2 = G, so G/F2 = 0");

    FiltrationSequences seqs = filtration_sequences(flt);
    ExtElement a1 = class_of_extension(seqs.e1);
    ExtElement a2 = class_of_extension(seqs.e2);

    Roof r2 = ses_to_roof(seqs.e2);
    Roof r1 = shift(ses_to_roof(seqs.e1), 1);
    Roof composite = compose_roofs(r2, r1);
    ExtElement alpha = to_ext_class(composite);

    ExtElement via_product = yoneda_product(a2, a1);
    ExtElement via_splice = class_of_extension(splice(seqs.e1, seqs.e2));

    LemmaReport rep;
    rep.dim_ext1_a1 = a1.group->dim();
    rep.dim_ext1_a2 = a2.group->dim();
    rep.dim_ext2 = alpha.group->dim();
    rep.a1_trivial = is_trivial(a1);
    rep.a2_trivial = is_trivial(a2);
    rep.alpha_trivial = is_trivial(alpha);
    rep.routes_agree = alpha.coords == via_product.coords && alpha.coords == via_splice.coords;
    rep.equals_zero_roof = roof_equal(composite, Roof::zero(composite.source(), composite.target()));
    return {std::move(a1), std::move(a2), std::move(alpha), rep};
}

} // namespace hocalc
