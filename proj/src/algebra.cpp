#include "hocalc/algebra.hpp"

#include <map>
#include <numeric>

namespace hocalc {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::string_view s)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Mat action_of(Field f, std::size_t n, const std::vector<Mat>& action, const Vec& a)
{
    Mat out(f, n, n);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero())
            out = out + action[i].scaled(a[i]);
    return out;
}

} // namespace

// --- Algebra ---------------------------------------------------------------

Algebra::Algebra(Field field, std::vector<std::vector<Vec>> mult, Vec unit, std::vector<Vec> idempotents,
                 std::vector<std::string> labels)
    : field_(field), dim_(mult.size()), mult_(std::move(mult)), unit_(std::move(unit)),
      idempotents_(std::move(idempotents)), labels_(std::move(labels))
{
    if (dim_ == 0)
        throw SchemaError("algebra must have positive dimension");
    if (unit_.size() != dim_)
        throw SchemaError("algebra unit has wrong length");
    for (const auto& row : mult_) {
        if (row.size() != dim_)
            throw SchemaError("structure constants are not dim x dim");
        for (const auto& v : row)
            if (v.size() != dim_)
                throw SchemaError("structure constant vector has wrong length");
    }
    if (!labels_.empty() && labels_.size() != dim_)
        throw SchemaError("label count does not match dimension");
    if (idempotents_.empty())
        idempotents_.push_back(unit_);

    left_.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        left_.push_back(Mat::from_columns(field_, dim_, mult_[i]));

    for (std::size_t i = 0; i < dim_; ++i) {
        const Vec ei = unit_vec(field_, dim_, i);
        if (multiply(unit_, ei) != ei || multiply(ei, unit_) != ei)
            throw SchemaError("unit law fails for basis element " + std::to_string(i));
    }
    // (e_i e_j) e_k = e_i (e_j e_k)
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                Vec lhs = multiply(mult_[i][j], unit_vec(field_, dim_, k));
                Vec rhs = left_[i] * mult_[j][k];
                if (lhs != rhs)
                    throw SchemaError("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
            }

    Vec sum = zero_vec(field_, dim_);
    for (std::size_t a = 0; a < idempotents_.size(); ++a) {
        if (idempotents_[a].size() != dim_)
            throw SchemaError("idempotent has wrong length");
        sum = add(sum, idempotents_[a]);
        for (std::size_t b = 0; b < idempotents_.size(); ++b) {
            Vec prod = multiply(idempotents_[a], idempotents_[b]);
            if (a == b ? prod != idempotents_[a] : !is_zero(prod))
                throw SchemaError("idempotents are not orthogonal idempotents");
        }
    }
    if (sum != unit_)
        throw SchemaError("idempotents do not sum to the unit");

    for (std::size_t v = 0; v < idempotents_.size(); ++v) {
        Mat right = right_mult(idempotents_[v]);
        std::vector<Vec> basis = column_space_basis(right);
        Mat b = Mat::from_columns(field_, dim_, basis);
        std::vector<Mat> act;
        for (std::size_t i = 0; i < dim_; ++i)
            act.push_back(*solve_many(b, left_[i] * b));
        proj_gen_.push_back(*solve(b, idempotents_[v]));
        proj_basis_.push_back(std::move(basis));
        proj_action_.push_back(std::move(act));
    }

    // Greedy generating set: add e_i when it is outside the subalgebra
    // generated so far.
    std::vector<Vec> span{unit_};
    auto close = [&]() {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Vec> candidates = span;
            for (auto g : generators_)
                for (const auto& s : span)
                    candidates.push_back(multiply(unit_vec(field_, dim_, g), s));
            auto next = span_basis(field_, dim_, candidates);
            if (next.size() > span.size())
                grew = true;
            span = std::move(next);
        }
    };
    for (std::size_t i = 0; i < dim_ && span.size() < dim_; ++i) {
        if (in_span(field_, dim_, span, unit_vec(field_, dim_, i)))
            continue;
        generators_.push_back(i);
        close();
    }

    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a(h, field_.name());
    h = fnv1a(h, std::to_string(dim_));
    for (const auto& row : mult_)
        for (const auto& v : row)
            for (const auto& s : v)
                h = fnv1a(h, s.str() + ",");
    for (const auto& s : unit_)
        h = fnv1a(h, s.str() + ";");
    for (const auto& e : idempotents_)
        for (const auto& s : e)
            h = fnv1a(h, s.str() + "|");
    hash_ = h;
}

Vec Algebra::multiply(const Vec& a, const Vec& b) const
{
    Vec out = zero_vec(field_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        if (!a[i].is_zero())
            out = add(out, scale(a[i], left_[i] * b));
    return out;
}

Mat Algebra::right_mult(const Vec& a) const
{
    std::vector<Vec> cols;
    cols.reserve(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        cols.push_back(multiply(unit_vec(field_, dim_, j), a));
    return Mat::from_columns(field_, dim_, cols);
}

bool Algebra::same_as(const Algebra& o) const
{
    return this == &o || (hash_ == o.hash_ && field_ == o.field_ && mult_ == o.mult_ && unit_ == o.unit_ &&
                          idempotents_ == o.idempotents_);
}

AlgebraPtr Algebra::ground(Field f)
{
    return std::make_shared<const Algebra>(f, std::vector<std::vector<Vec>>{{Vec{Scalar(f, 1)}}}, Vec{Scalar(f, 1)},
                                           std::vector<Vec>{}, std::vector<std::string>{"1"});
}

AlgebraPtr Algebra::truncated_polynomial(Field f, std::size_t n)
{
    std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n, zero_vec(f, n)));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
        for (std::size_t j = 0; i + j < n; ++j)
            mult[i][j][i + j] = Scalar(f, 1);
    }
    return std::make_shared<const Algebra>(f, std::move(mult), unit_vec(f, n, 0), std::vector<Vec>{},
                                           std::move(labels));
}

AlgebraPtr Algebra::path_algebra(Field f, const Quiver& q, std::size_t max_length)
{
    if (q.vertices == 0)
        throw SchemaError("quiver needs at least one vertex");
    if (max_length < 1)
        throw SchemaError("path length bound must be at least 1");
    for (auto [s, t] : q.arrows)
        if (s >= q.vertices || t >= q.vertices)
            throw SchemaError("arrow endpoint out of range");

    struct Path {
        std::size_t src, tgt;
        std::vector<std::size_t> arrows;
    };
    std::vector<Path> paths;
    for (std::size_t v = 0; v < q.vertices; ++v)
        paths.push_back({v, v, {}});
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len < max_length; ++len) {
        std::size_t level_end = paths.size();
        for (std::size_t p = level_begin; p < level_end; ++p)
            for (std::size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[a].first == paths[p].tgt) {
                    Path next = paths[p];
                    next.arrows.push_back(a);
                    next.tgt = q.arrows[a].second;
                    paths.push_back(std::move(next));
                }
        level_begin = level_end;
    }
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
    for (std::size_t i = 0; i < paths.size(); ++i)
        index[{paths[i].src, paths[i].arrows}] = i;

    const std::size_t n = paths.size();
    std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n, zero_vec(f, n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // e_i * e_j = "path j then path i"
            if (paths[i].src != paths[j].tgt)
                continue;
            std::vector<std::size_t> arrows = paths[j].arrows;
            arrows.insert(arrows.end(), paths[i].arrows.begin(), paths[i].arrows.end());
            if (arrows.size() >= max_length)
                continue;
            mult[i][j][index.at({paths[j].src, arrows})] = Scalar(f, 1);
        }

    std::vector<std::string> labels;
    for (const auto& p : paths) {
        if (p.arrows.empty()) {
            labels.push_back("e" + std::to_string(p.src));
            continue;
        }
        std::string l;
        for (std::size_t k = 0; k < p.arrows.size(); ++k)
            l += (k ? "." : "") + ("a" + std::to_string(p.arrows[k]));
        labels.push_back(l);
    }
    Vec unit = zero_vec(f, n);
    std::vector<Vec> idem;
    for (std::size_t v = 0; v < q.vertices; ++v) {
        unit[v] = Scalar(f, 1);
        idem.push_back(unit_vec(f, n, v));
    }
    return std::make_shared<const Algebra>(f, std::move(mult), std::move(unit), std::move(idem), std::move(labels));
}

// --- Module ----------------------------------------------------------------

Module::Module(AlgebraPtr algebra, std::size_t dim, std::vector<Mat> action)
    : Module(std::move(algebra), dim, std::move(action), true)
{
}

Module Module::trusted(AlgebraPtr algebra, std::size_t dim, std::vector<Mat> action)
{
    return Module(std::move(algebra), dim, std::move(action), false);
}

Module::Module(AlgebraPtr algebra, std::size_t dim, std::vector<Mat> action, bool check)
    : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action))
{
    if (!algebra_)
        throw SchemaError("module without algebra");
    const Field f = algebra_->field();
    if (action_.size() != algebra_->dim())
        throw SchemaError("module needs one action matrix per algebra basis element");
    for (const auto& m : action_)
        if (m.rows() != dim_ || m.cols() != dim_ || !(m.field() == f))
            throw SchemaError("action matrix has wrong shape");
    if (!check)
        return;
    if (act(algebra_->unit()) != Mat::identity(f, dim_))
        throw SchemaError("module axiom: unit does not act as identity");
    for (std::size_t i = 0; i < algebra_->dim(); ++i)
        for (std::size_t j = 0; j < algebra_->dim(); ++j)
            if (action_[i] * action_[j] != act(algebra_->product(i, j)))
                throw SchemaError("module axiom fails for basis pair (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
}

Module Module::zero(AlgebraPtr a)
{
    std::vector<Mat> act(a->dim(), Mat(a->field(), 0, 0));
    return Module::trusted(std::move(a), 0, std::move(act));
}

Module Module::regular(AlgebraPtr a)
{
    std::vector<Mat> act;
    for (std::size_t i = 0; i < a->dim(); ++i)
        act.push_back(a->left_mult(i));
    std::size_t n = a->dim();
    return Module::trusted(std::move(a), n, std::move(act));
}

Module Module::simple(AlgebraPtr a, std::size_t vertex)
{
    const Field f = a->field();
    if (vertex >= a->idempotents().size())
        throw SchemaError("vertex out of range");
    std::size_t hit = a->dim();
    for (std::size_t i = 0; i < a->dim(); ++i)
        if (a->idempotents()[vertex] == unit_vec(f, a->dim(), i))
            hit = i;
    if (hit == a->dim())
        throw SchemaError("simple module needs vertex idempotents that are basis elements");
    std::vector<Mat> act;
    for (std::size_t i = 0; i < a->dim(); ++i)
        act.push_back(Mat::from_ints(f, {{i == hit ? 1L : 0L}}));
    return Module(std::move(a), 1, std::move(act));
}

Mat Module::act(const Vec& a) const { return action_of(field(), dim_, action_, a); }

bool Module::operator==(const Module& o) const
{
    return dim_ == o.dim_ && algebra_->same_as(*o.algebra_) && action_ == o.action_;
}

// --- homs ------------------------------------------------------------------

ModuleHom::ModuleHom(ModulePtr src, ModulePtr tgt, Mat m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m))
{
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
        throw std::invalid_argument("module hom matrix has shape " + std::to_string(matrix.rows()) + "x" +
                                    std::to_string(matrix.cols()) + ", expected " + std::to_string(target->dim()) +
                                    "x" + std::to_string(source->dim()));
}

ModuleHom ModuleHom::zero(ModulePtr src, ModulePtr tgt)
{
    Mat m(src->field(), tgt->dim(), src->dim());
    return ModuleHom(std::move(src), std::move(tgt), std::move(m));
}

ModuleHom ModuleHom::identity(ModulePtr m)
{
    Mat id = Mat::identity(m->field(), m->dim());
    return ModuleHom(m, m, std::move(id));
}

bool ModuleHom::is_intertwining() const
{
    for (auto i : source->algebra()->generators())
        if (matrix * source->action(i) != target->action(i) * matrix)
            return false;
    return true;
}

ModuleHom compose(const ModuleHom& second, const ModuleHom& first)
{
    if (first.target->dim() != second.source->dim())
        throw std::invalid_argument("compose: middle dimensions differ");
    return ModuleHom(first.source, second.target, second.matrix * first.matrix);
}

// --- projectives -----------------------------------------------------------

Vec ProjectiveModule::generator(std::size_t j) const
{
    const auto& alg = *module->algebra();
    Vec v = zero_vec(alg.field(), module->dim());
    const Vec& g = alg.projective_generator(summands[j]);
    for (std::size_t k = 0; k < g.size(); ++k)
        v[offsets[j] + k] = g[k];
    return v;
}

ProjectiveModule projective_module(AlgebraPtr a, std::vector<std::size_t> summands)
{
    const Field f = a->field();
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    for (auto v : summands) {
        if (v >= a->idempotents().size())
            throw SchemaError("projective summand index out of range");
        offsets.push_back(total);
        total += a->projective_basis(v).size();
    }
    std::vector<Mat> act(a->dim(), Mat(f, total, total));
    for (std::size_t j = 0; j < summands.size(); ++j)
        for (std::size_t i = 0; i < a->dim(); ++i)
            act[i].set_block(offsets[j], offsets[j], a->projective_action(summands[j])[i]);
    ModulePtr m = share(Module::trusted(a, total, std::move(act)));
    return {std::move(m), std::move(summands), std::move(offsets)};
}

Module free_module(AlgebraPtr a, std::size_t rank)
{
    const Field f = a->field();
    const std::size_t n = a->dim();
    std::vector<Mat> act(n, Mat(f, n * rank, n * rank));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < rank; ++r)
            act[i].set_block(r * n, r * n, a->left_mult(i));
    return Module::trusted(std::move(a), n * rank, std::move(act));
}

Module direct_sum(const Module& m, const Module& n)
{
    std::vector<Mat> act;
    for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
        act.push_back(hocalc::direct_sum(m.action(i), n.action(i)));
    return Module::trusted(m.algebra(), m.dim() + n.dim(), std::move(act));
}

ModuleHom hom_from_generators(const ProjectiveModule& p, ModulePtr x, const std::vector<Vec>& images)
{
    const auto& alg = *p.module->algebra();
    const Field f = alg.field();
    if (images.size() != p.rank())
        throw std::invalid_argument("hom_from_generators: one image per generator required");
    Mat m(f, x->dim(), p.module->dim());
    for (std::size_t j = 0; j < p.rank(); ++j) {
        const std::size_t v = p.summands[j];
        const Vec img = x->act(alg.idempotents()[v]) * images[j];
        const auto& basis = alg.projective_basis(v);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            Vec col = x->act(basis[k]) * img;
            for (std::size_t r = 0; r < x->dim(); ++r)
                m(r, p.offsets[j] + k) = col[r];
        }
    }
    return ModuleHom(p.module, std::move(x), std::move(m));
}

std::vector<ModuleHom> hom_space(ModulePtr m, ModulePtr n)
{
    if (!m->algebra()->same_as(*n->algebra()))
        throw SchemaError("hom_space: modules over different algebras");
    const Field f = m->field();
    const std::size_t dm = m->dim(), dn = n->dim();
    if (dm == 0 || dn == 0)
        return {};
    const auto& gens = m->algebra()->generators();
    // unknown X (dn x dm), index r * dm + c; equations X A_i - B_i X = 0
    Mat sys(f, gens.size() * dn * dm, dn * dm);
    std::size_t row = 0;
    for (auto i : gens) {
        const Mat& a = m->action(i);
        const Mat& b = n->action(i);
        for (std::size_t r = 0; r < dn; ++r)
            for (std::size_t c = 0; c < dm; ++c, ++row) {
                for (std::size_t k = 0; k < dm; ++k)
                    if (!a(k, c).is_zero())
                        sys(row, r * dm + k) += a(k, c);
                for (std::size_t k = 0; k < dn; ++k)
                    if (!b(r, k).is_zero())
                        sys(row, k * dm + c) -= b(r, k);
            }
    }
    std::vector<ModuleHom> out;
    for (const auto& v : kernel_basis(sys)) {
        Mat x(f, dn, dm);
        for (std::size_t r = 0; r < dn; ++r)
            for (std::size_t c = 0; c < dm; ++c)
                x(r, c) = v[r * dm + c];
        out.emplace_back(m, n, std::move(x));
    }
    return out;
}

// --- sub and quotient modules ---------------------------------------------

std::vector<Vec> submodule_span(const Module& m, const std::vector<Vec>& generators)
{
    std::vector<Vec> all;
    for (const auto& g : generators)
        for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
            all.push_back(m.action(i) * g);
    return span_basis(m.field(), m.dim(), all);
}

ModuleHom subspace_submodule(ModulePtr m, const std::vector<Vec>& basis)
{
    const Field f = m->field();
    std::vector<Vec> reduced = span_basis(f, m->dim(), basis);
    if (reduced.empty())
        return ModuleHom::zero(share(Module::zero(m->algebra())), m);
    Mat b = Mat::from_columns(f, m->dim(), reduced);
    std::vector<Mat> act;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i) {
        auto x = solve_many(b, m->action(i) * b);
        if (!x)
            throw NotSubmodule("span is not stable under basis element " + std::to_string(i));
        act.push_back(std::move(*x));
    }
    ModulePtr sub = share(Module::trusted(m->algebra(), reduced.size(), std::move(act)));
    return ModuleHom(std::move(sub), std::move(m), std::move(b));
}

ModuleHom generated_submodule(ModulePtr m, const std::vector<Vec>& generators)
{
    auto basis = submodule_span(*m, generators);
    return subspace_submodule(std::move(m), basis);
}

Quotient submodule_quotient(ModulePtr m, const ModuleHom& incl)
{
    if (!(*incl.target == *m))
        throw NotSubmodule("inclusion does not land in the given module");
    if (!incl.is_injective())
        throw NotSubmodule("inclusion is not injective");
    if (!incl.is_intertwining())
        throw NotSubmodule("image is not stable under the algebra action");
    const Field f = m->field();
    auto cols = incl.matrix.columns();
    QuotientMap q = quotient_coords(f, m->dim(), cols);
    const std::size_t qd = q.complement.size();
    Mat section(f, m->dim(), qd);
    for (std::size_t t = 0; t < qd; ++t)
        section(q.complement[t], t) = Scalar(f, 1);
    std::vector<Mat> act;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i)
        act.push_back(q.projection * m->action(i) * section);
    ModulePtr quot = share(Module::trusted(m->algebra(), qd, std::move(act)));
    ModuleHom proj(m, quot, q.projection);
    return {std::move(quot), std::move(proj), std::move(q)};
}

ModuleHom kernel_inclusion(const ModuleHom& f) { return subspace_submodule(f.source, kernel_basis(f.matrix)); }

ModuleHom image_inclusion(const ModuleHom& f)
{
    return subspace_submodule(f.target, column_space_basis(f.matrix));
}

std::vector<std::pair<std::size_t, Vec>> homogeneous_generators(const Module& x, const std::vector<Vec>& basis)
{
    const auto& alg = *x.algebra();
    const Field f = alg.field();
    const std::size_t target_dim = span_basis(f, x.dim(), basis).size();

    std::vector<std::pair<std::size_t, Vec>> candidates;
    for (std::size_t v = 0; v < alg.idempotents().size(); ++v) {
        Mat ev = x.act(alg.idempotents()[v]);
        std::vector<Vec> proj;
        for (const auto& b : basis)
            proj.push_back(ev * b);
        for (auto& c : span_basis(f, x.dim(), proj))
            candidates.emplace_back(v, std::move(c));
    }

    std::vector<std::pair<std::size_t, Vec>> gens;
    std::vector<Vec> span;
    for (auto& [v, c] : candidates) {
        if (span.size() == target_dim)
            break;
        if (in_span(f, x.dim(), span, c))
            continue;
        gens.emplace_back(v, c);
        std::vector<Vec> vecs;
        for (const auto& g : gens)
            vecs.push_back(g.second);
        span = submodule_span(x, vecs);
    }

    // Drop generators lying in the submodule generated by the rest.
    for (std::size_t j = 0; j < gens.size();) {
        std::vector<Vec> others;
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (k != j)
                others.push_back(gens[k].second);
        if (in_span(f, x.dim(), submodule_span(x, others), gens[j].second))
            gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(j));
        else
            ++j;
    }
    return gens;
}

void Filtration::validate() const
{
    for (const ModuleHom* inc : {&f1, &f2}) {
        if (!(*inc->target == *g))
            throw SchemaError("filtration inclusion does not land in G");
        if (!inc->is_injective())
            throw SchemaError("filtration inclusion is not injective");
        if (!inc->is_intertwining())
            throw SchemaError("filtration inclusion is not a module map");
    }
    const Field f = g->field();
    auto c2 = f2.matrix.columns();
    for (const auto& c : f1.matrix.columns())
        if (!in_span(f, g->dim(), c2, c))
            throw SchemaError("F1 is not contained in F2");
}

// --- random instances ------------------------------------------------------

Scalar random_scalar(Field f, std::mt19937_64& rng)
{
    if (!f.is_rational() && f.modulus() <= 7)
        return Scalar(f, static_cast<long>(rng() % f.modulus()));
    return Scalar(f, static_cast<long>(rng() % 7) - 3);
}

Vec random_vec(Field f, std::size_t n, std::mt19937_64& rng)
{
    Vec v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(random_scalar(f, rng));
    return v;
}

Vec random_combination(Field f, std::size_t n, const std::vector<Vec>& basis, std::mt19937_64& rng)
{
    Vec v = zero_vec(f, n);
    for (const auto& b : basis)
        v = add(v, scale(random_scalar(f, rng), b));
    return v;
}

ModulePtr random_module(const AlgebraPtr& a, std::mt19937_64& rng, std::size_t max_dim)
{
    const Field f = a->field();
    const std::size_t vertices = a->idempotents().size();
    for (int attempt = 0;; ++attempt) {
        std::size_t v = rng() % vertices;
        ModulePtr m = projective_module(a, {v}).module;
        while (m->dim() > 1 && (m->dim() > max_dim || rng() % 3 == 0)) {
            Vec g = random_vec(f, m->dim(), rng);
            if (is_zero(g))
                continue;
            auto incl = generated_submodule(m, {g});
            if (incl.source->dim() == m->dim())
                continue;
            m = submodule_quotient(m, incl).module;
        }
        if (m->dim() <= max_dim || attempt > 50)
            return m;
    }
}

Filtration random_filtration(const AlgebraPtr& a, std::mt19937_64& rng, std::size_t max_dim)
{
    const Field f = a->field();
    if (max_dim < 3)
        throw SchemaError("random filtration needs max_dim >= 3");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        ModulePtr g = random_module(a, rng, max_dim);
        while (g->dim() < max_dim && (g->dim() < 3 || rng() % 2))
            g = share(direct_sum(*g, *random_module(a, rng, max_dim - g->dim())));
        if (g->dim() < 3 || g->dim() > max_dim)
            continue;
        std::vector<Vec> gens{random_vec(f, g->dim(), rng)};
        if (rng() % 2)
            gens.push_back(random_vec(f, g->dim(), rng));
        ModuleHom f2 = generated_submodule(g, gens);
        const std::size_t d2 = f2.source->dim();
        if (d2 < 2 || d2 >= g->dim())
            continue;
        ModuleHom f1 = generated_submodule(g, {random_combination(f, g->dim(), f2.matrix.columns(), rng)});
        const std::size_t d1 = f1.source->dim();
        if (d1 == 0 || d1 >= d2)
            continue;
        Filtration flt{g, f1, f2};
        flt.validate();
        return flt;
    }
    throw std::runtime_error("random filtration: no instance found");
}

ModuleHom random_hom(ModulePtr m, ModulePtr n, std::mt19937_64& rng)
{
    const Field f = m->field();
    Mat out(f, n->dim(), m->dim());
    for (const auto& h : hom_space(m, n))
        out = out + h.matrix.scaled(random_scalar(f, rng));
    return ModuleHom(std::move(m), std::move(n), std::move(out));
}

RandomAlgebra random_bound_quiver_algebra(Field f, std::uint64_t seed, std::size_t max_paths)
{
    std::mt19937_64 rng(seed);
    for (;;) {
        Quiver q;
        q.vertices = 1 + rng() % 3;
        const std::size_t max_length = 2 + rng() % 2;
        const std::size_t arrows = rng() % (q.vertices + 2);
        for (std::size_t a = 0; a < arrows; ++a)
            q.arrows.emplace_back(rng() % q.vertices, rng() % q.vertices);

        // count paths of length < max_length before building
        std::vector<std::size_t> ending(q.vertices, 1);
        std::size_t count = q.vertices;
        for (std::size_t len = 1; len < max_length; ++len) {
            std::vector<std::size_t> next(q.vertices, 0);
            for (auto [s, t] : q.arrows)
                next[t] += ending[s];
            ending = next;
            count += std::accumulate(next.begin(), next.end(), std::size_t{0});
        }
        if (count > max_paths)
            continue;
        return {Algebra::path_algebra(f, q, max_length), q, max_length};
    }
}

} // namespace hocalc
