#include "hocalc/ext.hpp"

#include <mutex>
#include <string>
#include <unordered_map>

namespace hocalc {

namespace {

std::uint64_t module_hash(const Module& m)
{
    std::uint64_t h = m.algebra()->content_hash() ^ (m.dim() * 0x9e3779b97f4a7c15ull);
    for (const auto& a : m.actions())
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                const Scalar& s = a(r, c);
                if (s.is_zero())
                    continue;
                for (char ch : std::to_string(r) + ":" + std::to_string(c) + "=" + s.str() + ";") {
                    h ^= static_cast<unsigned char>(ch);
                    h *= 1099511628211ull;
                }
            }
    return h;
}

std::vector<std::size_t> summands_of(const std::vector<std::pair<std::size_t, Vec>>& gens)
{
    std::vector<std::size_t> out;
    for (const auto& g : gens)
        out.push_back(g.first);
    return out;
}

std::vector<Vec> vectors_of(const std::vector<std::pair<std::size_t, Vec>>& gens)
{
    std::vector<Vec> out;
    for (const auto& g : gens)
        out.push_back(g.second);
    return out;
}

std::vector<Vec> all_units(Field f, std::size_t n)
{
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(unit_vec(f, n, i));
    return out;
}

void extend(Resolution& r, int depth)
{
    const AlgebraPtr& a = r.target->algebra();
    if (r.terms.empty()) {
        auto gens = homogeneous_generators(*r.target, all_units(a->field(), r.target->dim()));
        auto p0 = projective_module(a, summands_of(gens));
        r.maps.push_back(hom_from_generators(p0, r.target, vectors_of(gens)).matrix);
        r.terms.push_back(std::move(p0));
    }
    while (r.truncation() < depth) {
        const ProjectiveModule& last = r.terms.back();
        auto gens = homogeneous_generators(*last.module, kernel_basis(r.maps.back()));
        auto next = projective_module(a, summands_of(gens));
        r.maps.push_back(hom_from_generators(next, last.module, vectors_of(gens)).matrix);
        r.terms.push_back(std::move(next));
    }
}

// Hom(P, N) with P = (+) A e_(v_j), identified with (+) e_(v_j) N.
struct HomFibers {
    const ProjectiveModule* p;
    ModulePtr n;
    std::vector<Mat> bases;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;

    HomFibers(const ProjectiveModule& proj, ModulePtr target) : p(&proj), n(std::move(target))
    {
        const auto& alg = *n->algebra();
        for (auto v : p->summands) {
            auto cols = column_space_basis(n->act(alg.idempotents()[v]));
            offsets.push_back(total);
            total += cols.size();
            bases.push_back(Mat::from_columns(n->field(), n->dim(), cols));
        }
    }

    Vec encode(const Mat& phi) const
    {
        Vec out;
        out.reserve(total);
        for (std::size_t j = 0; j < bases.size(); ++j) {
            if (bases[j].cols() == 0)
                continue;
            auto c = solve(bases[j], phi * p->generator(j));
            if (!c)
                throw std::logic_error("hom coordinates: generator image outside e_v N");
            out.insert(out.end(), c->begin(), c->end());
        }
        return out;
    }

    Mat decode(const Vec& coords) const
    {
        std::vector<Vec> images;
        for (std::size_t j = 0; j < bases.size(); ++j) {
            Vec c(coords.begin() + static_cast<std::ptrdiff_t>(offsets[j]),
                  coords.begin() + static_cast<std::ptrdiff_t>(offsets[j] + bases[j].cols()));
            images.push_back(bases[j].cols() ? bases[j] * c : zero_vec(n->field(), n->dim()));
        }
        return hom_from_generators(*p, n, images).matrix;
    }

    /// Matrix of phi -> phi o d from Hom(P, N) to Hom(P', N), d : P' -> P.
    Mat precompose(const Mat& d, const HomFibers& to) const
    {
        const Field f = n->field();
        Mat out(f, to.total, total);
        for (std::size_t t = 0; t < total; ++t) {
            Vec col = to.encode(decode(unit_vec(f, total, t)) * d);
            for (std::size_t r = 0; r < to.total; ++r)
                out(r, t) = col[r];
        }
        return out;
    }
};

std::string node_name(std::size_t k, std::size_t count)
{
    if (k == 0)
        return "N (node 0)";
    if (k + 1 == count)
        return "M (node " + std::to_string(k) + ")";
    return "E_" + std::to_string(count - 1 - k) + " (node " + std::to_string(k) + ")";
}

} // namespace

// --- resolutions -----------------------------------------------------------

Complex Resolution::as_complex(int depth) const
{
    if (depth > truncation())
        throw TruncationError("resolution truncated at " + std::to_string(truncation()) + ", need " +
                              std::to_string(depth));
    std::vector<ModulePtr> objs;
    std::vector<Mat> diffs;
    for (int k = depth; k >= 0; --k) {
        objs.push_back(term(k).module);
        if (k > 0)
            diffs.push_back(differential(k));
    }
    return Complex(target->algebra(), -depth, std::move(objs), std::move(diffs), true);
}

bool Resolution::is_exact() const
{
    if (rank(augmentation()) != target->dim())
        return false;
    for (int k = 1; k <= truncation(); ++k) {
        const Mat& below = differential(k - 1);
        if (!exact_at(differential(k), below))
            return false;
    }
    return true;
}

ResolutionPtr free_resolution(const ModulePtr& m, int depth)
{
    if (depth < 0)
        throw SchemaError("truncation degree must be non-negative");
    static std::mutex mutex;
    static std::unordered_map<std::uint64_t, std::vector<ResolutionPtr>> cache;
    const std::uint64_t key = module_hash(*m);
    std::lock_guard lock(mutex);
    auto& bucket = cache[key];
    for (auto& cached : bucket) {
        if (!(*cached->target == *m))
            continue;
        if (cached->truncation() >= depth)
            return cached;
        auto deeper = std::make_shared<Resolution>(*cached);
        extend(*deeper, depth);
        cached = deeper;
        return cached;
    }
    auto fresh = std::make_shared<Resolution>();
    fresh->target = m;
    extend(*fresh, depth);
    bucket.push_back(fresh);
    return fresh;
}

std::optional<Mat> lift_through(const ProjectiveModule& p, const ModulePtr& x, const Mat& s, const Mat& h,
                                std::mt19937_64* rng)
{
    const auto& alg = *x->algebra();
    const Field f = alg.field();
    std::vector<Vec> images;
    for (std::size_t j = 0; j < p.rank(); ++j) {
        Mat ev = x->act(alg.idempotents()[p.summands[j]]);
        Mat sys = s * ev;
        auto sol = solve(sys, h * p.generator(j));
        if (!sol)
            return std::nullopt;
        Vec y = *sol;
        if (rng)
            y = add(y, random_combination(f, x->dim(), kernel_basis(sys), *rng));
        images.push_back(ev * y);
    }
    return hom_from_generators(p, x, images).matrix;
}

std::vector<Mat> projective_hom_basis(const ProjectiveModule& p, const ModulePtr& x)
{
    HomFibers fibers(p, x);
    std::vector<Mat> out;
    for (std::size_t t = 0; t < fibers.total; ++t)
        out.push_back(fibers.decode(unit_vec(x->field(), fibers.total, t)));
    return out;
}

// --- Ext groups ------------------------------------------------------------

int ExtElement::degree() const { return group->degree(); }
const ModulePtr& ExtElement::source() const { return group->source(); }
const ModulePtr& ExtElement::target() const { return group->target(); }

ExtGroup::ExtGroup(ModulePtr m, ModulePtr n, int degree, ResolutionPtr res)
    : m_(std::move(m)), n_(std::move(n)), degree_(degree), res_(std::move(res)),
      quotient_{Mat(m_->field(), 0, 0), {}}, rep_images_(m_->field(), 0, 0)
{
    if (degree_ + 1 > res_->truncation())
        throw TruncationError("Ext^" + std::to_string(degree_) + " needs the resolution through degree " +
                              std::to_string(degree_ + 1));
    const Field f = m_->field();
    HomFibers here(res_->term(degree_), n_);
    fiber_bases_ = here.bases;
    offsets_ = here.offsets;
    total_ = here.total;

    HomFibers next(res_->term(degree_ + 1), n_);
    Mat delta = here.precompose(res_->differential(degree_ + 1), next);
    std::vector<Vec> cocycles = total_ ? kernel_basis(delta) : std::vector<Vec>{};

    if (degree_ > 0) {
        HomFibers prev(res_->term(degree_ - 1), n_);
        Mat up = prev.precompose(res_->differential(degree_), here);
        coboundary_coords_ = column_space_basis(up);
    }
    quotient_ = quotient_coords(f, total_, coboundary_coords_);

    std::vector<Vec> images;
    for (const auto& z : cocycles)
        images.push_back(quotient_.projection * z);
    const std::size_t qdim = quotient_.projection.rows();
    if (!images.empty()) {
        Mat img = Mat::from_columns(f, qdim, images);
        for (auto p : rref(img).pivots)
            reps_.push_back(cocycles[p]);
    }
    std::vector<Vec> rep_img;
    for (const auto& r : reps_)
        rep_img.push_back(quotient_.projection * r);
    rep_images_ = Mat::from_columns(f, qdim, rep_img);
}

Vec ExtGroup::hom_coords(const Mat& phi) const
{
    HomFibers here(res_->term(degree_), n_);
    return here.encode(phi);
}

Mat ExtGroup::hom_matrix(const Vec& coords) const
{
    HomFibers here(res_->term(degree_), n_);
    return here.decode(coords);
}

bool ExtGroup::is_cocycle(const Mat& phi) const
{
    return (phi * res_->differential(degree_ + 1)).is_zero();
}

Vec ExtGroup::coordinates(const Mat& phi) const
{
    if (phi.rows() != n_->dim() || phi.cols() != res_->term(degree_).module->dim())
        throw std::invalid_argument("cocycle has the wrong shape");
    if (!is_cocycle(phi))
        throw std::invalid_argument("map P_i -> N is not a cocycle");
    if (reps_.empty())
        return {};
    auto c = solve(rep_images_, quotient_.projection * hom_coords(phi));
    if (!c)
        throw std::logic_error("cocycle class outside the span of the Ext basis");
    return *c;
}

ExtElement ExtGroup::element(const Mat& cocycle) const
{
    return ExtElement{shared_from_this(), cocycle, coordinates(cocycle)};
}

ExtElement ExtGroup::from_coords(const Vec& coords) const
{
    const Field f = m_->field();
    Vec hom = zero_vec(f, total_);
    for (std::size_t t = 0; t < reps_.size(); ++t)
        hom = add(hom, scale(coords.at(t), reps_[t]));
    return element(hom_matrix(hom));
}

std::vector<ExtElement> ExtGroup::basis() const
{
    std::vector<ExtElement> out;
    for (std::size_t t = 0; t < reps_.size(); ++t)
        out.push_back(from_coords(unit_vec(m_->field(), reps_.size(), t)));
    return out;
}

std::vector<Mat> ExtGroup::coboundaries() const
{
    std::vector<Mat> out;
    for (const auto& c : coboundary_coords_)
        out.push_back(hom_matrix(c));
    return out;
}

ExtGroupPtr ext_group(const ModulePtr& m, const ModulePtr& n, int i, std::optional<int> truncation)
{
    if (i < 0)
        throw SchemaError("Ext degree must be non-negative");
    if (!m->algebra()->same_as(*n->algebra()))
        throw SchemaError("Ext between modules over different algebras");
    const int t = truncation.value_or(i + 1);
    if (t < 0)
        throw SchemaError("truncation degree must be non-negative");
    if (i + 1 > t)
        throw TruncationError("Ext^" + std::to_string(i) + " requested with resolution truncated at " +
                              std::to_string(t));
    return std::make_shared<const ExtGroup>(m, n, i, free_resolution(m, t));
}

// --- extension sequences ---------------------------------------------------

bool exact_at(const Mat& f, const Mat& g)
{
    if (!(g * f).is_zero())
        return false;
    return g.cols() - rank(g) == rank(f);
}

void ExtensionSeq::validate() const
{
    const std::size_t count = objects.size();
    if (count < 3)
        throw SchemaError("extension sequence needs at least three modules");
    if (maps.size() + 1 != count)
        throw SchemaError("extension sequence needs one map between consecutive modules");
    for (std::size_t k = 0; k < maps.size(); ++k) {
        if (maps[k].rows() != objects[k + 1]->dim() || maps[k].cols() != objects[k]->dim())
            throw SchemaError("map out of " + node_name(k, count) + " has the wrong shape");
        if (!ModuleHom(objects[k], objects[k + 1], maps[k]).is_intertwining())
            throw SchemaError("map out of " + node_name(k, count) + " is not a module map");
    }
    if (rank(maps.front()) != objects.front()->dim())
        throw SchemaError("not exact at " + node_name(0, count) + ": first map is not injective");
    for (std::size_t k = 1; k + 1 < count; ++k)
        if (!exact_at(maps[k - 1], maps[k]))
            throw SchemaError("not exact at " + node_name(k, count));
    if (rank(maps.back()) != objects.back()->dim())
        throw SchemaError("not exact at " + node_name(count - 1, count) + ": last map is not surjective");
}

ExtensionSeq ExtensionSeq::short_exact(const ModuleHom& incl, const ModuleHom& proj)
{
    ExtensionSeq e{{incl.source, incl.target, proj.target}, {incl.matrix, proj.matrix}};
    e.validate();
    return e;
}

ExtElement class_of_extension(const ExtensionSeq& e, std::mt19937_64* rng)
{
    e.validate();
    const int i = e.length();
    auto group = ext_group(e.end(), e.start(), i);
    const Resolution& res = *group->resolution();
    // f_k : P_k -> objects[i - k], with maps[i - k] f_k = f_(k-1) d_k
    Mat h = res.augmentation();
    Mat f(e.end()->field(), 0, 0);
    for (int k = 0; k <= i; ++k) {
        const std::size_t node = static_cast<std::size_t>(i - k);
        auto lifted = lift_through(res.term(k), e.objects[node], e.maps[node], h, rng);
        if (!lifted)
            throw std::logic_error("lift through an exact sequence failed");
        f = *lifted;
        if (k < i)
            h = f * res.differential(k + 1);
    }
    return group->element(f);
}

ExtElement yoneda_product(const ExtElement& a, const ExtElement& b)
{
    if (!(*a.target() == *b.source()))
        throw MiddleMismatch("Yoneda product needs target(a) = source(b)");
    const int i = a.degree(), j = b.degree();
    auto group = ext_group(a.source(), b.target(), i + j);
    const Resolution& p = *group->resolution();
    const Resolution& q = *free_resolution(b.source(), j + 1);
    if (p.term(i).module->dim() != a.cocycle.cols() || q.term(j).module->dim() != b.cocycle.cols())
        throw std::logic_error("Yoneda product: resolution prefixes disagree");
    // F_k : P_(i+k) -> Q_k with d^Q_k F_k = F_(k-1) d^P_(i+k), F_(-1) = cocycle of a
    Mat h = a.cocycle;
    Mat lift(a.source()->field(), 0, 0);
    for (int k = 0; k <= j; ++k) {
        auto l = lift_through(p.term(i + k), q.term(k).module, q.differential(k), h);
        if (!l)
            throw std::logic_error("Yoneda product: comparison lift failed");
        lift = *l;
        if (k < j)
            h = lift * p.differential(i + k + 1);
    }
    return group->element(b.cocycle * lift);
}

ExtensionSeq splice(const ExtensionSeq& left, const ExtensionSeq& right)
{
    left.validate();
    right.validate();
    if (!(*left.end() == *right.start()))
        throw MiddleMismatch("end module of the left sequence differs from the start module of the right");
    ExtensionSeq out;
    out.objects.assign(left.objects.begin(), left.objects.end() - 1);
    out.objects.insert(out.objects.end(), right.objects.begin() + 1, right.objects.end());
    out.maps.assign(left.maps.begin(), left.maps.end() - 1);
    out.maps.push_back(right.maps.front() * left.maps.back());
    out.maps.insert(out.maps.end(), right.maps.begin() + 1, right.maps.end());
    out.validate();
    return out;
}

bool is_trivial(const ExtElement& a) { return is_zero(a.coords); }

ExtElement add(const ExtElement& a, const ExtElement& b)
{
    if (a.group != b.group && !(a.degree() == b.degree() && *a.source() == *b.source() && *a.target() == *b.target()))
        throw std::invalid_argument("adding Ext elements from different groups");
    return a.group->element(a.cocycle + b.cocycle);
}

ExtElement scale(const Scalar& s, const ExtElement& a) { return a.group->element(a.cocycle.scaled(s)); }

// --- filtrations -----------------------------------------------------------

FiltrationSequences filtration_sequences(const Filtration& flt)
{
    flt.validate();
    const Field f = flt.g->field();
    FiltrationSequences out;
    out.g = flt.g;
    out.f1 = flt.f1.source;
    out.f2 = flt.f2.source;
    auto f1_in_f2 = solve_many(flt.f2.matrix, flt.f1.matrix);
    if (!f1_in_f2)
        throw SchemaError("F1 is not contained in F2");
    ModuleHom inc12(out.f1, out.f2, *f1_in_f2);
    Quotient q21 = submodule_quotient(out.f2, inc12);
    Quotient qg1 = submodule_quotient(flt.g, flt.f1);
    Quotient qg2 = submodule_quotient(flt.g, flt.f2);
    out.f2_f1 = q21.module;
    out.g_f1 = qg1.module;
    out.g_f2 = qg2.module;

    auto section = [&](const Quotient& q) {
        const std::size_t d = q.module->dim();
        std::vector<Vec> cols;
        for (std::size_t c = 0; c < d; ++c)
            cols.push_back(q.coords.section(unit_vec(f, d, c)));
        return Mat::from_columns(f, q.projection.matrix.cols(), cols);
    };
    // F2/F1 -> G/F1 and G/F1 -> G/F2, induced through sections of the quotients
    Mat iota = qg1.projection.matrix * flt.f2.matrix * section(q21);
    Mat rho = qg2.projection.matrix * section(qg1);

    out.e1 = ExtensionSeq::short_exact(inc12, q21.projection);
    out.e2 = ExtensionSeq::short_exact(ModuleHom(out.f2_f1, out.g_f1, iota), ModuleHom(out.g_f1, out.g_f2, rho));
    out.four_term = ExtensionSeq{{out.f1, out.f2, out.g_f1, out.g_f2},
                                 {inc12.matrix, qg1.projection.matrix * flt.f2.matrix, rho}};
    out.four_term.validate();
    return out;
}

// --- random instances ------------------------------------------------------

ExtensionSeq random_short_exact(const AlgebraPtr& a, std::mt19937_64& rng, std::size_t max_dim)
{
    const Field f = a->field();
    for (;;) {
        ModulePtr b = random_module(a, rng, max_dim);
        if (rng() % 2 && b->dim() < max_dim)
            b = share(direct_sum(*b, *random_module(a, rng, max_dim - b->dim())));
        if (b->dim() > max_dim || b->dim() < 2)
            continue;
        auto incl = generated_submodule(b, {random_vec(f, b->dim(), rng)});
        const std::size_t k = incl.source->dim();
        if (k == 0 || k == b->dim())
            continue;
        auto q = submodule_quotient(b, incl);
        return ExtensionSeq::short_exact(incl, q.projection);
    }
}

ExtensionSeq random_short_exact_onto(const ModulePtr& m, std::mt19937_64& rng, std::size_t max_extra)
{
    const AlgebraPtr& a = m->algebra();
    const Field f = a->field();
    auto res = free_resolution(m, 0);
    const ProjectiveModule& p0 = res->term(0);
    ModulePtr d;
    Mat onto(f, 0, 0);
    if (rng() % 3 != 0) {
        // D = P_0 / S with S inside ker(augmentation)
        auto ker = kernel_basis(res->augmentation());
        std::vector<Vec> gens;
        if (!ker.empty())
            for (std::size_t t = rng() % 3; t > 0; --t)
                gens.push_back(random_combination(f, p0.module->dim(), ker, rng));
        auto s = generated_submodule(p0.module, gens);
        auto q = submodule_quotient(p0.module, s);
        d = q.module;
        std::vector<Vec> cols;
        for (std::size_t c = 0; c < d->dim(); ++c)
            cols.push_back(res->augmentation() * q.coords.section(unit_vec(f, d->dim(), c)));
        onto = Mat::from_columns(f, m->dim(), cols);
    } else {
        // D = P_0 (+) R mapping onto M by (augmentation, random hom)
        ModulePtr r = random_module(a, rng, std::max<std::size_t>(max_extra, 1));
        d = share(direct_sum(*p0.module, *r));
        onto = hstack(f, m->dim(), std::vector<Mat>{res->augmentation(), random_hom(r, m, rng).matrix});
    }
    ModuleHom proj(d, m, onto);
    return ExtensionSeq::short_exact(kernel_inclusion(proj), proj);
}

} // namespace hocalc
