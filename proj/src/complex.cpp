#include "hocalc/complex.hpp"

#include <algorithm>

namespace hocalc {

namespace {

Vec flatten(const Mat& m)
{
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            v.push_back(m(r, c));
    return v;
}

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) { return a == b || *a == *b; }

ModulePtr vector_space(const AlgebraPtr& ground, std::size_t dim)
{
    return share(Module::trusted(ground, dim, {Mat::identity(ground->field(), dim)}));
}

// Range of degrees where either complex may be nonzero.
std::pair<int, int> joint_range(const Complex& a, const Complex& b)
{
    if (a.empty())
        return {b.lo(), b.hi()};
    if (b.empty())
        return {a.lo(), a.hi()};
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

} // namespace

// --- Complex ---------------------------------------------------------------

Complex::Complex(AlgebraPtr algebra, int lo, std::vector<ModulePtr> objects, std::vector<Mat> diffs, bool trusted)
    : algebra_(std::move(algebra)), lo_(lo), objects_(std::move(objects)), diffs_(std::move(diffs)),
      zero_(share(Module::zero(algebra_)))
{
    if (!objects_.empty() && diffs_.size() + 1 != objects_.size())
        throw SchemaError("complex needs exactly one differential between consecutive objects");
    if (objects_.empty() && !diffs_.empty())
        throw SchemaError("empty complex cannot carry differentials");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        if (diffs_[k].rows() != objects_[k + 1]->dim() || diffs_[k].cols() != objects_[k]->dim())
            throw SchemaError("differential d^" + std::to_string(lo_ + static_cast<int>(k)) + " has wrong shape");
        if (!trusted && !ModuleHom(objects_[k], objects_[k + 1], diffs_[k]).is_intertwining())
            throw SchemaError("differential d^" + std::to_string(lo_ + static_cast<int>(k)) + " is not a module map");
    }
    for (const auto& m : objects_)
        if (!m->algebra()->same_as(*algebra_))
            throw SchemaError("complex objects live over different algebras");
    if (!d_squared_zero())
        throw SchemaError("d o d != 0");
}

Complex Complex::concentrated(ModulePtr m, int degree)
{
    auto a = m->algebra();
    return Complex(std::move(a), degree, {std::move(m)}, {}, true);
}

Complex Complex::two_term(const ModuleHom& d, int lo)
{
    return Complex(d.source->algebra(), lo, {d.source, d.target}, {d.matrix});
}

ModulePtr Complex::object(int n) const
{
    if (objects_.empty() || n < lo_ || n > hi())
        return zero_;
    return objects_[static_cast<std::size_t>(n - lo_)];
}

Mat Complex::differential(int n) const
{
    if (!objects_.empty() && n >= lo_ && n < hi())
        return diffs_[static_cast<std::size_t>(n - lo_)];
    return Mat(field(), dim(n + 1), dim(n));
}

bool Complex::d_squared_zero() const
{
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
        if (!(diffs_[k + 1] * diffs_[k]).is_zero())
            return false;
    return true;
}

bool Complex::operator==(const Complex& o) const
{
    if (!algebra_->same_as(*o.algebra_))
        return false;
    auto [lo, hi] = joint_range(*this, o);
    for (int n = lo; n <= hi; ++n) {
        if (*object(n) != *o.object(n))
            return false;
        if (differential(n) != o.differential(n))
            return false;
    }
    return true;
}

std::optional<int> Complex::single_degree() const
{
    std::optional<int> found;
    for (int n = lo_; n <= hi(); ++n) {
        if (dim(n) == 0)
            continue;
        if (found)
            return std::nullopt;
        found = n;
    }
    return found;
}

// --- ChainMap --------------------------------------------------------------

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target, std::map<int, Mat> components)
    : source_(std::move(source)), target_(std::move(target))
{
    for (auto& [n, m] : components) {
        const std::size_t r = target_->dim(n), c = source_->dim(n);
        if (m.rows() != r || m.cols() != c)
            throw std::invalid_argument("chain map component " + std::to_string(n) + " has wrong shape");
        if (r && c)
            components_.emplace(n, std::move(m));
    }
}

ChainMap ChainMap::identity(ComplexPtr x)
{
    std::map<int, Mat> comps;
    if (!x->empty())
        for (int n = x->lo(); n <= x->hi(); ++n)
            comps.emplace(n, Mat::identity(x->field(), x->dim(n)));
    return ChainMap(x, x, std::move(comps));
}

ChainMap ChainMap::zero(ComplexPtr x, ComplexPtr y) { return ChainMap(std::move(x), std::move(y), {}); }

Mat ChainMap::component(int n) const
{
    auto it = components_.find(n);
    if (it != components_.end())
        return it->second;
    return Mat(source_->field(), target_->dim(n), source_->dim(n));
}

bool ChainMap::commutes() const
{
    auto [lo, hi] = joint_range(*source_, *target_);
    for (int n = lo - 1; n <= hi; ++n)
        if (component(n + 1) * source_->differential(n) != target_->differential(n) * component(n))
            return false;
    return true;
}

ChainMap ChainMap::operator+(const ChainMap& o) const
{
    std::map<int, Mat> comps = components_;
    for (const auto& [n, m] : o.components_) {
        auto it = comps.find(n);
        if (it == comps.end())
            comps.emplace(n, m);
        else
            it->second = it->second + m;
    }
    return ChainMap(source_, target_, std::move(comps));
}

ChainMap ChainMap::scaled(const Scalar& s) const
{
    std::map<int, Mat> comps;
    for (const auto& [n, m] : components_)
        comps.emplace(n, m.scaled(s));
    return ChainMap(source_, target_, std::move(comps));
}

ChainMap ChainMap::operator-(const ChainMap& o) const
{
    return *this + o.scaled(Scalar(source_->field(), -1));
}

ChainMap compose(const ChainMap& second, const ChainMap& first)
{
    if (!same_complex(first.target(), second.source()))
        throw std::invalid_argument("compose: chain maps are not composable");
    std::map<int, Mat> comps;
    auto [lo, hi] = joint_range(*first.source(), *second.target());
    for (int n = lo; n <= hi; ++n)
        comps.emplace(n, second.component(n) * first.component(n));
    return ChainMap(first.source(), second.target(), std::move(comps));
}

Mat Homotopy::component(Field f, int n, std::size_t rows, std::size_t cols) const
{
    auto it = components.find(n);
    if (it != components.end())
        return it->second;
    return Mat(f, rows, cols);
}

bool witnesses(const Homotopy& h, const ChainMap& f, const ChainMap& g)
{
    const Complex& x = *f.source();
    const Complex& y = *f.target();
    const Field fld = x.field();
    auto [lo, hi] = joint_range(x, y);
    for (int n = lo - 1; n <= hi + 1; ++n) {
        Mat hn = h.component(fld, n, y.dim(n - 1), x.dim(n));
        Mat hn1 = h.component(fld, n + 1, y.dim(n), x.dim(n + 1));
        Mat rhs = y.differential(n - 1) * hn + hn1 * x.differential(n);
        if (f.component(n) - g.component(n) != rhs)
            return false;
    }
    return true;
}

// --- cohomology ------------------------------------------------------------

Cohomology cohomology(const Complex& x, int n)
{
    ModulePtr xn = x.object(n);
    ModuleHom z = subspace_submodule(xn, kernel_basis(x.differential(n)));
    std::vector<Vec> boundary_coords;
    if (z.source->dim() > 0) {
        Mat d_prev = x.differential(n - 1);
        auto coords = solve_many(z.matrix, d_prev);
        if (!coords)
            throw std::logic_error("cohomology: boundaries are not cocycles");
        boundary_coords = coords->columns();
    }
    ModuleHom b = subspace_submodule(z.source, boundary_coords);
    Quotient q = submodule_quotient(z.source, b);
    return {q.module, z.matrix, std::move(q.coords)};
}

Vec Cohomology::class_of(const Vec& cocycle) const
{
    if (cocycle_basis.cols() == 0)
        return {};
    auto z = solve(cocycle_basis, cocycle);
    if (!z)
        throw std::invalid_argument("class_of: vector is not a cocycle");
    return quotient.projection * *z;
}

Vec Cohomology::representative(const Vec& coords) const
{
    if (cocycle_basis.cols() == 0)
        return zero_vec(cocycle_basis.field(), cocycle_basis.rows());
    return cocycle_basis * quotient.section(coords);
}

// --- shift -----------------------------------------------------------------

Complex shift(const Complex& x, int k)
{
    if (x.empty())
        return x;
    std::vector<ModulePtr> objs;
    std::vector<Mat> diffs;
    const Scalar sign(x.field(), k % 2 == 0 ? 1 : -1);
    for (int n = x.lo(); n <= x.hi(); ++n) {
        objs.push_back(x.object(n));
        if (n < x.hi())
            diffs.push_back(x.differential(n).scaled(sign));
    }
    return Complex(x.algebra(), x.lo() - k, std::move(objs), std::move(diffs), true);
}

ChainMap shift(const ChainMap& f, int k, ComplexPtr shifted_source, ComplexPtr shifted_target)
{
    std::map<int, Mat> comps;
    auto [lo, hi] = joint_range(*f.source(), *f.target());
    for (int n = lo; n <= hi; ++n)
        comps.emplace(n - k, f.component(n));
    return ChainMap(std::move(shifted_source), std::move(shifted_target), std::move(comps));
}

ChainMap shift(const ChainMap& f, int k)
{
    return shift(f, k, share(shift(*f.source(), k)), share(shift(*f.target(), k)));
}

// --- quasi-isomorphisms ----------------------------------------------------

Mat induced_map(const ChainMap& f, int n)
{
    Cohomology hs = cohomology(*f.source(), n);
    Cohomology ht = cohomology(*f.target(), n);
    const Field fld = f.source()->field();
    const std::size_t ds = hs.module->dim(), dt = ht.module->dim();
    Mat m(fld, dt, ds);
    if (ds == 0 || dt == 0)
        return m;
    Mat fn = f.component(n);
    for (std::size_t j = 0; j < ds; ++j) {
        Vec img = ht.class_of(fn * hs.representative(unit_vec(fld, ds, j)));
        for (std::size_t i = 0; i < dt; ++i)
            m(i, j) = img[i];
    }
    return m;
}

QuasiIsoReport is_quasi_iso(const ChainMap& f)
{
    QuasiIsoReport report;
    auto [lo, hi] = joint_range(*f.source(), *f.target());
    for (int n = lo; n <= hi; ++n) {
        Mat m = induced_map(f, n);
        std::size_t rk = rank(m);
        report.degrees.push_back({n, m.cols(), m.rows(), rk});
        if (m.rows() != m.cols() || rk != m.cols())
            report.is_quasi_iso = false;
    }
    return report;
}

// --- homotopies and chain maps ---------------------------------------------

std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g)
{
    if (!same_complex(f.source(), g.source()) || !same_complex(f.target(), g.target()))
        throw std::invalid_argument("find_homotopy: maps have different endpoints");
    const Complex& x = *f.source();
    const Complex& y = *f.target();
    const Field fld = x.field();
    auto [lo, hi] = joint_range(x, y);

    // unknown blocks h^n, n in [lo, hi + 1]
    struct Block {
        int n;
        std::vector<ModuleHom> basis;
        std::size_t offset;
    };
    std::vector<Block> blocks;
    std::size_t unknowns = 0;
    for (int n = lo; n <= hi + 1; ++n) {
        if (x.dim(n) == 0 || y.dim(n - 1) == 0)
            continue;
        auto basis = hom_space(x.object(n), y.object(n - 1));
        if (basis.empty())
            continue;
        blocks.push_back({n, std::move(basis), unknowns});
        unknowns += blocks.back().basis.size();
    }

    std::vector<std::pair<int, std::size_t>> eq_offsets;
    std::size_t equations = 0;
    for (int m = lo; m <= hi; ++m) {
        eq_offsets.emplace_back(m, equations);
        equations += y.dim(m) * x.dim(m);
    }
    Mat sys(fld, equations, unknowns);
    Vec rhs = zero_vec(fld, equations);
    for (auto [m, off] : eq_offsets) {
        Vec diff = flatten(f.component(m) - g.component(m));
        for (std::size_t k = 0; k < diff.size(); ++k)
            rhs[off + k] = diff[k];
    }
    auto row_offset = [&](int m) -> std::optional<std::size_t> {
        for (auto [d, off] : eq_offsets)
            if (d == m)
                return off;
        return std::nullopt;
    };
    for (const auto& b : blocks) {
        for (std::size_t k = 0; k < b.basis.size(); ++k) {
            const Mat& h = b.basis[k].matrix;
            // contributes d_Y^(n-1) h to degree n and h d_X^(n-1) to degree n-1
            if (auto off = row_offset(b.n)) {
                Vec v = flatten(y.differential(b.n - 1) * h);
                for (std::size_t e = 0; e < v.size(); ++e)
                    sys(*off + e, b.offset + k) += v[e];
            }
            if (auto off = row_offset(b.n - 1)) {
                Vec v = flatten(h * x.differential(b.n - 1));
                for (std::size_t e = 0; e < v.size(); ++e)
                    sys(*off + e, b.offset + k) += v[e];
            }
        }
    }
    Homotopy result;
    if (unknowns == 0) {
        if (!is_zero(rhs))
            return std::nullopt;
        return result;
    }
    auto sol = equations ? solve(sys, rhs) : std::optional<Vec>(zero_vec(fld, unknowns));
    if (!sol)
        return std::nullopt;
    for (const auto& b : blocks) {
        Mat h(fld, y.dim(b.n - 1), x.dim(b.n));
        for (std::size_t k = 0; k < b.basis.size(); ++k)
            h = h + b.basis[k].matrix.scaled((*sol)[b.offset + k]);
        result.components.emplace(b.n, std::move(h));
    }
    return result;
}

std::vector<ChainMap> chain_map_basis(ComplexPtr xp, ComplexPtr yp)
{
    const Complex& x = *xp;
    const Complex& y = *yp;
    const Field fld = x.field();
    auto [lo, hi] = joint_range(x, y);
    struct Block {
        int n;
        std::vector<ModuleHom> basis;
        std::size_t offset;
    };
    std::vector<Block> blocks;
    std::size_t unknowns = 0;
    for (int n = lo; n <= hi; ++n) {
        if (x.dim(n) == 0 || y.dim(n) == 0)
            continue;
        auto basis = hom_space(x.object(n), y.object(n));
        if (basis.empty())
            continue;
        blocks.push_back({n, std::move(basis), unknowns});
        unknowns += blocks.back().basis.size();
    }
    if (unknowns == 0)
        return {};
    // f^(n+1) d_X^n - d_Y^n f^n = 0, one block of rows per n
    std::map<int, std::size_t> eq_offset;
    std::size_t equations = 0;
    for (int n = lo - 1; n <= hi; ++n) {
        eq_offset[n] = equations;
        equations += y.dim(n + 1) * x.dim(n);
    }
    Mat sys(fld, std::max<std::size_t>(equations, 1), unknowns);
    for (const auto& b : blocks)
        for (std::size_t k = 0; k < b.basis.size(); ++k) {
            const Mat& fm = b.basis[k].matrix;
            Vec left = flatten(fm * x.differential(b.n - 1)); // equation n-1
            for (std::size_t e = 0; e < left.size(); ++e)
                sys(eq_offset[b.n - 1] + e, b.offset + k) += left[e];
            Vec right = flatten(y.differential(b.n) * fm); // equation n
            for (std::size_t e = 0; e < right.size(); ++e)
                sys(eq_offset[b.n] + e, b.offset + k) -= right[e];
        }
    std::vector<ChainMap> out;
    for (const auto& v : kernel_basis(sys)) {
        std::map<int, Mat> comps;
        for (const auto& b : blocks) {
            Mat m(fld, y.dim(b.n), x.dim(b.n));
            for (std::size_t k = 0; k < b.basis.size(); ++k)
                m = m + b.basis[k].matrix.scaled(v[b.offset + k]);
            comps.emplace(b.n, std::move(m));
        }
        out.emplace_back(xp, yp, std::move(comps));
    }
    return out;
}

// --- inner Hom -------------------------------------------------------------

InnerHom inner_hom(ComplexPtr xp, ComplexPtr yp)
{
    const Complex& x = *xp;
    const Complex& y = *yp;
    const Field fld = x.field();
    AlgebraPtr ground = Algebra::ground(fld);
    InnerHom out;
    out.x = xp;
    out.y = yp;
    if (x.empty() || y.empty()) {
        out.complex = share(Complex(ground, 0, {}, {}, true));
        return out;
    }
    const int nlo = y.lo() - x.hi(), nhi = y.hi() - x.lo();

    std::map<int, std::size_t> total;
    std::map<std::pair<int, int>, std::size_t> offset; // (i, n)
    for (int n = nlo - 1; n <= nhi + 1; ++n) {
        std::size_t t = 0;
        for (int i = x.lo(); i <= x.hi(); ++i) {
            auto& basis = out.bases[{i, n}];
            if (x.dim(i) && y.dim(i + n))
                basis = hom_space(x.object(i), y.object(i + n));
            offset[{i, n}] = t;
            t += basis.size();
        }
        total[n] = t;
    }

    // Flattened bases for coordinate extraction, per (i, n).
    auto coords_of = [&](int i, int n, const Mat& h) -> Vec {
        const auto& basis = out.bases.at({i, n});
        if (basis.empty())
            return {};
        std::vector<Vec> cols;
        for (const auto& b : basis)
            cols.push_back(flatten(b.matrix));
        auto c = solve(Mat::from_columns(fld, h.rows() * h.cols(), cols), flatten(h));
        if (!c)
            throw std::logic_error("inner_hom: differential leaves the hom space");
        return *c;
    };

    std::vector<ModulePtr> objs;
    std::vector<Mat> diffs;
    for (int n = nlo; n <= nhi; ++n) {
        objs.push_back(vector_space(ground, total[n]));
        if (n == nhi)
            break;
        Mat d(fld, total[n + 1], total[n]);
        const Scalar sign(fld, n % 2 == 0 ? 1 : -1);
        for (int i = x.lo(); i <= x.hi(); ++i) {
            const auto& basis = out.bases.at({i, n});
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const Mat& phi = basis[k].matrix;
                const std::size_t col = offset.at({i, n}) + k;
                // component at i: d_Y phi
                Vec a = coords_of(i, n + 1, y.differential(i + n) * phi);
                for (std::size_t e = 0; e < a.size(); ++e)
                    d(offset.at({i, n + 1}) + e, col) += a[e];
                // component at i-1: -(-1)^n phi d_X^(i-1)
                if (i - 1 >= x.lo()) {
                    Vec b = coords_of(i - 1, n + 1, phi * x.differential(i - 1));
                    for (std::size_t e = 0; e < b.size(); ++e)
                        d(offset.at({i - 1, n + 1}) + e, col) -= sign * b[e];
                }
            }
        }
        diffs.push_back(std::move(d));
    }
    out.complex = share(Complex(ground, nlo, std::move(objs), std::move(diffs), true));
    return out;
}

ChainMap InnerHom::to_chain_map(const Vec& degree0) const
{
    const Field fld = x->field();
    std::map<int, Mat> comps;
    std::size_t off = 0;
    for (int i = x->lo(); i <= x->hi(); ++i) {
        const auto& basis = bases.at({i, 0});
        Mat m(fld, y->dim(i), x->dim(i));
        for (std::size_t k = 0; k < basis.size(); ++k)
            m = m + basis[k].matrix.scaled(degree0.at(off + k));
        off += basis.size();
        comps.emplace(i, std::move(m));
    }
    return ChainMap(x, y, std::move(comps));
}

Vec InnerHom::from_chain_map(const ChainMap& f) const
{
    const Field fld = x->field();
    Vec out;
    for (int i = x->lo(); i <= x->hi(); ++i) {
        const auto& basis = bases.at({i, 0});
        if (basis.empty())
            continue;
        std::vector<Vec> cols;
        for (const auto& b : basis)
            cols.push_back(flatten(b.matrix));
        Mat fi = f.component(i);
        auto c = solve(Mat::from_columns(fld, fi.rows() * fi.cols(), cols), flatten(fi));
        if (!c)
            throw std::invalid_argument("from_chain_map: component is not a module map");
        out.insert(out.end(), c->begin(), c->end());
    }
    return out;
}

// --- cone and sums ---------------------------------------------------------

Complex cone(const ChainMap& f)
{
    const Complex& x = *f.source();
    const Complex& y = *f.target();
    const Field fld = x.field();
    int lo = y.empty() ? x.lo() - 1 : y.lo();
    int hi = y.empty() ? x.hi() - 1 : y.hi();
    if (!x.empty()) {
        lo = std::min(lo, x.lo() - 1);
        hi = std::max(hi, x.hi() - 1);
    }
    if (x.empty() && y.empty())
        return Complex(x.algebra(), 0, {}, {}, true);
    std::vector<ModulePtr> objs;
    std::vector<Mat> diffs;
    for (int n = lo; n <= hi; ++n) {
        objs.push_back(share(direct_sum(*x.object(n + 1), *y.object(n))));
        if (n == hi)
            break;
        const std::size_t xa = x.dim(n + 1), ya = y.dim(n), xb = x.dim(n + 2), yb = y.dim(n + 1);
        Mat d(fld, xb + yb, xa + ya);
        d.set_block(0, 0, -x.differential(n + 1));
        d.set_block(xb, 0, f.component(n + 1));
        d.set_block(xb, xa, y.differential(n));
        diffs.push_back(std::move(d));
    }
    return Complex(x.algebra(), lo, std::move(objs), std::move(diffs), true);
}

Complex direct_sum(const Complex& x, const Complex& y)
{
    if (x.empty())
        return y;
    if (y.empty())
        return x;
    auto [lo, hi] = joint_range(x, y);
    std::vector<ModulePtr> objs;
    std::vector<Mat> diffs;
    for (int n = lo; n <= hi; ++n) {
        objs.push_back(share(direct_sum(*x.object(n), *y.object(n))));
        if (n < hi)
            diffs.push_back(hocalc::direct_sum(x.differential(n), y.differential(n)));
    }
    return Complex(x.algebra(), lo, std::move(objs), std::move(diffs), true);
}

Complex random_complex(const AlgebraPtr& a, std::mt19937_64& rng, int lo, int length, std::size_t max_dim)
{
    std::vector<ModulePtr> objs{random_module(a, rng, max_dim)};
    std::vector<Mat> diffs;
    ModuleHom prev = ModuleHom::zero(share(Module::zero(a)), objs.back());
    for (int k = 1; k < length; ++k) {
        ModulePtr next = random_module(a, rng, max_dim);
        Quotient coker = submodule_quotient(objs.back(), image_inclusion(prev));
        ModuleHom h = random_hom(coker.module, next, rng);
        ModuleHom d = compose(h, coker.projection);
        diffs.push_back(d.matrix);
        objs.push_back(next);
        prev = d;
    }
    return Complex(a, lo, std::move(objs), std::move(diffs), true);
}

} // namespace hocalc
