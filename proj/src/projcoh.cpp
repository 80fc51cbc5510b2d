#include "hocalc/projcoh.hpp"

#include <functional>
#include <sstream>

namespace hocalc {

namespace {

Dim checked_mul(Dim a, Dim b)
{
    Dim r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("dimension overflow");
    return r;
}

Dim checked_add(Dim a, Dim b)
{
    Dim r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("dimension overflow");
    return r;
}

void require_pn(int n)
{
    if (n < 1)
        throw std::invalid_argument("projective space needs n >= 1");
}

void require_form_degree(int n, int p)
{
    require_pn(n);
    if (p < 0 || p > n)
        throw std::invalid_argument("form degree out of range");
}

Column line_column(int n, int m)
{
    Column c(n + 1);
    for (int q = 0; q <= n; ++q)
        c[q] = h_line(n, m, q);
    return c;
}

Column kunneth_column(int a, int b, int m1, int m2)
{
    Column c(a + b + 1);
    for (int q = 0; q <= a + b; ++q)
        c[q] = kunneth(a, b, m1, m2, q);
    return c;
}

Column scaled(const Column& c, Dim k)
{
    Column r(c.size());
    for (std::size_t q = 0; q < c.size(); ++q)
        r[q] = checked_mul(c[q], k);
    return r;
}

void assign(std::optional<Dim>& slot, Dim value, const char* what)
{
    if (value < 0)
        throw std::logic_error(std::string("long exact sequence: negative ") + what);
    if (slot && *slot != value)
        throw std::logic_error(std::string("long exact sequence: inconsistent ") + what);
    slot = value;
}

/// 0 -> S -> M -> Q -> 0 with one of S, Q unknown; returns the unknown column.
Column solve_short_exact(const std::optional<Column>& s, const Column& m, const std::optional<Column>& q)
{
    const std::size_t len = m.size();
    std::vector<std::optional<Dim>> dims;
    for (std::size_t i = 0; i < len; ++i) {
        dims.push_back(s ? std::optional<Dim>((*s)[i]) : std::nullopt);
        dims.push_back(m[i]);
        dims.push_back(q ? std::optional<Dim>((*q)[i]) : std::nullopt);
    }
    Column all = complete_long_exact(dims);
    Column out(len);
    for (std::size_t i = 0; i < len; ++i)
        out[i] = all[3 * i + (s ? 2 : 0)];
    return out;
}

/// Chase through 0 -> F_j -> L(-j)^C(N+1,j) -> F_(j-1) -> 0 for j = 1..N, with
/// F_0 = L and F_N = L(-N-1). `line(s)` is the column of L twisted by s.
std::vector<ChaseStep> chase_family(int top, const std::function<Column(int)>& line,
                                    std::vector<std::optional<Column>>& f)
{
    f.assign(top + 1, std::nullopt);
    f[0] = line(0);
    f[top] = line(-(top + 1));
    auto middle = [&](int j) { return scaled(line(-j), binomial(top + 1, j)); };
    std::vector<ChaseStep> steps;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int j = 1; j < top; ++j) {
            if (f[j])
                continue;
            if (f[j - 1]) {
                try {
                    Column m = middle(j);
                    f[j] = solve_short_exact(std::nullopt, m, f[j - 1]);
                    steps.push_back({j, true, *f[j], m, *f[j - 1]});
                    progress = true;
                    continue;
                } catch (const AmbiguousChase&) {
                }
            }
            if (f[j + 1]) {
                try {
                    Column m = middle(j + 1);
                    f[j] = solve_short_exact(f[j + 1], m, std::nullopt);
                    steps.push_back({j + 1, false, *f[j + 1], m, *f[j]});
                    progress = true;
                } catch (const AmbiguousChase&) {
                }
            }
        }
    }
    return steps;
}

} // namespace

Dim binomial(Dim x, Dim k)
{
    if (k < 0 || x < k)
        return 0;
    k = std::min(k, x - k);
    Dim r = 1;
    for (Dim i = 1; i <= k; ++i)
        r = checked_mul(r, x - k + i) / i;
    return r;
}

Dim h_line(int n, int m, int q)
{
    require_pn(n);
    if (q == 0)
        return m >= 0 ? binomial(n + m, n) : 0;
    if (q == n)
        return -m - 1 >= n ? binomial(-m - 1, n) : 0;
    return 0;
}

Dim h_omega(int n, int p, int m, int q)
{
    require_form_degree(n, p);
    if (q == 0 && m > p)
        return checked_mul(binomial(m + n - p, m), binomial(m - 1, p));
    if (q == n && m < p - n)
        return checked_mul(binomial(-m + p, -m), binomial(-m - 1, n - p));
    if (q == p && m == 0)
        return 1;
    return 0;
}

Dim kunneth(int a, int b, int m1, int m2, int q)
{
    Dim sum = 0;
    for (int i = 0; i <= q; ++i) {
        const int j = q - i;
        if (i > a || j > b)
            continue;
        sum = checked_add(sum, checked_mul(h_line(a, m1, i), h_line(b, m2, j)));
    }
    return sum;
}

Dim dim_graded_piece(int vars, int d) { return binomial(d + vars - 1, vars - 1); }

bool serre_dual_check(int n, int m)
{
    for (int q = 0; q <= n; ++q)
        if (h_line(n, m, q) != h_line(n, -m - n - 1, n - q))
            return false;
    return true;
}

bool serre_dual_check_bidegree(int a, int b)
{
    for (int q = 0; q <= 2; ++q)
        if (kunneth(1, 1, a, b, q) != kunneth(1, 1, -2 - a, -2 - b, 2 - q))
            return false;
    return true;
}

Column complete_long_exact(const std::vector<std::optional<Dim>>& dims)
{
    const std::size_t n = dims.size();
    std::vector<std::optional<Dim>> d = dims;
    // r[i] = rank of V_(i-1) -> V_i
    std::vector<std::optional<Dim>> r(n + 1);
    r[0] = 0;
    r[n] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const auto before = std::make_tuple(d[i], r[i], r[i + 1]);
            if (d[i] && *d[i] == 0) {
                assign(r[i], 0, "rank");
                assign(r[i + 1], 0, "rank");
            }
            if (d[i] && r[i])
                assign(r[i + 1], *d[i] - *r[i], "rank");
            if (d[i] && r[i + 1])
                assign(r[i], *d[i] - *r[i + 1], "rank");
            if (r[i] && r[i + 1])
                assign(d[i], *r[i] + *r[i + 1], "dimension");
            changed |= before != std::make_tuple(d[i], r[i], r[i + 1]);
        }
    }
    Column out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!d[i])
            throw AmbiguousChase("rank into position " + std::to_string(i) + " is not forced");
        out[i] = *d[i];
    }
    return out;
}

ChaseResult euler_chase_detailed(int n, int p, int m)
{
    require_form_degree(n, p);
    std::vector<std::optional<Column>> f;
    auto steps = chase_family(n, [&](int s) { return line_column(n, m + s); }, f);
    if (!f[p])
        throw AmbiguousChase("Omega^" + std::to_string(p) + "(" + std::to_string(m) + ") on P^" + std::to_string(n));
    return {*f[p], std::move(steps)};
}

Column euler_chase(int n, int p, int m) { return euler_chase_detailed(n, p, m).column; }

Column pulled_omega(int p, int a, int b)
{
    if (p < 0 || p > 3)
        throw std::invalid_argument("form degree out of range");
    std::vector<std::optional<Column>> f;
    chase_family(3, [&](int s) { return kunneth_column(1, 1, a + s, b + s); }, f);
    if (!f[p])
        throw AmbiguousChase("i^*Omega^" + std::to_string(p) + "(" + std::to_string(a) + "," + std::to_string(b) +
                             ") on P1xP1");
    return *f[p];
}

// ---- spaces and descriptors ----

int Space::dim() const
{
    int d = 0;
    for (int f : factors)
        d += f;
    return d;
}

std::string Space::name() const
{
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i)
        s += (i ? "xP" : "P") + std::to_string(factors[i]);
    return s;
}

Space Space::parse(const std::string& text)
{
    Space sp;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && text[i] == ' ')
            ++i;
    };
    for (;;) {
        skip();
        if (i >= text.size() || text[i] != 'P')
            throw SchemaError("space '" + text + "': expected P<n> factors joined by x");
        ++i;
        if (i < text.size() && text[i] == '^')
            ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (start == i)
            throw SchemaError("space '" + text + "': missing dimension");
        int n = std::stoi(text.substr(start, i - start));
        if (n < 1)
            throw SchemaError("space '" + text + "': dimension must be at least 1");
        sp.factors.push_back(n);
        skip();
        if (i == text.size())
            break;
        if (text[i] != 'x' && text[i] != '*')
            throw SchemaError("space '" + text + "': unexpected '" + text.substr(i, 1) + "'");
        ++i;
    }
    if (sp.factors.size() > 2)
        throw SchemaError("space '" + text + "': at most two factors");
    return sp;
}

std::string reading_name(DualReading r) { return r == DualReading::naive ? "naive" : "grothendieck"; }

namespace {

using Kind = SheafExpr::Kind;

SheafExprPtr make(Kind k, std::vector<SheafExprPtr> args = {}, std::vector<int> twist = {}, int p = 0)
{
    auto e = std::make_shared<SheafExpr>();
    e->kind = k;
    e->args = std::move(args);
    e->twist = std::move(twist);
    e->p = p;
    return e;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    SheafExprPtr parse()
    {
        auto e = expr();
        skip();
        if (i_ != s_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw SchemaError("sheaf '" + s_ + "' at column " + std::to_string(i_ + 1) + ": " + msg);
    }

    void skip()
    {
        while (i_ < s_.size() && s_[i_] == ' ')
            ++i_;
    }

    bool eat(const std::string& tok)
    {
        skip();
        if (s_.compare(i_, tok.size(), tok) == 0) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(const std::string& tok)
    {
        if (!eat(tok))
            fail("expected '" + tok + "'");
    }

    bool peek_int_paren() const
    {
        std::size_t j = i_;
        while (j < s_.size() && s_[j] == ' ')
            ++j;
        if (j >= s_.size() || s_[j] != '(')
            return false;
        ++j;
        while (j < s_.size() && s_[j] == ' ')
            ++j;
        if (j < s_.size() && (s_[j] == '-' || s_[j] == '+'))
            ++j;
        return j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]));
    }

    int integer()
    {
        skip();
        std::size_t start = i_;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+'))
            ++i_;
        std::size_t digits = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (digits == i_)
            fail("expected an integer");
        if (i_ - digits > 6)
            fail("twist too large");
        return std::stoi(s_.substr(start, i_ - start));
    }

    std::vector<int> twist()
    {
        expect("(");
        std::vector<int> t{integer()};
        while (eat(","))
            t.push_back(integer());
        expect(")");
        return t;
    }

    SheafExprPtr expr()
    {
        std::vector<SheafExprPtr> factors{factor()};
        while (eat("*") || eat("⊗") || eat("(x)"))
            factors.push_back(factor());
        return factors.size() == 1 ? factors[0] : make(Kind::tensor, std::move(factors));
    }

    SheafExprPtr factor()
    {
        SheafExprPtr e = atom();
        for (;;) {
            if (peek_int_paren())
                e = make(Kind::tensor, {e, make(Kind::line, {}, twist())});
            else if (eat("^v") || eat("^∨"))
                e = make(Kind::dual, {e});
            else
                return e;
        }
    }

    SheafExprPtr atom()
    {
        skip();
        if (eat("Omega")) {
            int p = 1;
            if (i_ + 1 < s_.size() && s_[i_] == '^' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
                ++i_;
                p = integer();
            }
            return make(Kind::omega, {}, {}, p);
        }
        if (eat("dual(") || eat("Hom(")) {
            auto e = expr();
            expect(")");
            return make(Kind::dual, {e});
        }
        if (eat("segre_push(") || eat("i_*(") || eat("push(")) {
            auto e = expr();
            expect(")");
            return make(Kind::push, {e});
        }
        if (eat("pullback(") || eat("i^*(")) {
            auto e = expr();
            expect(")");
            return make(Kind::pullback, {e});
        }
        if (eat("O")) {
            if (peek_int_paren())
                return make(Kind::line, {}, twist());
            return make(Kind::line, {}, {0});
        }
        if (eat("T"))
            return make(Kind::tangent);
        if (eat("(")) {
            auto e = expr();
            expect(")");
            return e;
        }
        fail(i_ < s_.size() ? "unexpected '" + s_.substr(i_, 1) + "'" : "unexpected end of input");
    }
};

// Evaluated form: a line bundle, a twisted Omega^p on P^n, a pullback of
// Omega^p_{P^3} to P^1 x P^1 twisted by (a, b), or a shifted pushforward.
struct Normal {
    enum class Kind { line, omega, pulled, push } kind;
    Space space;
    std::vector<int> twist; // line: per factor; omega: {m}; pulled: {a, b}
    int p = 0;
    int shift = 0; // push: H^q = H^(q + shift)(P^1 x P^1, inner)
    std::shared_ptr<const Normal> inner;
};

const Space P3{{3}};
const Space P1xP1{{1, 1}};

struct Evaluator {
    DualReading reading;
    bool dual_of_push = false;

    [[noreturn]] static void fail(const std::string& msg) { throw SchemaError("sheaf: " + msg); }

    static std::vector<int> expand(const Space& sp, const std::vector<int>& t)
    {
        if (t.size() == 1)
            return std::vector<int>(sp.factors.size(), t[0]);
        if (t.size() != sp.factors.size())
            fail("twist has " + std::to_string(t.size()) + " entries on " + sp.name());
        return t;
    }

    static Normal line(const Space& sp, std::vector<int> t) { return {Normal::Kind::line, sp, std::move(t), 0, 0, {}}; }

    static Normal pulled(int p, int a, int b)
    {
        if (p == 0)
            return line(P1xP1, {a, b});
        if (p == 3)
            return line(P1xP1, {a - 4, b - 4});
        return {Normal::Kind::pulled, P1xP1, {a, b}, p, 0, {}};
    }

    static Normal twisted(const Normal& n, const std::vector<int>& t)
    {
        Normal r = n;
        switch (n.kind) {
        case Normal::Kind::line:
            for (std::size_t i = 0; i < t.size(); ++i)
                r.twist[i] += t[i];
            return r;
        case Normal::Kind::omega:
            r.twist[0] += t[0];
            return r;
        case Normal::Kind::pulled:
            return pulled(n.p, n.twist[0] + t[0], n.twist[1] + t[1]);
        case Normal::Kind::push:
            r.inner = std::make_shared<const Normal>(twisted(*n.inner, {t[0], t[0]}));
            return r;
        }
        return r;
    }

    static Normal dual_locally_free(const Normal& n)
    {
        switch (n.kind) {
        case Normal::Kind::line: {
            Normal r = n;
            for (int& t : r.twist)
                t = -t;
            return r;
        }
        case Normal::Kind::omega: {
            // (Omega^p)^dual = Omega^(n-p) (x) omega^dual = Omega^(n-p)(n+1)
            const int dim = n.space.factors[0];
            return {Normal::Kind::omega, n.space, {dim + 1 - n.twist[0]}, dim - n.p, 0, {}};
        }
        case Normal::Kind::pulled:
            return pulled(3 - n.p, 4 - n.twist[0], 4 - n.twist[1]);
        case Normal::Kind::push:
            break;
        }
        fail("dual of a pushforward is not locally free");
    }

    Normal eval(const SheafExpr& e, const Space& sp)
    {
        switch (e.kind) {
        case Kind::line:
            return line(sp, expand(sp, e.twist));
        case Kind::omega: {
            if (sp.factors.size() != 1)
                fail("Omega needs a single projective space, not " + sp.name());
            if (e.p < 0 || e.p > sp.factors[0])
                fail("Omega^" + std::to_string(e.p) + " on " + sp.name() + " needs 0 <= p <= n");
            if (e.p == 0)
                return line(sp, {0});
            return {Normal::Kind::omega, sp, {0}, e.p, 0, {}};
        }
        case Kind::tangent: {
            if (sp.factors.size() != 1)
                fail("T needs a single projective space, not " + sp.name());
            const int n = sp.factors[0];
            if (n == 1)
                return line(sp, {2});
            return {Normal::Kind::omega, sp, {n + 1}, n - 1, 0, {}};
        }
        case Kind::dual: {
            Normal n = eval(*e.args[0], sp);
            if (n.kind != Normal::Kind::push)
                return dual_locally_free(n);
            dual_of_push = true;
            Normal r = n;
            Normal inner = dual_locally_free(*n.inner);
            if (reading == DualReading::naive) {
                r.shift = -n.shift;
            } else {
                inner = twisted(inner, {2, 2});
                r.shift = -n.shift - 1;
            }
            r.inner = std::make_shared<const Normal>(std::move(inner));
            return r;
        }
        case Kind::push: {
            if (!(sp == P3))
                fail("segre_push lands on P3, not " + sp.name());
            Normal inner = eval(*e.args[0], P1xP1);
            if (inner.kind == Normal::Kind::push)
                fail("segre_push needs a sheaf on P1xP1");
            return {Normal::Kind::push, P3, {}, 0, 0, std::make_shared<const Normal>(std::move(inner))};
        }
        case Kind::pullback: {
            if (!(sp == P1xP1))
                fail("pullback lands on P1xP1, not " + sp.name());
            Normal n = eval(*e.args[0], P3);
            if (n.kind == Normal::Kind::line)
                return line(P1xP1, {n.twist[0], n.twist[0]});
            if (n.kind == Normal::Kind::omega)
                return pulled(n.p, n.twist[0], n.twist[0]);
            fail("pullback supports line bundles and Omega^p on P3");
        }
        case Kind::tensor: {
            std::vector<Normal> parts;
            for (const auto& a : e.args)
                parts.push_back(eval(*a, sp));
            std::optional<Normal> base;
            std::vector<int> t(sp.factors.size(), 0);
            for (Normal& n : parts) {
                if (n.kind == Normal::Kind::line) {
                    for (std::size_t i = 0; i < t.size(); ++i)
                        t[i] += n.twist[i];
                } else if (!base) {
                    base = std::move(n);
                } else {
                    base = tensor_pair(*base, n);
                }
            }
            return base ? twisted(*base, t) : line(sp, t);
        }
        }
        fail("unknown expression");
    }

    // E (x) i_* F = i_*(i^* E (x) F) for E = Omega^p(m) on P3 and F a line bundle.
    static Normal tensor_pair(const Normal& x, const Normal& y)
    {
        const Normal* push = x.kind == Normal::Kind::push ? &x : y.kind == Normal::Kind::push ? &y : nullptr;
        const Normal* other = push == &x ? &y : &x;
        if (!push || other->kind != Normal::Kind::omega || push->inner->kind != Normal::Kind::line)
            fail("tensor of two terms that are not line bundles is only supported as Omega^p(m) * segre_push(O(a,b))");
        Normal r = *push;
        const int m = other->twist[0];
        r.inner = std::make_shared<const Normal>(
            pulled(other->p, push->inner->twist[0] + m, push->inner->twist[1] + m));
        return r;
    }
};

std::string twist_text(const std::vector<int>& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

std::string line_rule(int n, int m, int q)
{
    if (q == 0 && m >= 0)
        return "C(" + std::to_string(n + m) + "," + std::to_string(n) + ")";
    if (q == n && -m - 1 >= n)
        return "C(" + std::to_string(-m - 1) + "," + std::to_string(n) + ")";
    return "0";
}

CohEntry line_entry(const Space& sp, const std::vector<int>& t, int q)
{
    if (sp.factors.size() == 1) {
        const int n = sp.factors[0];
        return {h_line(n, t[0], q), "line bundle O" + twist_text(t) + ": " + line_rule(n, t[0], q)};
    }
    const int a = sp.factors[0], b = sp.factors[1];
    std::string terms;
    for (int i = 0; i <= q; ++i) {
        const int j = q - i;
        if (i > a || j > b)
            continue;
        if (h_line(a, t[0], i) == 0 || h_line(b, t[1], j) == 0)
            continue;
        terms += (terms.empty() ? "" : " + ") + line_rule(a, t[0], i) + "*" + line_rule(b, t[1], j);
    }
    return {kunneth(a, b, t[0], t[1], q), "Kunneth O" + twist_text(t) + ": " + (terms.empty() ? "0" : terms)};
}

CohEntry omega_entry(int n, int p, int m, int q)
{
    std::string branch;
    if (q == 0 && m > p)
        branch = "q=0: C(" + std::to_string(m + n - p) + "," + std::to_string(m) + ")*C(" + std::to_string(m - 1) +
                 "," + std::to_string(p) + ")";
    else if (q == n && m < p - n)
        branch = "q=n: C(" + std::to_string(-m + p) + "," + std::to_string(-m) + ")*C(" + std::to_string(-m - 1) +
                 "," + std::to_string(n - p) + ")";
    else if (q == p && m == 0)
        branch = "q=p, m=0: 1";
    else
        branch = "0";
    return {h_omega(n, p, m, q),
            "Bott Omega^" + std::to_string(p) + "(" + std::to_string(m) + ") on P" + std::to_string(n) + ": " + branch};
}

CohEntry entry(const Normal& n, int q)
{
    if (q < 0 || q > n.space.dim())
        return {0, "Grothendieck vanishing"};
    switch (n.kind) {
    case Normal::Kind::line:
        return line_entry(n.space, n.twist, q);
    case Normal::Kind::omega:
        return omega_entry(n.space.factors[0], n.p, n.twist[0], q);
    case Normal::Kind::pulled: {
        Column c = pulled_omega(n.p, n.twist[0], n.twist[1]);
        return {c[q], "restricted Euler sequence chase on P1xP1 for i^*Omega^" + std::to_string(n.p) +
                          twist_text(n.twist)};
    }
    case Normal::Kind::push: {
        const int inner_q = q + n.shift;
        CohEntry e = entry(*n.inner, inner_q);
        std::string how = "finite pushforward + projection formula";
        if (n.shift != 0)
            how += ", shift " + std::to_string(n.shift) + " to H^" + std::to_string(inner_q);
        return {e.dim, how + "; " + e.rule};
    }
    }
    return {0, ""};
}

bool contains_dual_of_push(const SheafDescriptor& d)
{
    Evaluator ev{DualReading::naive};
    ev.eval(*d.expr, d.space);
    return ev.dual_of_push;
}

} // namespace

SheafDescriptor SheafDescriptor::parse(const Space& space, const std::string& text)
{
    SheafDescriptor d{space, Parser(text).parse(), text};
    Evaluator ev{DualReading::naive};
    ev.eval(*d.expr, space);
    return d;
}

bool SheafDescriptor::reading_dependent() const { return contains_dual_of_push(*this); }

CohTable cohomology(const SheafDescriptor& d, DualReading reading)
{
    Evaluator ev{reading};
    Normal n = ev.eval(*d.expr, d.space);
    CohTable t{d.text, d.space, ev.dual_of_push ? std::optional<DualReading>(reading) : std::nullopt, {}};
    for (int q = 0; q <= d.space.dim(); ++q)
        t.entries.push_back(entry(n, q));
    return t;
}

std::vector<CohTable> cohomology_tables(const SheafDescriptor& d)
{
    if (!d.reading_dependent())
        return {cohomology(d)};
    return {cohomology(d, DualReading::naive), cohomology(d, DualReading::grothendieck)};
}

CohTable segre_push_table(int a, int b, int m)
{
    std::ostringstream text;
    text << "segre_push(O(" << a << "," << b << "))(" << m << ")";
    return cohomology(SheafDescriptor::parse(P3, text.str()));
}

// ---- the quadric report ----

std::string status_name(StepStatus s)
{
    switch (s) {
    case StepStatus::start:
        return "START";
    case StepStatus::match:
        return "MATCH";
    case StepStatus::mismatch:
        return "MISMATCH";
    case StepStatus::info:
        return "INFO";
    }
    return "";
}

namespace {

struct Probe {
    Dim dim;
    std::string rule;
};

Probe probe(const Space& sp, const std::string& sheaf, int q, DualReading r = DualReading::naive)
{
    CohTable t = cohomology(SheafDescriptor::parse(sp, sheaf), r);
    return {t.h(q), t.entries.at(q).rule};
}

std::string h_text(int q, const Space& sp, const std::string& sheaf)
{
    return "H^" + std::to_string(q) + "(" + sp.name() + ", " + sheaf + ")";
}

} // namespace

Prop2Report prop2_report()
{
    Prop2Report rep;
    auto add = [&](ReportStep s) {
        if (s.status == StepStatus::mismatch)
            ++rep.mismatches;
        rep.steps.push_back(std::move(s));
    };
    auto compare = [](Dim prev, Dim now) { return prev == now ? StepStatus::match : StepStatus::mismatch; };

    // chain (1)
    Probe ext1 = probe(P3, "segre_push(O)(-2)", 2);
    add({"1", "Ext^1(i_*O_{P1xP1}, O_{P3}(-2))", "", ext1.dim,
         "Serre duality on P3: Ext^1(F, O(-2)) = H^2(F(-2))^*; " + ext1.rule, StepStatus::start, ""});
    Probe c1 = probe(P3, "segre_push(O)(-6)", 2);
    add({"1", "Ext^2(O_{P3}, i_*O_{P1xP1}(-6))", "", c1.dim, "Ext^i(O, F) = H^i(F); " + c1.rule,
         compare(ext1.dim, c1.dim), "twist -6 evaluated as written"});
    add({"1", h_text(2, P3, "i_*O_{P1xP1}(-6)"), "", c1.dim, c1.rule, StepStatus::match, ""});
    Probe c3 = probe(P1xP1, "O(-6,-6)", 2);
    rep.h2_p1p1_m6 = c3.dim;
    add({"1", h_text(2, P1xP1, "O(-6,-6)"), "", c3.dim, c3.rule, compare(c1.dim, c3.dim), ""});
    Probe c4 = probe(P1xP1, "O(3,3)", 0);
    rep.h0_p1p1_33 = c4.dim;
    Probe dual44 = probe(P1xP1, "O(4,4)", 0);
    add({"1", h_text(0, P1xP1, "O(3,3)"), "", c4.dim, c4.rule, compare(c3.dim, c4.dim),
         "Serre dual of O(-6,-6) with omega = O(-2,-2) is O(4,4), h^0 = " + std::to_string(dual44.dim)});
    rep.dim_s10 = dim_graded_piece(4, 10);
    add({"1", "S_10, S = C[x0..x3]", "", rep.dim_s10, "monomials of degree 10 in 4 variables: C(13,3)",
         compare(c4.dim, rep.dim_s10), ""});
    add({"claim", "S_10 against H^2(P1xP1, O(-6,-6))", "", rep.dim_s10, "chain (1) end points",
         compare(c3.dim, rep.dim_s10), std::to_string(rep.dim_s10) + " vs " + std::to_string(c3.dim)});
    add({"claim", "S_10 against Ext^1(i_*O_{P1xP1}, O_{P3}(-2))", "", rep.dim_s10, "chain (1) end points",
         compare(ext1.dim, rep.dim_s10), std::to_string(rep.dim_s10) + " vs " + std::to_string(ext1.dim)});

    // chain (2)
    Probe ext2 = probe(P3, "Omega * segre_push(O)", 1);
    add({"2", "Ext^1(T_{P3}, i_*O_{P1xP1})", "", ext2.dim,
         "T locally free: Ext^1(T, F) = H^1(Omega (x) F); " + ext2.rule, StepStatus::start, ""});
    const DualReading readings[] = {DualReading::naive, DualReading::grothendieck};
    Dim prev[2] = {ext2.dim, ext2.dim};
    for (int r = 0; r < 2; ++r) {
        Probe s = probe(P3, "T * segre_push(O)^v * O(-4)", 2, readings[r]);
        add({"2", "Ext^2(O_{P3}, T_{P3} (x) (i_*O_{P1xP1})^v(-4))", reading_name(readings[r]), s.dim,
             "Ext^i(O, F) = H^i(F); " + s.rule, compare(prev[r], s.dim), ""});
        prev[r] = s.dim;
    }
    for (int r = 0; r < 2; ++r) {
        Probe s = probe(P3, "(Omega(-4) * segre_push(O))^v", 1, readings[r]);
        add({"2", h_text(1, P3, "(Omega(-4) (x) i_*O_{P1xP1})^v"), reading_name(readings[r]), s.dim, s.rule,
             compare(prev[r], s.dim), ""});
        prev[r] = s.dim;
    }
    for (int r = 0; r < 2; ++r) {
        Probe s = probe(P3, "segre_push(pullback(Omega(-4)))^v", 1, readings[r]);
        add({"2", h_text(1, P3, "i_*(i^*(Omega(-4)))^v"), reading_name(readings[r]), s.dim, s.rule,
             compare(prev[r], s.dim), ""});
    }

    // where the product lands
    Probe e2 = probe(P3, "Omega(-2)", 2);
    add({"claim", "Ext^2(T_{P3}, O_{P3}(-2))", "", e2.dim, "T locally free: Ext^2(T, O(-2)) = H^2(Omega(-2)); " + e2.rule,
         StepStatus::start, ""});
    Probe h1 = probe(P3, "Omega(-5)", 1);
    rep.h1_omega_m5 = h1.dim;
    add({"claim", h_text(1, P3, "Omega(-5)"), "", h1.dim, h1.rule, compare(e2.dim, h1.dim),
         "stated target of the product"});
    Probe h2 = probe(P3, "Omega(-5)", 2);
    rep.h2_omega_m5 = h2.dim;
    add({"claim", h_text(2, P3, "Omega(-5)"), "", h2.dim, h2.rule, StepStatus::info,
         "group named where the product is said to vanish"});
    rep.product_target_zero = e2.dim == 0 && h1.dim == 0 && h2.dim == 0;
    add({"claim", "alpha1~ y alpha2~ = 0", "", 0, "every candidate receiving group has dimension 0",
         rep.product_target_zero ? StepStatus::match : StepStatus::mismatch,
         rep.product_target_zero ? "confirmed: the receiving group is zero" : "receiving group is nonzero"});
    return rep;
}

} // namespace hocalc
