#include "hocalc/io.hpp"

#include <fstream>
#include <sstream>

namespace hocalc::io {

namespace {

const json& at(const json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object())
        throw SchemaError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(where + ": missing \"" + key + "\"");
    return *it;
}

const json& array(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw SchemaError(where + ": expected an array");
    return j;
}

long long integer(const json& j, const std::string& where)
{
    if (!j.is_number_integer())
        throw SchemaError(where + ": expected an integer");
    return j.get<long long>();
}

std::size_t count(const json& j, const std::string& where)
{
    long long v = integer(j, where);
    if (v < 0 || v > 100000)
        throw SchemaError(where + ": expected a size in [0, 100000]");
    return static_cast<std::size_t>(v);
}

std::string hex(std::uint64_t v)
{
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << v;
    return s.str();
}

} // namespace

json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Field field_of(const json& doc, const std::optional<std::string>& override)
{
    if (override)
        return Field::parse(*override);
    if (doc.is_object() && doc.contains("field")) {
        if (!doc["field"].is_string())
            throw SchemaError("\"field\" must be a string");
        return Field::parse(doc["field"].get<std::string>());
    }
    return Field::rationals();
}

std::string hash_ref(const Algebra& a) { return "hash:" + hex(a.content_hash()); }

Scalar Session::scalar(const json& j, const std::string& where) const
{
    if (j.is_number_integer())
        return Scalar(field_, mpq_class(j.dump()));
    if (j.is_string())
        return Scalar::parse(field_, j.get<std::string>());
    throw SchemaError(where + ": scalar must be an integer or an \"a/b\" string");
}

Vec Session::vec(const json& j, std::size_t n, const std::string& where) const
{
    array(j, where);
    if (j.size() != n)
        throw SchemaError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
    Vec v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(scalar(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Mat Session::matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where) const
{
    array(j, where);
    if (j.size() != rows)
        throw SchemaError(where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Mat m(field_, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        Vec row = vec(j[r], cols, where + "[" + std::to_string(r) + "]");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = row[c];
    }
    return m;
}

AlgebraPtr Session::algebra(const json& j)
{
    const std::string where = "algebra";
    if (j.is_string()) {
        const std::string ref = j.get<std::string>();
        for (const auto& [h, a] : algebras_)
            if (hash_ref(*a) == ref)
                return a;
        throw SchemaError(where + ": unknown reference '" + ref + "'");
    }
    AlgebraPtr a;
    if (j.is_object() && j.contains("truncated_polynomial")) {
        std::size_t n = count(j["truncated_polynomial"], where + ".truncated_polynomial");
        if (n == 0)
            throw SchemaError(where + ".truncated_polynomial: must be positive");
        a = Algebra::truncated_polynomial(field_, n);
    } else if (j.is_object() && j.contains("path_algebra")) {
        const json& pa = j["path_algebra"];
        Quiver q;
        q.vertices = count(at(pa, "vertices", where), where + ".vertices");
        const json& arrows = array(at(pa, "arrows", where), where + ".arrows");
        for (std::size_t k = 0; k < arrows.size(); ++k) {
            const std::string w = where + ".arrows[" + std::to_string(k) + "]";
            if (!arrows[k].is_array() || arrows[k].size() != 2)
                throw SchemaError(w + ": expected [source, target]");
            q.arrows.emplace_back(count(arrows[k][0], w), count(arrows[k][1], w));
        }
        a = Algebra::path_algebra(field_, q, count(at(pa, "max_length", where), where + ".max_length"));
    } else {
        const std::size_t n = count(at(j, "dim", where), where + ".dim");
        Vec unit = vec(at(j, "unit", where), n, where + ".unit");
        const json& mult = array(at(j, "mult", where), where + ".mult");
        if (mult.size() != n)
            throw SchemaError(where + ".mult: expected " + std::to_string(n) + " rows");
        std::vector<std::vector<Vec>> table(n);
        for (std::size_t r = 0; r < n; ++r) {
            const std::string w = where + ".mult[" + std::to_string(r) + "]";
            array(mult[r], w);
            if (mult[r].size() != n)
                throw SchemaError(w + ": expected " + std::to_string(n) + " entries");
            for (std::size_t c = 0; c < n; ++c)
                table[r].push_back(vec(mult[r][c], n, w + "[" + std::to_string(c) + "]"));
        }
        std::vector<Vec> idem;
        if (j.contains("idempotents")) {
            const json& ids = array(j["idempotents"], where + ".idempotents");
            for (std::size_t k = 0; k < ids.size(); ++k)
                idem.push_back(vec(ids[k], n, where + ".idempotents[" + std::to_string(k) + "]"));
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            const json& ls = array(j["labels"], where + ".labels");
            for (const json& l : ls) {
                if (!l.is_string())
                    throw SchemaError(where + ".labels: expected strings");
                labels.push_back(l.get<std::string>());
            }
        }
        a = std::make_shared<const Algebra>(field_, std::move(table), std::move(unit), std::move(idem),
                                            std::move(labels));
    }
    auto [it, inserted] = algebras_.emplace(a->content_hash(), a);
    if (!inserted && !it->second->same_as(*a))
        throw SchemaError(where + ": hash collision between distinct algebras");
    return it->second;
}

ModulePtr Session::module(const json& j, AlgebraPtr fallback)
{
    const std::string where = "module";
    if (!j.is_object())
        throw SchemaError(where + ": expected an object");
    AlgebraPtr a = j.contains("algebra") ? algebra(j["algebra"]) : fallback;
    if (!a)
        throw SchemaError(where + ": missing \"algebra\"");
    if (j.contains("regular"))
        return share(Module::regular(a));
    if (j.contains("simple"))
        return share(Module::simple(a, count(j["simple"], where + ".simple")));
    if (j.contains("projective")) {
        const std::size_t v = count(j["projective"], where + ".projective");
        const std::size_t ids = std::max<std::size_t>(a->idempotents().size(), 1);
        if (v >= ids)
            throw SchemaError(where + ".projective: idempotent index out of range");
        return projective_module(a, {v}).module;
    }
    const std::size_t d = count(at(j, "dim", where), where + ".dim");
    const json& act = array(at(j, "action", where), where + ".action");
    if (act.size() != a->dim())
        throw SchemaError(where + ".action: expected one matrix per algebra basis element (" +
                          std::to_string(a->dim()) + ")");
    std::vector<Mat> mats;
    for (std::size_t i = 0; i < act.size(); ++i)
        mats.push_back(matrix(act[i], d, d, where + ".action[" + std::to_string(i) + "]"));
    return share(Module(a, d, std::move(mats)));
}

ComplexPtr Session::complex(const json& j)
{
    const std::string where = "complex";
    AlgebraPtr a = j.contains("algebra") ? algebra(j["algebra"]) : nullptr;
    const int lo = static_cast<int>(integer(at(j, "lo", where), where + ".lo"));
    const int hi = static_cast<int>(integer(at(j, "hi", where), where + ".hi"));
    if (hi < lo)
        throw SchemaError(where + ": hi < lo");
    const json& objs = array(at(j, "objects", where), where + ".objects");
    if (objs.size() != static_cast<std::size_t>(hi - lo + 1))
        throw SchemaError(where + ".objects: expected hi - lo + 1 modules");
    std::vector<ModulePtr> objects;
    for (const json& o : objs) {
        objects.push_back(module(o, a));
        a = objects.back()->algebra();
    }
    const json& diff = array(at(j, "diff", where), where + ".diff");
    if (diff.size() != objects.size() - 1)
        throw SchemaError(where + ".diff: expected hi - lo matrices");
    std::vector<Mat> ds;
    for (std::size_t k = 0; k < diff.size(); ++k)
        ds.push_back(matrix(diff[k], objects[k + 1]->dim(), objects[k]->dim(),
                            where + ".diff[" + std::to_string(k) + "]"));
    return share(Complex(a, lo, std::move(objects), std::move(ds)));
}

Filtration Session::filtration(const json& j)
{
    const std::string where = "filtration";
    AlgebraPtr a = j.contains("algebra") ? algebra(j["algebra"]) : nullptr;
    ModulePtr g = module(at(j, "g", where), a);
    auto sub = [&](const std::string& key) {
        const json& s = at(j, key, where);
        const std::string w = where + "." + key;
        std::vector<Vec> vs;
        const bool gens = s.is_object() && s.contains("generators");
        const json& list = array(gens ? s["generators"] : at(s, "basis", w), w);
        for (std::size_t k = 0; k < list.size(); ++k)
            vs.push_back(vec(list[k], g->dim(), w + "[" + std::to_string(k) + "]"));
        return gens ? generated_submodule(g, vs) : subspace_submodule(g, vs);
    };
    Filtration f{g, sub("f1"), sub("f2")};
    f.validate();
    return f;
}

ExtensionSeq Session::extension(const json& j)
{
    const std::string where = "extension";
    AlgebraPtr a = j.contains("algebra") ? algebra(j["algebra"]) : nullptr;
    const json& objs = array(at(j, "objects", where), where + ".objects");
    if (objs.size() < 3)
        throw SchemaError(where + ".objects: need at least N, E_1, M");
    ExtensionSeq e;
    for (const json& o : objs) {
        e.objects.push_back(module(o, a));
        a = e.objects.back()->algebra();
    }
    const json& maps = array(at(j, "maps", where), where + ".maps");
    if (maps.size() != objs.size() - 1)
        throw SchemaError(where + ".maps: expected one map between consecutive objects");
    for (std::size_t k = 0; k < maps.size(); ++k)
        e.maps.push_back(matrix(maps[k], e.objects[k + 1]->dim(), e.objects[k]->dim(),
                                where + ".maps[" + std::to_string(k) + "]"));
    e.validate();
    return e;
}

json to_json(const Scalar& s)
{
    if (s.field().is_rational())
        return s.str();
    return std::stoll(s.str());
}

json to_json(const Vec& v)
{
    json a = json::array();
    for (const Scalar& s : v)
        a.push_back(to_json(s));
    return a;
}

json to_json(const Mat& m)
{
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        a.push_back(to_json(m.row(r)));
    return a;
}

json to_json(const Algebra& a)
{
    json mult = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.dim(); ++j)
            row.push_back(to_json(a.product(i, j)));
        mult.push_back(std::move(row));
    }
    json idem = json::array();
    for (const Vec& e : a.idempotents())
        idem.push_back(to_json(e));
    json out = {{"dim", a.dim()}, {"unit", to_json(a.unit())}, {"mult", std::move(mult)}, {"idempotents", idem}};
    if (!a.labels().empty())
        out["labels"] = a.labels();
    return out;
}

json to_json(const Module& m, bool inline_algebra)
{
    json act = json::array();
    for (const Mat& a : m.actions())
        act.push_back(to_json(a));
    return {{"algebra", inline_algebra ? to_json(*m.algebra()) : json(hash_ref(*m.algebra()))},
            {"dim", m.dim()},
            {"action", std::move(act)}};
}

json to_json(const Complex& x)
{
    json objs = json::array(), diff = json::array();
    for (int n = x.lo(); n <= x.hi(); ++n) {
        objs.push_back(to_json(*x.object(n), false));
        if (n < x.hi())
            diff.push_back(to_json(x.differential(n)));
    }
    return {{"algebra", to_json(*x.algebra())}, {"lo", x.lo()}, {"hi", x.hi()}, {"objects", objs}, {"diff", diff}};
}

json to_json(const ExtElement& e)
{
    return {{"degree", e.degree()},
            {"dim", e.group->dim()},
            {"coords", to_json(e.coords)},
            {"trivial", is_trivial(e)},
            {"cocycle", to_json(e.cocycle)}};
}

json to_json(const CohTable& t)
{
    json entries = json::array();
    for (std::size_t q = 0; q < t.entries.size(); ++q)
        entries.push_back({{"q", q}, {"dim", t.entries[q].dim}, {"rule", t.entries[q].rule}});
    json out = {{"space", t.space.name()}, {"sheaf", t.descriptor}, {"entries", entries}};
    if (t.reading)
        out["reading"] = reading_name(*t.reading);
    return out;
}

json to_json(const Prop2Report& r)
{
    json steps = json::array();
    for (const ReportStep& s : r.steps) {
        json o = {{"chain", s.chain}, {"group", s.label}, {"dim", s.dim}, {"rule", s.rule},
                  {"status", status_name(s.status)}};
        if (!s.reading.empty())
            o["reading"] = s.reading;
        if (!s.note.empty())
            o["note"] = s.note;
        steps.push_back(std::move(o));
    }
    return {{"steps", steps},
            {"summary",
             {{"h2_P1xP1_O(-6,-6)", r.h2_p1p1_m6},
              {"h0_P1xP1_O(3,3)", r.h0_p1p1_33},
              {"dim_S10", r.dim_s10},
              {"h1_P3_Omega(-5)", r.h1_omega_m5},
              {"h2_P3_Omega(-5)", r.h2_omega_m5},
              {"mismatches", r.mismatches},
              {"product_target_zero", r.product_target_zero}}}};
}

} // namespace hocalc::io
