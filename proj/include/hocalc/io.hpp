#pragma once

// JSON documents for algebras, modules, complexes, filtrations and extension
// sequences. Scalars are integers or "a/b" strings on input; on output they
// are "a/b" strings over Q and integers over F_p.

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "hocalc/complex.hpp"
#include "hocalc/ext.hpp"
#include "hocalc/projcoh.hpp"

namespace hocalc::io {

using json = nlohmann::json;

/// Parses a UTF-8 JSON file. Throws SchemaError on I/O or syntax errors.
json read_file(const std::string& path);

/// The field named by `override`, else by the document's "field" key, else Q.
Field field_of(const json& doc, const std::optional<std::string>& override);

/// Loads documents over one field. Algebras with identical structure constants
/// are shared, so modules from different files can be compared and combined.
class Session {
public:
    explicit Session(Field f) : field_(f) {}

    Field field() const { return field_; }

    /// {"dim", "unit", "mult", "idempotents"?, "labels"?},
    /// {"truncated_polynomial": n} or
    /// {"path_algebra": {"vertices", "arrows", "max_length"}}; a string
    /// "hash:<hex>" refers to an algebra loaded earlier.
    AlgebraPtr algebra(const json& j);
    /// {"algebra"?, "dim", "action"}, {"algebra"?, "regular": true},
    /// {"algebra"?, "simple": v} or {"algebra"?, "projective": v} for A e_v.
    /// `fallback` is used when "algebra" is absent.
    ModulePtr module(const json& j, AlgebraPtr fallback = nullptr);
    /// {"algebra"?, "lo", "hi", "objects": [module...], "diff": [matrix...]}.
    ComplexPtr complex(const json& j);
    /// {"algebra"?, "g": module, "f1": sub, "f2": sub} with sub either
    /// {"generators": [vec...]} or {"basis": [vec...]}.
    Filtration filtration(const json& j);
    /// {"algebra"?, "objects": [N, E_n, ..., E_1, M], "maps": [matrix...]}.
    /// Validated; exactness failures name the node.
    ExtensionSeq extension(const json& j);

    Scalar scalar(const json& j, const std::string& where) const;
    Vec vec(const json& j, std::size_t n, const std::string& where) const;
    /// Row-major list of rows.
    Mat matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where) const;

private:
    Field field_;
    std::map<std::uint64_t, AlgebraPtr> algebras_;
};

json to_json(const Scalar& s);
json to_json(const Vec& v);
json to_json(const Mat& m);
json to_json(const Algebra& a);
json to_json(const Module& m, bool inline_algebra = true);
json to_json(const Complex& x);
json to_json(const ExtElement& e);
json to_json(const CohTable& t);
json to_json(const Prop2Report& r);

std::string hash_ref(const Algebra& a);

} // namespace hocalc::io
