#pragma once

// Finite-dimensional unital algebras given by structure constants, and their
// finite-dimensional left modules given by action matrices.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hocalc/linalg.hpp"

namespace hocalc {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite quiver: vertices 0..n-1, arrows (source, target).
struct Quiver {
    std::size_t vertices = 1;
    std::vector<std::pair<std::size_t, std::size_t>> arrows;
};

class Algebra {
public:
    /// mult[i][j] holds the coordinates of e_i * e_j. `idempotents` must be a
    /// complete set of orthogonal idempotents summing to the unit; an empty list
    /// means {unit}. Associativity, unit and idempotent laws are checked.
    Algebra(Field field, std::vector<std::vector<Vec>> mult, Vec unit, std::vector<Vec> idempotents = {},
            std::vector<std::string> labels = {});

    static AlgebraPtr ground(Field f);
    /// k[x]/(x^n) in the monomial basis 1, x, ..., x^(n-1).
    static AlgebraPtr truncated_polynomial(Field f, std::size_t n);
    /// Path algebra of q modulo all paths of length >= max_length. Basis: vertex
    /// idempotents, then paths by increasing length. Multiplication is
    /// composition: p * q is "q then p".
    static AlgebraPtr path_algebra(Field f, const Quiver& q, std::size_t max_length);

    Field field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Vec& unit() const { return unit_; }
    const Vec& product(std::size_t i, std::size_t j) const { return mult_[i][j]; }
    const std::vector<Vec>& idempotents() const { return idempotents_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Vec multiply(const Vec& a, const Vec& b) const;
    /// Matrix of x -> e_i x on A.
    const Mat& left_mult(std::size_t i) const { return left_[i]; }
    /// Matrix of x -> x a on A.
    Mat right_mult(const Vec& a) const;

    /// Basis (as algebra elements) of the left ideal A e for the idempotent e.
    const std::vector<Vec>& projective_basis(std::size_t idempotent) const { return proj_basis_[idempotent]; }
    /// Action matrices of the basis elements on A e, in projective_basis coordinates.
    const std::vector<Mat>& projective_action(std::size_t idempotent) const { return proj_action_[idempotent]; }
    /// Coordinates of e itself in projective_basis(e).
    const Vec& projective_generator(std::size_t idempotent) const { return proj_gen_[idempotent]; }

    /// Basis indices generating A as a unital algebra; intertwining with these
    /// suffices for a linear map to be a module map.
    const std::vector<std::size_t>& generators() const { return generators_; }

    /// FNV-1a over the serialized structure constants.
    std::uint64_t content_hash() const { return hash_; }

    bool same_as(const Algebra& o) const;

private:
    Field field_;
    std::size_t dim_;
    std::vector<std::vector<Vec>> mult_;
    Vec unit_;
    std::vector<Vec> idempotents_;
    std::vector<std::string> labels_;
    std::vector<Mat> left_;
    std::vector<std::vector<Vec>> proj_basis_;
    std::vector<std::vector<Mat>> proj_action_;
    std::vector<Vec> proj_gen_;
    std::vector<std::size_t> generators_;
    std::uint64_t hash_ = 0;
};

class Module {
public:
    /// action[i] is the matrix by which the basis element e_i acts. The unit and
    /// module axioms are checked.
    Module(AlgebraPtr algebra, std::size_t dim, std::vector<Mat> action);

    static Module zero(AlgebraPtr a);
    static Module regular(AlgebraPtr a);
    /// One-dimensional module on which the idempotent `vertex` acts as 1 and
    /// every other basis element acts as 0. Only meaningful for path algebras.
    static Module simple(AlgebraPtr a, std::size_t vertex);

    const AlgebraPtr& algebra() const { return algebra_; }
    Field field() const { return algebra_->field(); }
    std::size_t dim() const { return dim_; }
    const Mat& action(std::size_t i) const { return action_[i]; }
    const std::vector<Mat>& actions() const { return action_; }
    /// Action matrix of an arbitrary algebra element.
    Mat act(const Vec& a) const;

    bool operator==(const Module& o) const;
    bool operator!=(const Module& o) const { return !(*this == o); }

    /// Skips the axiom checks; for modules that are valid by construction
    /// (quotients, submodules, projectives).
    static Module trusted(AlgebraPtr algebra, std::size_t dim, std::vector<Mat> action);

private:
    Module(AlgebraPtr algebra, std::size_t dim, std::vector<Mat> action, bool check);

    AlgebraPtr algebra_;
    std::size_t dim_;
    std::vector<Mat> action_;
};

using ModulePtr = std::shared_ptr<const Module>;

inline ModulePtr share(Module m) { return std::make_shared<const Module>(std::move(m)); }

/// Linear map between modules; `matrix` is target.dim x source.dim.
struct ModuleHom {
    ModulePtr source;
    ModulePtr target;
    Mat matrix;

    ModuleHom(ModulePtr src, ModulePtr tgt, Mat m);

    static ModuleHom zero(ModulePtr src, ModulePtr tgt);
    static ModuleHom identity(ModulePtr m);

    bool is_intertwining() const;
    bool is_injective() const { return rank(matrix) == source->dim(); }
    bool is_surjective() const { return rank(matrix) == target->dim(); }
};

/// second o first.
ModuleHom compose(const ModuleHom& second, const ModuleHom& first);

/// Direct sum of projective summands A e_v, one per listed idempotent index.
/// Coordinates are the concatenation of projective_basis coordinates.
struct ProjectiveModule {
    ModulePtr module;
    std::vector<std::size_t> summands;
    std::vector<std::size_t> offsets;

    std::size_t rank() const { return summands.size(); }
    /// Coordinates of the generator e_v of summand j.
    Vec generator(std::size_t j) const;
};

ProjectiveModule projective_module(AlgebraPtr a, std::vector<std::size_t> summands);
/// A^rank with the left regular action (block diagonal).
Module free_module(AlgebraPtr a, std::size_t rank);

/// The unique hom P -> X sending generator j to images[j]. Each image must lie
/// in e_{v_j} X; it is projected there first.
ModuleHom hom_from_generators(const ProjectiveModule& p, ModulePtr x, const std::vector<Vec>& images);

/// M (+) N with block-diagonal action; coordinates of M come first.
Module direct_sum(const Module& m, const Module& n);

/// Basis of Hom_A(M, N).
std::vector<ModuleHom> hom_space(ModulePtr m, ModulePtr n);

struct Quotient {
    ModulePtr module;
    ModuleHom projection;
    QuotientMap coords;
};

/// M / im(incl). Throws NotSubmodule when incl is not an injective module map.
Quotient submodule_quotient(ModulePtr m, const ModuleHom& incl);

/// Inclusion of the submodule with the given vector-space basis; throws
/// NotSubmodule when the span is not stable under the action.
ModuleHom subspace_submodule(ModulePtr m, const std::vector<Vec>& basis);
/// Inclusion of the submodule generated by the given vectors.
ModuleHom generated_submodule(ModulePtr m, const std::vector<Vec>& generators);
/// Vector-space basis of the submodule generated by the given vectors.
std::vector<Vec> submodule_span(const Module& m, const std::vector<Vec>& generators);

ModuleHom kernel_inclusion(const ModuleHom& f);
ModuleHom image_inclusion(const ModuleHom& f);

/// Idempotent-homogeneous generators (idempotent index, vector) of the
/// submodule of x spanned by `basis`, chosen greedily and then pruned to an
/// irredundant set.
std::vector<std::pair<std::size_t, Vec>> homogeneous_generators(const Module& x, const std::vector<Vec>& basis);

/// F1 subset F2 subset G, given by inclusions into G.
struct Filtration {
    ModulePtr g;
    ModuleHom f1;
    ModuleHom f2;

    /// Checks injectivity, intertwining and im(F1) inside im(F2).
    void validate() const;
};

struct RandomAlgebra {
    AlgebraPtr algebra;
    Quiver quiver;
    std::size_t max_length;
};

/// Random quiver (1-3 vertices) modulo paths of length >= N, N in {2, 3},
/// redrawn until the algebra has at most max_paths basis paths.
RandomAlgebra random_bound_quiver_algebra(Field f, std::uint64_t seed, std::size_t max_paths);

/// Uniformly random field element from a small range (all of F_p for small p).
Scalar random_scalar(Field f, std::mt19937_64& rng);
Vec random_vec(Field f, std::size_t n, std::mt19937_64& rng);
Vec random_combination(Field f, std::size_t n, const std::vector<Vec>& basis, std::mt19937_64& rng);

/// Nonzero quotient of an indecomposable projective by randomly generated
/// submodules, with dimension at most max_dim (when some A e_v allows it).
ModulePtr random_module(const AlgebraPtr& a, std::mt19937_64& rng, std::size_t max_dim);
/// 0 < F1 < F2 < G with G of dimension at most max_dim (a random module or a
/// sum of two) and F1, F2 generated by random vectors.
Filtration random_filtration(const AlgebraPtr& a, std::mt19937_64& rng, std::size_t max_dim);
/// Random combination of the hom_space basis.
ModuleHom random_hom(ModulePtr m, ModulePtr n, std::mt19937_64& rng);

} // namespace hocalc
