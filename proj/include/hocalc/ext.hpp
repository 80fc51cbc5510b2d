#pragma once

// Truncated projective resolutions, Ext groups as cocycles modulo coboundaries,
// extension sequences and the Yoneda product.

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "hocalc/complex.hpp"

namespace hocalc {

/// P_0 <- P_1 <- ... <- P_d with augmentation P_0 -> M. Each P_k is a direct
/// sum of indecomposable projectives A e_v; with the trivial idempotent set
/// these are free modules.
struct Resolution {
    ModulePtr target;
    std::vector<ProjectiveModule> terms;
    /// maps[0] is the augmentation P_0 -> M, maps[k] is d_k : P_k -> P_(k-1).
    std::vector<Mat> maps;

    int truncation() const { return static_cast<int>(terms.size()) - 1; }
    const ProjectiveModule& term(int k) const { return terms.at(static_cast<std::size_t>(k)); }
    const Mat& augmentation() const { return maps.front(); }
    const Mat& differential(int k) const { return maps.at(static_cast<std::size_t>(k)); }

    /// P_depth -> ... -> P_0 with P_k in degree -k.
    Complex as_complex(int depth) const;
    /// ker(d_(k-1)) = im(d_k) for k = 1..d, and the augmentation is onto.
    bool is_exact() const;
};

using ResolutionPtr = std::shared_ptr<const Resolution>;

/// Resolution computed degree by degree from irredundant idempotent-homogeneous
/// generators of each syzygy. Results are cached per module content; a deeper
/// request extends the cached prefix, so shallower truncations are prefixes.
ResolutionPtr free_resolution(const ModulePtr& m, int depth);

/// Lift h : P -> Y through s : X -> Y, i.e. some f : P -> X with s f = h.
/// Each generator image is chosen in e_v X; `rng` adds a random kernel element.
/// nullopt when h does not factor through s.
std::optional<Mat> lift_through(const ProjectiveModule& p, const ModulePtr& x, const Mat& s, const Mat& h,
                                std::mt19937_64* rng = nullptr);

/// Basis of Hom_A(P, X): one map per generator j and basis vector of e_(v_j) X.
std::vector<Mat> projective_hom_basis(const ProjectiveModule& p, const ModulePtr& x);

class ExtGroup;
using ExtGroupPtr = std::shared_ptr<const ExtGroup>;

struct ExtElement {
    ExtGroupPtr group;
    /// P_i -> N.
    Mat cocycle;
    /// Canonical coordinates in the ker/im quotient.
    Vec coords;

    int degree() const;
    const ModulePtr& source() const;
    const ModulePtr& target() const;
};

/// Ext^i(M, N) = ker(Hom(P_i, N) -> Hom(P_(i+1), N)) / im(Hom(P_(i-1), N) -> Hom(P_i, N)),
/// with Hom(A e_v, N) identified with e_v N.
class ExtGroup : public std::enable_shared_from_this<ExtGroup> {
public:
    ExtGroup(ModulePtr m, ModulePtr n, int degree, ResolutionPtr res);

    const ModulePtr& source() const { return m_; }
    const ModulePtr& target() const { return n_; }
    int degree() const { return degree_; }
    const ResolutionPtr& resolution() const { return res_; }
    std::size_t dim() const { return reps_.size(); }
    std::size_t hom_dim() const { return total_; }

    /// Coordinates of a map P_i -> N in the e_v N bases.
    Vec hom_coords(const Mat& phi) const;
    Mat hom_matrix(const Vec& coords) const;

    bool is_cocycle(const Mat& phi) const;
    /// Canonical coordinates of a cocycle; throws when phi is not a cocycle.
    Vec coordinates(const Mat& phi) const;
    ExtElement element(const Mat& cocycle) const;
    ExtElement from_coords(const Vec& coords) const;
    std::vector<ExtElement> basis() const;
    /// Coboundaries g o d_i, as maps P_i -> N.
    std::vector<Mat> coboundaries() const;

private:
    ModulePtr m_;
    ModulePtr n_;
    int degree_;
    ResolutionPtr res_;
    std::vector<Mat> fiber_bases_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
    std::vector<Vec> coboundary_coords_;
    QuotientMap quotient_;
    std::vector<Vec> reps_;
    Mat rep_images_;
};

/// Ext^i(M, N) from a resolution truncated at `truncation` (default i + 1).
/// Throws TruncationError when i + 1 exceeds the truncation.
ExtGroupPtr ext_group(const ModulePtr& m, const ModulePtr& n, int i, std::optional<int> truncation = std::nullopt);

/// 0 -> N -> E_i -> ... -> E_1 -> M -> 0 stored as objects [N, E_i, ..., E_1, M]
/// with maps[k] : objects[k] -> objects[k+1].
struct ExtensionSeq {
    std::vector<ModulePtr> objects;
    std::vector<Mat> maps;

    int length() const { return static_cast<int>(objects.size()) - 2; }
    const ModulePtr& start() const { return objects.front(); }
    const ModulePtr& end() const { return objects.back(); }
    /// Throws SchemaError naming the first node where exactness or the module
    /// map condition fails.
    void validate() const;

    /// 0 -> a -> b -> c -> 0.
    static ExtensionSeq short_exact(const ModuleHom& incl, const ModuleHom& proj);
};

/// Lifts id_M along the resolution of M through the sequence; the degree-i
/// component P_i -> N is the cocycle. `rng` randomizes each lift by kernel
/// elements.
ExtElement class_of_extension(const ExtensionSeq& e, std::mt19937_64* rng = nullptr);

/// a in Ext^i(M, N), b in Ext^j(N, L): b o F_j where F lifts a's cocycle to a
/// chain map P_(i+.)(M) -> P_.(N). Lands in Ext^(i+j)(M, L).
ExtElement yoneda_product(const ExtElement& a, const ExtElement& b);

/// left : 0 -> L -> ... -> N -> 0 and right : 0 -> N -> ... -> M -> 0 joined
/// through N. class(splice(left, right)) = SPLICE_SIGN * yoneda_product(class(right), class(left)).
/// Throws MiddleMismatch when the shared modules differ.
ExtensionSeq splice(const ExtensionSeq& left, const ExtensionSeq& right);

inline constexpr int SPLICE_SIGN = 1;

bool is_trivial(const ExtElement& a);

/// Linear combinations inside one Ext group.
ExtElement add(const ExtElement& a, const ExtElement& b);
ExtElement scale(const Scalar& s, const ExtElement& a);

/// True when g f = 0 and ker g = im f.
bool exact_at(const Mat& f, const Mat& g);

/// The sequences induced by F1 in F2 in G:
///   e1 : 0 -> F1 -> F2 -> F2/F1 -> 0          (class in Ext^1(F2/F1, F1))
///   e2 : 0 -> F2/F1 -> G/F1 -> G/F2 -> 0      (class in Ext^1(G/F2, F2/F1))
///   four_term : 0 -> F1 -> F2 -> G/F1 -> G/F2 -> 0
struct FiltrationSequences {
    ModulePtr f1, f2, g, f2_f1, g_f1, g_f2;
    ExtensionSeq e1;
    ExtensionSeq e2;
    ExtensionSeq four_term;
};

FiltrationSequences filtration_sequences(const Filtration& flt);

/// 0 -> N -> B -> B/N -> 0 with B a random module (or a sum of two) of
/// dimension at most max_dim and N generated by one random vector.
ExtensionSeq random_short_exact(const AlgebraPtr& a, std::mt19937_64& rng, std::size_t max_dim);
/// 0 -> K -> D -> M -> 0 with D a quotient of the projective cover of M, or the
/// cover plus a random summand of dimension at most max_extra.
ExtensionSeq random_short_exact_onto(const ModulePtr& m, std::mt19937_64& rng, std::size_t max_extra);

} // namespace hocalc
