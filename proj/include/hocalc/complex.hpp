#pragma once

// Bounded cochain complexes of modules, chain maps, homotopies, cohomology,
// shifts, cones and the inner-Hom complex.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hocalc/algebra.hpp"

namespace hocalc {

/// Cochain complex with differentials of degree +1, supported in [lo, hi].
class Complex {
public:
    /// objects[k] sits in degree lo + k; diffs[k] : X^(lo+k) -> X^(lo+k+1).
    /// Checks d o d = 0 and (unless `trusted`) that each d is a module map.
    Complex(AlgebraPtr algebra, int lo, std::vector<ModulePtr> objects, std::vector<Mat> diffs, bool trusted = false);

    /// M placed in a single degree.
    static Complex concentrated(ModulePtr m, int degree);
    /// 0 -> A --d--> B -> 0 with A in degree `lo`.
    static Complex two_term(const ModuleHom& d, int lo);

    const AlgebraPtr& algebra() const { return algebra_; }
    Field field() const { return algebra_->field(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(objects_.size()) - 1; }
    bool empty() const { return objects_.empty(); }

    /// Zero module outside the support.
    ModulePtr object(int n) const;
    std::size_t dim(int n) const { return object(n)->dim(); }
    /// d^n : X^n -> X^(n+1); a zero matrix of the right shape outside the support.
    Mat differential(int n) const;

    bool d_squared_zero() const;
    bool operator==(const Complex& o) const;

    /// If the complex is a single module sitting in one degree (all other
    /// objects zero), returns that degree.
    std::optional<int> single_degree() const;

private:
    AlgebraPtr algebra_;
    int lo_;
    std::vector<ModulePtr> objects_;
    std::vector<Mat> diffs_;
    ModulePtr zero_;
};

using ComplexPtr = std::shared_ptr<const Complex>;

inline ComplexPtr share(Complex c) { return std::make_shared<const Complex>(std::move(c)); }

/// Degreewise module maps f^n : X^n -> Y^n.
class ChainMap {
public:
    /// components[n] for n in the keys; missing degrees are zero.
    ChainMap(ComplexPtr source, ComplexPtr target, std::map<int, Mat> components);

    static ChainMap identity(ComplexPtr x);
    static ChainMap zero(ComplexPtr x, ComplexPtr y);

    const ComplexPtr& source() const { return source_; }
    const ComplexPtr& target() const { return target_; }
    Mat component(int n) const;

    /// f^(n+1) d_X^n = d_Y^n f^n for every n.
    bool commutes() const;

    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-(const ChainMap& o) const;
    ChainMap scaled(const Scalar& s) const;

private:
    ComplexPtr source_;
    ComplexPtr target_;
    std::map<int, Mat> components_;
};

/// second o first.
ChainMap compose(const ChainMap& second, const ChainMap& first);

/// h^n : X^n -> Y^(n-1).
struct Homotopy {
    std::map<int, Mat> components;
    Mat component(Field f, int n, std::size_t rows, std::size_t cols) const;
};

/// True when f - g = d_Y h + h d_X in every degree.
bool witnesses(const Homotopy& h, const ChainMap& f, const ChainMap& g);

struct Cohomology {
    ModulePtr module;
    /// Columns span the cocycles Z^n inside X^n.
    Mat cocycle_basis;
    /// Quotient of Z^n (in cocycle_basis coordinates) by the coboundaries.
    QuotientMap quotient;

    /// Class of a cocycle given in X^n coordinates.
    Vec class_of(const Vec& cocycle) const;
    /// A cocycle in X^n representing the given class coordinates.
    Vec representative(const Vec& coords) const;
};

Cohomology cohomology(const Complex& x, int n);

/// (X[k])^n = X^(n+k), d_(X[k]) = (-1)^k d_X.
Complex shift(const Complex& x, int k);
/// (f[k])^n = f^(n+k).
ChainMap shift(const ChainMap& f, int k, ComplexPtr shifted_source, ComplexPtr shifted_target);
ChainMap shift(const ChainMap& f, int k);

struct QuasiIsoReport {
    struct Degree {
        int degree;
        std::size_t source_dim;
        std::size_t target_dim;
        std::size_t rank;
    };
    bool is_quasi_iso = true;
    std::vector<Degree> degrees;
};

/// Matrix of H^n(f) in the cohomology coordinates of source and target.
Mat induced_map(const ChainMap& f, int n);
QuasiIsoReport is_quasi_iso(const ChainMap& f);

/// A homotopy from f to g, or nullopt when none exists.
std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g);

/// Basis of all chain maps X -> Y, by solving the commutation equations.
std::vector<ChainMap> chain_map_basis(ComplexPtr x, ComplexPtr y);

/// Complex of vector spaces (over the ground field) with
/// (Hom(X,Y))^n = prod_i Hom_A(X^i, Y^(i+n)) and d(f) = d_Y f - (-1)^n f d_X.
/// Coordinates in degree n concatenate hom_space bases over i = X.lo .. X.hi.
struct InnerHom {
    ComplexPtr complex;
    ComplexPtr x;
    ComplexPtr y;
    /// Decodes a degree-0 vector into the corresponding family f^i : X^i -> Y^i.
    ChainMap to_chain_map(const Vec& degree0) const;
    /// Encodes a chain map (more generally any degree-0 family) as a vector.
    Vec from_chain_map(const ChainMap& f) const;

    std::map<std::pair<int, int>, std::vector<ModuleHom>> bases;
};

InnerHom inner_hom(ComplexPtr x, ComplexPtr y);

/// cone(f)^n = X^(n+1) (+) Y^n with d(x, y) = (-d_X x, f x + d_Y y).
Complex cone(const ChainMap& f);

/// X (+) Y degreewise.
Complex direct_sum(const Complex& x, const Complex& y);

/// Random complex in degrees lo .. lo + length - 1 with objects from
/// random_module; each differential factors through the previous cokernel.
Complex random_complex(const AlgebraPtr& a, std::mt19937_64& rng, int lo, int length, std::size_t max_dim);

} // namespace hocalc
