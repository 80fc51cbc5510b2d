#pragma once

// Small algebras and modules shared by the unit tests.

#include "hocalc/algebra.hpp"

namespace fx {

using namespace hocalc;

/// k[x]/(x^3).
inline AlgebraPtr kx3(Field f) { return Algebra::truncated_polynomial(f, 3); }

/// Path algebra of 0 -> 1 -> 2 modulo paths of length 2.
inline AlgebraPtr a3_rad2(Field f) { return Algebra::path_algebra(f, Quiver{3, {{0, 1}, {1, 2}}}, 2); }

/// The cyclic module A/(x^k) over k[x]/(x^n), basis 1, x, ..., x^(k-1).
inline ModulePtr truncated(AlgebraPtr a, std::size_t k)
{
    const Field f = a->field();
    const std::size_t n = a->dim();
    std::vector<Mat> act;
    for (std::size_t i = 0; i < n; ++i) {
        Mat m(f, k, k);
        for (std::size_t j = 0; j + i < k; ++j)
            m(j + i, j) = Scalar(f, 1);
        act.push_back(m);
    }
    return share(Module(a, k, act));
}

/// Inclusion of the ideal (x^j) into A = k[x]/(x^n), basis x^j, ..., x^(n-1).
inline ModuleHom ideal(AlgebraPtr a, std::size_t j)
{
    const Field f = a->field();
    const std::size_t n = a->dim();
    ModulePtr reg = share(Module::regular(a));
    std::vector<Vec> basis;
    for (std::size_t t = j; t < n; ++t)
        basis.push_back(unit_vec(f, n, t));
    return subspace_submodule(reg, basis);
}

} // namespace fx
