#pragma once

// Shared builders for the small algebras used across the test suites.

#include <map>
#include <vector>

#include "dgpa/structures.hpp"

namespace dgpa::testing {

inline Field Q() { return Field::rationals(); }

inline Scalar q(long num, long den = 1) { return Scalar::ratio(Q(), num, den); }

/// k[x]/(x^(n+1)) with |x| = 0, zero bracket and differential, p = 0.
/// Basis 1, x, ..., x^n.
inline DGPoissonData truncated_polynomial(unsigned n) {
    std::vector<BasisSymbol> syms{{"1", 0}};
    for (unsigned i = 1; i <= n; ++i)
        syms.push_back({i == 1 ? "x" : "x^" + std::to_string(i), 0});
    GradedSpace sp(syms);
    std::map<BilinearOp::Key, Element> prod;
    for (std::uint32_t i = 0; i <= n; ++i)
        for (std::uint32_t j = 0; j <= n; ++j)
            if (i + j <= n)
                prod.emplace(BilinearOp::Key{i, j}, Element::basis(sp, i + j, q(1)));
    DGAlgebraData alg(Q(), sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap::zero(sp, sp, 1), true);
    DGLieData lie(Q(), sp, BilinearOp::total(sp, sp, sp, 0, {}), 0,
                  GradedLinearMap::zero(sp, sp, 1));
    return DGPoissonData(std::move(alg), std::move(lie));
}

/// The one-dimensional algebra k.
inline DGPoissonData trivial_k() { return truncated_polynomial(0); }

/// k[x]/(x^2) with trivial bracket and differential.
inline DGPoissonData kx_square_zero() { return truncated_polynomial(1); }

/// k[x]/(x^3).
inline DGPoissonData kx_cube_zero() { return truncated_polynomial(2); }

/// Basis 1, x, y in degree 0, all products of generators zero, {x, y} = x.
/// A linear Poisson structure on the dual of the nonabelian 2-dim Lie algebra.
inline DGPoissonData linear_poisson() {
    GradedSpace sp({{"1", 0}, {"x", 0}, {"y", 0}});
    std::map<BilinearOp::Key, Element> prod;
    for (std::uint32_t i = 0; i < 3; ++i) {
        prod.emplace(BilinearOp::Key{0, i}, Element::basis(sp, i, q(1)));
        if (i) prod.emplace(BilinearOp::Key{i, 0}, Element::basis(sp, i, q(1)));
    }
    std::map<BilinearOp::Key, Element> brak;
    brak.emplace(BilinearOp::Key{1, 2}, Element::basis(sp, 1, q(1)));
    brak.emplace(BilinearOp::Key{2, 1}, Element::basis(sp, 1, q(-1)));
    DGAlgebraData alg(Q(), sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap::zero(sp, sp, 1), true);
    DGLieData lie(Q(), sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                  GradedLinearMap::zero(sp, sp, 1));
    return DGPoissonData(std::move(alg), std::move(lie));
}

/// Exterior algebra on odd x (deg 1) and y (deg -1) with {x, y} = 1, p = 0.
/// The graded symplectic pair: basis 1, x, y, xy.
inline DGPoissonData symplectic_pair() {
    GradedSpace sp({{"1", 0}, {"x", 1}, {"y", -1}, {"xy", 0}});
    const Field F = Q();
    std::map<BilinearOp::Key, Element> prod;
    auto set = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, long c) {
        prod.emplace(BilinearOp::Key{i, j}, Element::basis(sp, k, q(c)));
    };
    for (std::uint32_t i = 0; i < 4; ++i) {
        set(0, i, i, 1);
        if (i) set(i, 0, i, 1);
    }
    set(1, 2, 3, 1);  // x*y = xy
    set(2, 1, 3, -1); // y*x = -xy
    std::map<BilinearOp::Key, Element> brak;
    auto setb = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, long c) {
        brak.emplace(BilinearOp::Key{i, j}, Element::basis(sp, k, q(c)));
    };
    // {x,y} = {y,x} = 1 (both arguments have odd shifted parity), {x,xy} = -x,
    // {y,xy} = y, and the transposes by antisymmetry.
    setb(1, 2, 0, 1);
    setb(2, 1, 0, 1);
    setb(1, 3, 1, -1);
    setb(3, 1, 1, 1);
    setb(2, 3, 2, 1);
    setb(3, 2, 2, -1);
    DGAlgebraData alg(F, sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap::zero(sp, sp, 1), true);
    DGLieData lie(F, sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                  GradedLinearMap::zero(sp, sp, 1));
    return DGPoissonData(std::move(alg), std::move(lie));
}

/// Basis 1, x (deg 0), xi (deg -1); d(xi) = x, all generator products zero.
inline DGPoissonData koszul_pair() {
    GradedSpace sp({{"1", 0}, {"x", 0}, {"xi", -1}});
    std::map<BilinearOp::Key, Element> prod;
    for (std::uint32_t i = 0; i < 3; ++i) {
        prod.emplace(BilinearOp::Key{0, i}, Element::basis(sp, i, q(1)));
        if (i) prod.emplace(BilinearOp::Key{i, 0}, Element::basis(sp, i, q(1)));
    }
    std::vector<Element> dimg{Element(sp), Element(sp), Element::basis(sp, 1, q(1))};
    DGAlgebraData alg(Q(), sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap(sp, sp, 1, std::move(dimg)), true);
    DGLieData lie(Q(), sp, BilinearOp::total(sp, sp, sp, 0, {}), 0,
                  GradedLinearMap(sp, sp, 1,
                                  {Element(sp), Element(sp), Element::basis(sp, 1, q(1))}));
    return DGPoissonData(std::move(alg), std::move(lie));
}

/// The 2-dim Lie algebra [a, b] = b in degree 0, p = 0, d = 0.
inline DGLieData nonabelian_2dim_lie() {
    GradedSpace sp({{"a", 0}, {"b", 0}});
    std::map<BilinearOp::Key, Element> brak;
    brak.emplace(BilinearOp::Key{0, 1}, Element::basis(sp, 1, q(1)));
    brak.emplace(BilinearOp::Key{1, 0}, Element::basis(sp, 1, q(-1)));
    return DGLieData(Q(), sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                     GradedLinearMap::zero(sp, sp, 1));
}

/// One odd generator xi in degree 1, abelian, d = 0, p = 0.
inline DGLieData odd_line_lie() {
    GradedSpace sp({{"xi", 1}});
    return DGLieData(Q(), sp, BilinearOp::total(sp, sp, sp, 0, {}), 0,
                     GradedLinearMap::zero(sp, sp, 1));
}

/// sl2: [e,f] = h, [h,e] = 2e, [h,f] = -2f.
inline DGLieData sl2_lie() {
    GradedSpace sp({{"e", 0}, {"f", 0}, {"h", 0}});
    std::map<BilinearOp::Key, Element> brak;
    auto setb = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, long c) {
        brak.emplace(BilinearOp::Key{i, j}, Element::basis(sp, k, q(c)));
    };
    setb(0, 1, 2, 1);
    setb(1, 0, 2, -1);
    setb(2, 0, 0, 2);
    setb(0, 2, 0, -2);
    setb(2, 1, 1, -2);
    setb(1, 2, 1, 2);
    return DGLieData(Q(), sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                     GradedLinearMap::zero(sp, sp, 1));
}

/// Heisenberg: [x,y] = z central.
inline DGLieData heisenberg_lie() {
    GradedSpace sp({{"x", 0}, {"y", 0}, {"z", 0}});
    std::map<BilinearOp::Key, Element> brak;
    brak.emplace(BilinearOp::Key{0, 1}, Element::basis(sp, 2, q(1)));
    brak.emplace(BilinearOp::Key{1, 0}, Element::basis(sp, 2, q(-1)));
    return DGLieData(Q(), sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                     GradedLinearMap::zero(sp, sp, 1));
}

/// Regular left module of a DG Poisson algebra: action and Lie action by the
/// algebra's own tables.
inline DGPoissonModuleData regular_module(const DGPoissonData& a) {
    return DGPoissonModuleData(a, a.space(), a.algebra.product, a.lie.bracket,
                               a.algebra.differential);
}

} // namespace dgpa::testing
