#pragma once

#include <string>
#include <vector>

#include "dgpa/bilinear_op.hpp"
#include "dgpa/linear_map.hpp"

namespace dgpa {

/// Associative graded algebra with unit, degree-1 differential, and a
/// commutativity flag. The flag records whether graded commutativity is
/// part of the contract; verify_dg_algebra checks it only when set.
/// Product tables may be partial (finite truncations); verifiers skip
/// tuples that touch out-of-window entries and count them as deferred.
struct DGAlgebraData {
    Field field;
    GradedSpace space;
    std::uint32_t unit = 0;
    BilinearOp product;           // degree 0
    GradedLinearMap differential; // degree 1
    bool commutative = true;

    DGAlgebraData(Field f, GradedSpace sp, std::uint32_t unit_idx, BilinearOp prod,
                  GradedLinearMap diff, bool comm);

    Element unit_element() const;
    Element mul(const Element& a, const Element& b) const { return product.apply(a, b); }
    Element d(const Element& a) const { return differential.apply(a); }
    Element basis_elem(std::uint32_t i) const {
        return Element::basis(space, i, Scalar::one(field));
    }
};

/// Graded Lie algebra with bracket of degree p and degree-1 differential.
struct DGLieData {
    Field field;
    GradedSpace space;
    BilinearOp bracket; // degree p
    long long bracket_degree = 0;
    GradedLinearMap differential;

    DGLieData(Field f, GradedSpace sp, BilinearOp br, long long p, GradedLinearMap diff);

    Element br(const Element& a, const Element& b) const { return bracket.apply(a, b); }
    Element d(const Element& a) const { return differential.apply(a); }
    Element basis_elem(std::uint32_t i) const {
        return Element::basis(space, i, Scalar::one(field));
    }
};

/// DG Poisson algebra: the algebra and Lie structures share one space and one
/// differential (enforced at construction).
struct DGPoissonData {
    DGAlgebraData algebra;
    DGLieData lie;

    DGPoissonData(DGAlgebraData alg, DGLieData l);

    const Field& field() const { return algebra.field; }
    const GradedSpace& space() const { return algebra.space; }
    long long p() const { return lie.bracket_degree; }
    Element mul(const Element& a, const Element& b) const { return algebra.mul(a, b); }
    Element br(const Element& a, const Element& b) const { return lie.br(a, b); }
    Element d(const Element& a) const { return algebra.d(a); }
    Element basis_elem(std::uint32_t i) const { return algebra.basis_elem(i); }
};

/// Graded vector space with a square-zero degree-1 differential.
struct DGVectorSpaceData {
    Field field;
    GradedSpace space;
    GradedLinearMap differential;

    DGVectorSpaceData(Field f, GradedSpace sp, GradedLinearMap diff);
};

/// Left DG Poisson module: action of degree 0, Lie action of degree p,
/// both A (x) M -> M, with a degree-1 differential on M.
struct DGPoissonModuleData {
    DGPoissonData algebra;
    GradedSpace space;
    BilinearOp action;     // A x M -> M, degree 0
    BilinearOp lie_action; // A x M -> M, degree p
    GradedLinearMap differential;

    DGPoissonModuleData(DGPoissonData alg, GradedSpace sp, BilinearOp act, BilinearOp lie_act,
                        GradedLinearMap diff);

    Element act(const Element& a, const Element& m) const { return action.apply(a, m); }
    Element lie(const Element& a, const Element& m) const { return lie_action.apply(a, m); }
    Element dM(const Element& m) const { return differential.apply(m); }
};

/// Right DG Poisson module: actions are M (x) A -> M.
struct DGPoissonRightModuleData {
    DGPoissonData algebra;
    GradedSpace space;
    BilinearOp action;     // M x A -> M, degree 0
    BilinearOp lie_action; // M x A -> M, degree p
    GradedLinearMap differential;

    DGPoissonRightModuleData(DGPoissonData alg, GradedSpace sp, BilinearOp act,
                             BilinearOp lie_act, GradedLinearMap diff);

    Element act(const Element& m, const Element& a) const { return action.apply(m, a); }
    Element lie(const Element& m, const Element& a) const { return lie_action.apply(m, a); }
    Element dM(const Element& m) const { return differential.apply(m); }
};

/// One failed identity: which axiom, on which basis tuple, and the nonzero
/// difference between the two sides.
struct Violation {
    std::string axiom;
    std::vector<std::string> witness;
    Element discrepancy;
    std::string to_string() const;
};

struct VerificationReport {
    std::vector<Violation> violations;
    std::size_t checked = 0; // identity instances evaluated
    std::size_t skipped = 0; // instances deferred (out-of-window table entries)

    bool pass() const { return violations.empty(); }
    std::string summary() const;
};

VerificationReport verify_dg_algebra(const DGAlgebraData& a);
VerificationReport verify_dg_lie(const DGLieData& l);

struct PoissonVerifyOptions {
    /// Accept data whose commutativity flag is off (the noncommutative variant).
    bool allow_noncommutative = false;
};

VerificationReport verify_dg_poisson(const DGPoissonData& a, PoissonVerifyOptions opts = {});
VerificationReport verify_dg_poisson_module(const DGPoissonModuleData& m);
VerificationReport verify_dg_poisson_right_module(const DGPoissonRightModuleData& m);

} // namespace dgpa
