#pragma once

#include "dgpa/ue.hpp"

namespace dgpa {

/// DG-algebra view whose product and differential may be partial (finite
/// truncations). Reading an undefined cell throws truncation_overflow_error;
/// verifiers and checkers defer those instances.
struct PartialDGAlgebra {
    Field field;
    GradedSpace space;
    std::uint32_t unit = 0;
    BilinearOp product;
    std::vector<std::optional<Element>> diff;
    bool commutative = false;

    Element unit_element() const { return Element::basis(space, unit, Scalar::one(field)); }
    Element mul(const Element& a, const Element& b) const { return product.apply(a, b); }
    Element d(const Element& e) const;

    static PartialDGAlgebra from(const DGAlgebraData& a);
};

/// The truncated enveloping algebra as a DG-algebra on its canonical words.
PartialDGAlgebra ue_as_algebra(const UETruncation& t);

VerificationReport verify_partial_dg_algebra(const PartialDGAlgebra& a);

/// Candidate triple (B, f, g): f a degree-0 algebra map, g a degree-p Lie map
/// into the graded commutator, and the two mixed compatibilities.
struct PTripleData {
    PartialDGAlgebra target;
    GradedLinearMap f; // A -> B, degree 0
    GradedLinearMap g; // A -> B, degree p
};

/// Checks P1-P4 on all basis pairs. The target must itself verify as a
/// DG-algebra (commutativity not required); that failing is a precondition
/// error, not a violation.
VerificationReport verify_ptriple(const DGPoissonData& a, const PTripleData& t);

/// The universal map out of a truncation: phi(M_a) = f(a), phi(H_a) = g(a),
/// extended multiplicatively over canonical words. Verifies that phi kills
/// every relation instance, commutes with the differentials, and that the
/// left-to-right and right-to-left multiplicative extensions coincide.
struct InducedMap {
    GradedSpace source; // word space of the truncation
    GradedSpace target;
    std::vector<std::optional<Element>> images; // nullopt: out-of-window product
    VerificationReport report;

    bool total() const;
    /// Degree-0 linear map; throws truncation_overflow_error when partial.
    GradedLinearMap to_linear() const;
};

InducedMap induced_map(const DGPoissonData& a, const PTripleData& t, const UETruncation& u);

} // namespace dgpa
