#pragma once

#include "dgpa/structures.hpp"

namespace dgpa {

struct CohomologyResult {
    DGPoissonData algebra; ///< induced structure, zero differential
    /// Cocycle representative in the input algebra for each basis class,
    /// aligned with the output basis order.
    std::vector<Element> representatives;
};

/// ker d / im d degreewise, with the induced product and bracket.
/// Representatives are echelon-reduced cocycles; the class of 1 is always a
/// basis symbol (it is seeded first in degree 0).
/// Throws precondition_error if the input fails verification, and
/// value_error if the unit class dies (zero cohomology ring).
CohomologyResult cohomology_full(const DGPoissonData& a);

inline DGPoissonData cohomology(const DGPoissonData& a) {
    return cohomology_full(a).algebra;
}

} // namespace dgpa
