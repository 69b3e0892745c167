#pragma once

// Shared expansion helpers for the enveloping-algebra sources.

#include "dgpa/ncpoly.hpp"
#include "dgpa/structures.hpp"

namespace dgpa::detail {

/// Sum of M letters for an element's support (keeps M_1 as a letter).
NCPoly m_expand_raw(const GenSet& gens, const Element& e);
/// Sum of H letters for an element's support.
NCPoly h_expand_raw(const GenSet& gens, const Element& e);
/// Removes unit M letters from every word (relation (v) applied).
NCPoly collapse_unit(const GenSet& gens, std::uint32_t unit_base, const NCPoly& p);
/// Multiplies out adjacent M letters through the product table to a fixpoint
/// (also drops unit letters produced along the way). Requires total tables.
NCPoly m_collapse(const DGPoissonData& a, const GenSet& gens, const NCPoly& p);

} // namespace dgpa::detail
