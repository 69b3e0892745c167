#pragma once

#include <optional>

#include "dgpa/structures.hpp"

namespace dgpa {

/// Same space, product, and differential; bracket table negated.
DGPoissonData opposite(const DGPoissonData& a);

/// Tensor product with the Koszul-twisted product, the Leibniz differential
/// across factors, and the twisted bracket of the same degree p.
/// Throws value_error if the bracket degrees differ.
DGPoissonData tensor(const DGPoissonData& a, const DGPoissonData& b);

/// Conversion between operators on V and elements of the endomorphism
/// algebra. The identity operator is a basis symbol ("id"); the matrix unit
/// E(v0,v0) is traded away for it, so conversions go through this context.
struct EndContext {
    Field field;
    GradedSpace vspace;
    GradedSpace end_space;

    /// Element representing a homogeneous operator on V.
    Element from_operator(const GradedLinearMap& op) const;
    /// Operator represented by a homogeneous element.
    GradedLinearMap to_operator(const Element& e, long long degree) const;
};

struct EndomorphismResult {
    DGPoissonData algebra; // noncommutative flag off, p = 0
    EndContext ctx;
};

/// End(V) with composition product, graded-commutator bracket (p = 0), and
/// d(f) = d_V f - (-1)^{|f|} f d_V. Matrix units are graded by
/// (target degree - source degree).
EndomorphismResult endomorphism_dgp(const DGVectorSpaceData& v);

/// Truncated graded symmetric algebra of a DG Lie algebra: monomials of
/// length <= max_len with odd-degree generators square-free, bracket extended
/// as a biderivation, differential by the Leibniz rule. Entries whose value
/// would leave the window are undefined (overflow), never silently dropped.
DGPoissonData symmetric_dgp(const DGLieData& l, unsigned max_len);

/// symmetric_dgp plus the generator factorization of each basis monomial
/// (sorted generator indices; the unit is the empty factorization).
struct SymmetricResult {
    DGPoissonData algebra;
    std::vector<std::vector<std::uint32_t>> monomials;
};
SymmetricResult symmetric_dgp_full(const DGLieData& l, unsigned max_len);

/// Installs d = {alpha, -} on a Gerstenhaber algebra (p = -1, d = 0).
/// Requires [alpha, alpha] = 0 and alpha homogeneous of degree 2; rejects
/// otherwise with the nonzero value as witness.
DGPoissonData gerstenhaber_differential(const DGPoissonData& g, const Element& alpha);

/// Exterior algebra of an ordinary Lie algebra (degrees 0, d = 0, p = 0),
/// graded by word length, with the degree -1 bracket given by the
/// two-index contraction sum.
DGPoissonData exterior_gerstenhaber(const DGLieData& l);

/// Independent cross-check of exterior_gerstenhaber: compares the displayed
/// contraction sum against the biderivation extension of the generator
/// bracket on every basis pair. Returns a witness description on the first
/// disagreement, nullopt when the two paths agree everywhere.
std::optional<std::string> exterior_bracket_paths_disagree(const DGLieData& l);

/// Graded deformation data: a graded commutative DG-algebra together with the
/// correction tables B_1..B_N of the star product (all of degree 0).
struct DeformationData {
    DGAlgebraData base;
    std::vector<BilinearOp> corrections;

    DeformationData(DGAlgebraData b, std::vector<BilinearOp> c);
};

struct DeformationBracketResult {
    /// Smallest m >= 1 with B_m not graded-symmetric; nullopt when every
    /// correction is symmetric up to the truncation order
    /// ("commutative-to-order-N").
    std::optional<unsigned> order;
    std::optional<DGPoissonData> poisson; // base with the extracted bracket, p = 0
    VerificationReport check;             // verify_dg_poisson of the result
};

DeformationBracketResult deformation_bracket(const DeformationData& d);

/// M^op: right module over opposite(A) via m*a = (-1)^{|a||m|} a*m and
/// {m,a} = (-1)^{(|a|+p)(|m|+p)} {a,m}.
DGPoissonRightModuleData opposite_module(const DGPoissonData& a, const DGPoissonModuleData& m);

/// Inverse of opposite_module (the same signs); double application is the
/// identity on tables.
DGPoissonModuleData opposite_module_back(const DGPoissonRightModuleData& m);

/// M (x) N as a module over tensor(A, B). Throws on mismatched bracket degree.
DGPoissonModuleData tensor_module(const DGPoissonData& a, const DGPoissonModuleData& m,
                                  const DGPoissonData& b, const DGPoissonModuleData& n);

/// L semidirect L: zero bracket on the first copy, the bracket of L from
/// mixed pairs into the first copy, and the bracket of L on the second copy
/// landing in the second copy (so the second copy is a subalgebra).
DGLieData semidirect_lie(const DGLieData& l);

} // namespace dgpa
