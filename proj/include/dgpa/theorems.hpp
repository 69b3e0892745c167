#pragma once

#include "dgpa/construct.hpp"
#include "dgpa/ptriple.hpp"

namespace dgpa {

/// Finite-window isomorphism certificate. "Verified" means: the generator map
/// preserves every in-window relation instance, commutes with the
/// differentials, and is bijective on the window (dimension match plus an
/// invertible change of basis, or explicit two-sided inverses where the
/// window shapes differ). Out-of-window instances are deferrals, never
/// silent passes.
struct IsoCertificate {
    std::string lhs_label, rhs_label;
    std::map<std::pair<std::uint32_t, long long>, std::size_t> lhs_dims, rhs_dims;
    bool relations_preserved = false;
    bool differential_preserved = false;
    bool bijective_on_window = false;
    bool dims_match = false;
    /// Whether the two sides share a word alphabet, making the per-length
    /// dimension comparison meaningful. Tensor-style certificates compare per
    /// degree on matched windows instead (the map mixes word lengths).
    bool lengths_comparable = false;
    std::optional<int> epsilon; // recorded sign choice (opposite checker)
    std::size_t checked = 0, deferred = 0;
    std::vector<std::string> findings;

    bool verified() const {
        return relations_preserved && differential_preserved && bijective_on_window &&
               dims_match && findings.empty();
    }
    double coverage() const {
        return (checked + deferred) ? static_cast<double>(checked) / (checked + deferred) : 1.0;
    }
    std::string summary() const;
};

/// (A (x) B)^ue vs A^ue (x) B^ue through the tensor triple
/// (M (x) M, M (x) H + (-1)^{p|b|} H (x) M), with the cross-commutation law
/// phi_A(x) phi_B(y) = (-1)^{|x||y|} phi_B(y) phi_A(x) checked on all
/// in-window canonical word pairs.
IsoCertificate check_tensor_ue_iso(const DGPoissonData& a, const DGPoissonData& b,
                                   std::uint32_t max_len);

/// (A^op)^ue vs (A^ue)^op. No generator map is assumed up front: the sign
/// family g = eps * H with eps in {+1, -1} is searched and the outcome
/// recorded; no sign passing is reported as a finding. When phi_out is given
/// it receives the certified generator-level map (for composition checks).
IsoCertificate check_op_ue_iso(const DGPoissonData& a, std::uint32_t max_len,
                               InducedMap* phi_out = nullptr);

/// S(L)^ue vs U(L semidirect L) over the shared generator alphabet
/// M_x <-> x+0, H_x <-> 0+x, as equality of the two relation ideals on the
/// word window. Requires bracket degree 0.
IsoCertificate check_sym_lie_ue(const DGLieData& l, unsigned sym_trunc,
                                std::uint32_t max_len);

struct OracleComparison {
    std::map<std::pair<std::uint32_t, long long>, std::size_t> rewrite_dims, oracle_dims;
    bool basis_match = false;
    bool tables_match = false; // products and differentials on common entries
    std::optional<bool> stable;
    std::vector<std::string> findings;

    bool agree() const { return basis_match && tables_match; }
    /// A mismatch at a stable window is a hard finding; at an unstable window
    /// it only means the window is too small to decide.
    bool hard_disagreement() const { return stable == true && !agree(); }
    std::string summary() const;
};

OracleComparison compare_with_oracle(const DGPoissonData& a, std::uint32_t max_len,
                                     RewriteOptions opts = {});

/// Functoriality plumbing: a DG Poisson map A -> B induces a map of
/// truncated enveloping algebras through the triple (B^ue, M o f, H o f).
struct UEFunctorMap {
    VerificationReport triple_report;
    InducedMap map;
};

UEFunctorMap ue_functor_map(const DGPoissonData& a, const DGPoissonData& b,
                            const GradedLinearMap& f, std::uint32_t max_len);

/// Graded tensor product of two (possibly partial) DG-algebras.
PartialDGAlgebra tensor_partial_algebra(const PartialDGAlgebra& a, const PartialDGAlgebra& b);

/// Opposite of a (possibly partial) DG-algebra: x *op y = (-1)^{|x||y|} y x.
PartialDGAlgebra opposite_partial_algebra(const PartialDGAlgebra& a);

} // namespace dgpa
