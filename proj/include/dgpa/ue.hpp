#pragma once

#include <memory>

#include "dgpa/ncpoly.hpp"
#include "dgpa/structures.hpp"

namespace dgpa {

/// Defining relations of the enveloping algebra, instantiated on basis pairs:
///   (i)   M_{ab} - M_a M_b
///   (ii)  H_{{a,b}} - H_a H_b + (-1)^{(|a|+p)(|b|+p)} H_b H_a
///   (iii) H_{ab} - M_a H_b - (-1)^{|a||b|} M_b H_a
///   (iv)  M_{{a,b}} - H_a M_b + (-1)^{(|a|+p)|b|} M_b H_a
///   (v)   M_1 - 1
/// Polynomials are raw: the unit letter M_1 is kept, so relation (v) carries
/// the identification (the oracle quotients by it; the rewriter eliminates it).
enum class UEClause { i, ii, iii, iv, v };
const char* clause_name(UEClause c);

struct Relation {
    UEClause clause;
    std::uint32_t a = 0, b = 0; // basis pair; unused for clause v
    NCPoly poly;                // lhs - rhs, homogeneous
};

struct RelationSet {
    GenSet gens;
    std::vector<Relation> relations;
    std::size_t skipped = 0; // instances not expressible (partial input tables)
};

/// Expands Definition relations on all basis pairs through the structure
/// constants. Tolerates partial tables by skipping the affected instances.
RelationSet build_relations(const DGPoissonData& a);

/// Leibniz differential on the free algebra: d(M_x) = M_{dx}, d(H_x) = H_{dx},
/// extended by d(uv) = d(u)v + (-1)^{|u|} u d(v). Raw letters throughout.
NCPoly free_differential(const DGPoissonData& a, const GenSet& gens, const NCPoly& p);

/// Outcome of eliminating the dependent H letters through relation (iii).
struct HReduction {
    GenSet gens;
    /// dependent H base -> expression over M letters and free H letters
    std::map<std::uint32_t, NCPoly> substitution;
    std::vector<std::uint32_t> free_h; // basis indices whose H stays free
    /// leftover identities with no linear part (oriented into rewrite rules)
    std::vector<NCPoly> residual;
    std::size_t skipped = 0;
};

/// Solves the linear system over the H symbols given by clause (iii), then
/// back-substitutes to a fixpoint so every dependent H is expressed over free
/// generators only. A substitution cycle is a hard error with the cycle as
/// witness. Requires complete product tables and characteristic != 2.
HReduction reduce_h_generators(const DGPoissonData& a);

struct RewriteOptions {
    /// Fault-injection hook for cross-check tests: drop the rule
    /// H_x H_x -> 1/2 H_{{x,x}} for odd shifted parity.
    bool disable_odd_square_rule = false;
};

/// Oriented rewriting system for the enveloping algebra of a verified
/// DG Poisson algebra:
///   M_x M_y -> expansion of M_{xy}
///   H_x M_y -> expansion of M_{{x,y}} + (-1)^{(|x|+p)|y|} M_y H_x
///   H_x H_y -> expansion of H_{{x,y}} + (-1)^{(|x|+p)(|y|+p)} H_y H_x  (x > y)
///   H_x H_x -> 1/2 expansion of H_{{x,x}}   (|x|+p odd)
/// plus the eliminated-generator substitutions and the residual rules from
/// reduce_h_generators. Every rule rewrites a word into strictly smaller
/// shortlex words, so rewriting terminates; confluence is not assumed and is
/// instead cross-checked against the ideal-quotient oracle.
class UERewriter {
public:
    explicit UERewriter(const DGPoissonData& a, RewriteOptions opts = {});
    ~UERewriter();
    UERewriter(UERewriter&&) noexcept;
    UERewriter& operator=(UERewriter&&) noexcept;

    const GenSet& gens() const;
    const HReduction& reduction() const;

    /// Substitutes eliminated letters (M_1 and dependent H's); may grow words.
    /// Throws truncation_overflow_error when a word exceeds max_len.
    NCPoly expand_eliminated(const NCPoly& p, std::uint32_t max_len) const;

    /// Full normal form; accepts raw input. Intermediate words are capped at
    /// max_len (truncation_overflow_error beyond it).
    NCPoly normal_form(const NCPoly& p, std::uint32_t max_len) const;

    bool word_irreducible(const Word& w) const;
    /// All irreducible words of length <= max_len in shortlex order.
    std::vector<Word> canonical_words(std::uint32_t max_len) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct UEDiagnostics {
    std::size_t relations_checked = 0, relations_deferred = 0;
    std::size_t d2_checked = 0, d2_deferred = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Degree-truncated model of the enveloping algebra: canonical words of
/// length <= max_len with partial product and differential tables. Undefined
/// entries are out-of-window overflows, never silent zeros.
struct UETruncation {
    enum class Provenance { rewriting, oracle };
    using QVec = std::map<std::uint32_t, Scalar>; // sparse vector over basis

    Field field;
    GenSet gens;
    std::uint32_t max_len = 0;
    std::vector<Word> basis; // shortlex order
    std::map<Word, std::uint32_t, ShortLex> index;
    std::vector<std::vector<std::optional<QVec>>> product;
    std::vector<std::optional<QVec>> diff;
    Provenance provenance = Provenance::rewriting;
    std::optional<bool> stable; // oracle stability verdict I_{L+1} cap V_L = I_L
    UEDiagnostics diagnostics;

    std::size_t dim() const { return basis.size(); }
    long long word_deg(std::uint32_t i) const { return word_degree(gens, basis[i]); }
    /// (length, degree) -> dimension
    std::map<std::pair<std::uint32_t, long long>, std::size_t> dims_table() const;
    std::string dims_table_text() const;
};

/// Build by rewriting. Requires a verified algebra with complete tables.
UETruncation ue_truncated(const DGPoissonData& a, std::uint32_t max_len,
                          RewriteOptions opts = {});

/// Independent brute-force model: the span of all words of length <= max_len
/// over the unreduced alphabet modulo the two-sided ideal window generated by
/// u * r * v. Also decides the stability check at max_len + 1.
UETruncation ideal_quotient_oracle(const DGPoissonData& a, std::uint32_t max_len);

/// Size cap for word enumeration; override with the DGPA_SIZE_GUARD env var.
std::uint64_t size_guard_limit();

} // namespace dgpa
