#include <sstream>

#include "dgpa/ue.hpp"

namespace dgpa {

std::map<std::pair<std::uint32_t, long long>, std::size_t> UETruncation::dims_table() const {
    std::map<std::pair<std::uint32_t, long long>, std::size_t> t;
    for (std::uint32_t i = 0; i < basis.size(); ++i)
        ++t[{static_cast<std::uint32_t>(basis[i].size()), word_deg(i)}];
    return t;
}

std::string UETruncation::dims_table_text() const {
    std::ostringstream os;
    os << "dim " << basis.size() << " at max_len " << max_len << "\n";
    os << "  (length, degree) -> count\n";
    for (const auto& [key, count] : dims_table())
        os << "  (" << key.first << ", " << key.second << ") -> " << count << "\n";
    return os.str();
}

namespace {

void verify_for_ue(const DGPoissonData& a) {
    if (!a.algebra.product.is_total() || !a.lie.bracket.is_total())
        throw incomplete_table_error("enveloping computations require complete tables");
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = !a.algebra.commutative;
    VerificationReport rep = verify_dg_poisson(a, opts);
    if (!rep.pass())
        throw precondition_error("algebra fails verification",
                                 rep.violations.front().to_string());
}

std::optional<UETruncation::QVec> to_window_vec(const UETruncation& t, const NCPoly& p) {
    UETruncation::QVec v;
    for (const auto& [w, c] : p.terms()) {
        auto it = t.index.find(w);
        if (it == t.index.end()) return std::nullopt; // out of window
        v.emplace(it->second, c);
    }
    return v;
}

} // namespace

UETruncation ue_truncated(const DGPoissonData& a, std::uint32_t max_len, RewriteOptions opts) {
    if (max_len < 1) throw precondition_error("truncation window needs max_len >= 1");
    verify_for_ue(a);
    UERewriter rw(a, opts);

    UETruncation t{a.field(), rw.gens(), max_len, {}, {}, {}, {},
                   UETruncation::Provenance::rewriting, std::nullopt, {}};
    t.basis = rw.canonical_words(max_len);
    for (std::uint32_t i = 0; i < t.basis.size(); ++i) t.index.emplace(t.basis[i], i);

    const auto dim = static_cast<std::uint32_t>(t.basis.size());
    const std::uint32_t budget = 2 * max_len + 2;

    t.product.assign(dim, std::vector<std::optional<UETruncation::QVec>>(dim));
    for (std::uint32_t i = 0; i < dim; ++i)
        for (std::uint32_t j = 0; j < dim; ++j) {
            Word w = t.basis[i];
            w.insert(w.end(), t.basis[j].begin(), t.basis[j].end());
            NCPoly nf = rw.normal_form(NCPoly::term(std::move(w), Scalar::one(t.field)), budget);
            t.product[i][j] = to_window_vec(t, nf);
        }

    t.diff.assign(dim, std::nullopt);
    for (std::uint32_t i = 0; i < dim; ++i) {
        NCPoly draw = free_differential(a, t.gens,
                                        NCPoly::term(t.basis[i], Scalar::one(t.field)));
        try {
            NCPoly nf = rw.normal_form(draw, budget);
            t.diff[i] = to_window_vec(t, nf);
        } catch (const truncation_overflow_error&) {
            t.diff[i] = std::nullopt;
        }
    }

    // d^2 = 0 wherever both steps stay in the window
    for (std::uint32_t i = 0; i < dim; ++i) {
        if (!t.diff[i]) {
            ++t.diagnostics.d2_deferred;
            continue;
        }
        bool deferred = false;
        std::map<std::uint32_t, Scalar> acc;
        for (const auto& [k, c] : *t.diff[i]) {
            if (!t.diff[k]) {
                deferred = true;
                break;
            }
            for (const auto& [m, v] : *t.diff[k]) {
                auto it = acc.find(m);
                Scalar w = (it == acc.end() ? Scalar::zero(t.field) : it->second) + c * v;
                if (w.is_zero())
                    acc.erase(m);
                else
                    acc[m] = w;
            }
        }
        if (deferred) {
            ++t.diagnostics.d2_deferred;
        } else {
            ++t.diagnostics.d2_checked;
            if (!acc.empty())
                t.diagnostics.failures.push_back("d^2 != 0 at " +
                                                 word_name(t.gens, t.basis[i]));
        }
    }

    // every in-window relation instance must rewrite to zero
    RelationSet rels = build_relations(a);
    for (const auto& r : rels.relations) {
        try {
            NCPoly nf = rw.normal_form(r.poly, budget);
            ++t.diagnostics.relations_checked;
            if (!nf.is_zero()) {
                std::ostringstream os;
                os << "relation " << clause_name(r.clause) << " at ("
                   << a.space().name(r.a) << ", " << a.space().name(r.b)
                   << ") does not rewrite to zero: " << nf.to_string(t.gens);
                t.diagnostics.failures.push_back(os.str());
            }
        } catch (const truncation_overflow_error&) {
            ++t.diagnostics.relations_deferred;
        }
    }
    return t;
}

} // namespace dgpa
