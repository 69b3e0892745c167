#include <sstream>

#include "dgpa/echelon.hpp"
#include "dgpa/ue.hpp"

namespace dgpa {

namespace {

/// All words over the given letters up to max_len, shortlex order.
/// Letters must be listed in increasing id order.
std::vector<Word> all_words(const std::vector<std::uint32_t>& letters, std::uint32_t max_len,
                            std::uint64_t guard) {
    std::uint64_t total = 1, power = 1;
    for (std::uint32_t l = 1; l <= max_len; ++l) {
        power *= letters.size();
        total += power;
        if (total > guard)
            throw size_guard_error("word space of " + std::to_string(total) +
                                   "+ words exceeds the size guard; raise DGPA_SIZE_GUARD");
    }
    std::vector<Word> words{Word{}};
    std::size_t level_begin = 0, level_end = 1;
    for (std::uint32_t l = 1; l <= max_len; ++l) {
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (std::uint32_t id : letters) {
                Word w = words[i];
                w.push_back(id);
                words.push_back(std::move(w));
            }
        level_begin = level_end;
        level_end = words.size();
    }
    return words;
}

struct IdealWindow {
    std::vector<Word> words;
    std::map<Word, std::uint32_t, ShortLex> index;
    RowReducer reducer;
};

SparseVec poly_row(const std::map<Word, std::uint32_t, ShortLex>& index, const NCPoly& p) {
    SparseVec row;
    for (const auto& [w, c] : p.terms()) row.emplace(index.at(w), c);
    return row;
}

/// Substitutes eliminated letters: M_1 becomes the empty word and dependent
/// H letters are replaced by their closed expressions over free letters.
/// This is presentation plumbing shared with the rewriter; no oriented
/// rewriting happens here (M runs are left alone for the echelon to resolve).
NCPoly eliminate_letters(const GenSet& gens, std::uint32_t unit_base, const HReduction& red,
                         const NCPoly& p) {
    const Field* field = nullptr;
    for (const auto& [w, c] : p.terms()) {
        field = &c.field();
        break;
    }
    if (!field) return p;
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        NCPoly acc = NCPoly::term(Word{}, c);
        for (auto id : w) {
            if (gens.is_m(id) && gens.base_of(id) == unit_base) continue;
            if (!gens.is_m(id)) {
                auto it = red.substitution.find(gens.base_of(id));
                if (it != red.substitution.end()) {
                    acc = acc * it->second;
                    continue;
                }
            }
            acc = acc * NCPoly::term(Word{id}, Scalar::one(*field));
        }
        out += acc;
    }
    return out;
}

/// Spans u * r * v over all paddings that keep every term inside the window.
/// Words run over the reduced generator set (no unit letter, no dependent H
/// letters) and the relation instances are pre-eliminated accordingly; with
/// the raw alphabet, words holding a dependent letter have no in-window
/// reduction and the window quotient could not match any generator-reduced
/// model of the enveloping algebra.
IdealWindow build_ideal_window(const DGPoissonData& a, const RelationSet& rels,
                               const HReduction& red, std::uint32_t max_len,
                               std::uint64_t guard) {
    std::vector<std::uint32_t> letters;
    for (std::uint32_t id = 0; id < rels.gens.count(); ++id) {
        if (rels.gens.is_m(id) && rels.gens.base_of(id) == a.algebra.unit) continue;
        if (!rels.gens.is_m(id) && red.substitution.count(rels.gens.base_of(id))) continue;
        letters.push_back(id);
    }

    IdealWindow win{all_words(letters, max_len, guard),
                    {},
                    RowReducer(a.field(), /*pivot_largest=*/true)};
    for (std::uint32_t i = 0; i < win.words.size(); ++i) win.index.emplace(win.words[i], i);

    // words grouped by length for padding enumeration
    std::vector<std::vector<const Word*>> by_len(max_len + 1);
    for (const auto& w : win.words) by_len[w.size()].push_back(&w);

    auto add_spans = [&](const NCPoly& poly) {
        if (poly.is_zero()) return;
        const auto rlen = static_cast<std::uint32_t>(poly.max_word_len());
        if (rlen > max_len) return;
        for (std::uint32_t ul = 0; ul + rlen <= max_len; ++ul)
            for (std::uint32_t vl = 0; ul + rlen + vl <= max_len; ++vl)
                for (const Word* u : by_len[ul])
                    for (const Word* v : by_len[vl]) {
                        NCPoly padded = NCPoly::term(*u, Scalar::one(a.field())) * poly *
                                        NCPoly::term(*v, Scalar::one(a.field()));
                        win.reducer.add_row(poly_row(win.index, padded));
                    }
    };
    for (const auto& rel : rels.relations)
        add_spans(eliminate_letters(rels.gens, a.algebra.unit, red, rel.poly));
    return win;
}

} // namespace

UETruncation ideal_quotient_oracle(const DGPoissonData& a, std::uint32_t max_len) {
    if (max_len < 1) throw precondition_error("truncation window needs max_len >= 1");
    if (!a.algebra.product.is_total() || !a.lie.bracket.is_total())
        throw incomplete_table_error("enveloping computations require complete tables");
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = !a.algebra.commutative;
    VerificationReport rep = verify_dg_poisson(a, opts);
    if (!rep.pass())
        throw precondition_error("algebra fails verification",
                                 rep.violations.front().to_string());

    const Field& F = a.field();
    const std::uint64_t guard = size_guard_limit();
    RelationSet rels = build_relations(a);
    HReduction red = reduce_h_generators(a);
    IdealWindow win = build_ideal_window(a, rels, red, max_len, guard);

    UETruncation t{F,  rels.gens, max_len, {}, {}, {}, {},
                   UETruncation::Provenance::oracle, std::nullopt, {}};
    // representatives: the non-pivot words, in shortlex order
    for (std::uint32_t i = 0; i < win.words.size(); ++i)
        if (!win.reducer.has_pivot(i)) {
            t.index.emplace(win.words[i], static_cast<std::uint32_t>(t.basis.size()));
            t.basis.push_back(win.words[i]);
        }
    std::map<std::uint32_t, std::uint32_t> col_to_rep;
    for (std::uint32_t i = 0; i < win.words.size(); ++i) {
        auto it = t.index.find(win.words[i]);
        if (it != t.index.end()) col_to_rep.emplace(i, it->second);
    }

    // Substitution of dependent letters can grow words past the window, in
    // which case the entry is an overflow, not a value.
    auto reduce_to_reps = [&](const NCPoly& p) -> std::optional<UETruncation::QVec> {
        NCPoly eliminated = eliminate_letters(rels.gens, a.algebra.unit, red, p);
        if (eliminated.max_word_len() > max_len) return std::nullopt;
        SparseVec row = win.reducer.reduce(poly_row(win.index, eliminated));
        UETruncation::QVec v;
        for (const auto& [col, c] : row) v.emplace(col_to_rep.at(col), c);
        return v;
    };

    const auto dim = static_cast<std::uint32_t>(t.basis.size());
    t.product.assign(dim, std::vector<std::optional<UETruncation::QVec>>(dim));
    for (std::uint32_t i = 0; i < dim; ++i)
        for (std::uint32_t j = 0; j < dim; ++j) {
            if (t.basis[i].size() + t.basis[j].size() > max_len) continue; // overflow
            Word w = t.basis[i];
            w.insert(w.end(), t.basis[j].begin(), t.basis[j].end());
            t.product[i][j] = reduce_to_reps(NCPoly::term(std::move(w), Scalar::one(F)));
        }

    t.diff.assign(dim, std::nullopt);
    for (std::uint32_t i = 0; i < dim; ++i)
        t.diff[i] = reduce_to_reps(
            free_differential(a, t.gens, NCPoly::term(t.basis[i], Scalar::one(F))));

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
                Scalar w = (it == acc.end() ? Scalar::zero(F) : it->second) + c * v;
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
    for (const auto& r : rels.relations) {
        NCPoly eliminated = eliminate_letters(rels.gens, a.algebra.unit, red, r.poly);
        auto reduced = reduce_to_reps(eliminated);
        if (!reduced) {
            ++t.diagnostics.relations_deferred;
            continue;
        }
        ++t.diagnostics.relations_checked;
        if (!reduced->empty())
            t.diagnostics.failures.push_back(std::string("relation ") + clause_name(r.clause) +
                                             " survives the quotient");
    }

    // Stability: I_{L+1} cap V_L = I_L. With shortlex columns and largest-word
    // pivots, a pivot row whose pivot has length <= L lies entirely in V_L.
    try {
        IdealWindow next = build_ideal_window(a, rels, red, max_len + 1, guard);
        std::size_t pivots_in_window = 0;
        for (const auto& [col, row] : next.reducer.rows())
            if (next.words[col].size() <= max_len) ++pivots_in_window;
        t.stable = (pivots_in_window == win.reducer.rank());
    } catch (const size_guard_error&) {
        t.stable = std::nullopt; // window + 1 is too large to decide
    }
    return t;
}

} // namespace dgpa
