#include <set>

#include "dgpa/ue.hpp"
#include "ue_internal.hpp"

namespace dgpa {

using detail::h_expand_raw;
using detail::m_expand_raw;

struct UERewriter::Impl {
    explicit Impl(const DGPoissonData& a, RewriteOptions o)
        : algebra(a), gens(a.space(), a.p()), red(reduce_h_generators(a)), opts(o),
          field(a.field()), unit_base(a.algebra.unit) {
        build_rules();
    }

    DGPoissonData algebra;
    GenSet gens;
    HReduction red;
    RewriteOptions opts;
    Field field;
    std::uint32_t unit_base;
    std::set<std::uint32_t> dependent; // H bases carrying a substitution

    std::map<std::pair<std::uint32_t, std::uint32_t>, NCPoly> mm, hm, hh;
    std::map<Word, NCPoly, ShortLex> residual;
    mutable std::map<Word, NCPoly, ShortLex> memo;

    /// M letter as a poly; the unit letter is the empty word.
    NCPoly m_letter(std::uint32_t base, const Scalar& c) const {
        if (base == unit_base) return NCPoly::term(Word{}, c);
        return NCPoly::term(Word{gens.m_id(base)}, c);
    }

    NCPoly m_expand(const Element& e) const {
        NCPoly p;
        for (const auto& [z, c] : e.coeffs()) p += m_letter(z, c);
        return p;
    }

    /// H letters with dependent generators replaced by their expressions.
    NCPoly h_expand(const Element& e) const {
        NCPoly p;
        for (const auto& [z, c] : e.coeffs()) {
            auto it = red.substitution.find(z);
            if (it != red.substitution.end())
                p += it->second.scaled(c);
            else
                p.add_term(Word{gens.h_id(z)}, c);
        }
        return p;
    }

    void build_rules() {
        const Field& F = field;
        const GradedSpace& sp = algebra.space();
        const long long p = algebra.p();
        const auto n = static_cast<std::uint32_t>(sp.dim());
        for (const auto& [z, e] : red.substitution) dependent.insert(z);

        for (std::uint32_t x = 0; x < n; ++x) {
            if (x == unit_base) continue;
            for (std::uint32_t y = 0; y < n; ++y) {
                if (y == unit_base) continue;
                mm[{x, y}] = m_expand(algebra.algebra.product.entry(x, y));
            }
        }
        for (std::uint32_t x = 0; x < n; ++x) {
            if (dependent.count(x)) continue;
            for (std::uint32_t y = 0; y < n; ++y) {
                if (y == unit_base) continue;
                NCPoly rhs = m_expand(algebra.lie.bracket.entry(x, y));
                rhs.add_term(Word{gens.m_id(y), gens.h_id(x)},
                             koszul_sign(F, sp.degree(x) + p, sp.degree(y)));
                hm[{x, y}] = std::move(rhs);
            }
        }
        for (std::uint32_t x = 0; x < n; ++x) {
            if (dependent.count(x)) continue;
            for (std::uint32_t y = 0; y < n; ++y) {
                if (dependent.count(y)) continue;
                if (x > y) {
                    NCPoly rhs = h_expand(algebra.lie.bracket.entry(x, y));
                    rhs.add_term(Word{gens.h_id(y), gens.h_id(x)},
                                 koszul_sign(F, sp.degree(x) + p, sp.degree(y) + p));
                    hh[{x, y}] = std::move(rhs);
                } else if (x == y && ((sp.degree(x) + p) & 1) &&
                           !opts.disable_odd_square_rule) {
                    hh[{x, x}] = h_expand(algebra.lie.bracket.entry(x, x))
                                     .scaled(Scalar::ratio(F, 1, 2));
                }
            }
        }
        // Residual identities become rules oriented at their largest word.
        for (const auto& r : red.residual) {
            NCPoly nf = reduce_poly(r, r.max_word_len());
            if (nf.is_zero()) continue;
            auto lead = std::prev(nf.terms().end());
            Word lhs = lead->first;
            Scalar c = lead->second;
            NCPoly rest;
            for (const auto& [w, v] : nf.terms())
                if (!(w == lhs)) rest.add_term(w, v);
            residual.emplace(std::move(lhs), rest.scaled(-(Scalar::one(F) / c)));
        }
        memo.clear(); // rule set is now final; cached forms must use all rules
    }

    /// First redex at or after position i in w; kind 0 = none.
    struct Redex {
        int kind = 0; // 1 pair rule, 2 residual, 3 eliminated letter
        std::size_t pos = 0, len = 0;
        const NCPoly* rhs = nullptr;
    };

    Redex find_redex(const Word& w) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint32_t id = w[i];
            std::uint32_t base = gens.base_of(id);
            if (gens.is_m(id) && base == unit_base) return {3, i, 1, nullptr};
            if (!gens.is_m(id) && dependent.count(base)) return {3, i, 1, nullptr};
            if (i + 1 < w.size()) {
                std::uint32_t id2 = w[i + 1];
                std::uint32_t base2 = gens.base_of(id2);
                if (gens.is_m(id) && gens.is_m(id2)) {
                    auto it = mm.find({base, base2});
                    if (it != mm.end()) return {1, i, 2, &it->second};
                } else if (!gens.is_m(id) && gens.is_m(id2)) {
                    auto it = hm.find({base, base2});
                    if (it != hm.end()) return {1, i, 2, &it->second};
                } else if (!gens.is_m(id) && !gens.is_m(id2)) {
                    auto it = hh.find({base, base2});
                    if (it != hh.end()) return {1, i, 2, &it->second};
                }
            }
            for (const auto& [lhs, rhs] : residual) {
                if (lhs.size() > w.size() - i) continue;
                if (std::equal(lhs.begin(), lhs.end(), w.begin() + i))
                    return {2, i, lhs.size(), &rhs};
            }
        }
        return {};
    }

    NCPoly subst_letter(std::uint32_t id) const {
        std::uint32_t base = gens.base_of(id);
        if (gens.is_m(id) && base == unit_base) return NCPoly::unit(field);
        auto it = red.substitution.find(base);
        if (!gens.is_m(id) && it != red.substitution.end()) return it->second;
        return NCPoly::term(Word{id}, Scalar::one(field));
    }

    NCPoly reduce_word(const Word& w, std::uint32_t max_len) const {
        if (w.size() > max_len)
            throw truncation_overflow_error("word " + word_name(gens, w) +
                                            " exceeds the rewrite window");
        auto cached = memo.find(w);
        if (cached != memo.end()) return cached->second;
        Redex rx = find_redex(w);
        NCPoly out;
        if (rx.kind == 0) {
            out = NCPoly::term(w, Scalar::one(field));
        } else {
            NCPoly mid = rx.kind == 3 ? subst_letter(w[rx.pos]) : *rx.rhs;
            for (const auto& [mw, mc] : mid.terms()) {
                Word next(w.begin(), w.begin() + rx.pos);
                next.insert(next.end(), mw.begin(), mw.end());
                next.insert(next.end(), w.begin() + rx.pos + rx.len, w.end());
                out += reduce_word(next, max_len).scaled(mc);
            }
        }
        memo.emplace(w, out);
        return out;
    }

    NCPoly reduce_poly(const NCPoly& p, std::uint32_t max_len) const {
        NCPoly out;
        for (const auto& [w, c] : p.terms()) out += reduce_word(w, max_len).scaled(c);
        return out;
    }
};

UERewriter::UERewriter(const DGPoissonData& a, RewriteOptions opts) {
    if (!a.algebra.product.is_total() || !a.lie.bracket.is_total())
        throw incomplete_table_error("rewriting requires complete structure tables");
    impl_ = std::make_unique<Impl>(a, opts);
}

UERewriter::~UERewriter() = default;
UERewriter::UERewriter(UERewriter&&) noexcept = default;
UERewriter& UERewriter::operator=(UERewriter&&) noexcept = default;

const GenSet& UERewriter::gens() const { return impl_->gens; }
const HReduction& UERewriter::reduction() const { return impl_->red; }

NCPoly UERewriter::expand_eliminated(const NCPoly& p, std::uint32_t max_len) const {
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        NCPoly acc = NCPoly::term(Word{}, c);
        for (auto id : w) acc = acc * impl_->subst_letter(id);
        for (const auto& [rw, rc] : acc.terms())
            if (rw.size() > max_len)
                throw truncation_overflow_error("word " + word_name(impl_->gens, rw) +
                                                " exceeds the rewrite window");
        out += acc;
    }
    return out;
}

NCPoly UERewriter::normal_form(const NCPoly& p, std::uint32_t max_len) const {
    return impl_->reduce_poly(expand_eliminated(p, max_len), max_len);
}

bool UERewriter::word_irreducible(const Word& w) const {
    return impl_->find_redex(w).kind == 0;
}

std::vector<Word> UERewriter::canonical_words(std::uint32_t max_len) const {
    const GenSet& gens = impl_->gens;
    const std::uint64_t guard = size_guard_limit();
    std::vector<Word> out{Word{}};

    // Irreducible shape: optional leading M letter, then a nondecreasing run
    // of free H letters with odd-parity letters square-free; then residual
    // left-hand sides are excluded.
    std::vector<Word> current{Word{}};
    for (std::uint32_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : current) {
            std::uint32_t first_allowed = 0;
            if (w.empty()) {
                first_allowed = 0;
            } else if (gens.is_m(w.back())) {
                first_allowed = gens.h_id(0);
            } else {
                first_allowed = w.back();
            }
            for (std::uint32_t id = first_allowed; id < gens.count(); ++id) {
                std::uint32_t base = gens.base_of(id);
                if (gens.is_m(id)) {
                    if (!w.empty()) continue;
                    if (base == impl_->unit_base) continue;
                } else if (impl_->dependent.count(base)) {
                    continue;
                }
                Word ext = w;
                ext.push_back(id);
                // word_irreducible owns the actual rule set (odd squares,
                // residual left-hand sides); reducible prefixes never extend
                // to irreducible words, so pruning here is sound.
                if (!word_irreducible(ext)) continue;
                next.push_back(std::move(ext));
            }
        }
        std::sort(next.begin(), next.end());
        for (const auto& w : next) out.push_back(w);
        if (out.size() > guard)
            throw size_guard_error("canonical basis exceeds the size guard (" +
                                   std::to_string(guard) + "); raise DGPA_SIZE_GUARD");
        current = std::move(next);
        if (current.empty()) break;
    }
    return out;
}

} // namespace dgpa
