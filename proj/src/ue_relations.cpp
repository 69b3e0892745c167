#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "dgpa/ue.hpp"
#include "ue_internal.hpp"

namespace dgpa {

namespace detail {

NCPoly m_expand_raw(const GenSet& gens, const Element& e) {
    NCPoly p;
    for (const auto& [z, c] : e.coeffs()) p.add_term(Word{gens.m_id(z)}, c);
    return p;
}

NCPoly h_expand_raw(const GenSet& gens, const Element& e) {
    NCPoly p;
    for (const auto& [z, c] : e.coeffs()) p.add_term(Word{gens.h_id(z)}, c);
    return p;
}

NCPoly collapse_unit(const GenSet& gens, std::uint32_t unit_base, const NCPoly& p) {
    const std::uint32_t unit_letter = gens.m_id(unit_base);
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        Word r;
        for (auto id : w)
            if (id != unit_letter) r.push_back(id);
        out.add_term(std::move(r), c);
    }
    return out;
}

NCPoly m_collapse(const DGPoissonData& a, const GenSet& gens, const NCPoly& p) {
    const std::uint32_t unit_letter = gens.m_id(a.algebra.unit);
    NCPoly cur = collapse_unit(gens, a.algebra.unit, p);
    for (;;) {
        bool changed = false;
        NCPoly next;
        for (const auto& [w, c] : cur.terms()) {
            std::size_t pos = w.size();
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                if (gens.is_m(w[i]) && gens.is_m(w[i + 1])) {
                    pos = i;
                    break;
                }
            if (pos == w.size()) {
                next.add_term(w, c);
                continue;
            }
            changed = true;
            Element prod = a.algebra.product.entry(w[pos], w[pos + 1]);
            for (const auto& [z, cz] : prod.coeffs()) {
                Word r(w.begin(), w.begin() + pos);
                if (gens.m_id(z) != unit_letter) r.push_back(gens.m_id(z));
                r.insert(r.end(), w.begin() + pos + 2, w.end());
                next.add_term(std::move(r), c * cz);
            }
        }
        cur = std::move(next);
        if (!changed) return cur;
    }
}

} // namespace detail

using detail::collapse_unit;
using detail::h_expand_raw;
using detail::m_expand_raw;

const char* clause_name(UEClause c) {
    switch (c) {
    case UEClause::i: return "(i)";
    case UEClause::ii: return "(ii)";
    case UEClause::iii: return "(iii)";
    case UEClause::iv: return "(iv)";
    case UEClause::v: return "(v)";
    }
    return "?";
}

RelationSet build_relations(const DGPoissonData& a) {
    const Field& F = a.field();
    const GradedSpace& sp = a.space();
    const long long p = a.p();
    const auto n = static_cast<std::uint32_t>(sp.dim());
    RelationSet out{GenSet(sp, p), {}, 0};
    const GenSet& gens = out.gens;

    auto push = [&](UEClause clause, std::uint32_t i, std::uint32_t j, NCPoly poly) {
        if (poly.is_zero()) return;
        if (!poly.homogeneous_degree(gens))
            throw value_error("relation instance is not homogeneous");
        out.relations.push_back({clause, i, j, std::move(poly)});
    };

    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            long long di = sp.degree(i), dj = sp.degree(j);
            // (i) M_{ab} = M_a M_b
            try {
                NCPoly poly = m_expand_raw(gens, a.algebra.product.entry(i, j));
                poly.add_term(Word{gens.m_id(i), gens.m_id(j)}, Scalar::of_int(F, -1));
                push(UEClause::i, i, j, std::move(poly));
            } catch (const truncation_overflow_error&) {
                ++out.skipped;
            }
            // (ii) H_{{a,b}} = H_a H_b - (-1)^{(|a|+p)(|b|+p)} H_b H_a
            try {
                NCPoly poly = h_expand_raw(gens, a.lie.bracket.entry(i, j));
                poly.add_term(Word{gens.h_id(i), gens.h_id(j)}, Scalar::of_int(F, -1));
                poly.add_term(Word{gens.h_id(j), gens.h_id(i)},
                              koszul_sign(F, di + p, dj + p));
                push(UEClause::ii, i, j, std::move(poly));
            } catch (const truncation_overflow_error&) {
                ++out.skipped;
            }
            // (iii) H_{ab} = M_a H_b + (-1)^{|a||b|} M_b H_a
            try {
                NCPoly poly = h_expand_raw(gens, a.algebra.product.entry(i, j));
                poly.add_term(Word{gens.m_id(i), gens.h_id(j)}, Scalar::of_int(F, -1));
                poly.add_term(Word{gens.m_id(j), gens.h_id(i)}, -koszul_sign(F, di, dj));
                push(UEClause::iii, i, j, std::move(poly));
            } catch (const truncation_overflow_error&) {
                ++out.skipped;
            }
            // (iv) M_{{a,b}} = H_a M_b - (-1)^{(|a|+p)|b|} M_b H_a
            try {
                NCPoly poly = m_expand_raw(gens, a.lie.bracket.entry(i, j));
                poly.add_term(Word{gens.h_id(i), gens.m_id(j)}, Scalar::of_int(F, -1));
                poly.add_term(Word{gens.m_id(j), gens.h_id(i)}, koszul_sign(F, di + p, dj));
                push(UEClause::iv, i, j, std::move(poly));
            } catch (const truncation_overflow_error&) {
                ++out.skipped;
            }
        }
    // (v) M_1 = 1
    NCPoly unit_rel = NCPoly::term(Word{gens.m_id(a.algebra.unit)}, Scalar::one(F));
    unit_rel.add_term(Word{}, Scalar::of_int(F, -1));
    out.relations.push_back({UEClause::v, a.algebra.unit, a.algebra.unit, std::move(unit_rel)});
    return out;
}

NCPoly free_differential(const DGPoissonData& a, const GenSet& gens, const NCPoly& p) {
    const Field& F = a.field();
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        long long prefix_deg = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Element& dx = a.algebra.differential.image(gens.base_of(w[i]));
            NCPoly mid = gens.is_m(w[i]) ? m_expand_raw(gens, dx) : h_expand_raw(gens, dx);
            for (const auto& [mw, mc] : mid.terms()) {
                Word r(w.begin(), w.begin() + i);
                r.insert(r.end(), mw.begin(), mw.end());
                r.insert(r.end(), w.begin() + i + 1, w.end());
                out.add_term(std::move(r),
                             c * mc * Scalar::of_int(F, parity_sign_int(prefix_deg)));
            }
            prefix_deg += gens.degree(w[i]);
        }
    }
    return out;
}

HReduction reduce_h_generators(const DGPoissonData& a) {
    if (!a.algebra.product.is_total())
        throw incomplete_table_error(
            "H-generator elimination requires a complete product table");
    const Field& F = a.field();
    const GradedSpace& sp = a.space();
    const auto n = static_cast<std::uint32_t>(sp.dim());
    HReduction out;
    out.gens = GenSet(sp, a.p());
    const GenSet& gens = out.gens;

    struct Row {
        std::map<std::uint32_t, Scalar> linear; // basis index -> coefficient
        NCPoly rest;                            // words of length >= 2
    };
    std::vector<Row> pivots;                       // normalized, pivot coeff 1
    std::map<std::uint32_t, std::size_t> pivot_of; // basis index -> row

    auto reduce_row = [&](Row r) {
        for (;;) {
            std::uint32_t piv = 0;
            bool found = false;
            for (auto it = r.linear.rbegin(); it != r.linear.rend(); ++it)
                if (pivot_of.count(it->first)) {
                    piv = it->first;
                    found = true;
                    break;
                }
            if (!found) return r;
            const Row& p = pivots[pivot_of.at(piv)];
            Scalar c = r.linear.at(piv);
            for (const auto& [z, v] : p.linear) {
                auto it = r.linear.find(z);
                Scalar w = (it == r.linear.end() ? Scalar::zero(F) : it->second) - c * v;
                if (w.is_zero())
                    r.linear.erase(z);
                else
                    r.linear[z] = w;
            }
            r.rest += p.rest.scaled(-c);
        }
    };

    std::vector<NCPoly> residual_raw;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            NCPoly poly = h_expand_raw(gens, a.algebra.product.entry(i, j));
            poly.add_term(Word{gens.m_id(i), gens.h_id(j)}, Scalar::of_int(F, -1));
            poly.add_term(Word{gens.m_id(j), gens.h_id(i)},
                          -koszul_sign(F, sp.degree(i), sp.degree(j)));
            poly = collapse_unit(gens, a.algebra.unit, poly);
            Row row;
            for (const auto& [w, c] : poly.terms()) {
                if (w.size() == 1 && !gens.is_m(w[0]))
                    row.linear[gens.base_of(w[0])] = c;
                else
                    row.rest.add_term(w, c);
            }
            row = reduce_row(std::move(row));
            if (row.linear.empty()) {
                if (!row.rest.is_zero()) residual_raw.push_back(std::move(row.rest));
                continue;
            }
            std::uint32_t piv = row.linear.rbegin()->first; // largest basis index
            Scalar lead = row.linear.at(piv);
            Scalar inv = Scalar::one(F) / lead;
            for (auto& [z, c] : row.linear) c *= inv;
            row.rest = row.rest.scaled(inv);
            // back-eliminate the new pivot from stored rows
            for (auto& stored : pivots) {
                auto hit = stored.linear.find(piv);
                if (hit == stored.linear.end()) continue;
                Scalar c = hit->second;
                for (const auto& [z, v] : row.linear) {
                    auto it = stored.linear.find(z);
                    Scalar w = (it == stored.linear.end() ? Scalar::zero(F) : it->second) - c * v;
                    if (w.is_zero())
                        stored.linear.erase(z);
                    else
                        stored.linear[z] = w;
                }
                stored.rest += row.rest.scaled(-c);
            }
            pivot_of[piv] = pivots.size();
            pivots.push_back(std::move(row));
        }

    // Raw expressions for the dependent letters: H_piv = -(tail + rest).
    std::map<std::uint32_t, NCPoly> expr;
    for (const auto& [piv, idx] : pivot_of) {
        const Row& row = pivots[idx];
        NCPoly e = -row.rest;
        for (const auto& [z, c] : row.linear)
            if (z != piv) e.add_term(Word{gens.h_id(z)}, -c);
        expr.emplace(piv, std::move(e));
    }

    // Fixpoint substitution in dependency order; a cycle is a hard error.
    auto deps_of = [&](const NCPoly& e) {
        std::vector<std::uint32_t> deps;
        for (const auto& [w, c] : e.terms())
            for (auto id : w)
                if (!gens.is_m(id) && pivot_of.count(gens.base_of(id)))
                    deps.push_back(gens.base_of(id));
        std::sort(deps.begin(), deps.end());
        deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
        return deps;
    };
    std::vector<std::uint32_t> order;
    std::map<std::uint32_t, int> state; // 0 new, 1 visiting, 2 done
    std::function<void(std::uint32_t, std::vector<std::uint32_t>&)> visit =
        [&](std::uint32_t z, std::vector<std::uint32_t>& chain) {
            if (state[z] == 2) return;
            if (state[z] == 1) {
                std::ostringstream os;
                for (auto c : chain) os << "H_" << sp.name(c) << " -> ";
                os << "H_" << sp.name(z);
                throw cycle_error("H-generator substitution does not terminate", os.str());
            }
            state[z] = 1;
            chain.push_back(z);
            for (auto d : deps_of(expr.at(z))) visit(d, chain);
            chain.pop_back();
            state[z] = 2;
            order.push_back(z);
        };
    for (const auto& [z, idx] : pivot_of) {
        std::vector<std::uint32_t> chain;
        visit(z, chain);
    }

    auto substitute = [&](const NCPoly& p, const std::map<std::uint32_t, NCPoly>& done) {
        NCPoly out_poly;
        for (const auto& [w, c] : p.terms()) {
            NCPoly acc = NCPoly::term(Word{}, c);
            for (auto id : w) {
                NCPoly letter = NCPoly::term(Word{id}, Scalar::one(F));
                if (!gens.is_m(id)) {
                    auto it = done.find(gens.base_of(id));
                    if (it != done.end()) letter = it->second;
                }
                acc = acc * letter;
            }
            out_poly += acc;
        }
        return out_poly;
    };

    for (auto z : order) {
        NCPoly e = substitute(expr.at(z), out.substitution);
        out.substitution[z] = detail::m_collapse(a, gens, e);
    }
    for (auto& r : residual_raw) {
        NCPoly e = detail::m_collapse(a, gens, substitute(r, out.substitution));
        if (!e.is_zero()) out.residual.push_back(std::move(e));
    }
    for (std::uint32_t z = 0; z < n; ++z)
        if (!pivot_of.count(z)) out.free_h.push_back(z);
    return out;
}

std::uint64_t size_guard_limit() {
    if (const char* env = std::getenv("DGPA_SIZE_GUARD")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 200000;
}

} // namespace dgpa
