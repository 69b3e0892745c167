#include "dgpa/construct.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dgpa {

namespace {

// ---------------------------------------------------------------------------
// graded-commutative monomial machinery (symmetric and exterior algebras)
// ---------------------------------------------------------------------------

using Monomial = std::vector<std::uint32_t>;

struct MonomialCtx {
    explicit MonomialCtx(Field f) : field(std::move(f)) {}

    Field field;
    std::vector<std::string> gen_names;
    std::vector<long long> gen_degrees; // degrees driving signs and the grading
    unsigned max_len = 0;
    std::vector<Monomial> monomials; // (length, lex) order; index 0 is the unit
    GradedSpace space;
    std::map<Monomial, std::uint32_t> index;

    long long mono_degree(const Monomial& m) const {
        long long d = 0;
        for (auto g : m) d += gen_degrees[g];
        return d;
    }

    std::string mono_name(const Monomial& m) const {
        if (m.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) s += "*";
            s += gen_names[m[i]];
        }
        return s;
    }

    /// Sorts a generator sequence, accumulating Koszul transposition signs.
    /// Returns nullopt when an odd-degree generator repeats.
    std::optional<std::pair<int, Monomial>> normalize(Monomial seq) const {
        int sign = 1;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            std::size_t j = i;
            while (j > 0 && seq[j] < seq[j - 1]) {
                sign *= koszul_sign_int(gen_degrees[seq[j]], gen_degrees[seq[j - 1]]);
                std::swap(seq[j], seq[j - 1]);
                --j;
            }
        }
        for (std::size_t i = 1; i < seq.size(); ++i)
            if (seq[i] == seq[i - 1] && (gen_degrees[seq[i]] & 1)) return std::nullopt;
        return std::make_pair(sign, std::move(seq));
    }

    Element mono_elem(const Monomial& m, const Scalar& c) const {
        auto it = index.find(m);
        if (it == index.end())
            throw truncation_overflow_error("monomial " + mono_name(m) +
                                            " exceeds the truncation window");
        return Element::basis(space, it->second, c);
    }

    /// Product of two monomials; throws on window overflow of a nonzero result.
    Element mono_mul(const Monomial& u, const Monomial& v, const Scalar& c) const {
        Monomial seq = u;
        seq.insert(seq.end(), v.begin(), v.end());
        auto norm = normalize(std::move(seq));
        if (!norm) return Element(space);
        if (norm->second.size() > max_len)
            throw truncation_overflow_error("product " + mono_name(norm->second) +
                                            " exceeds the truncation window");
        return mono_elem(norm->second, c * Scalar::of_int(field, norm->first));
    }

    Element mul_elem(const Element& a, const Element& b) const {
        Element out(space);
        for (const auto& [i, ca] : a.coeffs())
            for (const auto& [j, cb] : b.coeffs())
                out += mono_mul(monomials[i], monomials[j], ca * cb);
        return out;
    }
};

MonomialCtx build_monomial_ctx(const Field& field, std::vector<std::string> names,
                               std::vector<long long> degrees, unsigned max_len) {
    MonomialCtx ctx(field);
    ctx.gen_names = std::move(names);
    ctx.gen_degrees = std::move(degrees);
    ctx.max_len = max_len;

    const auto n = static_cast<std::uint32_t>(ctx.gen_names.size());
    std::vector<Monomial> current{Monomial{}};
    ctx.monomials.push_back(Monomial{});
    for (unsigned len = 1; len <= max_len; ++len) {
        std::vector<Monomial> next;
        for (const auto& m : current) {
            std::uint32_t start = m.empty() ? 0 : m.back();
            for (std::uint32_t g = start; g < n; ++g) {
                if (!m.empty() && m.back() == g && (ctx.gen_degrees[g] & 1))
                    continue; // odd generators are square-free
                Monomial ext = m;
                ext.push_back(g);
                next.push_back(std::move(ext));
            }
        }
        std::sort(next.begin(), next.end());
        for (auto& m : next) ctx.monomials.push_back(m);
        current = std::move(next);
        if (current.empty()) break;
    }

    std::vector<BasisSymbol> symbols;
    symbols.reserve(ctx.monomials.size());
    for (std::uint32_t i = 0; i < ctx.monomials.size(); ++i) {
        symbols.push_back({ctx.mono_name(ctx.monomials[i]), ctx.mono_degree(ctx.monomials[i])});
        ctx.index.emplace(ctx.monomials[i], i);
    }
    ctx.space = GradedSpace(std::move(symbols));
    return ctx;
}

/// Biderivation extension of a generator-level bracket to monomials:
/// {x·u, v} = x{u,v} + (-1)^{|x||u|} u{x,v} on the first slot and the Poisson
/// identity on the second.
Element bider_bracket(const MonomialCtx& ctx, long long p,
                      const std::function<Element(std::uint32_t, std::uint32_t)>& genbr,
                      const Monomial& u, const Monomial& v) {
    const Field& F = ctx.field;
    if (u.empty() || v.empty()) return Element(ctx.space);
    if (u.size() == 1) {
        std::uint32_t x = u[0];
        if (v.size() == 1) return genbr(x, v[0]);
        std::uint32_t y = v[0];
        Monomial vr(v.begin() + 1, v.end());
        Element t1 = ctx.mul_elem(genbr(x, y), ctx.mono_elem(vr, Scalar::one(F)));
        Element t2 = ctx.mul_elem(ctx.mono_elem(Monomial{y}, Scalar::one(F)),
                                  bider_bracket(ctx, p, genbr, u, vr))
                         .scaled(koszul_sign(F, ctx.gen_degrees[x] + p, ctx.gen_degrees[y]));
        return t1 + t2;
    }
    std::uint32_t x = u[0];
    Monomial ur(u.begin() + 1, u.end());
    Element t1 = ctx.mul_elem(ctx.mono_elem(Monomial{x}, Scalar::one(F)),
                              bider_bracket(ctx, p, genbr, ur, v));
    Element t2 = ctx.mul_elem(ctx.mono_elem(ur, Scalar::one(F)),
                              bider_bracket(ctx, p, genbr, Monomial{x}, v))
                     .scaled(koszul_sign(F, ctx.gen_degrees[x], ctx.mono_degree(ur)));
    return t1 + t2;
}

/// Leibniz extension of a generator differential to monomials.
Element mono_differential(const MonomialCtx& ctx,
                          const std::function<const Element&(std::uint32_t)>& dgen,
                          const GradedSpace& gen_space, const Monomial& m) {
    const Field& F = ctx.field;
    Element out(ctx.space);
    long long prefix = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Element& dg = dgen(m[i]);
        for (const auto& [z, c] : dg.coeffs()) {
            Monomial seq = m;
            seq[i] = z;
            auto norm = ctx.normalize(std::move(seq));
            if (!norm) continue;
            out += ctx.mono_elem(norm->second,
                                 c * Scalar::of_int(F, norm->first * parity_sign_int(prefix)));
        }
        prefix += ctx.gen_degrees[m[i]];
        (void)gen_space;
    }
    return out;
}

Element tensor_embed(const GradedSpace& t, const GradedSpace& right, const Element& ea,
                     const Element& eb, const Scalar& scale) {
    Element out(t);
    if (scale.is_zero()) return out;
    for (const auto& [i, ca] : ea.coeffs())
        for (const auto& [j, cb] : eb.coeffs())
            out.add_term(tensor_index(t, right, i, j), ca * cb * scale);
    return out;
}

/// Displayed contraction-sum bracket on exterior monomials.
Element exterior_bracket_displayed_impl(const MonomialCtx& ctx, const DGLieData& l,
                                        const Monomial& u, const Monomial& v) {
    const Field& F = ctx.field;
    Element out(ctx.space);
    Monomial seq = u;
    seq.insert(seq.end(), v.begin(), v.end());
    const std::size_t lu = u.size();
    for (std::size_t j = 0; j < lu; ++j)
        for (std::size_t k = lu; k < seq.size(); ++k) {
            Element br = l.bracket.entry(seq[j], seq[k]);
            if (br.is_zero()) continue;
            Monomial rest;
            for (std::size_t t = 0; t < seq.size(); ++t)
                if (t != j && t != k) rest.push_back(seq[t]);
            // (-1)^{|u|} (-1)^{j+k} with 1-based j,k; the +2 shift cancels mod 2.
            int outer = parity_sign_int(static_cast<long long>(lu)) *
                        parity_sign_int(static_cast<long long>(j + k));
            for (const auto& [z, c] : br.coeffs()) {
                Monomial full;
                full.push_back(z);
                full.insert(full.end(), rest.begin(), rest.end());
                auto norm = ctx.normalize(std::move(full));
                if (!norm) continue;
                out += ctx.mono_elem(norm->second,
                                     c * Scalar::of_int(F, outer * norm->first));
            }
        }
    return out;
}

MonomialCtx exterior_ctx(const DGLieData& l) {
    std::vector<std::string> names;
    std::vector<long long> degrees(l.space.dim(), 1); // grading by word length
    for (std::uint32_t i = 0; i < l.space.dim(); ++i) names.push_back(l.space.name(i));
    return build_monomial_ctx(l.field, std::move(names), std::move(degrees),
                              static_cast<unsigned>(l.space.dim()));
}

void require_ordinary_lie(const DGLieData& l) {
    if (l.bracket_degree != 0)
        throw precondition_error("expected an ordinary Lie algebra with bracket degree 0");
    if (!l.differential.is_zero())
        throw precondition_error("expected an ordinary Lie algebra with zero differential");
    for (std::uint32_t i = 0; i < l.space.dim(); ++i)
        if (l.space.degree(i) != 0)
            throw precondition_error("expected an ordinary Lie algebra concentrated in degree 0");
    auto rep = verify_dg_lie(l);
    if (!rep.pass())
        throw precondition_error("Lie algebra fails verification",
                                 rep.violations.front().to_string());
}

} // namespace

// ---------------------------------------------------------------------------
// opposite and tensor
// ---------------------------------------------------------------------------

DGPoissonData opposite(const DGPoissonData& a) {
    DGLieData lie(a.field(), a.space(), a.lie.bracket.negated(), a.p(), a.lie.differential);
    return DGPoissonData(a.algebra, std::move(lie));
}

DGPoissonData tensor(const DGPoissonData& a, const DGPoissonData& b) {
    if (a.p() != b.p())
        throw value_error("bracket degrees differ: " + std::to_string(a.p()) + " vs " +
                          std::to_string(b.p()));
    if (a.field() != b.field()) throw field_mismatch_error("tensor factors use different fields");
    const Field& F = a.field();
    const long long p = a.p();
    const GradedSpace& SA = a.space();
    const GradedSpace& SB = b.space();
    GradedSpace T = tensor_space(SA, SB);
    const auto na = static_cast<std::uint32_t>(SA.dim());
    const auto nb = static_cast<std::uint32_t>(SB.dim());

    std::map<BilinearOp::Key, Element> prod, brak;
    bool prod_partial = false, brak_partial = false;
    for (std::uint32_t i1 = 0; i1 < na; ++i1)
        for (std::uint32_t j1 = 0; j1 < nb; ++j1)
            for (std::uint32_t i2 = 0; i2 < na; ++i2)
                for (std::uint32_t j2 = 0; j2 < nb; ++j2) {
                    std::uint32_t u = tensor_index(T, SB, i1, j1);
                    std::uint32_t v = tensor_index(T, SB, i2, j2);
                    long long da2 = SA.degree(i2), db1 = SB.degree(j1), da1 = SA.degree(i1);
                    (void)da1;
                    // zero values are stored: in a partial table an absent
                    // entry means out-of-window, not zero
                    try {
                        Element pa = a.algebra.product.entry(i1, i2);
                        Element pb = b.algebra.product.entry(j1, j2);
                        prod.emplace(BilinearOp::Key{u, v},
                                     tensor_embed(T, SB, pa, pb, koszul_sign(F, da2, db1)));
                    } catch (const truncation_overflow_error&) {
                        prod_partial = true;
                    }
                    try {
                        Element term =
                            tensor_embed(T, SB, a.lie.bracket.entry(i1, i2),
                                         b.algebra.product.entry(j1, j2),
                                         koszul_sign(F, da2 + p, db1));
                        term += tensor_embed(T, SB, a.algebra.product.entry(i1, i2),
                                             b.lie.bracket.entry(j1, j2),
                                             koszul_sign(F, db1 + p, da2));
                        brak.emplace(BilinearOp::Key{u, v}, std::move(term));
                    } catch (const truncation_overflow_error&) {
                        brak_partial = true;
                    }
                }

    std::vector<Element> dimg;
    dimg.reserve(T.dim());
    for (std::uint32_t i = 0; i < na; ++i)
        for (std::uint32_t j = 0; j < nb; ++j) {
            Element e = tensor_embed(T, SB, a.d(a.basis_elem(i)),
                                     Element::basis(SB, j, Scalar::one(F)), Scalar::one(F));
            e += tensor_embed(T, SB, Element::basis(SA, i, Scalar::one(F)),
                              b.d(b.basis_elem(j)),
                              Scalar::of_int(F, parity_sign_int(SA.degree(i))));
            dimg.push_back(std::move(e));
        }

    auto mk_prod = prod_partial ? BilinearOp::partial : BilinearOp::total;
    auto mk_brak = brak_partial ? BilinearOp::partial : BilinearOp::total;
    GradedLinearMap diff(T, T, 1, std::move(dimg));
    DGAlgebraData alg(F, T, tensor_index(T, SB, a.algebra.unit, b.algebra.unit),
                      mk_prod(T, T, T, 0, std::move(prod)), diff,
                      a.algebra.commutative && b.algebra.commutative);
    DGLieData lie(F, T, mk_brak(T, T, T, p, std::move(brak)), p, diff);
    return DGPoissonData(std::move(alg), std::move(lie));
}

// ---------------------------------------------------------------------------
// endomorphism algebra
// ---------------------------------------------------------------------------

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix zero_matrix(const Field& f, std::size_t m) {
    return Matrix(m, std::vector<Scalar>(m, Scalar::zero(f)));
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
    const std::size_t m = a.size();
    Matrix r = zero_matrix(f, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) r[i][j] -= b[i][j];
    return r;
}

Matrix mat_scaled(const Matrix& a, const Scalar& c) {
    Matrix r = a;
    for (auto& row : r)
        for (auto& x : row) x *= c;
    return r;
}

} // namespace

Element EndContext::from_operator(const GradedLinearMap& op) const {
    if (!op.source().same_as(vspace) || !op.target().same_as(vspace))
        throw value_error("operator does not act on the endomorphism context's space");
    const std::size_t m = vspace.dim();
    Element out(end_space);
    // coefficient on id is the (0,0) entry; remaining matrix units are direct
    Scalar c00 = op.image(0).coeff(0, field);
    out.add_term(0, c00);
    std::uint32_t sym = 1;
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j) {
            if (i == 0 && j == 0) continue;
            Scalar cij = op.image(j).coeff(i, field);
            if (i == j) cij -= c00;
            out.add_term(sym, cij);
            ++sym;
        }
    return out;
}

GradedLinearMap EndContext::to_operator(const Element& e, long long degree) const {
    const std::size_t m = vspace.dim();
    Matrix P = zero_matrix(field, m);
    for (const auto& [sym, c] : e.coeffs()) {
        if (sym == 0) {
            for (std::size_t i = 0; i < m; ++i) P[i][i] += c;
        } else {
            // symbols after "id" sit at flat index i*m+j, with (0,0) absent
            std::uint32_t i = sym / static_cast<std::uint32_t>(m);
            std::uint32_t j = sym % static_cast<std::uint32_t>(m);
            P[i][j] += c;
        }
    }
    std::vector<Element> images;
    for (std::uint32_t j = 0; j < m; ++j) {
        Element img(vspace);
        for (std::uint32_t i = 0; i < m; ++i) img.add_term(i, P[i][j]);
        images.push_back(std::move(img));
    }
    return GradedLinearMap(vspace, vspace, degree, std::move(images));
}

EndomorphismResult endomorphism_dgp(const DGVectorSpaceData& v) {
    const Field& F = v.field;
    const GradedSpace& V = v.space;
    const auto m = static_cast<std::uint32_t>(V.dim());
    if (m == 0) throw precondition_error("endomorphism algebra of the zero space");

    std::vector<BasisSymbol> symbols{{"id", 0}};
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j) {
            if (i == 0 && j == 0) continue;
            symbols.push_back(
                {"E(" + V.name(i) + "," + V.name(j) + ")", V.degree(i) - V.degree(j)});
        }
    GradedSpace E(symbols);

    auto sym_matrix = [&](std::uint32_t sym) {
        Matrix P = zero_matrix(F, m);
        if (sym == 0) {
            for (std::uint32_t i = 0; i < m; ++i) P[i][i] = Scalar::one(F);
        } else {
            std::uint32_t i = sym / m, j = sym % m;
            P[i][j] = Scalar::one(F);
        }
        return P;
    };
    auto to_element = [&](const Matrix& P) {
        Element out(E);
        out.add_term(0, P[0][0]);
        std::uint32_t sym = 1;
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j) {
                if (i == 0 && j == 0) continue;
                Scalar c = P[i][j];
                if (i == j) c -= P[0][0];
                out.add_term(sym, c);
                ++sym;
            }
        return out;
    };

    Matrix D = zero_matrix(F, m);
    for (std::uint32_t j = 0; j < m; ++j)
        for (const auto& [i, c] : v.differential.image(j).coeffs()) D[i][j] = c;

    const auto ne = static_cast<std::uint32_t>(E.dim());
    std::map<BilinearOp::Key, Element> prod, brak;
    std::vector<Element> dimg;
    for (std::uint32_t s = 0; s < ne; ++s) {
        Matrix Ms = sym_matrix(s);
        Matrix dMs = mat_sub(mat_mul(F, D, Ms),
                             mat_scaled(mat_mul(F, Ms, D),
                                        Scalar::of_int(F, parity_sign_int(E.degree(s)))));
        dimg.push_back(to_element(dMs));
        for (std::uint32_t t = 0; t < ne; ++t) {
            Matrix Mt = sym_matrix(t);
            Matrix st = mat_mul(F, Ms, Mt);
            Element pe = to_element(st);
            if (!pe.is_zero()) prod.emplace(BilinearOp::Key{s, t}, pe);
            Matrix comm =
                mat_sub(st, mat_scaled(mat_mul(F, Mt, Ms),
                                       koszul_sign(F, E.degree(s), E.degree(t))));
            Element be = to_element(comm);
            if (!be.is_zero()) brak.emplace(BilinearOp::Key{s, t}, be);
        }
    }

    GradedLinearMap diff(E, E, 1, std::move(dimg));
    DGAlgebraData alg(F, E, 0, BilinearOp::total(E, E, E, 0, std::move(prod)), diff,
                      /*commutative=*/false);
    DGLieData lie(F, E, BilinearOp::total(E, E, E, 0, std::move(brak)), 0, diff);
    return EndomorphismResult{DGPoissonData(std::move(alg), std::move(lie)),
                              EndContext{F, V, E}};
}

// ---------------------------------------------------------------------------
// symmetric algebra of a DG Lie algebra
// ---------------------------------------------------------------------------

DGPoissonData symmetric_dgp(const DGLieData& l, unsigned max_len) {
    return symmetric_dgp_full(l, max_len).algebra;
}

SymmetricResult symmetric_dgp_full(const DGLieData& l, unsigned max_len) {
    if (max_len < 1) throw precondition_error("symmetric truncation needs max_len >= 1");
    auto lrep = verify_dg_lie(l);
    if (!lrep.pass())
        throw precondition_error("Lie algebra fails verification",
                                 lrep.violations.front().to_string());

    const Field& F = l.field;
    std::vector<std::string> names;
    std::vector<long long> degrees;
    for (std::uint32_t i = 0; i < l.space.dim(); ++i) {
        names.push_back(l.space.name(i));
        degrees.push_back(l.space.degree(i));
    }
    MonomialCtx ctx = build_monomial_ctx(F, std::move(names), std::move(degrees), max_len);

    auto embed_gen = [&](const Element& e) {
        Element out(ctx.space);
        for (const auto& [z, c] : e.coeffs()) out += ctx.mono_elem(Monomial{z}, c);
        return out;
    };
    auto genbr = [&](std::uint32_t x, std::uint32_t y) {
        return embed_gen(l.bracket.entry(x, y));
    };

    const auto nm = static_cast<std::uint32_t>(ctx.monomials.size());
    std::map<BilinearOp::Key, Element> prod, brak;
    bool prod_partial = false, brak_partial = false;
    for (std::uint32_t i = 0; i < nm; ++i)
        for (std::uint32_t j = 0; j < nm; ++j) {
            // zero values are stored: in a partial table an absent entry
            // means out-of-window, not zero
            try {
                prod.emplace(BilinearOp::Key{i, j},
                             ctx.mono_mul(ctx.monomials[i], ctx.monomials[j], Scalar::one(F)));
            } catch (const truncation_overflow_error&) {
                prod_partial = true;
            }
            try {
                brak.emplace(BilinearOp::Key{i, j},
                             bider_bracket(ctx, l.bracket_degree, genbr, ctx.monomials[i],
                                           ctx.monomials[j]));
            } catch (const truncation_overflow_error&) {
                brak_partial = true;
            }
        }

    std::vector<Element> dimg;
    auto dgen = [&](std::uint32_t x) -> const Element& { return l.differential.image(x); };
    for (std::uint32_t i = 0; i < nm; ++i)
        dimg.push_back(mono_differential(ctx, dgen, l.space, ctx.monomials[i]));

    auto mk_prod = prod_partial ? BilinearOp::partial : BilinearOp::total;
    auto mk_brak = brak_partial ? BilinearOp::partial : BilinearOp::total;
    GradedLinearMap diff(ctx.space, ctx.space, 1, std::move(dimg));
    DGAlgebraData alg(F, ctx.space, 0, mk_prod(ctx.space, ctx.space, ctx.space, 0, std::move(prod)),
                      diff, true);
    DGLieData lie(F, ctx.space,
                  mk_brak(ctx.space, ctx.space, ctx.space, l.bracket_degree, std::move(brak)),
                  l.bracket_degree, diff);
    return SymmetricResult{DGPoissonData(std::move(alg), std::move(lie)),
                           std::move(ctx.monomials)};
}

// ---------------------------------------------------------------------------
// Gerstenhaber constructions
// ---------------------------------------------------------------------------

DGPoissonData gerstenhaber_differential(const DGPoissonData& g, const Element& alpha) {
    if (g.field().characteristic() == 2)
        throw precondition_error("characteristic 2 is not supported");
    if (g.p() != -1)
        throw precondition_error("Gerstenhaber bracket must have degree -1");
    if (!g.algebra.differential.is_zero())
        throw precondition_error("input must carry the zero differential");
    if (!alpha.space().same_as(g.space()))
        throw precondition_error("alpha lives in the wrong space");
    if (!alpha.is_homogeneous_of(2))
        throw precondition_error("alpha must be homogeneous of degree 2", alpha.to_string());
    auto grep = verify_dg_poisson(g);
    if (!grep.pass())
        throw precondition_error("input fails Gerstenhaber verification",
                                 grep.violations.front().to_string());
    Element self = g.br(alpha, alpha);
    if (!self.is_zero())
        throw precondition_error("[alpha, alpha] is nonzero", self.to_string());

    std::vector<Element> dimg;
    for (std::uint32_t i = 0; i < g.space().dim(); ++i)
        dimg.push_back(g.br(alpha, g.basis_elem(i)));
    GradedLinearMap diff(g.space(), g.space(), 1, std::move(dimg));
    DGAlgebraData alg(g.field(), g.space(), g.algebra.unit, g.algebra.product, diff,
                      g.algebra.commutative);
    DGLieData lie(g.field(), g.space(), g.lie.bracket, g.p(), diff);
    return DGPoissonData(std::move(alg), std::move(lie));
}

DGPoissonData exterior_gerstenhaber(const DGLieData& l) {
    require_ordinary_lie(l);
    const Field& F = l.field;
    MonomialCtx ctx = exterior_ctx(l);
    const auto nm = static_cast<std::uint32_t>(ctx.monomials.size());

    std::map<BilinearOp::Key, Element> prod, brak;
    for (std::uint32_t i = 0; i < nm; ++i)
        for (std::uint32_t j = 0; j < nm; ++j) {
            Element e = ctx.mono_mul(ctx.monomials[i], ctx.monomials[j], Scalar::one(F));
            if (!e.is_zero()) prod.emplace(BilinearOp::Key{i, j}, e);
            Element b =
                exterior_bracket_displayed_impl(ctx, l, ctx.monomials[i], ctx.monomials[j]);
            if (!b.is_zero()) brak.emplace(BilinearOp::Key{i, j}, b);
        }

    GradedLinearMap diff = GradedLinearMap::zero(ctx.space, ctx.space, 1);
    DGAlgebraData alg(F, ctx.space, 0,
                      BilinearOp::total(ctx.space, ctx.space, ctx.space, 0, std::move(prod)),
                      diff, true);
    DGLieData lie(F, ctx.space,
                  BilinearOp::total(ctx.space, ctx.space, ctx.space, -1, std::move(brak)), -1,
                  diff);
    return DGPoissonData(std::move(alg), std::move(lie));
}

std::optional<std::string> exterior_bracket_paths_disagree(const DGLieData& l) {
    require_ordinary_lie(l);
    MonomialCtx ctx = exterior_ctx(l);
    auto embed_gen = [&](const Element& e) {
        Element out(ctx.space);
        for (const auto& [z, c] : e.coeffs()) out += ctx.mono_elem(Monomial{z}, c);
        return out;
    };
    auto genbr = [&](std::uint32_t x, std::uint32_t y) {
        return embed_gen(l.bracket.entry(x, y));
    };
    const auto nm = static_cast<std::uint32_t>(ctx.monomials.size());
    for (std::uint32_t i = 0; i < nm; ++i)
        for (std::uint32_t j = 0; j < nm; ++j) {
            Element displayed =
                exterior_bracket_displayed_impl(ctx, l, ctx.monomials[i], ctx.monomials[j]);
            Element derived =
                bider_bracket(ctx, -1, genbr, ctx.monomials[i], ctx.monomials[j]);
            if (!(displayed == derived)) {
                std::ostringstream os;
                os << "[" << ctx.mono_name(ctx.monomials[i]) << ", "
                   << ctx.mono_name(ctx.monomials[j]) << "]: displayed sum gives "
                   << displayed.to_string() << " but the biderivation extension gives "
                   << derived.to_string();
                return os.str();
            }
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// deformations
// ---------------------------------------------------------------------------

DeformationData::DeformationData(DGAlgebraData b, std::vector<BilinearOp> c)
    : base(std::move(b)), corrections(std::move(c)) {
    for (const auto& bi : corrections) {
        if (bi.degree() != 0)
            throw value_error("deformation corrections must have degree 0");
        if (!bi.lhs().same_as(base.space) || !bi.rhs().same_as(base.space) ||
            !bi.target().same_as(base.space))
            throw value_error("deformation correction is not an operation on the base space");
        if (!bi.is_total()) throw incomplete_table_error("deformation tables must be complete");
    }
}

DeformationBracketResult deformation_bracket(const DeformationData& d) {
    auto baserep = verify_dg_algebra(d.base);
    if (!baserep.pass())
        throw precondition_error("deformation base fails verification",
                                 baserep.violations.front().to_string());
    const Field& F = d.base.field;
    const GradedSpace& sp = d.base.space;
    const auto n = static_cast<std::uint32_t>(sp.dim());

    for (unsigned m = 0; m < d.corrections.size(); ++m) {
        const BilinearOp& B = d.corrections[m];
        std::map<BilinearOp::Key, Element> brak;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) {
                Element anti = B.entry(i, j) -
                               B.entry(j, i).scaled(koszul_sign(F, sp.degree(i), sp.degree(j)));
                if (!anti.is_zero()) brak.emplace(BilinearOp::Key{i, j}, anti);
            }
        if (brak.empty()) continue; // graded-symmetric at this order
        DGLieData lie(F, sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                      d.base.differential);
        DGPoissonData poisson(d.base, std::move(lie));
        DeformationBracketResult result;
        result.order = m + 1;
        result.check = verify_dg_poisson(poisson);
        result.poisson = std::move(poisson);
        return result;
    }
    DeformationBracketResult commutative;
    commutative.check.checked = 0;
    return commutative;
}

// ---------------------------------------------------------------------------
// modules
// ---------------------------------------------------------------------------

DGPoissonRightModuleData opposite_module(const DGPoissonData& a, const DGPoissonModuleData& m) {
    if (!a.space().same_as(m.algebra.space()))
        throw value_error("module is not over the given algebra");
    const Field& F = a.field();
    const long long p = a.p();
    const GradedSpace& SA = a.space();
    const GradedSpace& SM = m.space;
    DGPoissonData aop = opposite(m.algebra);

    std::map<BilinearOp::Key, Element> act, lie;
    bool act_partial = !m.action.is_total(), lie_partial = !m.lie_action.is_total();
    for (std::uint32_t u = 0; u < SM.dim(); ++u)
        for (std::uint32_t i = 0; i < SA.dim(); ++i) {
            long long da = SA.degree(i), dm = SM.degree(u);
            if (m.action.defined(i, u))
                act.emplace(BilinearOp::Key{u, i},
                            m.action.entry(i, u).scaled(koszul_sign(F, da, dm)));
            if (m.lie_action.defined(i, u))
                lie.emplace(BilinearOp::Key{u, i},
                            m.lie_action.entry(i, u).scaled(koszul_sign(F, da + p, dm + p)));
        }
    auto mk_act = act_partial ? BilinearOp::partial : BilinearOp::total;
    auto mk_lie = lie_partial ? BilinearOp::partial : BilinearOp::total;
    return DGPoissonRightModuleData(std::move(aop), SM, mk_act(SM, SA, SM, 0, std::move(act)),
                                    mk_lie(SM, SA, SM, p, std::move(lie)), m.differential);
}

DGPoissonModuleData opposite_module_back(const DGPoissonRightModuleData& m) {
    const Field& F = m.algebra.field();
    const long long p = m.algebra.p();
    const GradedSpace& SA = m.algebra.space();
    const GradedSpace& SM = m.space;
    DGPoissonData aop = opposite(m.algebra);

    std::map<BilinearOp::Key, Element> act, lie;
    bool act_partial = !m.action.is_total(), lie_partial = !m.lie_action.is_total();
    for (std::uint32_t i = 0; i < SA.dim(); ++i)
        for (std::uint32_t u = 0; u < SM.dim(); ++u) {
            long long da = SA.degree(i), dm = SM.degree(u);
            if (m.action.defined(u, i))
                act.emplace(BilinearOp::Key{i, u},
                            m.action.entry(u, i).scaled(koszul_sign(F, da, dm)));
            if (m.lie_action.defined(u, i))
                lie.emplace(BilinearOp::Key{i, u},
                            m.lie_action.entry(u, i).scaled(koszul_sign(F, da + p, dm + p)));
        }
    auto mk_act = act_partial ? BilinearOp::partial : BilinearOp::total;
    auto mk_lie = lie_partial ? BilinearOp::partial : BilinearOp::total;
    return DGPoissonModuleData(std::move(aop), SM, mk_act(SA, SM, SM, 0, std::move(act)),
                               mk_lie(SA, SM, SM, p, std::move(lie)), m.differential);
}

DGPoissonModuleData tensor_module(const DGPoissonData& a, const DGPoissonModuleData& m,
                                  const DGPoissonData& b, const DGPoissonModuleData& n) {
    if (a.p() != b.p()) throw value_error("bracket degrees differ");
    if (!a.space().same_as(m.algebra.space()) || !b.space().same_as(n.algebra.space()))
        throw value_error("modules are not over the given algebras");
    const Field& F = a.field();
    const long long p = a.p();
    DGPoissonData ab = tensor(a, b);
    const GradedSpace& SM = m.space;
    const GradedSpace& SN = n.space;
    GradedSpace MN = tensor_space(SM, SN);
    const GradedSpace& SA = a.space();
    const GradedSpace& SB = b.space();

    std::map<BilinearOp::Key, Element> act, lie;
    bool act_partial = false, lie_partial = false;
    for (std::uint32_t i = 0; i < SA.dim(); ++i)
        for (std::uint32_t j = 0; j < SB.dim(); ++j)
            for (std::uint32_t u = 0; u < SM.dim(); ++u)
                for (std::uint32_t v = 0; v < SN.dim(); ++v) {
                    std::uint32_t alg_idx = tensor_index(ab.space(), SB, i, j);
                    std::uint32_t mod_idx = tensor_index(MN, SN, u, v);
                    long long db = SB.degree(j), dm = SM.degree(u);
                    try {
                        act.emplace(BilinearOp::Key{alg_idx, mod_idx},
                                    tensor_embed(MN, SN, m.action.entry(i, u),
                                                 n.action.entry(j, v),
                                                 koszul_sign(F, db, dm)));
                    } catch (const truncation_overflow_error&) {
                        act_partial = true;
                    }
                    try {
                        Element e = tensor_embed(MN, SN, m.lie_action.entry(i, u),
                                                 n.action.entry(j, v),
                                                 koszul_sign(F, dm + p, db));
                        e += tensor_embed(MN, SN, m.action.entry(i, u),
                                          n.lie_action.entry(j, v),
                                          koszul_sign(F, dm, db + p));
                        lie.emplace(BilinearOp::Key{alg_idx, mod_idx}, std::move(e));
                    } catch (const truncation_overflow_error&) {
                        lie_partial = true;
                    }
                }

    std::vector<Element> dimg;
    for (std::uint32_t u = 0; u < SM.dim(); ++u)
        for (std::uint32_t v = 0; v < SN.dim(); ++v) {
            Element e = tensor_embed(MN, SN, m.dM(Element::basis(SM, u, Scalar::one(F))),
                                     Element::basis(SN, v, Scalar::one(F)), Scalar::one(F));
            e += tensor_embed(MN, SN, Element::basis(SM, u, Scalar::one(F)),
                              n.dM(Element::basis(SN, v, Scalar::one(F))),
                              Scalar::of_int(F, parity_sign_int(SM.degree(u))));
            dimg.push_back(std::move(e));
        }

    auto mk_act = act_partial ? BilinearOp::partial : BilinearOp::total;
    auto mk_lie = lie_partial ? BilinearOp::partial : BilinearOp::total;
    return DGPoissonModuleData(std::move(ab), MN,
                               mk_act(ab.space(), MN, MN, 0, std::move(act)),
                               mk_lie(ab.space(), MN, MN, p, std::move(lie)),
                               GradedLinearMap(MN, MN, 1, std::move(dimg)));
}

// ---------------------------------------------------------------------------
// semidirect product
// ---------------------------------------------------------------------------

DGLieData semidirect_lie(const DGLieData& l) {
    auto lrep = verify_dg_lie(l);
    if (!lrep.pass())
        throw precondition_error("Lie algebra fails verification",
                                 lrep.violations.front().to_string());
    const Field& F = l.field;
    const long long p = l.bracket_degree;
    const auto n = static_cast<std::uint32_t>(l.space.dim());

    std::vector<BasisSymbol> symbols;
    for (std::uint32_t i = 0; i < n; ++i) symbols.push_back({l.space.name(i) + "+0", l.space.degree(i)});
    for (std::uint32_t i = 0; i < n; ++i) symbols.push_back({"0+" + l.space.name(i), l.space.degree(i)});
    GradedSpace D(symbols);

    auto embed = [&](const Element& e, bool second_copy) {
        Element out(D);
        for (const auto& [z, c] : e.coeffs()) out.add_term(second_copy ? n + z : z, c);
        return out;
    };

    std::map<BilinearOp::Key, Element> brak;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            Element bij = l.bracket.entry(i, j);
            if (bij.is_zero()) continue;
            // [0+x, y+0] = [x,y] + 0
            brak.emplace(BilinearOp::Key{n + i, j}, embed(bij, false));
            // [x+0, 0+y] = -k [0+y, x+0] = -k [y,x] = [x,y] + 0 (k^2 = 1)
            brak.emplace(BilinearOp::Key{i, n + j}, embed(bij, false));
            // [0+x, 0+y] = 0 + [x,y]: the second copy is a subalgebra
            brak.emplace(BilinearOp::Key{n + i, n + j}, embed(bij, true));
        }

    std::vector<Element> dimg;
    for (std::uint32_t i = 0; i < n; ++i)
        dimg.push_back(embed(l.differential.image(i), false));
    for (std::uint32_t i = 0; i < n; ++i)
        dimg.push_back(embed(l.differential.image(i), true));

    return DGLieData(F, D, BilinearOp::total(D, D, D, p, std::move(brak)), p,
                     GradedLinearMap(D, D, 1, std::move(dimg)));
}

} // namespace dgpa
