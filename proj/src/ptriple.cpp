#include "dgpa/ptriple.hpp"

#include <sstream>

namespace dgpa {

namespace {

template <typename F>
void check(VerificationReport& rep, const char* axiom, std::vector<std::string> witness,
           F&& eval) {
    try {
        Element diff = eval();
        ++rep.checked;
        if (!diff.is_zero())
            rep.violations.push_back({axiom, std::move(witness), std::move(diff)});
    } catch (const truncation_overflow_error&) {
        ++rep.skipped;
    }
}

} // namespace

Element PartialDGAlgebra::d(const Element& e) const {
    Element out(space);
    for (const auto& [idx, c] : e.coeffs()) {
        if (!diff.at(idx))
            throw truncation_overflow_error("differential of '" + space.name(idx) +
                                            "' leaves the truncation window");
        out += diff.at(idx)->scaled(c);
    }
    return out;
}

PartialDGAlgebra PartialDGAlgebra::from(const DGAlgebraData& a) {
    PartialDGAlgebra out{a.field, a.space, a.unit, a.product, {}, a.commutative};
    out.diff.reserve(a.space.dim());
    for (std::uint32_t i = 0; i < a.space.dim(); ++i)
        out.diff.emplace_back(a.differential.image(i));
    return out;
}

PartialDGAlgebra ue_as_algebra(const UETruncation& t) {
    std::vector<BasisSymbol> symbols;
    symbols.reserve(t.basis.size());
    for (std::uint32_t i = 0; i < t.basis.size(); ++i)
        symbols.push_back({word_name(t.gens, t.basis[i]), t.word_deg(i)});
    GradedSpace sp(std::move(symbols));

    auto to_elem = [&](const UETruncation::QVec& v) {
        Element e(sp);
        for (const auto& [k, c] : v) e.add_term(k, c);
        return e;
    };

    std::map<BilinearOp::Key, Element> prod;
    bool partial = false;
    for (std::uint32_t i = 0; i < t.basis.size(); ++i)
        for (std::uint32_t j = 0; j < t.basis.size(); ++j) {
            if (!t.product[i][j]) {
                partial = true;
                continue;
            }
            // defined-but-zero must stay distinguishable from out-of-window
            prod.emplace(BilinearOp::Key{i, j}, to_elem(*t.product[i][j]));
        }

    PartialDGAlgebra out{t.field, sp, t.index.at(Word{}),
                         (partial ? BilinearOp::partial : BilinearOp::total)(
                             sp, sp, sp, 0, std::move(prod)),
                         {},
                         /*commutative=*/false};
    out.diff.reserve(t.basis.size());
    for (std::uint32_t i = 0; i < t.basis.size(); ++i) {
        if (t.diff[i])
            out.diff.emplace_back(to_elem(*t.diff[i]));
        else
            out.diff.emplace_back(std::nullopt);
    }
    return out;
}

VerificationReport verify_partial_dg_algebra(const PartialDGAlgebra& a) {
    VerificationReport rep;
    const auto n = static_cast<std::uint32_t>(a.space.dim());
    const Element one = a.unit_element();
    const Field& F = a.field;
    auto be = [&](std::uint32_t i) { return Element::basis(a.space, i, Scalar::one(F)); };

    for (std::uint32_t i = 0; i < n; ++i) {
        check(rep, "d-squared", {a.space.name(i)}, [&] { return a.d(a.d(be(i))); });
        check(rep, "unit-left", {a.space.name(i)}, [&] { return a.mul(one, be(i)) - be(i); });
        check(rep, "unit-right", {a.space.name(i)}, [&] { return a.mul(be(i), one) - be(i); });
    }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            check(rep, "leibniz", {a.space.name(i), a.space.name(j)}, [&] {
                return a.d(a.mul(be(i), be(j))) - a.mul(a.d(be(i)), be(j)) -
                       a.mul(be(i), a.d(be(j)))
                           .scaled(Scalar::of_int(F, parity_sign_int(a.space.degree(i))));
            });
            if (a.commutative && j >= i)
                check(rep, "graded-commutativity", {a.space.name(i), a.space.name(j)}, [&] {
                    return a.mul(be(i), be(j)) -
                           a.mul(be(j), be(i))
                               .scaled(koszul_sign(F, a.space.degree(i), a.space.degree(j)));
                });
            for (std::uint32_t k = 0; k < n; ++k)
                check(rep, "associativity",
                      {a.space.name(i), a.space.name(j), a.space.name(k)}, [&] {
                          return a.mul(a.mul(be(i), be(j)), be(k)) -
                                 a.mul(be(i), a.mul(be(j), be(k)));
                      });
        }
    return rep;
}

VerificationReport verify_ptriple(const DGPoissonData& a, const PTripleData& t) {
    if (!t.f.source().same_as(a.space()) || !t.g.source().same_as(a.space()) ||
        !t.f.target().same_as(t.target.space) || !t.g.target().same_as(t.target.space))
        throw value_error("triple maps do not match the algebra and target spaces");
    if (t.f.degree() != 0) throw value_error("f must have degree 0");
    if (t.g.degree() != a.p()) throw value_error("g must have the bracket degree");

    VerificationReport brep = verify_partial_dg_algebra(t.target);
    if (!brep.pass())
        throw precondition_error("triple target fails DG-algebra verification",
                                 brep.violations.front().to_string());

    VerificationReport rep;
    const Field& F = a.field();
    const long long p = a.p();
    const auto n = static_cast<std::uint32_t>(a.space().dim());
    const PartialDGAlgebra& B = t.target;

    check(rep, "P1-unit", {}, [&] {
        return t.f.image(a.algebra.unit) - B.unit_element();
    });
    for (std::uint32_t i = 0; i < n; ++i) {
        Element fa = t.f.image(i), ga = t.g.image(i);
        check(rep, "P1-d", {a.space().name(i)},
              [&] { return B.d(fa) - t.f.apply(a.d(a.basis_elem(i))); });
        check(rep, "P2-d", {a.space().name(i)},
              [&] { return B.d(ga) - t.g.apply(a.d(a.basis_elem(i))); });
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        long long di = a.space().degree(i);
        Element fa = t.f.image(i), ga = t.g.image(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            long long dj = a.space().degree(j);
            Element fb = t.f.image(j), gb = t.g.image(j);
            std::vector<std::string> w{a.space().name(i), a.space().name(j)};
            check(rep, "P1-mult", w, [&] {
                return t.f.apply(a.mul(a.basis_elem(i), a.basis_elem(j))) - B.mul(fa, fb);
            });
            check(rep, "P2-bracket", w, [&] {
                return t.g.apply(a.br(a.basis_elem(i), a.basis_elem(j))) - B.mul(ga, gb) +
                       B.mul(gb, ga).scaled(koszul_sign(F, di + p, dj + p));
            });
            check(rep, "P3", w, [&] {
                return t.f.apply(a.br(a.basis_elem(i), a.basis_elem(j))) - B.mul(ga, fb) +
                       B.mul(fb, ga).scaled(koszul_sign(F, di + p, dj));
            });
            check(rep, "P4", w, [&] {
                return t.g.apply(a.mul(a.basis_elem(i), a.basis_elem(j))) - B.mul(fa, gb) -
                       B.mul(fb, ga).scaled(koszul_sign(F, di, dj));
            });
        }
    }
    return rep;
}

bool InducedMap::total() const {
    for (const auto& img : images)
        if (!img) return false;
    return true;
}

GradedLinearMap InducedMap::to_linear() const {
    std::vector<Element> imgs;
    imgs.reserve(images.size());
    for (std::uint32_t i = 0; i < images.size(); ++i) {
        if (!images[i])
            throw truncation_overflow_error("induced map is undefined on '" +
                                            source.name(i) + "'");
        imgs.push_back(*images[i]);
    }
    return GradedLinearMap(source, target, 0, std::move(imgs));
}

InducedMap induced_map(const DGPoissonData& a, const PTripleData& t, const UETruncation& u) {
    const PartialDGAlgebra& B = t.target;
    PartialDGAlgebra uview = ue_as_algebra(u);

    auto letter_image = [&](std::uint32_t id) -> const Element& {
        std::uint32_t base = u.gens.base_of(id);
        return u.gens.is_m(id) ? t.f.image(base) : t.g.image(base);
    };
    auto eval_word = [&](const Word& w, bool left_to_right) -> Element {
        Element acc = B.unit_element();
        if (left_to_right) {
            for (auto id : w) acc = B.mul(acc, letter_image(id));
        } else {
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                acc = B.mul(letter_image(*it), acc);
        }
        return acc;
    };

    InducedMap out{uview.space, B.space, {}, {}};
    out.images.resize(u.basis.size());
    for (std::uint32_t i = 0; i < u.basis.size(); ++i) {
        try {
            out.images[i] = eval_word(u.basis[i], true);
        } catch (const truncation_overflow_error&) {
            out.images[i] = std::nullopt;
            ++out.report.skipped;
        }
    }

    // (a) phi vanishes on every relation instance
    RelationSet rels = build_relations(a);
    for (const auto& r : rels.relations) {
        check(out.report, "relation-image",
              {clause_name(r.clause), a.space().name(r.a), a.space().name(r.b)}, [&] {
                  Element acc(B.space);
                  for (const auto& [w, c] : r.poly.terms())
                      acc += eval_word(w, true).scaled(c);
                  return acc;
              });
    }
    // (b) phi commutes with the differentials
    for (std::uint32_t i = 0; i < u.basis.size(); ++i) {
        check(out.report, "phi-d-compat", {uview.space.name(i)}, [&] {
            if (!u.diff[i] || !out.images[i])
                throw truncation_overflow_error("out of window");
            Element rhs(B.space);
            for (const auto& [k, c] : *u.diff[i]) {
                if (!out.images[k]) throw truncation_overflow_error("out of window");
                rhs += out.images[k]->scaled(c);
            }
            return B.d(*out.images[i]) - rhs;
        });
    }
    // (c) the two multiplicative extension strategies agree
    for (std::uint32_t i = 0; i < u.basis.size(); ++i) {
        check(out.report, "extension-uniqueness", {uview.space.name(i)}, [&] {
            if (!out.images[i]) throw truncation_overflow_error("out of window");
            return *out.images[i] - eval_word(u.basis[i], false);
        });
    }
    return out;
}

} // namespace dgpa
