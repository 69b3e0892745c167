#include "dgpa/ue_module.hpp"

namespace dgpa {

namespace {

Element apply_word(const UEModuleRep& r, const Word& w, const Element& m) {
    // the word s1 s2 ... sk acts as rho(s1) after rho(s2) after ... rho(sk)
    Element acc = m;
    for (auto it = w.rbegin(); it != w.rend(); ++it) acc = r.ops.at(*it).apply(acc);
    return acc;
}

Element apply_poly(const UEModuleRep& r, const NCPoly& p, const Element& m) {
    Element acc(r.space);
    for (const auto& [w, c] : p.terms()) acc += apply_word(r, w, m).scaled(c);
    return acc;
}

} // namespace

VerificationReport verify_ue_module_rep(const DGPoissonData& a, const UEModuleRep& r) {
    if (r.ops.size() != r.gens.count())
        throw value_error("representation must provide one operator per generator");
    for (std::uint32_t id = 0; id < r.gens.count(); ++id) {
        if (r.ops[id].degree() != r.gens.degree(id))
            throw value_error("operator degree mismatch at " + r.gens.name(id));
        if (!r.ops[id].source().same_as(r.space) || !r.ops[id].target().same_as(r.space))
            throw value_error("operator acts on the wrong space at " + r.gens.name(id));
    }

    VerificationReport rep;
    const Field& F = r.field;
    const auto nm = static_cast<std::uint32_t>(r.space.dim());
    auto mb = [&](std::uint32_t j) { return Element::basis(r.space, j, Scalar::one(F)); };

    RelationSet rels = build_relations(a);
    for (const auto& rel : rels.relations)
        for (std::uint32_t j = 0; j < nm; ++j) {
            Element res = apply_poly(r, rel.poly, mb(j));
            ++rep.checked;
            if (!res.is_zero())
                rep.violations.push_back({"relation-op",
                                          {clause_name(rel.clause), a.space().name(rel.a),
                                           a.space().name(rel.b), r.space.name(j)},
                                          std::move(res)});
        }

    for (std::uint32_t j = 0; j < nm; ++j) {
        Element res = r.differential.apply(r.differential.image(j));
        ++rep.checked;
        if (!res.is_zero())
            rep.violations.push_back({"dM-squared", {r.space.name(j)}, std::move(res)});
    }

    // d(rho(s)) = rho(d s) as operators: dM rho(s) - (-1)^{|s|} rho(s) dM
    for (std::uint32_t id = 0; id < r.gens.count(); ++id) {
        const Element& dbase = a.algebra.differential.image(r.gens.base_of(id));
        for (std::uint32_t j = 0; j < nm; ++j) {
            Element lhs = r.differential.apply(r.ops[id].image(j)) -
                          r.ops[id]
                              .apply(r.differential.image(j))
                              .scaled(Scalar::of_int(F, parity_sign_int(r.gens.degree(id))));
            Element rhs(r.space);
            for (const auto& [z, c] : dbase.coeffs())
                rhs += r.ops[r.gens.is_m(id) ? r.gens.m_id(z) : r.gens.h_id(z)]
                           .apply(mb(j))
                           .scaled(c);
            Element res = lhs - rhs;
            ++rep.checked;
            if (!res.is_zero())
                rep.violations.push_back(
                    {"rep-d-compat", {r.gens.name(id), r.space.name(j)}, std::move(res)});
        }
    }
    return rep;
}

UEModuleRep module_to_ue_rep(const DGPoissonData& a, const DGPoissonModuleData& m) {
    VerificationReport mrep = verify_dg_poisson_module(m);
    if (!mrep.pass())
        throw precondition_error("module fails verification",
                                 mrep.violations.front().to_string());

    UEModuleRep r{a.field(), GenSet(a.space(), a.p()), m.space, m.differential, {}};
    const auto n = static_cast<std::uint32_t>(a.space().dim());
    const auto nm = static_cast<std::uint32_t>(m.space.dim());
    r.ops.reserve(2 * n);
    for (std::uint32_t x = 0; x < n; ++x) {
        std::vector<Element> images;
        images.reserve(nm);
        for (std::uint32_t j = 0; j < nm; ++j) images.push_back(m.action.entry(x, j));
        r.ops.emplace_back(m.space, m.space, a.space().degree(x), std::move(images));
    }
    for (std::uint32_t x = 0; x < n; ++x) {
        std::vector<Element> images;
        images.reserve(nm);
        for (std::uint32_t j = 0; j < nm; ++j) images.push_back(m.lie_action.entry(x, j));
        r.ops.emplace_back(m.space, m.space, a.space().degree(x) + a.p(), std::move(images));
    }

    VerificationReport rrep = verify_ue_module_rep(a, r);
    if (!rrep.pass())
        throw value_error("operator identities failed for a verified module: " +
                          rrep.violations.front().to_string());
    return r;
}

DGPoissonModuleData ue_rep_to_module(const DGPoissonData& a, const UEModuleRep& r) {
    VerificationReport rrep = verify_ue_module_rep(a, r);
    if (!rrep.pass())
        throw precondition_error("representation fails its operator identities",
                                 rrep.violations.front().to_string());

    const auto n = static_cast<std::uint32_t>(a.space().dim());
    const auto nm = static_cast<std::uint32_t>(r.space.dim());
    std::map<BilinearOp::Key, Element> act, lie;
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t j = 0; j < nm; ++j) {
            Element av = r.ops[r.gens.m_id(x)].image(j);
            if (!av.is_zero()) act.emplace(BilinearOp::Key{x, j}, av);
            Element lv = r.ops[r.gens.h_id(x)].image(j);
            if (!lv.is_zero()) lie.emplace(BilinearOp::Key{x, j}, lv);
        }
    DGPoissonModuleData m(a, r.space,
                          BilinearOp::total(a.space(), r.space, r.space, 0, std::move(act)),
                          BilinearOp::total(a.space(), r.space, r.space, a.p(), std::move(lie)),
                          r.differential);
    VerificationReport mrep = verify_dg_poisson_module(m);
    if (!mrep.pass())
        throw value_error("transported module fails verification: " +
                          mrep.violations.front().to_string());
    return m;
}

} // namespace dgpa
