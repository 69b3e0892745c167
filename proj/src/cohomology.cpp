#include "dgpa/cohomology.hpp"

#include <set>

#include "dgpa/echelon.hpp"

namespace dgpa {

namespace {

SparseVec to_sparse(const Element& e) {
    SparseVec v;
    for (const auto& [idx, c] : e.coeffs()) v.emplace(idx, c);
    return v;
}

Element from_sparse(const GradedSpace& space, const SparseVec& v) {
    Element e(space);
    for (const auto& [idx, c] : v) e.add_term(idx, c);
    return e;
}

} // namespace

CohomologyResult cohomology_full(const DGPoissonData& a) {
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = !a.algebra.commutative;
    VerificationReport base = verify_dg_poisson(a, opts);
    if (!base.pass())
        throw precondition_error("cohomology requires a verified DG Poisson algebra",
                                 base.violations.front().to_string());

    const Field& F = a.field();
    const GradedSpace& sp = a.space();
    const auto n = static_cast<std::uint32_t>(sp.dim());

    std::set<long long> degree_set;
    for (std::uint32_t i = 0; i < n; ++i) degree_set.insert(sp.degree(i));
    // Degree 0 first so the unit class, seeded first there, gets index 0.
    std::vector<long long> degrees;
    if (degree_set.count(0)) degrees.push_back(0);
    for (long long q : degree_set)
        if (q != 0) degrees.push_back(q);

    std::map<long long, RowReducer> image; // reduction by im d preserves the class
    for (long long q : degree_set) {
        RowReducer red(F);
        for (std::uint32_t j = 0; j < n; ++j)
            if (sp.degree(j) == q - 1) red.add_row(to_sparse(a.d(a.basis_elem(j))));
        image.emplace(q, std::move(red));
    }

    std::vector<Element> reps; // frozen at acceptance time
    std::vector<BasisSymbol> rep_symbols;

    for (long long q : degrees) {
        std::vector<std::uint32_t> basis_q;
        for (std::uint32_t i = 0; i < n; ++i)
            if (sp.degree(i) == q) basis_q.push_back(i);
        if (q == 0) {
            std::vector<std::uint32_t> reordered{a.algebra.unit};
            for (auto i : basis_q)
                if (i != a.algebra.unit) reordered.push_back(i);
            basis_q = std::move(reordered);
        }

        // Kernel vectors of d on degree q, in deterministic discovery order.
        RowReducer ker_red(F);
        std::vector<SparseVec> kernel;
        for (std::uint32_t i : basis_q) {
            SparseVec vanished;
            auto piv = ker_red.add_row(to_sparse(a.d(a.basis_elem(i))),
                                       SparseVec{{i, Scalar::one(F)}}, &vanished);
            if (!piv) kernel.push_back(std::move(vanished));
        }

        // Independence tester modulo the image; accepted candidates are stored
        // image-reduced, which stays inside their class.
        RowReducer tester(F);
        for (const auto& [piv, row] : image.at(q).rows()) {
            (void)piv;
            tester.add_row(row.vec);
        }
        for (auto& v : kernel) {
            SparseVec reduced = image.at(q).reduce(v);
            if (reduced.empty()) continue;
            auto piv = tester.add_row(reduced);
            if (!piv) continue;
            reps.push_back(from_sparse(sp, reduced));
            rep_symbols.push_back({"[" + sp.name(*piv) + "]", q});
        }
    }

    if (rep_symbols.empty() || rep_symbols[0].degree != 0)
        throw value_error("the unit class is zero; the cohomology ring is not representable");
    // The unit was seeded first in degree 0; its reduced vector is rep 0
    // unless it died in the image, which the name check below catches.
    {
        Element unit_red = from_sparse(sp, image.at(0).reduce(to_sparse(a.algebra.unit_element())));
        if (reps[0] != unit_red)
            throw value_error("the unit class is zero; the cohomology ring is not representable");
    }

    GradedSpace hspace{rep_symbols};

    // Coordinate reducers: image rows untagged, frozen reps tagged by index.
    std::map<long long, RowReducer> coords;
    for (long long q : degree_set) {
        RowReducer red(F);
        for (const auto& [piv, row] : image.at(q).rows()) {
            (void)piv;
            red.add_row(row.vec);
        }
        coords.emplace(q, std::move(red));
    }
    for (std::uint32_t r = 0; r < reps.size(); ++r)
        coords.at(rep_symbols[r].degree)
            .add_row(to_sparse(reps[r]), SparseVec{{r, Scalar::one(F)}});

    auto classify = [&](const Element& w) {
        Element out(hspace);
        if (w.is_zero()) return out;
        auto deg = w.homogeneous_degree();
        if (!deg || !coords.count(*deg))
            throw value_error("induced table is not well defined (inhomogeneous value)");
        SparseVec acc;
        SparseVec residual = coords.at(*deg).reduce(to_sparse(w), &acc);
        if (!residual.empty())
            throw value_error("induced table is not well defined (value is not a boundary-"
                              "adjusted cocycle)");
        for (const auto& [rid, c] : acc) out.add_term(rid, c);
        return out;
    };

    const auto h = static_cast<std::uint32_t>(hspace.dim());
    std::map<BilinearOp::Key, Element> prod, brak;
    for (std::uint32_t i = 0; i < h; ++i)
        for (std::uint32_t j = 0; j < h; ++j) {
            Element pw = classify(a.mul(reps[i], reps[j]));
            if (!pw.is_zero()) prod.emplace(BilinearOp::Key{i, j}, pw);
            Element bw = classify(a.br(reps[i], reps[j]));
            if (!bw.is_zero()) brak.emplace(BilinearOp::Key{i, j}, bw);
        }

    DGAlgebraData halg(F, hspace, 0,
                       BilinearOp::total(hspace, hspace, hspace, 0, std::move(prod)),
                       GradedLinearMap::zero(hspace, hspace, 1), a.algebra.commutative);
    DGLieData hlie(F, hspace,
                   BilinearOp::total(hspace, hspace, hspace, a.p(), std::move(brak)), a.p(),
                   GradedLinearMap::zero(hspace, hspace, 1));
    CohomologyResult result{DGPoissonData(std::move(halg), std::move(hlie)), std::move(reps)};

    PoissonVerifyOptions hopts;
    hopts.allow_noncommutative = !a.algebra.commutative;
    VerificationReport hrep = verify_dg_poisson(result.algebra, hopts);
    if (!hrep.pass())
        throw value_error("induced cohomology structure failed verification: " +
                          hrep.violations.front().to_string());
    return result;
}

} // namespace dgpa
