#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgpa/cohomology.hpp"
#include "dgpa/structures.hpp"
#include "test_util.hpp"

using namespace dgpa;
using namespace dgpa::testing;

namespace {

/// Finds a violation with the given axiom id.
bool has_axiom(const VerificationReport& rep, const std::string& axiom) {
    for (const auto& v : rep.violations)
        if (v.axiom == axiom) return true;
    return false;
}

} // namespace

TEST_CASE("k[x]/(x^2) with zero differential verifies") {
    auto A = kx_square_zero();
    auto rep = verify_dg_algebra(A.algebra);
    CHECK(rep.pass());
    CHECK(rep.skipped == 0);
    CHECK(verify_dg_poisson(A).pass());
}

TEST_CASE("group algebra of Z/2 (x*x = 1) verifies") {
    GradedSpace sp({{"1", 0}, {"g", 0}});
    std::map<BilinearOp::Key, Element> prod;
    prod.emplace(BilinearOp::Key{0, 0}, Element::basis(sp, 0, q(1)));
    prod.emplace(BilinearOp::Key{0, 1}, Element::basis(sp, 1, q(1)));
    prod.emplace(BilinearOp::Key{1, 0}, Element::basis(sp, 1, q(1)));
    prod.emplace(BilinearOp::Key{1, 1}, Element::basis(sp, 0, q(1)));
    DGAlgebraData alg(Q(), sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap::zero(sp, sp, 1), true);
    CHECK(verify_dg_algebra(alg).pass());
}

TEST_CASE("corrupted Leibniz rule is reported with its witness") {
    // basis 1, x (deg 0), xi (deg -1), d(xi) = x but x*xi deliberately nonzero
    // in a way that breaks d(x*xi) = d(x)*xi + x*d(xi) = x^2 = 0.
    GradedSpace sp({{"1", 0}, {"x", 0}, {"xi", -1}});
    std::map<BilinearOp::Key, Element> prod;
    for (std::uint32_t i = 0; i < 3; ++i) {
        prod.emplace(BilinearOp::Key{0, i}, Element::basis(sp, i, q(1)));
        if (i) prod.emplace(BilinearOp::Key{i, 0}, Element::basis(sp, i, q(1)));
    }
    // x*xi = xi makes d(x*xi) = x while the Leibniz expansion gives x*x = 0.
    prod.emplace(BilinearOp::Key{1, 2}, Element::basis(sp, 2, q(1)));
    std::vector<Element> dimg{Element(sp), Element(sp), Element::basis(sp, 1, q(1))};
    DGAlgebraData alg(Q(), sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap(sp, sp, 1, std::move(dimg)), false);
    auto rep = verify_dg_algebra(alg);
    CHECK(!rep.pass());
    bool witness_found = false;
    for (const auto& v : rep.violations)
        if (v.axiom == "leibniz" && v.witness == std::vector<std::string>{"x", "xi"})
            witness_found = true;
    CHECK(witness_found);
}

TEST_CASE("abelian bracket with square-zero differential verifies") {
    auto A = koszul_pair();
    CHECK(verify_dg_lie(A.lie).pass());
    CHECK(verify_dg_poisson(A).pass());
}

TEST_CASE("sl2 passes all 27 Jacobi triples") {
    auto rep = verify_dg_lie(sl2_lie());
    CHECK(rep.pass());
}

TEST_CASE("odd shifted parity forces [u,u] = 0 when p = -1") {
    // |u| = 1, p = -1: shifted parity 0 is even, so {u,u} = -{u,u}.
    GradedSpace sp({{"u", 1}});
    std::map<BilinearOp::Key, Element> brak;
    brak.emplace(BilinearOp::Key{0, 0}, Element::basis(sp, 0, q(3)));
    DGLieData lie(Q(), sp, BilinearOp::total(sp, sp, sp, -1, std::move(brak)), -1,
                  GradedLinearMap::zero(sp, sp, 1));
    auto rep = verify_dg_lie(lie);
    CHECK(!rep.pass());
    CHECK(has_axiom(rep, "antisymmetry"));
}

TEST_CASE("ordinary Poisson algebra in degree 0 verifies") {
    auto A = linear_poisson();
    CHECK(verify_dg_poisson(A).pass());
    auto S = symplectic_pair();
    CHECK(verify_dg_poisson(S).pass());
}

TEST_CASE("the two Jacobi forms accept the same tables") {
    // On randomized-ish perturbations of sl2, "jacobi" fails iff
    // "jacobi-symmetric" fails.
    auto base = sl2_lie();
    for (long c = -2; c <= 2; ++c) {
        std::map<BilinearOp::Key, Element> brak = base.bracket.entries();
        const GradedSpace& sp = base.space;
        // perturb [e,f] by c*e while keeping antisymmetry
        brak[{0, 1}] = Element::basis(sp, 2, q(1)) + Element::basis(sp, 0, q(c));
        brak[{1, 0}] = -(Element::basis(sp, 2, q(1)) + Element::basis(sp, 0, q(c)));
        DGLieData lie(Q(), sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                      GradedLinearMap::zero(sp, sp, 1));
        auto rep = verify_dg_lie(lie);
        CHECK(has_axiom(rep, "jacobi") == has_axiom(rep, "jacobi-symmetric"));
        if (c == 0) CHECK(rep.pass());
    }
}

TEST_CASE("mismatched differentials between components are rejected") {
    auto A = koszul_pair();
    CHECK_THROWS_AS(DGPoissonData(A.algebra,
                                  DGLieData(Q(), A.space(),
                                            BilinearOp::total(A.space(), A.space(), A.space(), 0, {}),
                                            0, GradedLinearMap::zero(A.space(), A.space(), 1))),
                    value_error);
}

TEST_CASE("noncommutative data needs the explicit opt-in") {
    GradedSpace sp({{"1", 0}, {"u", 0}});
    std::map<BilinearOp::Key, Element> prod;
    prod.emplace(BilinearOp::Key{0, 0}, Element::basis(sp, 0, q(1)));
    prod.emplace(BilinearOp::Key{0, 1}, Element::basis(sp, 1, q(1)));
    prod.emplace(BilinearOp::Key{1, 0}, Element::basis(sp, 1, q(1)));
    prod.emplace(BilinearOp::Key{1, 1}, Element::basis(sp, 1, q(1)));
    DGAlgebraData alg(Q(), sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap::zero(sp, sp, 1), /*commutative=*/false);
    DGLieData lie(Q(), sp, BilinearOp::total(sp, sp, sp, 0, {}), 0,
                  GradedLinearMap::zero(sp, sp, 1));
    DGPoissonData P(alg, lie);
    auto rep = verify_dg_poisson(P);
    CHECK(has_axiom(rep, "commutativity-required"));
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = true;
    CHECK(verify_dg_poisson(P, opts).pass());
}

TEST_CASE("regular and zero modules verify; scaled Lie action fails (iii)") {
    auto A = linear_poisson();
    auto reg = regular_module(A);
    CHECK(verify_dg_poisson_module(reg).pass());

    GradedSpace zero_sp{std::vector<BasisSymbol>{}};
    DGPoissonModuleData zero(A, zero_sp,
                             BilinearOp::total(A.space(), zero_sp, zero_sp, 0, {}),
                             BilinearOp::total(A.space(), zero_sp, zero_sp, 0, {}),
                             GradedLinearMap::zero(zero_sp, zero_sp, 1));
    CHECK(verify_dg_poisson_module(zero).pass());

    std::map<BilinearOp::Key, Element> doubled;
    for (const auto& [key, val] : A.lie.bracket.entries())
        doubled.emplace(key, val.scaled(q(2)));
    DGPoissonModuleData bad(A, A.space(), A.algebra.product,
                            BilinearOp::total(A.space(), A.space(), A.space(), 0,
                                              std::move(doubled)),
                            A.algebra.differential);
    auto rep = verify_dg_poisson_module(bad);
    CHECK(!rep.pass());
    CHECK(has_axiom(rep, "poisson-module-iii"));
}

TEST_CASE("module verification requires a verified algebra") {
    // break Jacobi in the underlying algebra
    GradedSpace sp({{"1", 0}, {"x", 0}, {"y", 0}, {"z", 0}});
    std::map<BilinearOp::Key, Element> prod;
    for (std::uint32_t i = 0; i < 4; ++i) {
        prod.emplace(BilinearOp::Key{0, i}, Element::basis(sp, i, q(1)));
        if (i) prod.emplace(BilinearOp::Key{i, 0}, Element::basis(sp, i, q(1)));
    }
    std::map<BilinearOp::Key, Element> brak;
    auto setb = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, long c) {
        brak.emplace(BilinearOp::Key{i, j}, Element::basis(sp, k, q(c)));
    };
    setb(1, 2, 3, 1);
    setb(2, 1, 3, -1);
    setb(1, 3, 1, 1);
    setb(3, 1, 1, -1);
    setb(2, 3, 2, 1);
    setb(3, 2, 2, -1);
    DGAlgebraData alg(Q(), sp, 0, BilinearOp::total(sp, sp, sp, 0, std::move(prod)),
                      GradedLinearMap::zero(sp, sp, 1), true);
    DGLieData lie(Q(), sp, BilinearOp::total(sp, sp, sp, 0, std::move(brak)), 0,
                  GradedLinearMap::zero(sp, sp, 1));
    DGPoissonData broken(alg, lie);
    CHECK(!verify_dg_poisson(broken).pass());
    DGPoissonModuleData reg(broken, broken.space(), broken.algebra.product,
                            broken.lie.bracket, broken.algebra.differential);
    CHECK_THROWS_AS(verify_dg_poisson_module(reg), precondition_error);
}

TEST_CASE("cohomology of d = 0 is the identity on structure constants") {
    auto A = linear_poisson();
    auto H = cohomology_full(A);
    CHECK(H.algebra.space().dim() == A.space().dim());
    CHECK(verify_dg_poisson(H.algebra).pass());
    // representative sets coincide with the original basis
    for (std::uint32_t i = 0; i < A.space().dim(); ++i)
        CHECK(H.representatives[i] == A.basis_elem(i));
    // same multiplication table under the identification
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 0; j < 3; ++j) {
            Element lhs = H.algebra.br(H.algebra.basis_elem(i), H.algebra.basis_elem(j));
            Element rhs = A.br(A.basis_elem(i), A.basis_elem(j));
            CHECK(lhs.coeffs().size() == rhs.coeffs().size());
        }
}

TEST_CASE("cohomology of the Koszul pair is k") {
    auto A = koszul_pair();
    auto H = cohomology(A);
    CHECK(H.space().dim() == 1);
    CHECK(H.space().degree(0) == 0);
    CHECK(verify_dg_poisson(H).pass());
}

TEST_CASE("cohomology is idempotent") {
    for (const auto& A : {trivial_k(), kx_cube_zero(), koszul_pair(), symplectic_pair(),
                          linear_poisson()}) {
        auto H1 = cohomology(A);
        auto H2 = cohomology(H1);
        REQUIRE(H1.space().dim() == H2.space().dim());
        std::map<long long, int> d1, d2;
        for (std::uint32_t i = 0; i < H1.space().dim(); ++i) d1[H1.space().degree(i)]++;
        for (std::uint32_t i = 0; i < H2.space().dim(); ++i) d2[H2.space().degree(i)]++;
        CHECK(d1 == d2);
    }
}

TEST_CASE("single sign corruption of a verified table is detected") {
    auto A = linear_poisson();
    // flip {x,y} = x to -x without touching {y,x}
    auto brak = A.lie.bracket.entries();
    brak[{1, 2}] = Element::basis(A.space(), 1, q(-1));
    DGLieData lie(Q(), A.space(), BilinearOp::total(A.space(), A.space(), A.space(), 0,
                                                    std::move(brak)),
                  0, A.lie.differential);
    auto rep = verify_dg_lie(lie);
    CHECK(!rep.pass());
}
