#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgpa/bilinear_op.hpp"
#include "dgpa/echelon.hpp"
#include "dgpa/element.hpp"
#include "dgpa/field.hpp"
#include "dgpa/graded_space.hpp"
#include "test_util.hpp"

using namespace dgpa;
using dgpa::testing::q;

TEST_CASE("rational scalars are exact") {
    Field F = Field::rationals();
    Scalar third = Scalar::ratio(F, 1, 3);
    Scalar sum = third + third + third;
    CHECK(sum == Scalar::one(F));
    CHECK(third.to_string() == "1/3");
    CHECK(Scalar::parse(F, "2/6") == third);
    CHECK(Scalar::parse(F, "-7") == Scalar::of_int(F, -7));
    CHECK_THROWS_AS(Scalar::one(F) / Scalar::zero(F), value_error);

    // big numbers stay exact
    Scalar big = Scalar::one(F);
    for (int i = 0; i < 40; ++i) big *= Scalar::of_int(F, 10);
    Scalar back = big;
    for (int i = 0; i < 40; ++i) back /= Scalar::of_int(F, 10);
    CHECK(back == Scalar::one(F));
}

TEST_CASE("prime fields require odd primes") {
    CHECK_THROWS_AS(Field::prime(2), value_error);
    CHECK_THROWS_AS(Field::prime(9), value_error);
    Field F5 = Field::prime(5);
    Scalar a = Scalar::of_int(F5, 3);
    CHECK((a * a).to_string() == "4 mod 5");
    CHECK(a / a == Scalar::one(F5));
    CHECK(Scalar::parse(F5, "3 mod 5") == a);
    CHECK(Scalar::parse(F5, "1/2") == Scalar::of_int(F5, 3));
    CHECK_THROWS_AS(a + Scalar::one(Field::rationals()), field_mismatch_error);
    CHECK(Field::parse("Fp 5") == F5);
    CHECK(Field::parse("Q") == Field::rationals());
}

TEST_CASE("koszul sign examples and properties") {
    Field F = Field::rationals();
    CHECK(koszul_sign(F, 1, 1) == Scalar::of_int(F, -1));
    CHECK(koszul_sign(F, 0, 7) == Scalar::one(F));
    CHECK(koszul_sign(F, 2, 3) == Scalar::one(F));
    for (long d1 = -6; d1 <= 6; ++d1)
        for (long d2 = -6; d2 <= 6; ++d2) {
            CHECK(koszul_sign_int(d1, d2) == koszul_sign_int(d2, d1));
            for (long e = -3; e <= 3; ++e)
                CHECK(koszul_sign_int(d1 + e, d2) ==
                      koszul_sign_int(d1, d2) * koszul_sign_int(e, d2));
        }
}

TEST_CASE("graded space basics and tensor space") {
    GradedSpace v({{"e", 0}});
    GradedSpace w({{"f", 1}});
    GradedSpace t = tensor_space(v, w);
    CHECK(t.dim() == 1);
    CHECK(t.degree(0) == 1);

    GradedSpace a({{"a1", 0}, {"a2", 1}});
    GradedSpace b({{"b1", 0}, {"b2", 1}, {"b3", 2}});
    GradedSpace ab = tensor_space(a, b);
    CHECK(ab.dim() == 6);
    // lexicographic order in the factor orders
    CHECK(ab.name(0) == "a1⊗b1");
    CHECK(ab.name(1) == "a1⊗b2");
    CHECK(ab.name(5) == "a2⊗b3");

    GradedSpace c({{"c0", 0}, {"c1", 1}});
    GradedSpace cc = tensor_space(c, c);
    std::vector<long long> degs;
    for (std::uint32_t i = 0; i < cc.dim(); ++i) degs.push_back(cc.degree(i));
    CHECK(degs == std::vector<long long>{0, 1, 1, 2});

    CHECK_THROWS_AS(GradedSpace({{"x", 0}, {"x", 1}}), value_error);
}

TEST_CASE("element normalization: adding then subtracting gives canonical zero") {
    GradedSpace sp({{"u", 0}, {"v", 2}});
    Element e = Element::basis(sp, 0, q(2, 3)) + Element::basis(sp, 1, q(-5));
    Element z = e - e;
    CHECK(z.is_zero());
    CHECK(z.coeffs().empty());
    CHECK(z == Element(sp));
    CHECK(e.homogeneous_degree() == std::nullopt);
    CHECK(Element::basis(sp, 1, q(4)).homogeneous_degree() == 2);
}

TEST_CASE("apply_bilinear agrees with the table and is exactly bilinear") {
    // product table of k[x]/(x^2)
    auto A = dgpa::testing::kx_square_zero();
    const GradedSpace& sp = A.space();
    Element x = Element::basis(sp, 1, q(1));
    CHECK(A.mul(x, x).is_zero());
    CHECK(A.mul(x, Element(sp)).is_zero());

    // bracket {x,y} = 1 on a 2-dim space: bilinearity 2x, 3y -> 6
    GradedSpace two({{"x", 0}, {"y", 0}});
    GradedSpace one({{"1", 0}});
    std::map<BilinearOp::Key, Element> tab;
    tab.emplace(BilinearOp::Key{0, 1}, Element::basis(one, 0, q(1)));
    tab.emplace(BilinearOp::Key{1, 0}, Element::basis(one, 0, q(-1)));
    BilinearOp br = BilinearOp::total(two, two, one, 0, std::move(tab));
    Element r = br.apply(Element::basis(two, 0, q(2)), Element::basis(two, 1, q(3)));
    CHECK(r == Element::basis(one, 0, q(6)));

    // exact bilinearity on rational combinations
    Element u = Element::basis(two, 0, q(7, 5)) + Element::basis(two, 1, q(-3));
    Element v = Element::basis(two, 0, q(1, 7)) + Element::basis(two, 1, q(2, 9));
    Element lhs = br.apply(u, v);
    Element rhs(one);
    rhs += br.apply(Element::basis(two, 0, q(7, 5)), v);
    rhs += br.apply(Element::basis(two, 1, q(-3)), v);
    CHECK(lhs == rhs);
}

TEST_CASE("partial tables throw on undefined entries") {
    GradedSpace sp({{"1", 0}, {"x", 0}});
    std::map<BilinearOp::Key, Element> tab;
    tab.emplace(BilinearOp::Key{0, 0}, Element::basis(sp, 0, q(1)));
    BilinearOp op = BilinearOp::partial(sp, sp, sp, 0, std::move(tab));
    CHECK(op.defined(0, 0));
    CHECK(!op.defined(1, 1));
    Element x = Element::basis(sp, 1, q(1));
    CHECK_THROWS_AS(op.apply(x, x), truncation_overflow_error);
    CHECK(op.undefined_count() == 3);
}

TEST_CASE("linear maps enforce homogeneity of images") {
    GradedSpace sp({{"a", 0}, {"b", 1}});
    // degree-1 map a -> b is fine
    GradedLinearMap d(sp, sp, 1, {Element::basis(sp, 1, q(1)), Element(sp)});
    CHECK(d.apply(Element::basis(sp, 0, q(3))) == Element::basis(sp, 1, q(3)));
    // degree-1 map a -> a is not homogeneous of degree 1
    CHECK_THROWS_AS(GradedLinearMap(sp, sp, 1, {Element::basis(sp, 0, q(1)), Element(sp)}),
                    value_error);
}

TEST_CASE("row reducer computes ranks and reductions exactly") {
    Field F = Field::rationals();
    RowReducer red(F);
    auto vec = [&](std::initializer_list<std::pair<std::uint32_t, long>> items) {
        SparseVec v;
        for (auto [c, val] : items) v.emplace(c, Scalar::of_int(F, val));
        return v;
    };
    CHECK(red.add_row(vec({{0, 1}, {1, 2}})).has_value());
    CHECK(red.add_row(vec({{1, 1}, {2, 1}})).has_value());
    CHECK(!red.add_row(vec({{0, 2}, {1, 6}, {2, 2}})).has_value()); // 2*r1 + 2*r2
    CHECK(red.rank() == 2);
    SparseVec residual = red.reduce(vec({{0, 1}, {1, 2}, {2, 5}}));
    CHECK(residual.size() == 1);
    CHECK(residual.at(2) == Scalar::of_int(F, 5));

    RowReducer large(F, /*pivot_largest=*/true);
    large.add_row(vec({{0, 1}, {5, 1}}));
    CHECK(large.rows().count(5) == 1);
}
