#include "dgpa/structures.hpp"

#include <sstream>

namespace dgpa {

namespace {

/// Evaluate one identity instance; a truncation overflow defers the instance
/// instead of failing it.
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

void merge(VerificationReport& into, VerificationReport part) {
    into.checked += part.checked;
    into.skipped += part.skipped;
    for (auto& v : part.violations) into.violations.push_back(std::move(v));
}

} // namespace

DGAlgebraData::DGAlgebraData(Field f, GradedSpace sp, std::uint32_t unit_idx, BilinearOp prod,
                             GradedLinearMap diff, bool comm)
    : field(std::move(f)), space(std::move(sp)), unit(unit_idx), product(std::move(prod)),
      differential(std::move(diff)), commutative(comm) {
    if (unit >= space.dim()) throw value_error("unit index out of range");
    if (space.degree(unit) != 0)
        throw value_error("unit symbol '" + space.name(unit) + "' must have degree 0");
    if (product.degree() != 0) throw value_error("product must have degree 0");
    if (!product.lhs().same_as(space) || !product.rhs().same_as(space) ||
        !product.target().same_as(space))
        throw value_error("product table is not an operation on the algebra's space");
    if (differential.degree() != 1) throw value_error("differential must have degree 1");
    if (!differential.source().same_as(space) || !differential.target().same_as(space))
        throw value_error("differential is not an endomorphism of the algebra's space");
}

Element DGAlgebraData::unit_element() const {
    return Element::basis(space, unit, Scalar::one(field));
}

DGLieData::DGLieData(Field f, GradedSpace sp, BilinearOp br, long long p, GradedLinearMap diff)
    : field(std::move(f)), space(std::move(sp)), bracket(std::move(br)), bracket_degree(p),
      differential(std::move(diff)) {
    if (bracket.degree() != bracket_degree)
        throw value_error("bracket table degree disagrees with the declared bracket degree");
    if (!bracket.lhs().same_as(space) || !bracket.rhs().same_as(space) ||
        !bracket.target().same_as(space))
        throw value_error("bracket table is not an operation on the Lie algebra's space");
    if (differential.degree() != 1) throw value_error("differential must have degree 1");
    if (!differential.source().same_as(space) || !differential.target().same_as(space))
        throw value_error("differential is not an endomorphism of the Lie algebra's space");
}

DGPoissonData::DGPoissonData(DGAlgebraData alg, DGLieData l)
    : algebra(std::move(alg)), lie(std::move(l)) {
    if (!algebra.space.same_as(lie.space))
        throw value_error("algebra and Lie components live on different spaces");
    if (algebra.field != lie.field)
        throw value_error("algebra and Lie components use different fields");
    if (!(algebra.differential == lie.differential))
        throw value_error("algebra and Lie components carry different differentials");
}

DGVectorSpaceData::DGVectorSpaceData(Field f, GradedSpace sp, GradedLinearMap diff)
    : field(std::move(f)), space(std::move(sp)), differential(std::move(diff)) {
    if (differential.degree() != 1) throw value_error("differential must have degree 1");
    if (!differential.source().same_as(space) || !differential.target().same_as(space))
        throw value_error("differential is not an endomorphism of the space");
    for (std::uint32_t i = 0; i < space.dim(); ++i)
        if (!differential.apply(differential.image(i)).is_zero())
            throw value_error("differential does not square to zero on '" + space.name(i) + "'");
}

DGPoissonModuleData::DGPoissonModuleData(DGPoissonData alg, GradedSpace sp, BilinearOp act,
                                         BilinearOp lie_act, GradedLinearMap diff)
    : algebra(std::move(alg)), space(std::move(sp)), action(std::move(act)),
      lie_action(std::move(lie_act)), differential(std::move(diff)) {
    if (action.degree() != 0) throw value_error("module action must have degree 0");
    if (lie_action.degree() != algebra.p())
        throw value_error("module Lie action must have the bracket degree");
    if (!action.lhs().same_as(algebra.space()) || !action.rhs().same_as(space) ||
        !action.target().same_as(space))
        throw value_error("module action has the wrong shape");
    if (!lie_action.lhs().same_as(algebra.space()) || !lie_action.rhs().same_as(space) ||
        !lie_action.target().same_as(space))
        throw value_error("module Lie action has the wrong shape");
    if (differential.degree() != 1 || !differential.source().same_as(space) ||
        !differential.target().same_as(space))
        throw value_error("module differential has the wrong shape");
}

DGPoissonRightModuleData::DGPoissonRightModuleData(DGPoissonData alg, GradedSpace sp,
                                                   BilinearOp act, BilinearOp lie_act,
                                                   GradedLinearMap diff)
    : algebra(std::move(alg)), space(std::move(sp)), action(std::move(act)),
      lie_action(std::move(lie_act)), differential(std::move(diff)) {
    if (action.degree() != 0) throw value_error("module action must have degree 0");
    if (lie_action.degree() != algebra.p())
        throw value_error("module Lie action must have the bracket degree");
    if (!action.lhs().same_as(space) || !action.rhs().same_as(algebra.space()) ||
        !action.target().same_as(space))
        throw value_error("right module action has the wrong shape");
    if (!lie_action.lhs().same_as(space) || !lie_action.rhs().same_as(algebra.space()) ||
        !lie_action.target().same_as(space))
        throw value_error("right module Lie action has the wrong shape");
    if (differential.degree() != 1 || !differential.source().same_as(space) ||
        !differential.target().same_as(space))
        throw value_error("module differential has the wrong shape");
}

std::string Violation::to_string() const {
    std::ostringstream os;
    os << axiom << " fails at (";
    for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) os << ", ";
        os << witness[i];
    }
    os << "): discrepancy " << discrepancy.to_string();
    return os.str();
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << (pass() ? "PASS" : "FAIL") << " (" << checked << " instances checked";
    if (skipped) os << ", " << skipped << " deferred out-of-window";
    os << ")";
    for (const auto& v : violations) os << "\n  " << v.to_string();
    return os.str();
}

VerificationReport verify_dg_algebra(const DGAlgebraData& a) {
    VerificationReport rep;
    const auto n = static_cast<std::uint32_t>(a.space.dim());
    const Element one = a.unit_element();
    const Field& F = a.field;

    for (std::uint32_t i = 0; i < n; ++i) {
        Element x = a.basis_elem(i);
        check(rep, "d-squared", {a.space.name(i)}, [&] { return a.d(a.d(x)); });
        check(rep, "unit-left", {a.space.name(i)}, [&] { return a.mul(one, x) - x; });
        check(rep, "unit-right", {a.space.name(i)}, [&] { return a.mul(x, one) - x; });
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        Element x = a.basis_elem(i);
        long long dx = a.space.degree(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            Element y = a.basis_elem(j);
            check(rep, "leibniz", {a.space.name(i), a.space.name(j)}, [&] {
                return a.d(a.mul(x, y)) - a.mul(a.d(x), y) -
                       a.mul(x, a.d(y)).scaled(Scalar::of_int(F, parity_sign_int(dx)));
            });
            if (a.commutative && j >= i) {
                check(rep, "graded-commutativity", {a.space.name(i), a.space.name(j)}, [&] {
                    return a.mul(x, y) -
                           a.mul(y, x).scaled(koszul_sign(F, dx, a.space.degree(j)));
                });
            }
        }
    }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            for (std::uint32_t k = 0; k < n; ++k) {
                Element x = a.basis_elem(i), y = a.basis_elem(j), z = a.basis_elem(k);
                check(rep, "associativity",
                      {a.space.name(i), a.space.name(j), a.space.name(k)},
                      [&] { return a.mul(a.mul(x, y), z) - a.mul(x, a.mul(y, z)); });
            }
    return rep;
}

VerificationReport verify_dg_lie(const DGLieData& l) {
    VerificationReport rep;
    const auto n = static_cast<std::uint32_t>(l.space.dim());
    const Field& F = l.field;
    const long long p = l.bracket_degree;
    auto sdeg = [&](std::uint32_t i) { return l.space.degree(i) + p; }; // shifted parity

    for (std::uint32_t i = 0; i < n; ++i) {
        Element x = l.basis_elem(i);
        check(rep, "d-squared", {l.space.name(i)}, [&] { return l.d(l.d(x)); });
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        Element x = l.basis_elem(i);
        for (std::uint32_t j = i; j < n; ++j) {
            Element y = l.basis_elem(j);
            check(rep, "antisymmetry", {l.space.name(i), l.space.name(j)}, [&] {
                return l.br(x, y) +
                       l.br(y, x).scaled(koszul_sign(F, sdeg(i), sdeg(j)));
            });
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        Element x = l.basis_elem(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            Element y = l.basis_elem(j);
            check(rep, "bracket-d-compat", {l.space.name(i), l.space.name(j)}, [&] {
                return l.d(l.br(x, y)) - l.br(l.d(x), y) -
                       l.br(x, l.d(y)).scaled(Scalar::of_int(F, parity_sign_int(sdeg(i))));
            });
            for (std::uint32_t k = 0; k < n; ++k) {
                Element z = l.basis_elem(k);
                std::vector<std::string> w{l.space.name(i), l.space.name(j), l.space.name(k)};
                check(rep, "jacobi", w, [&] {
                    return l.br(x, l.br(y, z)) - l.br(l.br(x, y), z) -
                           l.br(y, l.br(x, z)).scaled(koszul_sign(F, sdeg(i), sdeg(j)));
                });
                // The cyclic form must accept exactly the same tables.
                check(rep, "jacobi-symmetric", w, [&] {
                    Element s = l.br(x, l.br(y, z)).scaled(koszul_sign(F, sdeg(i), sdeg(k)));
                    s += l.br(y, l.br(z, x)).scaled(koszul_sign(F, sdeg(j), sdeg(i)));
                    s += l.br(z, l.br(x, y)).scaled(koszul_sign(F, sdeg(k), sdeg(j)));
                    return s;
                });
            }
        }
    }
    return rep;
}

VerificationReport verify_dg_poisson(const DGPoissonData& a, PoissonVerifyOptions opts) {
    VerificationReport rep;
    if (!a.algebra.commutative && !opts.allow_noncommutative)
        rep.violations.push_back({"commutativity-required", {}, Element(a.space())});
    merge(rep, verify_dg_algebra(a.algebra));
    merge(rep, verify_dg_lie(a.lie));
    const auto n = static_cast<std::uint32_t>(a.space().dim());
    const Field& F = a.field();
    const long long p = a.p();
    for (std::uint32_t i = 0; i < n; ++i) {
        Element x = a.basis_elem(i);
        long long di = a.space().degree(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            Element y = a.basis_elem(j);
            long long dj = a.space().degree(j);
            for (std::uint32_t k = 0; k < n; ++k) {
                Element z = a.basis_elem(k);
                check(rep, "poisson-identity",
                      {a.space().name(i), a.space().name(j), a.space().name(k)}, [&] {
                          return a.br(x, a.mul(y, z)) - a.mul(a.br(x, y), z) -
                                 a.mul(y, a.br(x, z))
                                     .scaled(koszul_sign(F, di + p, dj));
                      });
            }
        }
    }
    return rep;
}

VerificationReport verify_dg_poisson_module(const DGPoissonModuleData& m) {
    const auto& A = m.algebra;
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = !A.algebra.commutative;
    VerificationReport base = verify_dg_poisson(A, opts);
    if (!base.pass())
        throw precondition_error("underlying algebra fails verification",
                                 base.violations.front().to_string());

    VerificationReport rep;
    const auto na = static_cast<std::uint32_t>(A.space().dim());
    const auto nm = static_cast<std::uint32_t>(m.space.dim());
    const Field& F = A.field();
    const long long p = A.p();
    const Element one = A.algebra.unit_element();
    auto mb = [&](std::uint32_t i) { return Element::basis(m.space, i, Scalar::one(F)); };

    for (std::uint32_t u = 0; u < nm; ++u) {
        Element mm = mb(u);
        check(rep, "dM-squared", {m.space.name(u)}, [&] { return m.dM(m.dM(mm)); });
        check(rep, "unit-action", {m.space.name(u)}, [&] { return m.act(one, mm) - mm; });
    }
    for (std::uint32_t i = 0; i < na; ++i) {
        Element a = A.basis_elem(i);
        long long di = A.space().degree(i);
        for (std::uint32_t u = 0; u < nm; ++u) {
            Element mm = mb(u);
            check(rep, "action-d-compat", {A.space().name(i), m.space.name(u)}, [&] {
                return m.dM(m.act(a, mm)) - m.act(A.d(a), mm) -
                       m.act(a, m.dM(mm)).scaled(Scalar::of_int(F, parity_sign_int(di)));
            });
            check(rep, "lie-action-d-compat", {A.space().name(i), m.space.name(u)}, [&] {
                return m.dM(m.lie(a, mm)) - m.lie(A.d(a), mm) -
                       m.lie(a, m.dM(mm)).scaled(Scalar::of_int(F, parity_sign_int(di + p)));
            });
        }
    }
    for (std::uint32_t i = 0; i < na; ++i) {
        Element a = A.basis_elem(i);
        long long di = A.space().degree(i);
        for (std::uint32_t j = 0; j < na; ++j) {
            Element b = A.basis_elem(j);
            long long dj = A.space().degree(j);
            for (std::uint32_t u = 0; u < nm; ++u) {
                Element mm = mb(u);
                std::vector<std::string> w{A.space().name(i), A.space().name(j),
                                           m.space.name(u)};
                check(rep, "action-associativity", w, [&] {
                    return m.act(A.mul(a, b), mm) - m.act(a, m.act(b, mm));
                });
                // Operator form of the bracket relation: acting by [a,b] is the
                // graded commutator of acting by a and acting by b. (The nested
                // Jacobi identity gives [[a,b],c] = [a,[b,c]] - k(a,b)[b,[a,c]].)
                check(rep, "lie-module", w, [&] {
                    return m.lie(A.br(a, b), mm) - m.lie(a, m.lie(b, mm)) +
                           m.lie(b, m.lie(a, mm))
                               .scaled(koszul_sign(F, di + p, dj + p));
                });
                check(rep, "poisson-module-iii", w, [&] {
                    return m.lie(a, m.act(b, mm)) - m.act(A.br(a, b), mm) -
                           m.act(b, m.lie(a, mm)).scaled(koszul_sign(F, di + p, dj));
                });
                check(rep, "poisson-module-iv", w, [&] {
                    return m.lie(A.mul(a, b), mm) - m.act(a, m.lie(b, mm)) -
                           m.act(b, m.lie(a, mm)).scaled(koszul_sign(F, di, dj));
                });
            }
        }
    }
    return rep;
}

VerificationReport verify_dg_poisson_right_module(const DGPoissonRightModuleData& m) {
    const auto& A = m.algebra;
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = !A.algebra.commutative;
    VerificationReport base = verify_dg_poisson(A, opts);
    if (!base.pass())
        throw precondition_error("underlying algebra fails verification",
                                 base.violations.front().to_string());

    VerificationReport rep;
    const auto na = static_cast<std::uint32_t>(A.space().dim());
    const auto nm = static_cast<std::uint32_t>(m.space.dim());
    const Field& F = A.field();
    const long long p = A.p();
    const Element one = A.algebra.unit_element();
    auto mb = [&](std::uint32_t i) { return Element::basis(m.space, i, Scalar::one(F)); };

    for (std::uint32_t u = 0; u < nm; ++u) {
        Element mm = mb(u);
        check(rep, "dM-squared", {m.space.name(u)}, [&] { return m.dM(m.dM(mm)); });
        check(rep, "unit-action", {m.space.name(u)}, [&] { return m.act(mm, one) - mm; });
    }
    for (std::uint32_t u = 0; u < nm; ++u) {
        Element mm = mb(u);
        long long du = m.space.degree(u);
        for (std::uint32_t i = 0; i < na; ++i) {
            Element a = A.basis_elem(i);
            check(rep, "action-d-compat", {m.space.name(u), A.space().name(i)}, [&] {
                return m.dM(m.act(mm, a)) - m.act(m.dM(mm), a) -
                       m.act(mm, A.d(a)).scaled(Scalar::of_int(F, parity_sign_int(du)));
            });
            check(rep, "lie-action-d-compat", {m.space.name(u), A.space().name(i)}, [&] {
                return m.dM(m.lie(mm, a)) - m.lie(m.dM(mm), a) -
                       m.lie(mm, A.d(a)).scaled(Scalar::of_int(F, parity_sign_int(du + p)));
            });
        }
    }
    for (std::uint32_t u = 0; u < nm; ++u) {
        Element mm = mb(u);
        for (std::uint32_t i = 0; i < na; ++i) {
            Element a = A.basis_elem(i);
            long long di = A.space().degree(i);
            for (std::uint32_t j = 0; j < na; ++j) {
                Element b = A.basis_elem(j);
                long long dj = A.space().degree(j);
                std::vector<std::string> w{m.space.name(u), A.space().name(i),
                                           A.space().name(j)};
                check(rep, "action-associativity", w, [&] {
                    return m.act(m.act(mm, a), b) - m.act(mm, A.mul(a, b));
                });
                check(rep, "lie-module", w, [&] {
                    return m.lie(mm, A.br(a, b)) - m.lie(m.lie(mm, a), b) +
                           m.lie(m.lie(mm, b), a)
                               .scaled(koszul_sign(F, di + p, dj + p));
                });
                check(rep, "poisson-module-iii", w, [&] {
                    return m.lie(m.act(mm, a), b) - m.act(mm, A.br(a, b)) -
                           m.act(m.lie(mm, b), a)
                               .scaled(koszul_sign(F, di, dj + p));
                });
                check(rep, "poisson-module-iv", w, [&] {
                    return m.lie(mm, A.mul(a, b)) - m.act(m.lie(mm, a), b) -
                           m.act(m.lie(mm, b), a).scaled(koszul_sign(F, di, dj));
                });
            }
        }
    }
    return rep;
}

} // namespace dgpa
