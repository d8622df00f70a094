#include <doctest.h>

#include <random>

#include "relkill/phase.hpp"

using namespace relkill;

namespace {

struct Ex1 {
    CoordsPtr cs = CoordSystem::make(2);
    Metric g = Metric::conformal2d(cs, parse_ratfn("x^2+4*y^2", cs->table()));
    PhaseFn H = hamiltonian(g);
    PhaseFn R0 = PhaseFn::parse(cs, "x^2*p+2*y^2*p-x*y*q");
    PhaseFn R1 = PhaseFn::parse(cs, "2*y*p-x*q");
    PhaseFn R2 = PhaseFn::parse(cs, "2*y*p+x*q");
    PhaseFn R3 = PhaseFn::parse(cs, "2*x*p^2-2*y*p*q+x*q^2");
    PhaseFn F1 = PhaseFn::parse(cs, "(2*y*p-x*q)*(2*y*p+x*q)/(x^2+4*y^2)");
    PhaseFn F2 = PhaseFn::parse(cs, "(2*y*p-x*q)*(x^2*p+2*y^2*p-x*y*q)/(x^2+4*y^2)");
    PhaseFn F3 = PhaseFn::parse(cs, "(2*y*p-x*q)*(2*x*p^2-2*y*p*q+x*q^2)/(x^2+4*y^2)");
    // published cofactor data for this surface
    PhaseFn Lminus_printed = PhaseFn::parse(cs, "-6*(x*p+2*y*q)/(x^2+4*y^2)^2");
    PhaseFn Lplus_printed = PhaseFn::parse(cs, "2*(x*p-2*y*q)/(x^2+4*y^2)^2");
    PhaseFn Lref_printed = PhaseFn::parse(cs, "3*x*p/(x^2+4*y^2)^2");
};

struct Ex2 {
    CoordsPtr cs = CoordSystem::make(2);
    Metric g = Metric::conformal2d(cs, parse_ratfn("x^4+4*y^4", cs->table()));
    PhaseFn H = hamiltonian(g);
    PhaseFn R1 = PhaseFn::parse(cs, "2*y^2*p-x^2*q");
    PhaseFn R2 = PhaseFn::parse(cs, "2*y^2*p+x^2*q");
    PhaseFn R3 = PhaseFn::parse(cs, "(x^2+2*y^2)*y*p+x^3*q");
    PhaseFn R4 = PhaseFn::parse(cs, "(x^2-2*y^2)*p-2*x*y*q");
    PhaseFn L1_printed = PhaseFn::parse(cs, "-2*(x-2*y)*(x^2*p-2*y^2*q)/(x^4+4*y^4)^2");
    PhaseFn L2_printed = PhaseFn::parse(cs, "-2*(x+2*y)*(x^2*p+2*y^2*q)/(x^4+4*y^4)^2");
    PhaseFn L3_printed = PhaseFn::parse(cs, "-(4*x*(x^2+y^2)*p+2*y*(x^2+6*y^2)*q)/(x^4+4*y^4)^2");
};

PhaseFn must_cofactor(const PhaseFn& h, const PhaseFn& k) {
    auto r = cofactor_extract(h, k);
    REQUIRE(r.status == CofactorStatus::ok);
    return r.cofactor->fn;
}

Metric flat2() {
    auto cs = CoordSystem::make(2);
    auto one = RatFn::constant(cs->table(), Rat(1));
    auto zero = RatFn::zero(cs->table());
    return Metric::from_inverse(cs, {one, zero, zero, one});
}

PhaseFn random_phase(std::mt19937& rng, const CoordsPtr& cs, int pdeg = 2, int xdeg = 2) {
    std::uniform_int_distribution<int> c(-4, 4), nt(1, 3);
    Poly num = Poly::zero(cs->table());
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        Exponents e(cs->table()->size(), 0);
        int pb = pdeg, xb = xdeg;
        for (int i = 0; i < cs->dim(); ++i) {
            std::uniform_int_distribution<int> dx(0, xb), dp(0, pb);
            e[cs->xvar(i)] = static_cast<unsigned>(dx(rng));
            e[cs->pvar(i)] = static_cast<unsigned>(dp(rng));
            xb -= static_cast<int>(e[cs->xvar(i)]);
            pb -= static_cast<int>(e[cs->pvar(i)]);
        }
        int cv = c(rng);
        if (cv == 0) cv = 1;
        num += Poly::monomial(cs->table(), e, Rat(cv));
    }
    return PhaseFn(cs, RatFn::from_poly(num));
}

}  // namespace

TEST_CASE("flow convention and the global printed-cofactor constant") {
    Ex1 e;
    // hand oracle (direct differentiation): {H, R2} = 3(xp+2yq)/phi^2 * R2
    PhaseFn bracket = poisson_bracket(e.H, e.R2);
    PhaseFn expected = PhaseFn::parse(e.cs, "3*(x*p+2*y*q)/(x^2+4*y^2)^2") * e.R2;
    CHECK(bracket == expected);
    // the printed cofactor is kappa times the extracted one, kappa = -2
    PhaseFn L = must_cofactor(e.H, e.R2);
    CHECK(L.scaled(Rat(-2)) == e.Lminus_printed);
}

TEST_CASE("bracket basics") {
    Ex1 e;
    Metric flat = flat2();
    PhaseFn Hf = hamiltonian(flat);
    CHECK(poisson_bracket(Hf, PhaseFn::parse(flat.coords(), "p")).is_zero());
    CHECK(is_first_integral(e.H, e.H));
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        PhaseFn F = random_phase(rng, e.cs);
        CHECK(poisson_bracket(F, F).is_zero());
    }
    auto cs3 = CoordSystem::make(3);
    CHECK_THROWS_AS(poisson_bracket(e.H, PhaseFn::parse(cs3, "p1")), std::invalid_argument);
}

TEST_CASE("quadratic and cubic first integrals of the x^2+4y^2 surface") {
    Ex1 e;
    CHECK(is_first_integral(e.H, e.F1));
    CHECK(is_first_integral(e.H, e.F2));
    CHECK(is_first_integral(e.H, e.F3));
    CHECK_FALSE(is_first_integral(e.H, e.R1));
}

TEST_CASE("cofactor extraction on the x^2+4y^2 surface") {
    Ex1 e;
    PhaseFn L0 = must_cofactor(e.H, e.R0);
    PhaseFn L1 = must_cofactor(e.H, e.R1);
    PhaseFn L2 = must_cofactor(e.H, e.R2);
    PhaseFn L3 = must_cofactor(e.H, e.R3);
    // one constant relates all four extracted cofactors to the printed ones
    Rat kappa(-2);
    CHECK(L0.scaled(kappa) == e.Lminus_printed);
    CHECK(L1.scaled(kappa) == e.Lplus_printed);
    CHECK(L2.scaled(kappa) == e.Lminus_printed);
    CHECK(L3.scaled(kappa) == e.Lminus_printed);

    Metric flat = flat2();
    auto r = cofactor_extract(hamiltonian(flat), PhaseFn::parse(flat.coords(), "p"));
    CHECK(r.status == CofactorStatus::ok);
    CHECK(r.cofactor->is_zero());

    auto bad = cofactor_extract(e.H, PhaseFn::parse(e.cs, "p"));
    CHECK(bad.status == CofactorStatus::not_relative_killing);
    CHECK_THROWS_AS(cofactor_extract(e.H, PhaseFn::zero(e.cs)), std::invalid_argument);

    // powers stay relative Killing with scaled cofactor
    auto cube = cofactor_extract(e.H, e.R2 * e.R2 * e.R2);
    REQUIRE(cube.status == CofactorStatus::ok);
    CHECK(cube.cofactor->fn == L2.scaled(Rat(3)));
}

TEST_CASE("inexact and malformed quotients are distinguished") {
    Metric flat = flat2();
    PhaseFn Hf = hamiltonian(flat);
    auto cs = flat.coords();
    // p does not divide {H, p+x} = p? It does; but (p+x) does not divide p
    auto r1 = cofactor_extract(Hf, PhaseFn::parse(cs, "p+x"));
    CHECK(r1.status == CofactorStatus::not_relative_killing);
    // exact quotient of momentum degree 1
    auto r2 = cofactor_extract(Hf, PhaseFn::parse(cs, "x"));
    REQUIRE(r2.status == CofactorStatus::ok);
    CHECK(r2.cofactor->fn == PhaseFn::parse(cs, "p/x"));
    // exact quotient of the wrong momentum degree: K = x^2 + ... pick
    // K = 2*x*y with {H, 2xy} = 2(yp + xq); (yp+xq)/(xy) has degree 1, fine;
    // K of momentum degree 0 equal to x^2: {H,x^2} = 2xp, quotient 2p/x ok.
    // A wrong-degree case: K = x^2 - y^2 vs bracket 2(xp - yq)? also linear.
    // Force one: K = H itself has {H,H} = 0 -> cofactor zero; so use
    // K = p^2 + x: {H, p^2+x} = p; division by p^2+x is inexact.
    auto r3 = cofactor_extract(Hf, PhaseFn::parse(cs, "p^2+x"));
    CHECK(r3.status == CofactorStatus::not_relative_killing);
}

TEST_CASE("rational integral checks") {
    Ex1 e;
    RationalIntegral G1 = reduce_rational_integral(e.R0, e.R2);
    CHECK(rational_integral_check(e.H, G1));
    RationalIntegral G2 = reduce_rational_integral(e.R3, e.R0);
    CHECK(rational_integral_check(e.H, G2));
    RationalIntegral pq =
        reduce_rational_integral(PhaseFn::parse(e.cs, "p"), PhaseFn::parse(e.cs, "q"));
    CHECK_FALSE(rational_integral_check(e.H, pq));

    Ex2 e2;
    RationalIntegral F3 = reduce_rational_integral(e2.R3, e2.R4);
    CHECK(rational_integral_check(e2.H, F3));
}

TEST_CASE("reduction of rational integrals") {
    Ex1 e;
    PhaseFn phi(e.cs, parse_ratfn("x^2+4*y^2", e.cs->table()));
    // G1 = F2/F1 after clearing the common conformal denominator
    RationalIntegral lhs = reduce_rational_integral(e.F2 * phi, e.F1 * phi);
    RationalIntegral rhs = reduce_rational_integral(e.R0, e.R2);
    CHECK(lhs == rhs);
    RationalIntegral same = reduce_rational_integral(e.R1, e.R1);
    CHECK(same.p() == PhaseFn::parse(e.cs, "1"));
    CHECK(same.q() == PhaseFn::parse(e.cs, "1"));
    RationalIntegral prod = reduce_rational_integral(e.R1 * e.R0, e.R1 * e.R2);
    CHECK(prod == rhs);
    CHECK_THROWS_AS(reduce_rational_integral(e.R1, PhaseFn::zero(e.cs)), std::invalid_argument);
    // invariance under simultaneous scaling
    CHECK(reduce_rational_integral(e.R0.scaled(Rat(7)), e.R2.scaled(Rat(7))) == rhs);
}

TEST_CASE("split by momentum degree") {
    auto cs = CoordSystem::make(2);
    PhaseFn f = PhaseFn::parse(cs, "p^2+p");
    auto parts = split_homogeneous(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == PhaseFn::parse(cs, "p"));
    CHECK(parts[1] == PhaseFn::parse(cs, "p^2"));
    CHECK(split_homogeneous(PhaseFn::parse(cs, "p*q")).size() == 1);
    CHECK(split_homogeneous(PhaseFn::zero(cs)).empty());
    PhaseFn sum = PhaseFn::zero(cs);
    for (const auto& part : parts) sum = sum + part;
    CHECK(sum == f);
}

TEST_CASE("homogeneous components of an integral are integrals") {
    Ex1 e;
    PhaseFn mixed = e.F1 + e.F3;
    CHECK(is_first_integral(e.H, mixed));
    auto parts = split_homogeneous(mixed);
    REQUIRE(parts.size() == 2);
    for (const auto& part : parts) CHECK(is_first_integral(e.H, part));
}

TEST_CASE("cofactors of the quartic surface and their curls") {
    Ex2 e;
    PhaseFn L1 = must_cofactor(e.H, e.R1);
    PhaseFn L2 = must_cofactor(e.H, e.R2);
    PhaseFn L3 = must_cofactor(e.H, e.R3);
    PhaseFn L4 = must_cofactor(e.H, e.R4);
    CHECK(L3 == L4);
    // printed values relate to the extracted ones by a single constant within
    // this example; it is -1 here, not the -2 of the quadratic surface
    Rat kappa2(-1);
    CHECK(L1.scaled(kappa2) == e.L1_printed);
    CHECK(L2.scaled(kappa2) == e.L2_printed);
    CHECK(L3.scaled(kappa2) == e.L3_printed);

    Cofactor c12 = Cofactor::from_phase(L1 + L2);
    CHECK(cofactor_curl(e.g, c12).is_zero());
    Cofactor c23 = Cofactor::from_phase(L2 - L3);
    CHECK_FALSE(cofactor_curl(e.g, c23).is_zero());
    CHECK(cofactor_curl(e.g, Cofactor::zero(e.cs)).is_zero());
}

TEST_CASE("cohomology of cofactors") {
    Ex1 e;
    PhaseFn Lm = must_cofactor(e.H, e.R2);                   // extracted units
    PhaseFn Lp = must_cofactor(e.H, e.R1);
    PhaseFn Lref = e.Lref_printed.scaled(make_rat(-1, 2));   // printed / kappa
    Poly phi = parse_ratfn("x^2+4*y^2", e.cs->table()).num();
    // c found by solving one linear equation in the q-component
    CHECK(cohomologous_check(e.H, Cofactor::from_phase(Lm), Cofactor::from_phase(-Lref), phi,
                             make_rat(3, 4)));
    CHECK(cohomologous_check(e.H, Cofactor::from_phase(Lp), Cofactor::from_phase(Lref), phi,
                             make_rat(1, 4)));
    CHECK(cohomologous_check(e.H, Cofactor::from_phase(Lm), Cofactor::from_phase(Lm), phi, Rat(0)));
    CHECK_FALSE(cohomologous_check(e.H, Cofactor::from_phase(Lm), Cofactor::from_phase(Lp), phi,
                                   make_rat(1, 2)));

    Ex2 e2;
    PhaseFn L2f = must_cofactor(e2.H, e2.R2);
    PhaseFn L3f = must_cofactor(e2.H, e2.R3);
    Poly phi2 = parse_ratfn("x^4+4*y^4", e2.cs->table()).num();
    for (int num = -4; num <= 4; ++num) {
        CHECK_FALSE(cohomologous_check(e2.H, Cofactor::from_phase(L2f), Cofactor::from_phase(L3f),
                                       phi2, make_rat(num, 4)));
    }
    CHECK_THROWS_AS(cohomologous_check(e.H, Cofactor::from_phase(Lm), Cofactor::from_phase(Lp),
                                       Poly::zero(e.cs->table()), Rat(1)),
                    std::invalid_argument);
}

TEST_CASE("bracket axioms on random phase functions") {
    auto cs = CoordSystem::make(2);
    std::mt19937 rng(20240501);
    int checked = 0;
    while (checked < 200) {
        PhaseFn F = random_phase(rng, cs), G = random_phase(rng, cs), K = random_phase(rng, cs);
        CHECK(poisson_bracket(F, G) == -poisson_bracket(G, F));
        CHECK(poisson_bracket(F + G.scaled(Rat(3)), K) ==
              poisson_bracket(F, K) + poisson_bracket(G, K).scaled(Rat(3)));
        CHECK(poisson_bracket(F, G * K) == poisson_bracket(F, G) * K + G * poisson_bracket(F, K));
        PhaseFn jac = poisson_bracket(F, poisson_bracket(G, K)) +
                      poisson_bracket(G, poisson_bracket(K, F)) +
                      poisson_bracket(K, poisson_bracket(F, G));
        CHECK(jac.is_zero());
        ++checked;
    }
}

TEST_CASE("cofactor grading and gauge transformation") {
    Ex1 e;
    PhaseFn Ks[3] = {e.R0, e.R1, e.R2};
    PhaseFn Ls[3] = {must_cofactor(e.H, e.R0), must_cofactor(e.H, e.R1), must_cofactor(e.H, e.R2)};
    std::mt19937 rng(88);
    std::uniform_int_distribution<int> pick(0, 2), cnum(-3, 3);
    int done = 0;
    while (done < 50) {
        int a = pick(rng), b = pick(rng);
        // grading: cofactor(K1 K2) = L1 + L2
        CHECK(must_cofactor(e.H, Ks[a] * Ks[b]) == Ls[a] + Ls[b]);
        // gauge: K -> fK shifts the cofactor by {H,f}/f
        int n = cnum(rng);
        if (n == 0) n = 2;
        RatFn f = parse_ratfn("x^2+4*y^2", e.cs->table()).scaled(Rat(n));
        PhaseFn fK(e.cs, f * Ks[a].value());
        PhaseFn ffn(e.cs, f);
        PhaseFn shifted = Ls[a] + PhaseFn(e.cs, poisson_bracket(e.H, ffn).value() / f);
        CHECK(must_cofactor(e.H, fK) == shifted);
        ++done;
    }
}
