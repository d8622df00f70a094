#include <doctest.h>

#include <random>

#include "relkill/parse.hpp"
#include "relkill/poly.hpp"
#include "relkill/ratfn.hpp"

using namespace relkill;

namespace {

VarTablePtr xy_pq() { return VarTable::make({"x", "y", "p", "q"}); }

Poly P(const VarTablePtr& t, const char* s) {
    RatFn f = parse_ratfn(s, t);
    REQUIRE(f.is_polynomial());
    return f.num().scaled(Rat(1) / f.den().constant_value());
}

RatFn F(const VarTablePtr& t, const char* s) { return parse_ratfn(s, t); }

// deterministic sparse polynomial source for property suites
struct RandomPolys {
    std::mt19937 rng;
    VarTablePtr vars;
    int max_deg;
    explicit RandomPolys(unsigned seed, VarTablePtr v, int deg = 6) : rng(seed), vars(std::move(v)), max_deg(deg) {}

    Rat coeff() {
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 4);
        int n = num(rng);
        if (n == 0) n = 1;
        return make_rat(n, den(rng));
    }

    Poly poly(bool nonzero = false) {
        std::uniform_int_distribution<int> nterms(nonzero ? 1 : 0, 4);
        std::uniform_int_distribution<int> expo(0, max_deg);
        int k = nterms(rng);
        Poly p = Poly::zero(vars);
        for (int i = 0; i < k; ++i) {
            Exponents e(vars->size(), 0);
            int budget = max_deg;
            for (std::size_t v = 0; v < vars->size(); ++v) {
                std::uniform_int_distribution<int> ei(0, budget);
                e[v] = static_cast<unsigned>(ei(rng) / 2);
                budget -= static_cast<int>(e[v]);
            }
            p += Poly::monomial(vars, e, coeff());
        }
        if (nonzero && p.is_zero()) p = Poly::constant(vars, coeff());
        return p;
    }
};

}  // namespace

TEST_CASE("ring arithmetic basics") {
    auto t = xy_pq();
    Poly phi = P(t, "x^2+4*y^2");
    CHECK(phi * Poly::constant(t, Rat(1)) == phi);
    CHECK(P(t, "(2*y*p-x*q)*(2*y*p+x*q)") == P(t, "4*y^2*p^2-x^2*q^2"));
    CHECK(F(t, "1/x") + F(t, "1/y") == F(t, "(x+y)/(x*y)"));
    CHECK_THROWS_AS(
        [&] {
            auto other = VarTable::make({"x", "y"});
            return P(t, "x") + P(other, "x");
        }(),
        VariableMismatch);
}

TEST_CASE("poly gcd examples") {
    auto t = xy_pq();
    CHECK(poly_gcd(P(t, "x^2-y^2"), P(t, "x-y")) == P(t, "x-y"));
    CHECK(poly_gcd(P(t, "0"), P(t, "3*x")) == P(t, "x"));

    // gcd(2yp-xq, 2yp+xq) = 1: brute force over degree-<=1 candidate divisors
    Poly a = P(t, "2*y*p-x*q"), b = P(t, "2*y*p+x*q");
    CHECK(poly_gcd(a, b).is_constant());
    for (int c0 = -2; c0 <= 2; ++c0)
        for (int c1 = -2; c1 <= 2; ++c1)
            for (int c2 = -2; c2 <= 2; ++c2)
                for (int c3 = -2; c3 <= 2; ++c3)
                    for (int c4 = -2; c4 <= 2; ++c4) {
                        Poly d = Poly::constant(t, Rat(c0));
                        d += Poly::variable(t, 0).scaled(Rat(c1));
                        d += Poly::variable(t, 1).scaled(Rat(c2));
                        d += Poly::variable(t, 2).scaled(Rat(c3));
                        d += Poly::variable(t, 3).scaled(Rat(c4));
                        if (d.is_constant()) continue;
                        bool divides_both = try_divexact(a, d).has_value() && try_divexact(b, d).has_value();
                        CHECK_FALSE(divides_both);
                    }
}

TEST_CASE("poly divexact examples") {
    auto t = xy_pq();
    Poly q = divexact(P(t, "4*y^2*p^2-x^2*q^2"), P(t, "2*y*p-x*q"));
    CHECK(q == P(t, "2*y*p+x*q"));
    CHECK(q * P(t, "2*y*p-x*q") == P(t, "4*y^2*p^2-x^2*q^2"));
    CHECK(divexact(P(t, "x^2"), P(t, "x")) == P(t, "x"));
    CHECK_FALSE(try_divexact(P(t, "x^2+1"), P(t, "x")).has_value());
    CHECK_THROWS_AS(try_divexact(P(t, "x"), P(t, "0")), DivisionByZeroPoly);
}

TEST_CASE("partial derivatives") {
    auto t = xy_pq();
    CHECK(P(t, "x^2+4*y^2").derivative(0) == P(t, "2*x"));
    // quotient rule by hand: d/dy 1/(x^2+4y^2) = -8y/(x^2+4y^2)^2
    CHECK(F(t, "1/(x^2+4*y^2)").derivative(1) == F(t, "-8*y/(x^2+4*y^2)^2"));
    CHECK(F(t, "x/(x^2+4*y^2)").derivative(2).is_zero());
    CHECK_THROWS_AS(P(t, "x").derivative(17), VariableMismatch);
}

TEST_CASE("evaluation") {
    auto t = xy_pq();
    std::vector<Rat> pt = {Rat(1), Rat(1), Rat(0), Rat(0)};
    CHECK(P(t, "x^2+4*y^2").evaluate(pt) == Rat(5));
    std::vector<Rat> origin = {Rat(0), Rat(0), Rat(0), Rat(0)};
    CHECK_THROWS_AS(F(t, "1/x").evaluate(origin), PoleError);
    // (2yp - xq) at (x,y,p,q) = (1,2,3,4): 2*2*3 - 1*4 = 8
    std::vector<Rat> pt2 = {Rat(1), Rat(2), Rat(3), Rat(4)};
    CHECK(P(t, "2*y*p-x*q").evaluate(pt2) == Rat(8));
    CHECK(P(t, "2*y*p-x*q").evaluate_double({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(8.0));
}

TEST_CASE("rational function normal form") {
    auto t = xy_pq();
    CHECK(RatFn::make(P(t, "x^2-y^2"), P(t, "x-y")) == F(t, "x+y"));
    CHECK(RatFn::make(P(t, "2*x"), P(t, "-2")) == F(t, "-x"));
    CHECK(RatFn::make(P(t, "(2*y*p-x*q)*(x*p)"), P(t, "(2*y*p-x*q)*(x^2)")) == F(t, "p/x"));
    CHECK_THROWS_AS(RatFn::make(P(t, "x"), P(t, "0")), DivisionByZeroPoly);
    // canonical: denominator primitive with positive leading coefficient
    RatFn f = RatFn::make(P(t, "x"), P(t, "-2*y+4*x"));
    CHECK(f.den() == P(t, "2*x-y"));
    CHECK(f.num() == P(t, "x").scaled(make_rat(1, 2)));
}

TEST_CASE("zero polynomial degree sentinel") {
    auto t = xy_pq();
    CHECK(P(t, "0").total_degree() == kDegNegInf);
    CHECK(P(t, "0").is_constant());
    CHECK(P(t, "3").total_degree() == 0);
    CHECK(P(t, "x*y*q").total_degree() == 3);
}

TEST_CASE("gcd/divexact round trips on random sparse polynomials") {
    auto t = xy_pq();
    RandomPolys gen(20260810, t, 6);
    int done = 0;
    while (done < 500) {
        Poly a = gen.poly();
        Poly b = gen.poly(true);
        Poly ab = a * b;
        auto q = try_divexact(ab, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
        ++done;
    }
}

TEST_CASE("gcd divides both arguments and respects common factors") {
    auto t = xy_pq();
    RandomPolys gen(777, t, 4);
    for (int i = 0; i < 60; ++i) {
        Poly a = gen.poly(true), b = gen.poly(true), c = gen.poly(true);
        Poly g = poly_gcd(a, b);
        CHECK(try_divexact(a, g).has_value());
        CHECK(try_divexact(b, g).has_value());
        Poly lhs = poly_gcd(a * c, b * c);
        Poly rhs = (poly_gcd(a, b) * c).normalized_primitive();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Leibniz rule and evaluation homomorphism on randoms") {
    auto t = xy_pq();
    RandomPolys gen(424242, t, 5);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int i = 0; i < 60; ++i) {
        Poly f = gen.poly(), g = gen.poly();
        for (std::size_t v = 0; v < 4; ++v) {
            CHECK((f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v));
        }
        std::vector<Rat> pt;
        for (int k = 0; k < 4; ++k) pt.emplace_back(coord(rng));
        CHECK((f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt));
        CHECK((f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt));
    }
}

TEST_CASE("RatFn canonical form is construction independent") {
    auto t = xy_pq();
    RandomPolys gen(1337, t, 4);
    for (int i = 0; i < 60; ++i) {
        Poly a = gen.poly(), b = gen.poly(true), c = gen.poly(true);
        RatFn f = RatFn::make(a, b);
        RatFn g = RatFn::make(a * c, b * c);
        CHECK(f == g);
        CHECK(f.num() == g.num());
        CHECK(f.den() == g.den());
        if (!f.is_zero()) CHECK(poly_gcd(f.num(), f.den()).is_constant());
        CHECK(f.den().content() == Rat(1));
        CHECK(rat_sign(f.den().leading_coeff()) > 0);
    }
}
