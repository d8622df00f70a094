#include "relkill/ratfn.hpp"

namespace relkill {

RatFn RatFn::make(Poly num, Poly den) {
    if (!same_universe(num.vars(), den.vars()))
        throw VariableMismatch("numerator and denominator live in different variable universes");
    if (den.is_zero()) throw DivisionByZeroPoly("rational function with zero denominator");
    if (num.is_zero()) return RatFn(num, Poly::constant(num.vars(), Rat(1)));

    Poly g = poly_gcd(num, den);
    if (!g.is_constant()) {
        num = divexact(num, g);
        den = divexact(den, g);
    }
    Rat c = den.content();
    if (rat_sign(den.leading_coeff()) < 0) c = -c;
    Rat inv = Rat(1) / c;
    return RatFn(num.scaled(inv), den.scaled(inv));
}

RatFn RatFn::from_poly(Poly p) {
    Poly one = Poly::constant(p.vars(), Rat(1));
    return RatFn(std::move(p), std::move(one));
}

RatFn RatFn::operator-() const { return RatFn(-num_, den_); }

RatFn operator+(const RatFn& a, const RatFn& b) {
    // a/b + c/d with g = gcd(b, d) to keep intermediates small
    Poly g = poly_gcd(a.den_, b.den_);
    if (g.is_constant())
        return RatFn::make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly bred = divexact(a.den_, g);
    Poly dred = divexact(b.den_, g);
    return RatFn::make(a.num_ * dred + b.num_ * bred, a.den_ * dred);
}

RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }

RatFn operator*(const RatFn& a, const RatFn& b) {
    Poly g1 = poly_gcd(a.num_, b.den_);
    Poly g2 = poly_gcd(b.num_, a.den_);
    Poly n1 = g1.is_constant() ? a.num_ : divexact(a.num_, g1);
    Poly d2 = g1.is_constant() ? b.den_ : divexact(b.den_, g1);
    Poly n2 = g2.is_constant() ? b.num_ : divexact(b.num_, g2);
    Poly d1 = g2.is_constant() ? a.den_ : divexact(a.den_, g2);
    return RatFn::make(n1 * n2, d1 * d2);
}

RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw DivisionByZeroPoly("division by the zero rational function");
    return RatFn::make(a.num_ * b.den_, a.den_ * b.num_);
}

RatFn RatFn::scaled(const Rat& c) const {
    if (c == 0) return zero(vars());
    return RatFn(num_.scaled(c), den_);
}

RatFn RatFn::derivative(std::size_t var) const {
    if (!den_.depends_on(var))
        return RatFn::make(num_.derivative(var), den_);
    Poly dn = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RatFn::make(std::move(dn), den_ * den_);
}

Rat RatFn::evaluate(const std::vector<Rat>& point) const {
    Rat d = den_.evaluate(point);
    if (d == 0) throw PoleError("rational function evaluated at a pole");
    return num_.evaluate(point) / d;
}

double RatFn::evaluate_double(const std::vector<double>& point) const {
    double d = den_.evaluate_double(point);
    if (d == 0.0) throw PoleError("rational function evaluated at a pole");
    return num_.evaluate_double(point) / d;
}

}  // namespace relkill
