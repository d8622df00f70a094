#ifndef RELKILL_RATFN_HPP
#define RELKILL_RATFN_HPP

#include "relkill/poly.hpp"

namespace relkill {

// Reduced fraction of polynomials. Canonical form: gcd(num, den) = 1, den is
// primitive with integer coefficients and positive leading coefficient under
// the global grlex order; zero is 0/1. Two constructions of the same function
// compare equal field-by-field.
class RatFn {
public:
    RatFn() = default;

    static RatFn make(Poly num, Poly den);
    static RatFn from_poly(Poly p);
    static RatFn zero(VarTablePtr vars) { return from_poly(Poly::zero(std::move(vars))); }
    static RatFn constant(VarTablePtr vars, Rat c) {
        return from_poly(Poly::constant(std::move(vars), std::move(c)));
    }
    static RatFn variable(VarTablePtr vars, std::size_t index) {
        return from_poly(Poly::variable(std::move(vars), index));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const VarTablePtr& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFn operator-() const;
    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }
    RatFn scaled(const Rat& c) const;

    bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    RatFn derivative(std::size_t var) const;
    bool depends_on(std::size_t var) const {
        return num_.depends_on(var) || den_.depends_on(var);
    }

    // Exact evaluation; throws PoleError when the denominator vanishes.
    Rat evaluate(const std::vector<Rat>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

private:
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

}  // namespace relkill

#endif
