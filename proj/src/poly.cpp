#include "relkill/poly.hpp"

#include <algorithm>

namespace relkill {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
}

std::optional<std::size_t> VarTable::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

bool same_universe(const VarTablePtr& a, const VarTablePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Poly Poly::zero(VarTablePtr vars) {
    Poly p;
    p.vars_ = std::move(vars);
    return p;
}

Poly Poly::constant(VarTablePtr vars, Rat c) {
    Poly p = zero(std::move(vars));
    if (c != 0) p.terms_.emplace(Exponents(p.vars_->size(), 0), std::move(c));
    return p;
}

Poly Poly::variable(VarTablePtr vars, std::size_t index) {
    Poly p = zero(std::move(vars));
    if (index >= p.vars_->size()) throw std::out_of_range("variable index out of range");
    Exponents e(p.vars_->size(), 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Rat(1));
    return p;
}

Poly Poly::monomial(VarTablePtr vars, Exponents e, Rat c) {
    Poly p = zero(std::move(vars));
    if (e.size() != p.vars_->size()) throw std::invalid_argument("exponent vector length mismatch");
    if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && exp_total(terms_.begin()->first) == 0;
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return kDegNegInf;
    return static_cast<int>(exp_total(terms_.rbegin()->first));
}

int Poly::degree_in(std::size_t var) const {
    if (terms_.empty()) return kDegNegInf;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return static_cast<int>(d);
}

const Exponents& Poly::leading_exponents() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.rbegin()->first;
}

const Rat& Poly::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.rbegin()->second;
}

void Poly::insert_term(const Exponents& e, const Rat& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void Poly::check_same(const Poly& a, const Poly& b) {
    if (!same_universe(a.vars_, b.vars_))
        throw VariableMismatch("polynomial operands live in different variable universes");
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same(*this, o);
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same(*this, o);
    for (const auto& [e, c] : o.terms_) insert_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly::check_same(a, b);
    Poly r = Poly::zero(a.vars_);
    const std::size_t n = a.vars_->size();
    Exponents e(n);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rat& c) const {
    if (c == 0) return zero(vars_);
    Poly r = *this;
    for (auto& [e, coeff] : r.terms_) coeff *= c;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r = constant(vars_, Rat(1));
    Poly base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (!same_universe(vars_, o.vars_)) return false;
    return terms_ == o.terms_;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= vars_->size()) throw VariableMismatch("unknown variable in derivative");
    Poly r = zero(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.insert_term(d, c * Rat(static_cast<long>(e[var])));
    }
    return r;
}

Rat Poly::evaluate(const std::vector<Rat>& point) const {
    if (point.size() != vars_->size()) throw std::invalid_argument("evaluation point arity mismatch");
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

double Poly::evaluate_double(const std::vector<double>& point) const {
    if (point.size() != vars_->size()) throw std::invalid_argument("evaluation point arity mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = rat_to_double(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

Rat Poly::content() const {
    if (terms_.empty()) return Rat(0);
    Int gnum(0), lden(1);
    for (const auto& [e, c] : terms_) {
        gnum = int_gcd(gnum, rat_num(c));
        lden = int_lcm(lden, rat_den(c));
    }
    Rat r(gnum, lden);
    r.canonicalize();
    if (r < 0) r = -r;
    return r;
}

Poly Poly::normalized_primitive() const {
    if (terms_.empty()) return *this;
    Rat c = content();
    if (rat_sign(leading_coeff()) < 0) c = -c;
    return scaled(Rat(1) / c);
}

std::map<unsigned, Poly> Poly::coefficients_in(std::size_t var) const {
    std::map<unsigned, Poly> out;
    for (const auto& [e, c] : terms_) {
        unsigned k = e[var];
        auto it = out.find(k);
        if (it == out.end()) it = out.emplace(k, zero(vars_)).first;
        Exponents stripped = e;
        stripped[var] = 0;
        it->second.insert_term(stripped, c);
    }
    return out;
}

Poly Poly::coeff_of(std::size_t var, unsigned power) const {
    Poly out = zero(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != power) continue;
        Exponents stripped = e;
        stripped[var] = 0;
        out.insert_term(stripped, c);
    }
    return out;
}

Poly Poly::shifted(std::size_t var, unsigned k) const {
    Poly out = zero(vars_);
    for (const auto& [e, c] : terms_) {
        Exponents shifted = e;
        shifted[var] += k;
        out.terms_.emplace(std::move(shifted), c);
    }
    return out;
}

std::optional<Poly> try_divexact(const Poly& a, const Poly& b) {
    Poly::check_same(a, b);
    if (b.is_zero()) throw DivisionByZeroPoly("exact division by the zero polynomial");
    Poly q = Poly::zero(a.vars_);
    Poly r = a;
    const Exponents& lb = b.leading_exponents();
    const Rat& cb = b.leading_coeff();
    const std::size_t n = a.vars_->size();
    while (!r.is_zero()) {
        const Exponents& lr = r.leading_exponents();
        Exponents diff(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            diff[i] = lr[i] - lb[i];
        }
        Poly t = Poly::monomial(a.vars_, std::move(diff), r.leading_coeff() / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

Poly divexact(const Poly& a, const Poly& b) {
    auto q = try_divexact(a, b);
    if (!q) throw std::logic_error("divexact: not divisible");
    return *q;
}

namespace {

// Pseudo-remainder of a by b wrt var; leading terms cancel exactly at
// every step, so deg_var strictly decreases.
Poly prem(Poly r, const Poly& b, std::size_t var) {
    const int eb = b.degree_in(var);
    const Poly lb = b.coeff_of(var, static_cast<unsigned>(eb));
    while (!r.is_zero() && r.degree_in(var) >= eb) {
        const unsigned dr = static_cast<unsigned>(r.degree_in(var));
        Poly lr = r.coeff_of(var, dr);
        r = lb * r - (lr * b).shifted(var, dr - static_cast<unsigned>(eb));
    }
    return r;
}

Poly gcd_impl(const Poly& a, const Poly& b);

// gcd of the univariate-in-var coefficient polynomials.
Poly content_in(const Poly& p, std::size_t var) {
    auto coeffs = p.coefficients_in(var);
    Poly c = Poly::zero(p.vars());
    for (const auto& [k, q] : coeffs) {
        c = c.is_zero() ? q.normalized_primitive() : gcd_impl(c, q);
        if (c.is_constant()) return Poly::constant(p.vars(), Rat(1));
    }
    return c;
}

// Primitive PRS. Both inputs nonzero.
Poly gcd_impl(const Poly& a, const Poly& b) {
    const std::size_t n = a.vars()->size();
    std::size_t var = n;
    for (std::size_t v = 0; v < n; ++v) {
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) {
            var = v;
            break;
        }
    }
    if (var == n) return Poly::constant(a.vars(), Rat(1));

    if (a.degree_in(var) <= 0) return gcd_impl(a, content_in(b, var));
    if (b.degree_in(var) <= 0) return gcd_impl(content_in(a, var), b);

    Poly ca = content_in(a, var), cb = content_in(b, var);
    Poly A = divexact(a, ca).normalized_primitive();
    Poly B = divexact(b, cb).normalized_primitive();
    Poly c = gcd_impl(ca, cb);

    if (A.degree_in(var) < B.degree_in(var)) std::swap(A, B);
    Poly g = Poly::constant(a.vars(), Rat(1));
    while (true) {
        Poly r = prem(A, B, var);
        if (r.is_zero()) {
            g = divexact(B, content_in(B, var)).normalized_primitive();
            break;
        }
        if (r.degree_in(var) == 0) break;  // gcd free of var; inputs were var-primitive
        A = B;
        B = divexact(r, content_in(r, var)).normalized_primitive();
    }
    return c * g;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly::check_same(a, b);
    if (a.is_zero() && b.is_zero()) return a;
    if (a.is_zero()) return b.normalized_primitive();
    if (b.is_zero()) return a.normalized_primitive();
    Poly g = gcd_impl(a.normalized_primitive(), b.normalized_primitive());
    return g.normalized_primitive();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.vars());
    return divexact(a * b, poly_gcd(a, b)).normalized_primitive();
}

}  // namespace relkill
