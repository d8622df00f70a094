#include "relkill/phase.hpp"

#include <algorithm>

namespace relkill {

namespace {

int momentum_degree_of(const Poly& p, const CoordSystem& cs) {
    if (p.is_zero()) return kDegNegInf;
    int deg = 0;
    for (const auto& [e, c] : p.terms()) {
        int d = 0;
        for (int i = 0; i < cs.dim(); ++i) d += static_cast<int>(e[cs.pvar(i)]);
        deg = std::max(deg, d);
    }
    return deg;
}

}  // namespace

PhaseFn::PhaseFn(CoordsPtr cs, RatFn value) : cs_(std::move(cs)), v_(std::move(value)) {
    if (!same_universe(cs_->table(), v_.vars()))
        throw VariableMismatch("phase function value must live over the phase-space universe");
    if (momentum_degree_of(v_.den(), *cs_) > 0)
        throw std::invalid_argument("phase function must be polynomial in the momenta");
}

PhaseFn PhaseFn::parse(const CoordsPtr& cs, std::string_view text) {
    return PhaseFn(cs, parse_ratfn(text, cs->table()));
}

int PhaseFn::degree_in_p() const { return momentum_degree_of(v_.num(), *cs_); }

bool PhaseFn::momentum_homogeneous() const {
    if (v_.is_zero()) return true;
    int deg = -1;
    for (const auto& [e, c] : v_.num().terms()) {
        int d = 0;
        for (int i = 0; i < cs_->dim(); ++i) d += static_cast<int>(e[cs_->pvar(i)]);
        if (deg < 0) deg = d;
        if (d != deg) return false;
    }
    return true;
}

std::map<Exponents, RatFn> PhaseFn::momentum_terms() const {
    std::map<Exponents, Poly> groups;
    const int m = cs_->dim();
    for (const auto& [e, c] : v_.num().terms()) {
        Exponents alpha(static_cast<std::size_t>(m), 0);
        Exponents xpart = e;
        for (int i = 0; i < m; ++i) {
            alpha[static_cast<std::size_t>(i)] = e[cs_->pvar(i)];
            xpart[cs_->pvar(i)] = 0;
        }
        auto it = groups.find(alpha);
        if (it == groups.end()) it = groups.emplace(alpha, Poly::zero(cs_->table())).first;
        it->second += Poly::monomial(cs_->table(), xpart, c);
    }
    std::map<Exponents, RatFn> out;
    for (auto& [alpha, num] : groups) out.emplace(alpha, RatFn::make(num, v_.den()));
    return out;
}

RatFn PhaseFn::momentum_coefficient(const Exponents& alpha) const {
    const int m = cs_->dim();
    Poly num = Poly::zero(cs_->table());
    for (const auto& [e, c] : v_.num().terms()) {
        bool match = true;
        for (int i = 0; i < m; ++i)
            if (e[cs_->pvar(i)] != alpha[static_cast<std::size_t>(i)]) {
                match = false;
                break;
            }
        if (!match) continue;
        Exponents xpart = e;
        for (int i = 0; i < m; ++i) xpart[cs_->pvar(i)] = 0;
        num += Poly::monomial(cs_->table(), xpart, c);
    }
    return RatFn::make(std::move(num), v_.den());
}

RatFn PhaseFn::momentum_coefficient_linear(int i) const {
    Exponents alpha(static_cast<std::size_t>(cs_->dim()), 0);
    alpha[static_cast<std::size_t>(i)] = 1;
    return momentum_coefficient(alpha);
}

PhaseFn operator+(const PhaseFn& a, const PhaseFn& b) {
    if (!same_coords(a.cs_, b.cs_)) throw std::invalid_argument("phase function dimension mismatch");
    return PhaseFn(a.cs_, a.v_ + b.v_);
}

PhaseFn operator-(const PhaseFn& a, const PhaseFn& b) {
    if (!same_coords(a.cs_, b.cs_)) throw std::invalid_argument("phase function dimension mismatch");
    return PhaseFn(a.cs_, a.v_ - b.v_);
}

PhaseFn operator*(const PhaseFn& a, const PhaseFn& b) {
    if (!same_coords(a.cs_, b.cs_)) throw std::invalid_argument("phase function dimension mismatch");
    return PhaseFn(a.cs_, a.v_ * b.v_);
}

PhaseFn hamiltonian(const Metric& g) {
    const auto& cs = g.coords();
    RatFn acc = RatFn::zero(cs->table());
    for (int i = 0; i < g.dim(); ++i) {
        for (int j = 0; j < g.dim(); ++j) {
            if (g.inv(i, j).is_zero()) continue;
            RatFn pp = RatFn::variable(cs->table(), cs->pvar(i)) *
                       RatFn::variable(cs->table(), cs->pvar(j));
            acc += g.inv(i, j) * pp;
        }
    }
    return PhaseFn(cs, acc.scaled(make_rat(1, 2)));
}

PhaseFn poisson_bracket(const PhaseFn& f, const PhaseFn& g) {
    if (!same_coords(f.coords(), g.coords()))
        throw std::invalid_argument("poisson bracket dimension mismatch");
    const auto& cs = f.coords();
    RatFn acc = RatFn::zero(cs->table());
    for (int i = 0; i < cs->dim(); ++i) {
        acc += f.value().derivative(cs->pvar(i)) * g.value().derivative(cs->xvar(i));
        acc -= f.value().derivative(cs->xvar(i)) * g.value().derivative(cs->pvar(i));
    }
    return PhaseFn(cs, std::move(acc));
}

bool is_first_integral(const PhaseFn& h, const PhaseFn& f) { return poisson_bracket(h, f).is_zero(); }

Cofactor Cofactor::from_phase(PhaseFn f) {
    if (!f.is_zero()) {
        if (f.degree_in_p() != 1 || !f.momentum_homogeneous())
            throw std::invalid_argument("cofactor must be homogeneous of momentum degree 1");
    }
    return Cofactor{std::move(f)};
}

CofactorResult cofactor_extract(const PhaseFn& h, const PhaseFn& k) {
    if (k.is_zero()) throw std::invalid_argument("cofactor extraction requires K != 0");
    PhaseFn b = poisson_bracket(h, k);
    if (b.is_zero())
        return {CofactorStatus::ok, Cofactor::zero(k.coords()), "Killing (cofactor 0)"};
    RatFn q = b.value() / k.value();
    if (momentum_degree_of(q.den(), *k.coords()) > 0)
        return {CofactorStatus::not_relative_killing, std::nullopt,
                "K does not divide {H,K} in the momentum polynomial ring"};
    PhaseFn quotient(k.coords(), q);
    if (quotient.degree_in_p() != 1 || !quotient.momentum_homogeneous() )
        return {CofactorStatus::malformed, std::nullopt,
                "quotient {H,K}/K has momentum degree != 1"};
    return {CofactorStatus::ok, Cofactor{std::move(quotient)}, ""};
}

RationalIntegral reduce_rational_integral(const PhaseFn& p, const PhaseFn& q) {
    if (q.is_zero()) throw std::invalid_argument("rational integral requires Q != 0");
    if (!p.momentum_homogeneous() || !q.momentum_homogeneous())
        throw std::invalid_argument("rational integral parts must be momentum-homogeneous");
    const auto& cs = p.coords();
    if (p.is_zero()) {
        PhaseFn one(cs, RatFn::constant(cs->table(), Rat(1)));
        return RationalIntegral(PhaseFn::zero(cs), std::move(one));
    }
    RatFn ratio = p.value() / q.value();
    PhaseFn pr(cs, RatFn::from_poly(ratio.num()));
    PhaseFn qr(cs, RatFn::from_poly(ratio.den()));
    // factors of momentum-homogeneous polynomials are momentum-homogeneous
    if (!pr.momentum_homogeneous() || !qr.momentum_homogeneous())
        throw std::logic_error("reduction produced non-homogeneous parts");
    return RationalIntegral(std::move(pr), std::move(qr));
}

bool rational_integral_check(const PhaseFn& h, const RationalIntegral& f) {
    PhaseFn lhs = poisson_bracket(h, f.p()) * f.q() - poisson_bracket(h, f.q()) * f.p();
    return lhs.is_zero();
}

std::vector<PhaseFn> split_homogeneous(const PhaseFn& f) {
    std::map<int, Poly> groups;
    const auto& cs = f.coords();
    for (const auto& [e, c] : f.value().num().terms()) {
        int d = 0;
        for (int i = 0; i < cs->dim(); ++i) d += static_cast<int>(e[cs->pvar(i)]);
        auto it = groups.find(d);
        if (it == groups.end()) it = groups.emplace(d, Poly::zero(cs->table())).first;
        it->second += Poly::monomial(cs->table(), e, c);
    }
    std::vector<PhaseFn> out;
    for (auto& [d, num] : groups) out.emplace_back(cs, RatFn::make(num, f.value().den()));
    return out;
}

TensorField cofactor_to_oneform(const Metric& g, const Cofactor& l) {
    const auto& cs = g.coords();
    TensorField out(cs, 1);
    for (int i = 0; i < g.dim(); ++i) {
        RatFn acc = RatFn::zero(cs->table());
        for (int j = 0; j < g.dim(); ++j) acc += g.lower(i, j) * l.fn.momentum_coefficient_linear(j);
        out.at({i}) = std::move(acc);
    }
    return out;
}

TensorField cofactor_curl(const Metric& g, const Cofactor& l) {
    const auto& cs = g.coords();
    TensorField low = cofactor_to_oneform(g, l);
    TensorField out(cs, 2);
    for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b)
            out.at({a, b}) = low.at({b}).derivative(cs->xvar(a)) - low.at({a}).derivative(cs->xvar(b));
    return out;
}

bool cohomologous_check(const PhaseFn& h, const Cofactor& l1, const Cofactor& l2, const Poly& f,
                        const Rat& c) {
    if (f.is_zero()) throw std::invalid_argument("gauge potential f must be nonzero");
    const auto& cs = h.coords();
    for (int i = 0; i < cs->dim(); ++i)
        if (f.depends_on(cs->pvar(i)))
            throw std::invalid_argument("gauge potential f must depend on base coordinates only");
    PhaseFn fp(cs, RatFn::from_poly(f));
    PhaseFn bracket = poisson_bracket(h, fp);
    RatFn rhs = (bracket.value() / RatFn::from_poly(f)).scaled(c);
    RatFn lhs = l1.fn.value() - l2.fn.value();
    return lhs == rhs;
}

PhaseFn tensor_to_phase(const Metric& g, const SymTensorField& k) {
    const auto& cs = g.coords();
    TensorField dense = k.to_dense();
    // raise every slot
    for (int slot = 0; slot < dense.rank(); ++slot) {
        TensorField raised(cs, dense.rank());
        for (std::size_t f = 0; f < dense.size(); ++f) {
            std::vector<int> idx = dense.decode(f);
            RatFn acc = RatFn::zero(cs->table());
            std::vector<int> src = idx;
            for (int j = 0; j < g.dim(); ++j) {
                src[slot] = j;
                const RatFn& comp = dense.at(src);
                if (comp.is_zero()) continue;
                acc += g.inv(idx[slot], j) * comp;
            }
            raised.flat(f) = std::move(acc);
        }
        dense = std::move(raised);
    }
    RatFn acc = RatFn::zero(cs->table());
    for (std::size_t f = 0; f < dense.size(); ++f) {
        if (dense.flat(f).is_zero()) continue;
        RatFn mono = RatFn::constant(cs->table(), Rat(1));
        for (int i : dense.decode(f)) mono *= RatFn::variable(cs->table(), cs->pvar(i));
        acc += dense.flat(f) * mono;
    }
    return PhaseFn(cs, std::move(acc));
}

SymTensorField phase_to_tensor(const Metric& g, const PhaseFn& f) {
    if (!f.momentum_homogeneous())
        throw std::invalid_argument("phase_to_tensor requires a momentum-homogeneous function");
    const auto& cs = g.coords();
    const int d = std::max(f.degree_in_p(), 0);
    TensorField upper(cs, d);
    for (const auto& [alpha, coeff] : f.momentum_terms()) {
        // distribute over all tuples with this exponent pattern
        unsigned long mult = 1;
        {
            Int fac = factorial(static_cast<unsigned>(d));
            for (unsigned a : alpha) fac /= factorial(a);
            mult = fac.get_ui();
        }
        Rat w(1, static_cast<long>(mult));
        w.canonicalize();
        // build the sorted tuple for alpha
        std::vector<int> tuple;
        for (int i = 0; i < cs->dim(); ++i)
            for (unsigned r = 0; r < alpha[static_cast<std::size_t>(i)]; ++r) tuple.push_back(i);
        std::sort(tuple.begin(), tuple.end());
        do {
            upper.at(tuple) = coeff.scaled(w);
        } while (std::next_permutation(tuple.begin(), tuple.end()));
    }
    // lower every slot
    TensorField dense = std::move(upper);
    for (int slot = 0; slot < d; ++slot) {
        TensorField lowered(cs, d);
        for (std::size_t t = 0; t < dense.size(); ++t) {
            std::vector<int> idx = dense.decode(t);
            RatFn acc = RatFn::zero(cs->table());
            std::vector<int> src = idx;
            for (int j = 0; j < g.dim(); ++j) {
                src[slot] = j;
                const RatFn& comp = dense.at(src);
                if (comp.is_zero()) continue;
                acc += g.lower(idx[slot], j) * comp;
            }
            lowered.flat(t) = std::move(acc);
        }
        dense = std::move(lowered);
    }
    return SymTensorField::from_dense(dense);
}

}  // namespace relkill
