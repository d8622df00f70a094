#ifndef RELKILL_PHASE_HPP
#define RELKILL_PHASE_HPP

#include <optional>
#include <string>
#include <vector>

#include "relkill/geometry.hpp"
#include "relkill/parse.hpp"

namespace relkill {

// Phase-space function polynomial in the momenta with rational coefficient
// functions of the base coordinates.
class PhaseFn {
public:
    PhaseFn() = default;
    PhaseFn(CoordsPtr cs, RatFn value);

    static PhaseFn parse(const CoordsPtr& cs, std::string_view text);
    static PhaseFn zero(const CoordsPtr& cs) { return PhaseFn(cs, RatFn::zero(cs->table())); }

    const CoordsPtr& coords() const { return cs_; }
    const RatFn& value() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }

    // kDegNegInf for the zero function
    int degree_in_p() const;
    bool momentum_homogeneous() const;

    // momentum multi-exponent (length m) -> coefficient in x
    std::map<Exponents, RatFn> momentum_terms() const;
    RatFn momentum_coefficient(const Exponents& alpha) const;
    RatFn momentum_coefficient_linear(int i) const;  // coefficient of p_i

    PhaseFn operator-() const { return PhaseFn(cs_, -v_); }
    friend PhaseFn operator+(const PhaseFn& a, const PhaseFn& b);
    friend PhaseFn operator-(const PhaseFn& a, const PhaseFn& b);
    friend PhaseFn operator*(const PhaseFn& a, const PhaseFn& b);
    PhaseFn scaled(const Rat& c) const { return PhaseFn(cs_, v_.scaled(c)); }
    bool operator==(const PhaseFn& o) const { return same_coords(cs_, o.cs_) && v_ == o.v_; }
    bool operator!=(const PhaseFn& o) const { return !(*this == o); }

private:
    CoordsPtr cs_;
    RatFn v_;
};

// H = 1/2 g^{ij} p_i p_j
PhaseFn hamiltonian(const Metric& g);

// Canonical bracket in the flow convention: {H, F} is the derivative of F
// along the Hamiltonian flow of H, i.e.
//   {F, G} = sum_i dF/dp_i dG/dx^i - dF/dx^i dG/dp_i.
PhaseFn poisson_bracket(const PhaseFn& f, const PhaseFn& g);

bool is_first_integral(const PhaseFn& h, const PhaseFn& f);

// Momentum-linear multiplier in {H,K} = L*K.
struct Cofactor {
    PhaseFn fn;

    static Cofactor from_phase(PhaseFn f);  // validates momentum degree
    static Cofactor zero(const CoordsPtr& cs) { return Cofactor{PhaseFn::zero(cs)}; }
    bool is_zero() const { return fn.is_zero(); }
};

enum class CofactorStatus { ok, not_relative_killing, malformed };

struct CofactorResult {
    CofactorStatus status = CofactorStatus::not_relative_killing;
    std::optional<Cofactor> cofactor;
    std::string detail;
};

// Exact division of {H,K} by K in the momentum-polynomial ring over the
// rational-function field in x. Distinguishes an inexact division from an
// exact quotient of the wrong momentum degree.
CofactorResult cofactor_extract(const PhaseFn& h, const PhaseFn& k);

// Ratio of relatively prime momentum-homogeneous polynomials.
class RationalIntegral {
public:
    const PhaseFn& p() const { return p_; }
    const PhaseFn& q() const { return q_; }
    int degree_p() const { return p_.degree_in_p(); }
    int degree_q() const { return q_.degree_in_p(); }
    bool operator==(const RationalIntegral& o) const { return p_ == o.p_ && q_ == o.q_; }

    friend RationalIntegral reduce_rational_integral(const PhaseFn& p, const PhaseFn& q);

private:
    RationalIntegral(PhaseFn p, PhaseFn q) : p_(std::move(p)), q_(std::move(q)) {}
    PhaseFn p_, q_;
};

// Cancels common momentum-polynomial factors over cleared denominators and
// normalizes the pair.
RationalIntegral reduce_rational_integral(const PhaseFn& p, const PhaseFn& q);

// True iff {H,P} Q - {H,Q} P = 0 exactly.
bool rational_integral_check(const PhaseFn& h, const RationalIntegral& f);

// Decomposition by momentum degree, ascending; the sum reconstructs the input.
std::vector<PhaseFn> split_homogeneous(const PhaseFn& f);

// Lowered one-form of a cofactor: l_i = g_{ij} l^j.
TensorField cofactor_to_oneform(const Metric& g, const Cofactor& l);

// d of the lowered cofactor: (dL)_{ab} = d_a l_b - d_b l_a.
TensorField cofactor_curl(const Metric& g, const Cofactor& l);

// True iff L1 - L2 = c {H, f} / f exactly (the bracket of H with log f).
bool cohomologous_check(const PhaseFn& h, const Cofactor& l1, const Cofactor& l2, const Poly& f,
                        const Rat& c);

// Raise all indices with g and contract with momenta.
PhaseFn tensor_to_phase(const Metric& g, const SymTensorField& k);
// Inverse: extract the symmetric tensor (lowered) of a momentum-homogeneous
// phase function.
SymTensorField phase_to_tensor(const Metric& g, const PhaseFn& f);

}  // namespace relkill

#endif
