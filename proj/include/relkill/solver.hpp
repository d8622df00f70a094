#ifndef RELKILL_SOLVER_HPP
#define RELKILL_SOLVER_HPP

#include "relkill/phase.hpp"

namespace relkill {

// dim of the Killing d-tensor space on an m-dimensional spaceform:
// (m+d-1)! (m+d)! / ((m-1)! m! d! (d+1)!)
long long lambda_dim(int m, int d);

// C(r+m-1, r) + C(s+m-1, s) - 1: pointwise parameters of a rational
// integral of bidegree (r, s)
long long param_count_n(int m, int r, int s);

enum class SolveMode { killing, relative, conformal };

// Finite-dimensional search window: coefficient polynomials of degree <= N
// over a fixed denominator D^k, momentum degree exactly d.
struct Ansatz {
    CoordsPtr cs;
    int d = 1;
    int N = 1;
    Poly denominator;  // D; 1 for a polynomial window
    int denominator_power = 0;

    // slots are (momentum exponent alpha, coordinate exponent mu), ordered
    std::vector<std::pair<Exponents, Exponents>> slots;

    static Ansatz make(const CoordsPtr& cs, int d, int N);
    static Ansatz make(const CoordsPtr& cs, int d, int N, Poly D, int k);

    std::size_t slot_count() const { return slots.size(); }
    PhaseFn basis_element(std::size_t j) const;
    PhaseFn reconstruct(const std::vector<Rat>& coeffs) const;
};

struct LinearSystem {
    struct Row {
        std::vector<std::pair<std::size_t, Rat>> entries;  // (column, value), sorted
        Exponents provenance;  // the (x,p)-monomial that produced the row
    };
    std::size_t ncols = 0;
    std::vector<Row> rows;
};

// Rows of the cleared-denominator defining equation, one per monomial of
// the residual: killing {H,K}=0, relative {H,K}=L*K, conformal {H,K}=Lam*H
// with the degree-(d-1) multiplier appended as extra unknowns.
LinearSystem assemble_system(const Metric& g, const Ansatz& ansatz, SolveMode mode,
                             const std::optional<Cofactor>& L);

// Exact kernel basis via fraction-free elimination with lowest-index
// pivoting; vectors are integer, primitive, first nonzero entry positive.
std::vector<std::vector<Rat>> nullspace(const LinearSystem& sys);

struct Basis {
    std::vector<PhaseFn> elements;
    int dim = 0;
    SolveMode mode = SolveMode::killing;
    std::optional<Cofactor> cofactor;
    Ansatz ansatz;
};

// assemble + nullspace + reconstruction; every element is re-verified
// against the defining equation, and killing-mode dimensions are checked
// against the lambda_dim bound.
Basis solve_space(const Metric& g, int d, int N, SolveMode mode,
                  const std::optional<Cofactor>& L = std::nullopt,
                  const std::optional<Poly>& D = std::nullopt, int k = 1);

struct FrlinResult {
    std::vector<RationalIntegral> integrals;
    std::string diagnostic;  // nonempty when dim < 2 made the list empty
};

// All reduced, verified ratios of pairs from a common-cofactor basis.
FrlinResult frlin_from_basis(const PhaseFn& h, const Basis& basis);

}  // namespace relkill

#endif
