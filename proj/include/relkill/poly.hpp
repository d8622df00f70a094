#ifndef RELKILL_POLY_HPP
#define RELKILL_POLY_HPP

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relkill/rat.hpp"

namespace relkill {

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

// Ordered list of symbols; the position in the list is the variable index.
// The order is global for a computation and fixes all normal forms.
class VarTable {
public:
    explicit VarTable(std::vector<std::string> names);

    static VarTablePtr make(std::vector<std::string> names) {
        return std::make_shared<const VarTable>(std::move(names));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const VarTable& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

bool same_universe(const VarTablePtr& a, const VarTablePtr& b);

using Exponents = std::vector<unsigned>;

inline unsigned exp_total(const Exponents& e) {
    unsigned t = 0;
    for (unsigned x : e) t += x;
    return t;
}

// Graded lexicographic order, earlier variables dominate within a grade.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = exp_total(a), db = exp_total(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

// Degree of the zero polynomial.
inline constexpr int kDegNegInf = std::numeric_limits<int>::min();

struct VariableMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZeroPoly : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Sparse multivariate polynomial over Rat. Invariants: no stored zero
// coefficients; every exponent vector has length vars()->size().
class Poly {
public:
    using TermMap = std::map<Exponents, Rat, GrlexLess>;

    Poly() = default;  // zero over the empty universe; placeholder only

    static Poly zero(VarTablePtr vars);
    static Poly constant(VarTablePtr vars, Rat c);
    static Poly variable(VarTablePtr vars, std::size_t index);
    static Poly monomial(VarTablePtr vars, Exponents e, Rat c);

    const VarTablePtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant()

    int total_degree() const;  // kDegNegInf for zero
    int degree_in(std::size_t var) const;
    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    // Leading data under the global grlex order.
    const Exponents& leading_exponents() const;
    const Rat& leading_coeff() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const Rat& c) const;
    Poly pow(unsigned k) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(std::size_t var) const;
    Rat evaluate(const std::vector<Rat>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

    // Positive rational c such that (*this)/c has coprime integer
    // coefficients; 0 for the zero polynomial.
    Rat content() const;
    // Divided by content and sign of the leading coefficient.
    Poly normalized_primitive() const;

    // Decomposition as a univariate polynomial in `var` with Poly
    // coefficients (exponent of `var` zeroed out in the keys).
    std::map<unsigned, Poly> coefficients_in(std::size_t var) const;
    Poly coeff_of(std::size_t var, unsigned power) const;

    // Multiply by var^k.
    Poly shifted(std::size_t var, unsigned k) const;

    friend std::optional<Poly> try_divexact(const Poly& a, const Poly& b);
    friend Poly poly_gcd(const Poly& a, const Poly& b);

private:
    void insert_term(const Exponents& e, const Rat& c);
    static void check_same(const Poly& a, const Poly& b);

    VarTablePtr vars_;
    TermMap terms_;
};

// Exact division; nullopt when b does not divide a. Throws on b = 0.
std::optional<Poly> try_divexact(const Poly& a, const Poly& b);
// As above but a failure is a logic error.
Poly divexact(const Poly& a, const Poly& b);

// Normalized gcd: primitive with positive leading coefficient;
// gcd(0, b) = normalized b, gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);

}  // namespace relkill

#endif
