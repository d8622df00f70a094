#ifndef RELKILL_RAT_HPP
#define RELKILL_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relkill {

// Exact scalars. Rat is always canonical: gcd(|num|, den) = 1, den >= 1,
// zero is 0/1 (maintained by GMP).
using Int = mpz_class;
using Rat = mpq_class;

inline Int rat_num(const Rat& r) { return r.get_num(); }
inline Int rat_den(const Rat& r) { return r.get_den(); }

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline int rat_sign(const Rat& r) { return sgn(r); }

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Int factorial(unsigned n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Int binomial(unsigned n, unsigned k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

}  // namespace relkill

#endif
