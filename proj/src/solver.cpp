#include "relkill/solver.hpp"

#include <algorithm>

namespace relkill {

long long lambda_dim(int m, int d) {
    if (m < 1 || d < 0) throw std::invalid_argument("lambda_dim requires m >= 1, d >= 0");
    Int num = factorial(static_cast<unsigned>(m + d - 1)) * factorial(static_cast<unsigned>(m + d));
    Int den = factorial(static_cast<unsigned>(m - 1)) * factorial(static_cast<unsigned>(m)) *
              factorial(static_cast<unsigned>(d)) * factorial(static_cast<unsigned>(d + 1));
    Int q = num / den;
    return static_cast<long long>(q.get_si());
}

long long param_count_n(int m, int r, int s) {
    if (m < 1 || r < 0 || s < 0) throw std::invalid_argument("param_count_n requires m >= 1, r,s >= 0");
    Int n = binomial(static_cast<unsigned>(r + m - 1), static_cast<unsigned>(r)) +
            binomial(static_cast<unsigned>(s + m - 1), static_cast<unsigned>(s)) - 1;
    return static_cast<long long>(n.get_si());
}

namespace {

// all exponent vectors over `n` variables with total degree exactly (or at
// most) `deg`, ascending grlex
void enumerate_exponents(int n, int deg, bool exact, std::vector<Exponents>& out) {
    std::vector<Exponents> cur;
    Exponents e(static_cast<std::size_t>(n), 0);
    // recursive fill
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == n - 1) {
            e[static_cast<std::size_t>(pos)] = static_cast<unsigned>(rem);
            cur.push_back(e);
            return;
        }
        for (int k = rem; k >= 0; --k) {
            e[static_cast<std::size_t>(pos)] = static_cast<unsigned>(k);
            rec(pos + 1, rem - k);
        }
    };
    int lo = exact ? deg : 0;
    for (int total = lo; total <= deg; ++total) {
        cur.clear();
        rec(0, total);
        std::sort(cur.begin(), cur.end(), GrlexLess{});
        for (auto& x : cur) out.push_back(std::move(x));
    }
}

}  // namespace

Ansatz Ansatz::make(const CoordsPtr& cs, int d, int N) {
    return make(cs, d, N, Poly::constant(cs->table(), Rat(1)), 0);
}

Ansatz Ansatz::make(const CoordsPtr& cs, int d, int N, Poly D, int k) {
    if (d < 0 || N < 0) throw std::invalid_argument("ansatz requires d, N >= 0");
    if (D.is_zero()) throw std::invalid_argument("ansatz denominator must be nonzero");
    for (int i = 0; i < cs->dim(); ++i)
        if (D.depends_on(cs->pvar(i)))
            throw std::invalid_argument("ansatz denominator must depend on base coordinates only");
    Ansatz a;
    a.cs = cs;
    a.d = d;
    a.N = N;
    a.denominator = std::move(D);
    a.denominator_power = a.denominator.is_constant() ? 0 : k;
    const int m = cs->dim();
    std::vector<Exponents> alphas, mus;
    enumerate_exponents(m, d, /*exact=*/true, alphas);
    enumerate_exponents(m, N, /*exact=*/false, mus);
    for (const auto& alpha : alphas)
        for (const auto& mu : mus) a.slots.emplace_back(alpha, mu);

    Int expect = binomial(static_cast<unsigned>(m + d - 1), static_cast<unsigned>(d)) *
                 binomial(static_cast<unsigned>(m + N), static_cast<unsigned>(N));
    if (Int(static_cast<long>(a.slots.size())) != expect)
        throw std::logic_error("ansatz slot count mismatch");
    return a;
}

PhaseFn Ansatz::basis_element(std::size_t j) const {
    const auto& [alpha, mu] = slots.at(j);
    const int m = cs->dim();
    Exponents full(cs->table()->size(), 0);
    for (int i = 0; i < m; ++i) {
        full[cs->xvar(i)] = mu[static_cast<std::size_t>(i)];
        full[cs->pvar(i)] = alpha[static_cast<std::size_t>(i)];
    }
    Poly num = Poly::monomial(cs->table(), full, Rat(1));
    Poly den = denominator.pow(static_cast<unsigned>(denominator_power));
    return PhaseFn(cs, RatFn::make(std::move(num), std::move(den)));
}

PhaseFn Ansatz::reconstruct(const std::vector<Rat>& coeffs) const {
    if (coeffs.size() < slots.size()) throw std::invalid_argument("coefficient vector too short");
    const int m = cs->dim();
    Poly num = Poly::zero(cs->table());
    for (std::size_t j = 0; j < slots.size(); ++j) {
        if (coeffs[j] == 0) continue;
        const auto& [alpha, mu] = slots[j];
        Exponents full(cs->table()->size(), 0);
        for (int i = 0; i < m; ++i) {
            full[cs->xvar(i)] = mu[static_cast<std::size_t>(i)];
            full[cs->pvar(i)] = alpha[static_cast<std::size_t>(i)];
        }
        num += Poly::monomial(cs->table(), full, coeffs[j]);
    }
    Poly den = denominator.pow(static_cast<unsigned>(denominator_power));
    return PhaseFn(cs, RatFn::make(std::move(num), std::move(den)));
}

LinearSystem assemble_system(const Metric& g, const Ansatz& ansatz, SolveMode mode,
                             const std::optional<Cofactor>& L) {
    if (!same_coords(g.coords(), ansatz.cs))
        throw std::invalid_argument("ansatz/metric dimension mismatch");
    if (mode == SolveMode::relative && !L)
        throw std::invalid_argument("relative mode requires a cofactor");
    if (mode == SolveMode::killing && L && !L->is_zero())
        throw std::invalid_argument("killing mode requires L = 0");
    if (mode == SolveMode::conformal && L)
        throw std::invalid_argument("conformal mode determines its own multiplier");

    const auto& cs = g.coords();
    PhaseFn H = hamiltonian(g);

    // per-unknown residual contributions, kept linear in the unknowns
    std::vector<RatFn> contrib;
    for (std::size_t j = 0; j < ansatz.slot_count(); ++j) {
        PhaseFn b = ansatz.basis_element(j);
        PhaseFn e = poisson_bracket(H, b);
        if (mode == SolveMode::relative && !L->is_zero()) e = e - L->fn * b;
        contrib.push_back(e.value());
    }
    if (mode == SolveMode::conformal) {
        // unknown multiplier with momentum degree d-1 over the same window
        Ansatz mult = Ansatz::make(ansatz.cs, ansatz.d - 1, ansatz.N, ansatz.denominator,
                                   ansatz.denominator_power);
        for (std::size_t j = 0; j < mult.slot_count(); ++j)
            contrib.push_back((-(mult.basis_element(j) * H)).value());
    }

    Poly common = Poly::constant(cs->table(), Rat(1));
    for (const auto& e : contrib)
        if (!e.is_zero()) common = poly_lcm(common, e.den());

    LinearSystem sys;
    sys.ncols = contrib.size();
    std::map<Exponents, LinearSystem::Row, GrlexLess> rows;
    for (std::size_t j = 0; j < contrib.size(); ++j) {
        if (contrib[j].is_zero()) continue;
        Poly scaled = contrib[j].num() * divexact(common, contrib[j].den());
        for (const auto& [e, c] : scaled.terms()) {
            auto it = rows.find(e);
            if (it == rows.end()) {
                it = rows.emplace(e, LinearSystem::Row{}).first;
                it->second.provenance = e;
            }
            it->second.entries.emplace_back(j, c);
        }
    }
    for (auto& [e, row] : rows) sys.rows.push_back(std::move(row));
    return sys;
}

namespace {

std::vector<Int> row_to_integer(const LinearSystem::Row& row, std::size_t ncols) {
    Int den(1);
    for (const auto& [j, c] : row.entries) den = int_lcm(den, rat_den(c));
    std::vector<Int> out(ncols, Int(0));
    Int content(0);
    for (const auto& [j, c] : row.entries) {
        out[j] = rat_num(c) * (den / rat_den(c));
        content = int_gcd(content, out[j]);
    }
    if (content > 1)
        for (auto& v : out) v /= content;
    return out;
}

}  // namespace

std::vector<std::vector<Rat>> nullspace(const LinearSystem& sys) {
    const std::size_t n = sys.ncols;
    std::vector<std::vector<Int>> rows;
    rows.reserve(sys.rows.size());
    for (const auto& r : sys.rows) rows.push_back(row_to_integer(r, n));

    // fraction-free (Bareiss) forward elimination, lowest-index pivoting
    std::vector<std::size_t> pivot_row;  // per rank step
    std::vector<std::size_t> pivot_col;
    Int prev(1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t pr = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr == rows.size()) continue;
        std::swap(rows[rank], rows[pr]);
        const Int piv = rows[rank][col];
        // every remaining row is transformed at every step; the divisions by
        // the previous pivot are then exact (Sylvester identity)
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (c == col) continue;
                rows[r][c] = (piv * rows[r][c] - rows[r][col] * rows[rank][c]) / prev;
            }
            rows[r][col] = 0;
        }
        prev = piv;
        pivot_row.push_back(rank);
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rat>> kernel;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[free_col] = Rat(1);
        // back substitution over the echelon rows
        for (std::size_t k = rank; k-- > 0;) {
            const auto& row = rows[pivot_row[k]];
            Rat acc(0);
            for (std::size_t c = pivot_col[k] + 1; c < n; ++c) {
                if (row[c] == 0 || v[c] == 0) continue;
                acc += Rat(row[c]) * v[c];
            }
            v[pivot_col[k]] = -acc / Rat(row[pivot_col[k]]);
        }
        // normalize: integer, primitive, first nonzero positive
        Int den(1);
        for (const auto& c : v) den = int_lcm(den, rat_den(c));
        Int content(0);
        std::vector<Int> iv(n);
        for (std::size_t c = 0; c < n; ++c) {
            iv[c] = rat_num(v[c]) * (den / rat_den(v[c]));
            content = int_gcd(content, iv[c]);
        }
        int sign = 0;
        for (std::size_t c = 0; c < n && sign == 0; ++c)
            if (iv[c] != 0) sign = (iv[c] > 0) ? 1 : -1;
        for (std::size_t c = 0; c < n; ++c) {
            Int val = iv[c] / content;
            if (sign < 0) val = -val;
            v[c] = Rat(val);
        }
        kernel.push_back(std::move(v));
    }

    // exact re-verification against the original rows
    for (const auto& v : kernel) {
        for (const auto& row : sys.rows) {
            Rat acc(0);
            for (const auto& [j, c] : row.entries) acc += c * v[j];
            if (acc != 0) throw std::logic_error("nullspace verification failed");
        }
    }
    return kernel;
}

Basis solve_space(const Metric& g, int d, int N, SolveMode mode, const std::optional<Cofactor>& L,
                  const std::optional<Poly>& D, int k) {
    const auto& cs = g.coords();
    Poly den = D ? *D : Poly::constant(cs->table(), Rat(1));
    if (!D) {
        // default window denominator: cleared common denominator of the metric
        for (int i = 0; i < g.dim(); ++i)
            for (int j = i; j < g.dim(); ++j)
                if (!g.inv(i, j).is_zero()) den = poly_lcm(den, g.inv(i, j).den());
    }
    Ansatz ansatz = Ansatz::make(cs, d, N, den, k);
    LinearSystem sys = assemble_system(g, ansatz, mode, L);
    auto kernel = nullspace(sys);

    PhaseFn H = hamiltonian(g);
    Ansatz mult_ansatz = (mode == SolveMode::conformal)
                             ? Ansatz::make(cs, d - 1, N, ansatz.denominator, ansatz.denominator_power)
                             : Ansatz{};

    Basis basis;
    basis.mode = mode;
    basis.cofactor = L;
    basis.ansatz = ansatz;
    for (const auto& v : kernel) {
        PhaseFn K = ansatz.reconstruct(v);
        if (K.is_zero()) {
            // a kernel vector supported entirely on multiplier slots would be
            // degenerate; it cannot occur since H != 0
            throw std::logic_error("degenerate kernel vector");
        }
        PhaseFn residual = poisson_bracket(H, K);
        if (mode == SolveMode::relative && !L->is_zero()) residual = residual - L->fn * K;
        if (mode == SolveMode::conformal) {
            std::vector<Rat> mcoeffs(v.begin() + static_cast<long>(ansatz.slot_count()), v.end());
            PhaseFn lam = mult_ansatz.reconstruct(mcoeffs);
            residual = residual - lam * H;
        }
        if (!residual.is_zero()) throw std::logic_error("basis element failed re-verification");
        basis.elements.push_back(std::move(K));
    }
    basis.dim = static_cast<int>(basis.elements.size());
    if (mode == SolveMode::killing && basis.dim > lambda_dim(g.dim(), d))
        throw std::logic_error("killing dimension exceeds the spaceform bound");
    return basis;
}

FrlinResult frlin_from_basis(const PhaseFn& h, const Basis& basis) {
    FrlinResult out;
    if (basis.dim < 2) {
        out.diagnostic = "basis dimension < 2: no nonconstant ratios in this window";
        return out;
    }
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.elements.size(); ++j) {
            RationalIntegral f = reduce_rational_integral(basis.elements[i], basis.elements[j]);
            if (!rational_integral_check(h, f))
                throw std::logic_error("pair from a common-cofactor basis failed the integral check");
            out.integrals.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace relkill
