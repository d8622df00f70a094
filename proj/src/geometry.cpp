#include "relkill/geometry.hpp"

#include <algorithm>

namespace relkill {

namespace {

std::vector<std::string> default_coords(int m) {
    if (m == 1) return {"x"};
    if (m == 2) return {"x", "y"};
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

std::vector<std::string> momentum_names(int m) {
    if (m == 1) return {"p"};
    if (m == 2) return {"p", "q"};
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back("p" + std::to_string(i));
    return names;
}

}  // namespace

CoordsPtr CoordSystem::make(int m) { return make(default_coords(m)); }

CoordsPtr CoordSystem::make(std::vector<std::string> coord_names) {
    int m = static_cast<int>(coord_names.size());
    if (m < 1) throw std::invalid_argument("dimension must be at least 1");
    std::vector<std::string> all = coord_names;
    for (auto& p : momentum_names(m)) all.push_back(p);
    return std::make_shared<const CoordSystem>(m, VarTable::make(std::move(all)));
}

std::vector<std::size_t> CoordSystem::coord_indices() const {
    std::vector<std::size_t> v;
    for (int i = 0; i < m_; ++i) v.push_back(xvar(i));
    return v;
}

std::vector<std::size_t> CoordSystem::momentum_indices() const {
    std::vector<std::size_t> v;
    for (int i = 0; i < m_; ++i) v.push_back(pvar(i));
    return v;
}

bool same_coords(const CoordsPtr& a, const CoordsPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->dim() == b->dim() && same_universe(a->table(), b->table());
}

TensorField::TensorField(CoordsPtr cs, int rank) : cs_(std::move(cs)), rank_(rank) {
    std::size_t n = 1;
    for (int i = 0; i < rank_; ++i) n *= static_cast<std::size_t>(cs_->dim());
    comp_.assign(n, RatFn::zero(cs_->table()));
}

std::size_t TensorField::offset(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != rank_) throw std::invalid_argument("tensor index rank mismatch");
    std::size_t off = 0;
    for (int i : idx) {
        if (i < 0 || i >= cs_->dim()) throw std::out_of_range("tensor index out of range");
        off = off * static_cast<std::size_t>(cs_->dim()) + static_cast<std::size_t>(i);
    }
    return off;
}

RatFn& TensorField::at(const std::vector<int>& idx) { return comp_[offset(idx)]; }
const RatFn& TensorField::at(const std::vector<int>& idx) const { return comp_[offset(idx)]; }

std::vector<int> TensorField::decode(std::size_t flat_index) const {
    std::vector<int> idx(rank_, 0);
    for (int k = rank_ - 1; k >= 0; --k) {
        idx[k] = static_cast<int>(flat_index % cs_->dim());
        flat_index /= cs_->dim();
    }
    return idx;
}

bool TensorField::is_zero() const {
    for (const auto& c : comp_)
        if (!c.is_zero()) return false;
    return true;
}

TensorField TensorField::operator-(const TensorField& o) const {
    TensorField r = *this;
    for (std::size_t i = 0; i < comp_.size(); ++i) r.comp_[i] = comp_[i] - o.comp_[i];
    return r;
}

TensorField TensorField::operator+(const TensorField& o) const {
    TensorField r = *this;
    for (std::size_t i = 0; i < comp_.size(); ++i) r.comp_[i] = comp_[i] + o.comp_[i];
    return r;
}

TensorField TensorField::scaled(const Rat& c) const {
    TensorField r = *this;
    for (auto& x : r.comp_) x = x.scaled(c);
    return r;
}

TensorField TensorField::symmetrized() const {
    TensorField r(cs_, rank_);
    std::vector<int> perm(rank_);
    for (int i = 0; i < rank_; ++i) perm[i] = i;
    Int nperm = factorial(static_cast<unsigned>(rank_));
    Rat w(1, nperm);
    w.canonicalize();
    for (std::size_t f = 0; f < comp_.size(); ++f) {
        if (comp_[f].is_zero()) continue;
        std::vector<int> idx = decode(f);
        std::sort(perm.begin(), perm.end());
        RatFn contrib = comp_[f].scaled(w);
        do {
            std::vector<int> target(rank_);
            for (int i = 0; i < rank_; ++i) target[i] = idx[perm[i]];
            r.at(target) += contrib;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return r;
}

SymTensorField::SymTensorField(CoordsPtr cs, int valence) : cs_(std::move(cs)), valence_(valence) {}

SymTensorField SymTensorField::from_dense(const TensorField& t) {
    SymTensorField s(t.coords(), t.rank());
    for (std::size_t f = 0; f < t.size(); ++f) {
        std::vector<int> idx = t.decode(f);
        if (!std::is_sorted(idx.begin(), idx.end())) continue;
        if (!t.flat(f).is_zero()) s.entries_[idx] = t.flat(f);
    }
    return s;
}

TensorField SymTensorField::to_dense() const {
    TensorField t(cs_, valence_);
    for (std::size_t f = 0; f < t.size(); ++f) {
        std::vector<int> idx = t.decode(f);
        std::sort(idx.begin(), idx.end());
        auto it = entries_.find(idx);
        if (it != entries_.end()) t.flat(f) = it->second;
    }
    return t;
}

void SymTensorField::set(std::vector<int> idx, RatFn v) {
    if (static_cast<int>(idx.size()) != valence_) throw std::invalid_argument("multi-index length mismatch");
    std::sort(idx.begin(), idx.end());
    if (v.is_zero())
        entries_.erase(idx);
    else
        entries_[std::move(idx)] = std::move(v);
}

RatFn SymTensorField::get(std::vector<int> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = entries_.find(idx);
    if (it == entries_.end()) return RatFn::zero(cs_->table());
    return it->second;
}

bool SymTensorField::is_zero() const { return entries_.empty(); }

namespace {

RatFn det_recursive(const std::vector<std::vector<RatFn>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    RatFn acc = RatFn::zero(m[0][0].vars());
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<RatFn>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<RatFn> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        RatFn term = m[0][j] * det_recursive(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

Metric::Metric(CoordsPtr cs, std::vector<RatFn> inverse)
    : cs_(std::move(cs)), inv_(std::move(inverse)), derived_(std::make_shared<Derived>()) {}

Metric Metric::from_inverse(CoordsPtr cs, std::vector<RatFn> inverse) {
    const int m = cs->dim();
    if (inverse.size() != static_cast<std::size_t>(m * m))
        throw std::invalid_argument("inverse metric must have dim*dim entries");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!(inverse[i * m + j] == inverse[j * m + i]))
                throw std::invalid_argument("inverse metric must be symmetric");
    Metric g(std::move(cs), std::move(inverse));
    std::vector<std::vector<RatFn>> mat(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mat[i].push_back(g.inv(i, j));
    RatFn det = det_recursive(mat);
    if (det.is_zero()) throw SingularMetric("inverse metric has zero determinant");
    return g;
}

Metric Metric::conformal2d(CoordsPtr cs, RatFn phi) {
    if (cs->dim() != 2) throw std::invalid_argument("conformal factor form requires dimension 2");
    if (phi.is_zero()) throw SingularMetric("conformal factor must be nonzero");
    RatFn psi = RatFn::constant(cs->table(), Rat(1)) / phi;
    RatFn z = RatFn::zero(cs->table());
    return from_inverse(cs, {psi, z, z, psi});
}

const RatFn& Metric::inv(int i, int j) const { return inv_[i * dim() + j]; }

void Metric::ensure_lower() const {
    std::call_once(derived_->lower_once, [this] {
        const int m = dim();
        std::vector<std::vector<RatFn>> mat(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) mat[i].push_back(inv(i, j));
        derived_->det = det_recursive(mat);
        derived_->lower.assign(static_cast<std::size_t>(m * m), RatFn::zero(cs_->table()));
        // adjugate / determinant
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (m == 1) {
                    derived_->lower[0] = RatFn::constant(cs_->table(), Rat(1)) / derived_->det;
                    continue;
                }
                std::vector<std::vector<RatFn>> minor;
                for (int r = 0; r < m; ++r) {
                    if (r == j) continue;
                    std::vector<RatFn> row;
                    for (int c = 0; c < m; ++c)
                        if (c != i) row.push_back(inv(r, c));
                    minor.push_back(std::move(row));
                }
                RatFn cof = det_recursive(minor);
                if ((i + j) % 2 == 1) cof = -cof;
                derived_->lower[i * m + j] = cof / derived_->det;
            }
        }
    });
}

const RatFn& Metric::lower(int i, int j) const {
    ensure_lower();
    return derived_->lower[i * dim() + j];
}

const RatFn& Metric::det_inverse() const {
    ensure_lower();
    return derived_->det;
}

void Metric::ensure_christoffel() const {
    std::call_once(derived_->chris_once, [this] {
        ensure_lower();
        const int m = dim();
        derived_->chris.assign(static_cast<std::size_t>(m * m * m), RatFn::zero(cs_->table()));
        Rat half = make_rat(1, 2);
        for (int k = 0; k < m; ++k) {
            for (int i = 0; i < m; ++i) {
                for (int j = i; j < m; ++j) {
                    RatFn acc = RatFn::zero(cs_->table());
                    for (int l = 0; l < m; ++l) {
                        RatFn term = lower(j, l).derivative(cs_->xvar(i)) +
                                     lower(i, l).derivative(cs_->xvar(j)) -
                                     lower(i, j).derivative(cs_->xvar(l));
                        acc += inv(k, l) * term;
                    }
                    acc = acc.scaled(half);
                    derived_->chris[(k * m + i) * m + j] = acc;
                    derived_->chris[(k * m + j) * m + i] = acc;
                }
            }
        }
    });
}

const RatFn& Metric::christoffel(int k, int i, int j) const {
    ensure_christoffel();
    return derived_->chris[(k * dim() + i) * dim() + j];
}

void Metric::ensure_curvature() const {
    std::call_once(derived_->curv_once, [this] {
        ensure_christoffel();
        const int m = dim();
        CurvatureData data{TensorField(cs_, 4), TensorField(cs_, 2), RatFn::zero(cs_->table())};
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                for (int k = 0; k < m; ++k) {
                    for (int l = 0; l < m; ++l) {
                        RatFn r = christoffel(k, j, l).derivative(cs_->xvar(i)) -
                                  christoffel(k, i, l).derivative(cs_->xvar(j));
                        for (int s = 0; s < m; ++s) {
                            r += christoffel(k, i, s) * christoffel(s, j, l);
                            r -= christoffel(k, j, s) * christoffel(s, i, l);
                        }
                        data.riemann.at({i, j, k, l}) = r;
                    }
                }
            }
        }
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                RatFn acc = RatFn::zero(cs_->table());
                for (int k = 0; k < m; ++k) acc += data.riemann.at({k, i, k, j});
                data.ricci.at({i, j}) = acc;
            }
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) data.scalar += inv(i, j) * data.ricci.at({i, j});
        derived_->curv = std::move(data);
    });
}

const CurvatureData& Metric::curvature() const {
    ensure_curvature();
    return *derived_->curv;
}

std::optional<RatFn> Metric::conformal_factor() const {
    if (dim() != 2) return std::nullopt;
    if (!inv(0, 1).is_zero()) return std::nullopt;
    if (!(inv(0, 0) == inv(1, 1))) return std::nullopt;
    return RatFn::constant(cs_->table(), Rat(1)) / inv(0, 0);
}

TensorField covariant_derivative(const Metric& g, const TensorField& t) {
    const int m = g.dim();
    const auto& cs = g.coords();
    TensorField out(cs, t.rank() + 1);
    for (std::size_t f = 0; f < t.size(); ++f) {
        std::vector<int> sigma = t.decode(f);
        for (int a = 0; a < m; ++a) {
            RatFn v = t.flat(f).derivative(cs->xvar(a));
            for (int slot = 0; slot < t.rank(); ++slot) {
                std::vector<int> swapped = sigma;
                for (int b = 0; b < m; ++b) {
                    swapped[slot] = b;
                    const RatFn& comp = t.at(swapped);
                    if (comp.is_zero()) continue;
                    v -= g.christoffel(b, a, sigma[slot]) * comp;
                }
            }
            std::vector<int> target = sigma;
            target.push_back(a);
            out.at(target) = std::move(v);
        }
    }
    return out;
}

SymTensorField killing_residual(const Metric& g, const SymTensorField& K, const TensorField& L) {
    if (L.rank() != 1) throw std::invalid_argument("cofactor one-form must have rank 1");
    if (!same_coords(K.coords(), g.coords()) || !same_coords(L.coords(), g.coords()))
        throw std::invalid_argument("tensor/metric dimension mismatch");
    TensorField dense = K.to_dense();
    TensorField grad = covariant_derivative(g, dense);
    // subtract L_a K_sigma, derivative slot last
    const int m = g.dim();
    for (std::size_t f = 0; f < dense.size(); ++f) {
        std::vector<int> sigma = dense.decode(f);
        if (dense.flat(f).is_zero()) continue;
        for (int a = 0; a < m; ++a) {
            std::vector<int> target = sigma;
            target.push_back(a);
            grad.at(target) -= L.at({a}) * dense.flat(f);
        }
    }
    return SymTensorField::from_dense(grad.symmetrized());
}

TensorField prolongation_identity_d1_residual(const Metric& g, const TensorField& K,
                                              const TensorField& L) {
    if (K.rank() != 1 || L.rank() != 1)
        throw std::invalid_argument("identity requires a vector (lowered) and a one-form");
    if (!killing_residual(g, SymTensorField::from_dense(K), L).is_zero())
        throw std::invalid_argument("K is not an L-relative Killing vector");

    const int m = g.dim();
    const auto& cs = g.coords();
    TensorField gradK = covariant_derivative(g, K);        // K_{i;j}
    TensorField grad2K = covariant_derivative(g, gradK);   // K_{i;jl}
    TensorField gradL = covariant_derivative(g, L);        // L_{i;j}
    const TensorField& R = g.curvature().riemann;

    // Sign conventions frozen by exact evaluation on the x^2+4y^2 fixtures:
    // with R_ij^k_l as defined in CurvatureData the curvature term enters
    // with -1/2, and the antisymmetric part of grad K contributes
    // L_j K_[i;l] + L_l K_[i;j] (these vanish when L = 0).
    Rat half = make_rat(1, 2);
    TensorField res(cs, 3);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            for (int l = 0; l < m; ++l) {
                RatFn lhs = (grad2K.at({i, j, l}) + grad2K.at({i, l, j})).scaled(half);
                RatFn rhs = (gradL.at({j, l}) + gradL.at({l, j})).scaled(half) * K.at({i});
                rhs += (gradL.at({i, j}) - gradL.at({j, i})).scaled(half) * K.at({l});
                rhs += (gradL.at({i, l}) - gradL.at({l, i})).scaled(half) * K.at({j});
                rhs += L.at({i}) * (L.at({j}) * K.at({l}) + L.at({l}) * K.at({j})).scaled(half);
                rhs += L.at({j}) * (gradK.at({i, l}) - gradK.at({l, i})).scaled(half);
                rhs += L.at({l}) * (gradK.at({i, j}) - gradK.at({j, i})).scaled(half);
                RatFn curv = RatFn::zero(cs->table());
                for (int k = 0; k < m; ++k)
                    curv += (R.at({i, j, k, l}) + R.at({i, l, k, j})) * K.at({k});
                rhs -= curv.scaled(half);
                res.at({i, j, l}) = lhs - rhs;
            }
        }
    }
    return res;
}

}  // namespace relkill
