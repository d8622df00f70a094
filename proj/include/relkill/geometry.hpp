#ifndef RELKILL_GEOMETRY_HPP
#define RELKILL_GEOMETRY_HPP

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "relkill/coords.hpp"
#include "relkill/ratfn.hpp"

namespace relkill {

struct SingularMetric : std::domain_error {
    using std::domain_error::domain_error;
};

// Dense covariant tensor of fixed rank; indices run over base coordinates.
class TensorField {
public:
    TensorField(CoordsPtr cs, int rank);

    const CoordsPtr& coords() const { return cs_; }
    int rank() const { return rank_; }
    std::size_t size() const { return comp_.size(); }

    RatFn& at(const std::vector<int>& idx);
    const RatFn& at(const std::vector<int>& idx) const;
    RatFn& flat(std::size_t i) { return comp_[i]; }
    const RatFn& flat(std::size_t i) const { return comp_[i]; }
    std::vector<int> decode(std::size_t flat_index) const;

    bool is_zero() const;
    TensorField operator-(const TensorField& o) const;
    TensorField operator+(const TensorField& o) const;
    TensorField scaled(const Rat& c) const;

    // Average over all permutations of the index slots.
    TensorField symmetrized() const;

private:
    std::size_t offset(const std::vector<int>& idx) const;

    CoordsPtr cs_;
    int rank_;
    std::vector<RatFn> comp_;
};

// Symmetric tensor stored on sorted multi-indices only.
class SymTensorField {
public:
    SymTensorField(CoordsPtr cs, int valence);

    static SymTensorField from_dense(const TensorField& t);  // t must be symmetric
    TensorField to_dense() const;

    const CoordsPtr& coords() const { return cs_; }
    int valence() const { return valence_; }

    void set(std::vector<int> idx, RatFn v);
    RatFn get(std::vector<int> idx) const;
    const std::map<std::vector<int>, RatFn>& entries() const { return entries_; }
    bool is_zero() const;

private:
    CoordsPtr cs_;
    int valence_;
    std::map<std::vector<int>, RatFn> entries_;
};

struct CurvatureData {
    // riemann.at({i,j,k,l}) = R_ij^k_l
    //   = d_i Gamma^k_jl - d_j Gamma^k_il + Gamma^k_is Gamma^s_jl - Gamma^k_js Gamma^s_il
    TensorField riemann;
    TensorField ricci;  // ricci_{ij} = sum_k riemann_{ki}^k_{j}
    RatFn scalar;
};

class Metric {
public:
    // inverse components g^{ij}, row major, must be symmetric with det != 0
    static Metric from_inverse(CoordsPtr cs, std::vector<RatFn> inverse);
    // g = phi (dx^2 + dy^2), i.e. g^{ij} = delta^{ij}/phi
    static Metric conformal2d(CoordsPtr cs, RatFn phi);

    int dim() const { return cs_->dim(); }
    const CoordsPtr& coords() const { return cs_; }

    const RatFn& inv(int i, int j) const;
    const RatFn& lower(int i, int j) const;       // g_{ij}
    const RatFn& det_inverse() const;             // det(g^{ij})
    const RatFn& christoffel(int k, int i, int j) const;
    const CurvatureData& curvature() const;

    // e^{2 lambda} for g = phi(dx^2+dy^2); nullopt when not of that shape
    std::optional<RatFn> conformal_factor() const;

private:
    // lazily derived data, immutable once computed; copies of the metric
    // share it, and first use is guarded for concurrent initialization
    struct Derived {
        std::once_flag lower_once, chris_once, curv_once;
        std::vector<RatFn> lower;
        RatFn det;
        std::vector<RatFn> chris;  // [k][i][j] row-major
        std::optional<CurvatureData> curv;
    };

    Metric(CoordsPtr cs, std::vector<RatFn> inverse);
    void ensure_lower() const;
    void ensure_christoffel() const;
    void ensure_curvature() const;

    CoordsPtr cs_;
    std::vector<RatFn> inv_;
    std::shared_ptr<Derived> derived_;
};

// Levi-Civita covariant derivative of an all-lower tensor; the derivative
// index is appended last: (grad T)_{sigma, a} = T_{sigma; a}.
TensorField covariant_derivative(const Metric& g, const TensorField& t);

// K_{(sigma; i)} - L_{(i} K_{sigma)}; zero iff K is an L-relative Killing
// tensor. L is a one-form (rank-1 lowered); pass a zero tensor for the
// classical Killing operator.
SymTensorField killing_residual(const Metric& g, const SymTensorField& K, const TensorField& L);

// Residual of the second-derivative identity satisfied by relative Killing
// vectors (valence 1):
//   K_{i;(jl)} = L_{(j;l)} K_i + L_{[i;j]} K_l + L_{[i;l]} K_j
//              + L_i L_{(j} K_{l)} + L_j K_{[i;l]} + L_l K_{[i;j]}
//              - 1/2 (R_{ij}^k_l + R_{il}^k_j) K_k
// under the curvature convention fixed in CurvatureData. Requires
// killing_residual(g, K, L) = 0.
TensorField prolongation_identity_d1_residual(const Metric& g, const TensorField& K,
                                              const TensorField& L);

}  // namespace relkill

#endif
