#ifndef RELKILL_COORDS_HPP
#define RELKILL_COORDS_HPP

#include <memory>
#include <string>
#include <vector>

#include "relkill/poly.hpp"

namespace relkill {

class CoordSystem;
using CoordsPtr = std::shared_ptr<const CoordSystem>;

// One variable universe per computation: base coordinates first, then the
// conjugate momenta, each in index order. For m = 2 the momenta are named
// p, q; otherwise p1..pm.
class CoordSystem {
public:
    static CoordsPtr make(int m);
    static CoordsPtr make(std::vector<std::string> coord_names);

    int dim() const { return m_; }
    const VarTablePtr& table() const { return table_; }

    std::size_t xvar(int i) const { return static_cast<std::size_t>(i); }
    std::size_t pvar(int i) const { return static_cast<std::size_t>(m_ + i); }

    const std::string& coord_name(int i) const { return table_->name(xvar(i)); }
    const std::string& momentum_name(int i) const { return table_->name(pvar(i)); }

    std::vector<std::size_t> coord_indices() const;
    std::vector<std::size_t> momentum_indices() const;

    CoordSystem(int m, VarTablePtr table) : m_(m), table_(std::move(table)) {}

private:
    int m_;
    VarTablePtr table_;
};

bool same_coords(const CoordsPtr& a, const CoordsPtr& b);

}  // namespace relkill

#endif
