#pragma once

#include "stablelp/grid.hpp"
#include "stablelp/stable_density.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace slp {

/// Q_t f via spectral multiplication by e^{-t|xi|^{alpha/2}} on the periodic
/// dual grid. A nonzero tail_value rides along unchanged (constants are fixed
/// points of Q_t), so constant fixtures behave exactly.
GridFunction extend(const GridFunction& f, const StableParams& params, double t);

/// d/dt Q_t f: multiplier -|xi|^{alpha/2} e^{-t|xi|^{alpha/2}}.
GridFunction d_dt_extend(const GridFunction& f, const StableParams& params, double t);

struct InvariancePair {
    double lhs;  // integral of P_s f (tail-corrected)
    double rhs;  // integral of f
};

/// mass conservation of the stable semigroup P_s (multiplier e^{-s|xi|^alpha})
InvariancePair invariance_check(const GridFunction& f, const StableParams& params, double s);

/// Lazy cache of t-slices of the harmonic extension of one base function.
/// Thread-safe: concurrent requests for the same t compute once.
class ExtensionField {
public:
    ExtensionField(GridFunction base, StableParams params);

    const GridFunction& base() const { return base_; }
    const StableParams& params() const { return params_; }

    const GridFunction& slice(double t) const;    // f_t
    const GridFunction& dslice(double t) const;   // d/dt f_t
    const GridFunction& dxslice(double t) const;  // d/dx f_t

private:
    const GridFunction& cached(std::map<long long, std::unique_ptr<GridFunction>>& m,
                               double t, int kind) const;

    GridFunction base_;
    StableParams params_;
    mutable std::mutex mu_;
    mutable std::map<long long, std::unique_ptr<GridFunction>> slices_, dslices_, dxslices_;
};

}  // namespace slp
