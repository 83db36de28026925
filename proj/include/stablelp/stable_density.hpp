#pragma once

#include "stablelp/grid.hpp"
#include "stablelp/transforms.hpp"

#include <string>

namespace slp {

struct StableParams {
    double alpha = 1.5;
    int dim = 1;
};

/// throws std::invalid_argument unless alpha in (0,2) and dim == 1
void validate(const StableParams& params);
/// additionally requires alpha in (1,2) (the main-theorem range)
void require_main_range(const StableParams& params);

/// Which unit-time radial table to build from the symbol e^{-xi^gamma}.
enum class TableKind {
    density,        // (1/pi) int e^{-xi^gamma} cos(x xi) dxi
    density_d1,     // d/dx of the above
    density_d2,
    dpsi,           // inverse transform of -xi^gamma e^{-xi^gamma}
    dpsi_d1,
};

/// Cached unit-time tables keyed by (kind, gamma); gamma in [0.35, 2).
const RadialTable& unit_table(TableKind kind, double gamma);

/// p(s, x, 0): scaling s^{-1/alpha} U_alpha(x s^{-1/alpha}) off the unit table
double p_density(const StableParams& params, double s, double x);
/// q_t(x): same machinery at exponent alpha/2, time scaling t^{-2/alpha}
double q_density(const StableParams& params, double t, double x);
double q_cdf(const StableParams& params, double t, double x);
double psi_eval(const StableParams& params, double x);
double psi_deriv_eval(const StableParams& params, double x);

struct DensityTable {
    StableParams params;
    double s = 1.0;          // time (s for p, t for q)
    double gamma = 1.0;      // symbol exponent: alpha for p, alpha/2 for q
    GridFunction values;
    std::string build_method;
    double mass = 0.0;       // tail-corrected total integral
};

DensityTable stable_density(const StableParams& params, double s);
DensityTable qt_kernel(const StableParams& params, double t);

struct TwoSidedRatio {
    double ratio_min;
    double ratio_max;
};

/// extremes of table/min(s^{-1/gamma}, s |x|^{-1-gamma}) over the grid
TwoSidedRatio check_two_sided(const DensityTable& table);

/// spatial derivative of p(s,.,0), order in {1,2} (d=1, axis fixed)
GridFunction density_derivative(const StableParams& params, double s, int order,
                                int axis = 0);

/// psi = (d/dt q_t)_{t=1} sampled on the default grid
GridFunction psi_function(const StableParams& params);
/// integral of psi over the line (tail-corrected); should vanish
double psi_integral(const StableParams& params);

/// exit law mu_t of Brownian motion (generator d^2/dz^2) from height t
class ExitLaw {
public:
    explicit ExitLaw(double t);
    double t() const { return t_; }
    double density(double s) const;
    double cdf(double s) const;  // erfc(t / (2 sqrt(s)))

private:
    double t_;
};

struct MuMomentBounds {
    double left;   // int_0^M |s - 1/2| mu_1(ds)
    double right;  // int_M^inf |1 - 1/(2s)| mu_1(ds)
};

MuMomentBounds mu_moment_bounds(double M);

}  // namespace slp
