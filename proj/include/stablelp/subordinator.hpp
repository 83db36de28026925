#pragma once

#include <vector>

namespace slp {

struct StableParams;

/// Density g_beta(s, v) of the beta-stable subordinator, Laplace transform
/// e^{-s lambda^beta}, beta in (0,1). beta = 1/2 uses the closed form; other
/// beta go through Kanter's integral representation, which has a positive
/// non-oscillatory integrand for every v > 0.
class SubordinatorDensity {
public:
    explicit SubordinatorDensity(double beta);

    double beta() const { return beta_; }
    /// g_beta(1, v)
    double operator()(double v) const;
    /// g_beta(s, v) = s^{-1/beta} g_beta(1, v s^{-1/beta})
    double at(double s, double v) const;

private:
    double unit(double v) const;

    double beta_;
};

/// p(s, x, 0) as the subordinated Gaussian mixture
/// integral_0^inf (4 pi v)^{-d/2} e^{-|x|^2/(4v)} g_{alpha/2}(s, v) dv,
/// computed on a log grid in v with node doubling until the relative change
/// drops below 1e-6 (throws on non-convergence). Independent of the spectral
/// route; serves as its oracle.
double subordination_density(const StableParams& params, double s, double x);

}  // namespace slp
