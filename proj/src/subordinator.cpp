#include "stablelp/subordinator.hpp"

#include "stablelp/stable_density.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;

// Kanter's representation of the positive beta-stable density (unit scale,
// Laplace transform e^{-lambda^beta}):
//   g(v) = (beta/(1-beta)) v^{-1/(1-beta)} (1/pi)
//          int_0^pi A(th) exp(-A(th) v^{-beta/(1-beta)}) dth,
//   A(th) = [sin(beta th)^beta sin((1-beta) th)^(1-beta) / sin th]^{1/(1-beta)}
double kanter(double beta, double v) {
    double r = beta / (1.0 - beta);
    double w = std::pow(v, -r);  // v^{-beta/(1-beta)}
    double log_w = -r * std::log(v);
    boost::math::quadrature::tanh_sinh<double> ts;
    double integral = ts.integrate(
        [&](double th) {
            double log_A;
            if (th < 1e-10) {
                log_A = (beta * std::log(beta) + (1.0 - beta) * std::log1p(-beta)) / (1.0 - beta);
            } else {
                log_A = (beta * std::log(std::sin(beta * th)) +
                         (1.0 - beta) * std::log(std::sin((1.0 - beta) * th)) -
                         std::log(std::sin(th))) /
                        (1.0 - beta);
            }
            double e = std::exp(log_A + log_w);
            return (e > 700.0 || log_A - e < -700.0) ? 0.0 : std::exp(log_A - e);
        },
        0.0, kPi);
    if (!(integral > 0.0)) return 0.0;
    return r * std::pow(v, -1.0 / (1.0 - beta)) * integral / kPi;
}

}  // namespace

SubordinatorDensity::SubordinatorDensity(double beta) : beta_(beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("SubordinatorDensity: beta must lie in (0,1)");
}

double SubordinatorDensity::unit(double v) const {
    if (v <= 0.0) return 0.0;
    if (beta_ == 0.5)
        return 0.5 / std::sqrt(kPi) * std::pow(v, -1.5) * std::exp(-0.25 / v);
    return kanter(beta_, v);
}

double SubordinatorDensity::operator()(double v) const { return unit(v); }

double SubordinatorDensity::at(double s, double v) const {
    if (s <= 0.0) throw std::invalid_argument("SubordinatorDensity: s must be positive");
    double u = std::pow(s, 1.0 / beta_);
    return unit(v / u) / u;
}

double subordination_density(const StableParams& params, double s, double x) {
    validate(params);
    if (s <= 0.0) throw std::invalid_argument("subordination_density: s must be positive");
    SubordinatorDensity g(params.alpha / 2.0);

    // mixture of Gaussians over the subordinator; log grid in v, trapezoid,
    // node doubling until stable
    auto integrand = [&](double v) {
        return std::exp(-x * x / (4.0 * v)) / std::sqrt(4.0 * kPi * v) * g.at(s, v);
    };
    double u = std::pow(s, 2.0 / params.alpha);  // time scale of the mixture
    double lo = std::log(1e-6 * u), hi = std::log(1e7 * u);
    // keep the Gaussian factor from killing everything at large |x|
    double lx = std::log(std::max(x * x / 4.0 * 1e-4, 1e-300));
    if (lx > lo && lx < hi) lo = std::min(lo, lx);

    double prev = 0.0;
    for (std::size_t n = 256; n <= 1u << 17; n *= 2) {
        double h = (hi - lo) / static_cast<double>(n);
        double sum = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            double lv = lo + h * static_cast<double>(j);
            double v = std::exp(lv);
            double w = (j == 0 || j == n) ? 0.5 : 1.0;
            sum += w * integrand(v) * v;  // jacobian of v = e^{lv}
        }
        sum *= h;
        if (n > 256 && std::abs(sum - prev) <= 1e-6 * std::abs(sum)) return sum;
        prev = sum;
    }
    throw std::runtime_error("subordination_density: quadrature did not converge");
}

}  // namespace slp
