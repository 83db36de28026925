#include "stablelp/stable_density.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kExpansionTerms = 12;
constexpr double kTableCut = 66.0;  // tables truncated here; tail series beyond

// C^2 taper on the last 10% of the spectral window (quintic smoothstep)
double taper(double xi, double xi_max) {
    double u = (xi - 0.9 * xi_max) / (0.1 * xi_max);
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

struct SymbolSpec {
    std::function<double(double)> m;
    std::vector<SingularTerm> expansion;  // m(xi) ~ sum c xi^rho at 0+
    bool sine = false;
};

SymbolSpec make_symbol(TableKind kind, double g) {
    SymbolSpec spec;
    switch (kind) {
        case TableKind::density:
            spec.m = [g](double xi) { return std::exp(-std::pow(xi, g)); };
            for (int n = 1; n <= kExpansionTerms; ++n)
                spec.expansion.push_back({g * n, (n % 2 ? -1.0 : 1.0) / std::tgamma(n + 1.0)});
            break;
        case TableKind::density_d1:
            spec.m = [g](double xi) { return -xi * std::exp(-std::pow(xi, g)); };
            spec.sine = true;
            for (int n = 0; n <= kExpansionTerms; ++n)
                spec.expansion.push_back({1.0 + g * n, (n % 2 ? 1.0 : -1.0) / std::tgamma(n + 1.0)});
            break;
        case TableKind::density_d2:
            spec.m = [g](double xi) { return -xi * xi * std::exp(-std::pow(xi, g)); };
            for (int n = 0; n <= kExpansionTerms; ++n)
                spec.expansion.push_back({2.0 + g * n, (n % 2 ? 1.0 : -1.0) / std::tgamma(n + 1.0)});
            break;
        case TableKind::dpsi:
            spec.m = [g](double xi) { return -std::pow(xi, g) * std::exp(-std::pow(xi, g)); };
            for (int n = 0; n <= kExpansionTerms; ++n)
                spec.expansion.push_back({g * (n + 1.0), (n % 2 ? 1.0 : -1.0) / std::tgamma(n + 1.0)});
            break;
        case TableKind::dpsi_d1:
            spec.m = [g](double xi) { return std::pow(xi, g + 1.0) * std::exp(-std::pow(xi, g)); };
            spec.sine = true;
            for (int n = 0; n <= kExpansionTerms; ++n)
                spec.expansion.push_back({1.0 + g * (n + 1.0), (n % 2 ? -1.0 : 1.0) / std::tgamma(n + 1.0)});
            break;
    }
    return spec;
}

RadialTable build_table(TableKind kind, double g) {
    if (!(g >= 0.35 && g < 2.0))
        throw std::invalid_argument("unit_table: symbol exponent outside [0.35, 2)");
    SymbolSpec spec = make_symbol(kind, g);

    double xi_max = std::max(std::pow(48.0, 1.0 / g), 200.0);
    std::size_t k = std::size_t{1} << 21;
    // keep the tabulated range comfortably past the truncation point
    while (static_cast<double>(k) * kPi / xi_max < 2.0 * kTableCut && k < (std::size_t{1} << 25))
        k *= 2;
    double dx = kPi / xi_max;

    auto windowed = [&](double xi) { return spec.m(xi) * taper(xi, xi_max); };
    std::vector<double> full = spec.sine
        ? half_sine_inverse(windowed, xi_max, k)
        : half_cosine_inverse(windowed, xi_max, k, spec.expansion);

    std::size_t cut = static_cast<std::size_t>(kTableCut / dx) + 1;
    if (cut > full.size()) cut = full.size();
    full.resize(cut);

    std::vector<SingularTerm> tail;
    for (const auto& term : spec.expansion) {
        double phase = kPi * (term.exponent + 1.0) / 2.0;
        double trig = spec.sine ? std::sin(phase) : std::cos(phase);
        double c = term.coeff / kPi * std::tgamma(term.exponent + 1.0) * trig;
        if (std::abs(c) > 1e-300) tail.push_back({term.exponent + 1.0, c});
    }
    return RadialTable(std::move(full), dx, spec.sine ? -1 : 1, std::move(tail));
}

}  // namespace

void validate(const StableParams& params) {
    if (!(params.alpha > 0.0 && params.alpha < 2.0))
        throw std::invalid_argument("StableParams: alpha must lie in (0,2)");
    if (params.dim != 1)
        throw std::invalid_argument("StableParams: only dim = 1 is implemented");
}

void require_main_range(const StableParams& params) {
    validate(params);
    if (!(params.alpha > 1.0))
        throw std::invalid_argument("operation requires alpha in (1,2)");
}

const RadialTable& unit_table(TableKind kind, double gamma) {
    static std::mutex mu;
    static std::map<std::pair<int, long long>, std::unique_ptr<RadialTable>> cache;
    auto key = std::make_pair(static_cast<int>(kind),
                              static_cast<long long>(std::llround(gamma * 1e12)));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<RadialTable>(build_table(kind, gamma))).first;
    return *it->second;
}

namespace {

double clamp_ripple(double v) {
    if (v >= 0.0) return v;
    if (v > -1e-9) return 0.0;
    throw std::runtime_error("density value below -1e-9: inversion failure");
}

}  // namespace

double p_density(const StableParams& params, double s, double x) {
    validate(params);
    if (s <= 0.0) throw std::invalid_argument("p_density: s must be positive");
    double u = std::pow(s, 1.0 / params.alpha);
    return clamp_ripple(unit_table(TableKind::density, params.alpha)(x / u) / u);
}

double q_density(const StableParams& params, double t, double x) {
    validate(params);
    if (t <= 0.0) throw std::invalid_argument("q_density: t must be positive");
    double u = std::pow(t, 2.0 / params.alpha);
    return clamp_ripple(unit_table(TableKind::density, params.alpha / 2.0)(x / u) / u);
}

double q_cdf(const StableParams& params, double t, double x) {
    validate(params);
    if (t <= 0.0) throw std::invalid_argument("q_cdf: t must be positive");
    const RadialTable& tab = unit_table(TableKind::density, params.alpha / 2.0);
    double u = std::pow(t, 2.0 / params.alpha);
    return tab.cdf(x / u) / tab.total_integral();
}

double psi_eval(const StableParams& params, double x) {
    validate(params);
    return unit_table(TableKind::dpsi, params.alpha / 2.0)(x);
}

double psi_deriv_eval(const StableParams& params, double x) {
    validate(params);
    return unit_table(TableKind::dpsi_d1, params.alpha / 2.0)(x);
}

namespace {

DensityTable build_density_table(const StableParams& params, double time, double gamma) {
    const RadialTable& tab = unit_table(TableKind::density, gamma);
    double u = std::pow(time, 1.0 / gamma);
    GridFunction values = default_grid_sample(
        [&](double x) { return clamp_ripple(tab(x / u) / u); });
    DensityTable out;
    out.params = params;
    out.s = time;
    out.gamma = gamma;
    out.values = std::move(values);
    out.build_method = (time == 1.0) ? "fourier_inversion" : "scaling";
    out.mass = tab.total_integral();
    return out;
}

}  // namespace

DensityTable stable_density(const StableParams& params, double s) {
    validate(params);
    if (s <= 0.0) throw std::invalid_argument("stable_density: s must be positive");
    return build_density_table(params, s, params.alpha);
}

DensityTable qt_kernel(const StableParams& params, double t) {
    validate(params);
    if (t <= 0.0) throw std::invalid_argument("qt_kernel: t must be positive");
    return build_density_table(params, t, params.alpha / 2.0);
}

TwoSidedRatio check_two_sided(const DensityTable& table) {
    double g = table.gamma, s = table.s;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        double x = table.values.x(i);
        if (std::abs(x) > table.values.half_extent() / 2.0) continue;
        double v = table.values[i];
        if (v <= 0.0) throw std::runtime_error("two-sided estimate violated: nonpositive density");
        double cmp = std::min(std::pow(s, -1.0 / g), s * std::pow(std::abs(x), -1.0 - g));
        double r = v / cmp;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

GridFunction density_derivative(const StableParams& params, double s, int order, int axis) {
    validate(params);
    if (s <= 0.0) throw std::invalid_argument("density_derivative: s must be positive");
    if (order != 1 && order != 2) throw std::invalid_argument("density_derivative: order must be 1 or 2");
    if (axis != 0) throw std::invalid_argument("density_derivative: axis out of range");
    const RadialTable& tab =
        unit_table(order == 1 ? TableKind::density_d1 : TableKind::density_d2, params.alpha);
    double u = std::pow(s, 1.0 / params.alpha);
    double scale = std::pow(u, -1.0 - order);
    return default_grid_sample([&](double x) { return scale * tab(x / u); });
}

GridFunction psi_function(const StableParams& params) {
    validate(params);
    const RadialTable& tab = unit_table(TableKind::dpsi, params.alpha / 2.0);
    return default_grid_sample([&](double x) { return tab(x); });
}

double psi_integral(const StableParams& params) {
    validate(params);
    return unit_table(TableKind::dpsi, params.alpha / 2.0).total_integral();
}

ExitLaw::ExitLaw(double t) : t_(t) {
    if (t <= 0.0) throw std::invalid_argument("ExitLaw: t must be positive");
}

double ExitLaw::density(double s) const {
    if (s <= 0.0) return 0.0;
    // log-space so tiny s underflows cleanly to 0 instead of inf * 0
    double le = std::log(t_ / (2.0 * std::sqrt(kPi))) - t_ * t_ / (4.0 * s) - 1.5 * std::log(s);
    return (le < -700.0) ? 0.0 : std::exp(le);
}

double ExitLaw::cdf(double s) const {
    if (s <= 0.0) return 0.0;
    return std::erfc(t_ / (2.0 * std::sqrt(s)));
}

MuMomentBounds mu_moment_bounds(double M) {
    if (M <= 0.0) throw std::invalid_argument("mu_moment_bounds: M must be positive");
    ExitLaw mu(1.0);
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double left = ts.integrate(
        [&](double s) { return std::abs(s - 0.5) * mu.density(s); }, 0.0, M);
    double right = es.integrate(
        [&](double s) { return std::abs(1.0 - 0.5 / (s + M)) * mu.density(s + M); });
    return {left, right};
}

}  // namespace slp
