#include "stablelp/multiplier.hpp"

#include "stablelp/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace slp {

namespace {

double sgn(double x) { return (x > 0.0) ? 1.0 : -1.0; }

// log-grid trapezoid of g over [a, b], 0 < a < b
double log_quad(const std::function<double(double)>& g, double a, double b, std::size_t m) {
    double lo = std::log(a), hi = std::log(b);
    double h = (hi - lo) / static_cast<double>(m);
    double s = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
        double y = std::exp(lo + h * static_cast<double>(j));
        double v = g(y) * y;  // jacobian of y = e^w
        s += (j == 0 || j == m) ? 0.5 * v : v;
    }
    return s * h;
}

// empirical tail exponent of |kappa| from a two-point log fit
double tail_exponent(const KernelSpec& k) {
    double a = std::abs(k(30.0)), b = std::abs(k(60.0));
    if (a == 0.0 && b == 0.0) return std::numeric_limits<double>::infinity();
    if (a == 0.0 || b == 0.0) return 0.0;
    return (std::log(a) - std::log(b)) / std::log(2.0);
}

}  // namespace

KernelSpec kernel_registry(const std::string& name, double alpha) {
    KernelSpec k;
    k.name = name;
    if (name == "test") {
        k.symmetry = Symmetry::odd;
        k.tail = TailClass::weakened;
        k.eval = [alpha](double x) {
            return sgn(x) * std::min(std::pow(std::abs(x), -1.0),
                                     std::pow(std::abs(x), -alpha / 2.0));
        };
        k.deriv = [alpha](double x) {
            double a = std::abs(x);
            return (a <= 1.0) ? -1.0 / (a * a)
                              : -(alpha / 2.0) * std::pow(a, -1.0 - alpha / 2.0);
        };
    } else if (name == "pv_inverse") {
        k.symmetry = Symmetry::odd;
        k.tail = TailClass::classical;
        k.eval = [](double x) { return 1.0 / x; };
        k.deriv = [](double x) { return -1.0 / (x * x); };
    } else if (name == "even_inverse") {
        k.symmetry = Symmetry::even;
        k.tail = TailClass::classical;
        k.eval = [](double x) { return 1.0 / std::abs(x); };
        k.deriv = [](double x) { return -sgn(x) / (x * x); };
    } else if (name == "fat_tail") {
        k.symmetry = Symmetry::odd;
        k.tail = TailClass::weakened;
        // max, not min: |x|^{-1} near 0, the too-fat |x|^{-alpha/2 + 0.2}
        // tail outside (min would collapse to the classical 1/x tail)
        k.eval = [alpha](double x) {
            return sgn(x) * std::max(std::pow(std::abs(x), -1.0),
                                     std::pow(std::abs(x), -alpha / 2.0 + 0.2));
        };
    } else {
        throw std::invalid_argument("kernel_registry: unknown kernel " + name);
    }
    return k;
}

std::vector<std::string> kernel_names() {
    return {"test", "pv_inverse", "even_inverse", "fat_tail"};
}

double check_cancelation(const KernelSpec& kernel,
                         const std::vector<std::pair<double, double>>& radii) {
    double worst = 0.0;
    for (auto [r, R] : radii) {
        if (!(r > 0.0 && r < R)) throw std::invalid_argument("check_cancelation: need 0 < r < R");
        if (kernel.symmetry == Symmetry::odd) continue;  // exact by symmetry
        double v = log_quad([&](double y) { return kernel(y) + kernel(-y); }, r, R, 8192);
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

GrowthConstants check_growth(const KernelSpec& kernel, const StableParams& params) {
    require_main_range(params);
    double alpha = params.alpha;
    double dx = kDefaultDx, L = kDefaultL;
    GrowthConstants out;
    auto n = static_cast<std::size_t>(std::llround(L / dx));
    for (std::size_t j = 1; j <= n; ++j) {
        double x = static_cast<double>(j) * dx;
        double bound_i = (x <= 1.0) ? 1.0 / x : std::pow(x, -alpha / 2.0);
        out.cond_i_const = std::max({out.cond_i_const, std::abs(kernel(x)) / bound_i,
                                     std::abs(kernel(-x)) / bound_i});
        if (x < 2.0 * dx) continue;  // singular ring excluded for (ii)
        double dplus, dminus;
        if (kernel.has_deriv()) {
            dplus = kernel.deriv(x);
            dminus = kernel.deriv(-x);
        } else {
            dplus = (kernel(x + dx) - kernel(x - dx)) / (2.0 * dx);
            dminus = (kernel(-x + dx) - kernel(-x - dx)) / (2.0 * dx);
        }
        double bound_ii = (x <= 1.0) ? 1.0 / (x * x) : std::pow(x, -1.0 - alpha / 2.0);
        out.cond_ii_const = std::max({out.cond_ii_const, std::abs(dplus) / bound_ii,
                                      std::abs(dminus) / bound_ii});
    }
    return out;
}

double smooth_cutoff(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    auto bump = [](double u) { return std::exp(-1.0 / u); };
    double a = bump(2.0 - r), b = bump(r - 1.0);
    return a / (a + b);
}

std::pair<KernelSpec, KernelSpec> decompose(const KernelSpec& kernel) {
    KernelSpec k1 = kernel, k2 = kernel;
    k1.name = kernel.name + "_near";
    k2.name = kernel.name + "_far";
    auto base = kernel.eval;
    k1.eval = [base](double x) { return base(x) * smooth_cutoff(x * x); };
    k2.eval = [base](double x) { return base(x) * (1.0 - smooth_cutoff(x * x)); };
    auto dphi2 = [](double x) {  // d/dx phi(x^2)
        double r = x * x;
        if (r <= 1.0 || r >= 2.0) return 0.0;
        auto bump = [](double u) { return std::exp(-1.0 / u); };
        auto dbump = [](double u) { return std::exp(-1.0 / u) / (u * u); };
        double a = bump(2.0 - r), b = bump(r - 1.0);
        double da = -dbump(2.0 - r), db = dbump(r - 1.0);
        double dphidr = (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
        return dphidr * 2.0 * x;
    };
    if (kernel.has_deriv()) {
        auto dbase = kernel.deriv;
        k1.deriv = [base, dbase, dphi2](double x) {
            return dbase(x) * smooth_cutoff(x * x) + base(x) * dphi2(x);
        };
        k2.deriv = [base, dbase, dphi2](double x) {
            return dbase(x) * (1.0 - smooth_cutoff(x * x)) - base(x) * dphi2(x);
        };
    }
    return {std::move(k1), std::move(k2)};
}

double dtQt_convolution(const KernelSpec& k2, const StableParams& params, double x,
                        std::size_t nodes) {
    require_main_range(params);
    constexpr double kFar = 1e6;
    auto g = [&](double y) {
        return k2(y) * psi_eval(params, x - y) + k2(-y) * psi_eval(params, x + y);
    };
    return log_quad(g, 1.0, kFar, nodes);
}

GridFunction dtQt_spectral(const KernelSpec& k2, const StableParams& params,
                           double half_extent, double spacing) {
    require_main_range(params);
    GridFunction kg = GridFunction::sample(half_extent, spacing,
                                           [&](double x) { return (x == 0.0) ? 0.0 : k2(x); });
    double b = params.alpha / 2.0;
    return apply_multiplier(kg, [b](double xi) {
        double a = std::pow(std::abs(xi), b);
        return std::complex<double>(-a * std::exp(-a), 0.0);
    });
}

namespace {

double decay_const_pass(const KernelSpec& k2, const StableParams& params, double lambda,
                        double dx, std::size_t nodes) {
    double worst = 0.0;
    double L = kDefaultL;
    auto n = static_cast<std::size_t>(std::llround(L / dx));
    for (std::size_t j = 0; j <= n; ++j) {
        double x = static_cast<double>(j) * dx;
        double w = std::pow(1.0 + x, lambda);
        worst = std::max({worst, std::abs(dtQt_convolution(k2, params, x, nodes)) * w,
                          std::abs(dtQt_convolution(k2, params, -x, nodes)) * w});
    }
    return worst;
}

}  // namespace

DecayBound dtQt_kernel_bound(const KernelSpec& k2, const StableParams& params, double lambda) {
    require_main_range(params);
    double e = tail_exponent(k2);
    if (e < params.alpha / 2.0 - 0.05)
        throw std::domain_error("dtQt_kernel_bound: kernel tail |x|^{-" + std::to_string(e) +
                                "} decays slower than |x|^{-alpha/2}; bound divergent");
    DecayBound out;
    double c1 = decay_const_pass(k2, params, lambda, 0.25, 2048);
    double c2 = decay_const_pass(k2, params, lambda, 0.125, 4096);
    out.decay_const = c2;
    out.holds = std::isfinite(c2) && std::abs(c2 - c1) <= 0.05 * std::abs(c1);
    return out;
}

std::array<double, 3> proof_tail_integrals(const KernelSpec& k2, const StableParams& params,
                                           double x, std::size_t nodes) {
    require_main_range(params);
    if (!(x >= 2.0)) throw std::invalid_argument("proof_tail_integrals: need x >= 2");
    constexpr double kFar = 1e6;
    auto term = [&](double y) { return k2(y) * psi_eval(params, x - y); };
    // D1: |y| < x/2 (the kernel already vanishes for |y| <= 1)
    double i1 = log_quad([&](double y) { return term(y) + term(-y); }, 1.0, x / 2.0, nodes);
    // D2: |y - x| < x/2, linear grid (psi is smooth and bounded there)
    double i2 = 0.0;
    {
        double a = x / 2.0, b = 3.0 * x / 2.0;
        double h = (b - a) / static_cast<double>(nodes);
        for (std::size_t j = 0; j <= nodes; ++j) {
            double v = term(a + h * static_cast<double>(j));
            i2 += (j == 0 || j == nodes) ? 0.5 * v : v;
        }
        i2 *= h;
    }
    // D3: the remainder, y <= -x/2 and y >= 3x/2
    double i3 = log_quad([&](double y) { return term(-y); }, x / 2.0, kFar, nodes) +
                log_quad([&](double y) { return term(y); }, 3.0 * x / 2.0, kFar, nodes);
    return {i1, i2, i3};
}

GridFunction apply_T(const GridFunction& f, const KernelSpec& kernel) {
    double dx = f.spacing(), L = f.half_extent();
    if (kernel.symmetry != Symmetry::odd) {
        // a symmetric-pair principal value only exists with cancelation
        double canc = check_cancelation(kernel, {{dx, 1.0}, {1.0, L / 2.0}});
        double near = std::abs(kernel(dx / 2.0)) + std::abs(kernel(-dx / 2.0));
        if (canc > 1e-6 && near * dx > 1.0)
            throw std::domain_error("apply_T: singular kernel without cancelation");
    }
    GridFunction kg = GridFunction::sample(L, dx,
                                           [&](double x) { return (x == 0.0) ? 0.0 : kernel(x); });
    GridFunction full = convolve(f, kg);
    double L2 = L / 2.0;
    std::size_t c = full.center_index();
    auto r = static_cast<std::size_t>(std::llround(L2 / dx));
    std::vector<double> v(full.values().begin() + static_cast<long>(c - r),
                          full.values().begin() + static_cast<long>(c + r + 1));
    return GridFunction(std::move(v), dx, 0.0);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::violated: return "violated";
        default: return "inconclusive";
    }
}

CertificationReport certify(const KernelSpec& kernel, const StableParams& params,
                            const std::vector<std::string>& fixtures,
                            const std::vector<double>& p_list) {
    require_main_range(params);
    CertificationReport rep;
    rep.kernel = kernel.name;
    rep.lambda_used = 1.0 + (params.alpha - 1.0) / 2.0;
    rep.cancelation_max = check_cancelation(
        kernel, {{0.5, 2.0}, {1.0, std::exp(1.0)}, {0.1, 10.0}, {1.0, 50.0}});
    GrowthConstants gc = check_growth(kernel, params);
    rep.cond_i_const = gc.cond_i_const;
    rep.cond_ii_const = gc.cond_ii_const;

    bool decay_ok = false;
    auto [k1, k2] = decompose(kernel);
    (void)k1;
    try {
        DecayBound db = dtQt_kernel_bound(k2, params, rep.lambda_used);
        rep.decay_const = db.decay_const;
        decay_ok = db.holds;
        if (!db.holds) rep.note = "decay constant not refinement-stable";
    } catch (const std::domain_error& err) {
        rep.note = err.what();
    }

    bool ratios_ok = true;
    for (const auto& name : fixtures) {
        GridFunction f = make_fixture(name);
        try {
            GridFunction Tf = apply_T(f, kernel);
            for (double p : p_list) {
                double denom = lp_norm(f, p);
                rep.norm_ratios[name + "|p=" + std::to_string(p)] =
                    (denom > 0.0) ? lp_norm(Tf, p) / denom : 0.0;
            }
        } catch (const std::domain_error& err) {
            ratios_ok = false;
            if (rep.note.empty()) rep.note = err.what();
        }
    }
    for (double p : p_list) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        std::string key = "|p=" + std::to_string(p);
        for (const auto& [k, v] : rep.norm_ratios) {
            if (k.size() >= key.size() && k.compare(k.size() - key.size(), key.size(), key) == 0) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (std::isfinite(lo) && lo > 0.0) rep.ratio_spread = std::max(rep.ratio_spread, hi / lo);
    }

    bool growth_ok = std::isfinite(rep.cond_i_const) && rep.cond_i_const < 1e6 &&
                     std::isfinite(rep.cond_ii_const) && rep.cond_ii_const < 1e6;
    if (rep.cancelation_max > 1e-6)
        rep.verdict = Verdict::violated;
    else if (!decay_ok || !growth_ok || !ratios_ok)
        rep.verdict = Verdict::inconclusive;
    else
        rep.verdict = Verdict::certified;
    return rep;
}

}  // namespace slp
