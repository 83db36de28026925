#include "stablelp/functionals.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction decaying_part(const GridFunction& f) {
    if (f.tail_value() == 0.0) return f;
    std::vector<double> v(f.values());
    for (auto& x : v) x -= f.tail_value();
    return GridFunction(std::move(v), f.spacing(), 0.0);
}

GridFunction x_derivative(const GridFunction& f, const StableParams& params, double t) {
    double b = params.alpha / 2.0;
    return apply_multiplier(decaying_part(f), [t, b](double xi) {
        return std::complex<double>(0.0, xi) * std::exp(-t * std::pow(std::abs(xi), b));
    });
}

GridFunction restrict_inner(const GridFunction& g) {
    double L2 = g.half_extent() / 2.0;
    std::size_t c = g.center_index();
    auto r = static_cast<std::size_t>(std::llround(L2 / g.spacing()));
    std::vector<double> v(g.values().begin() + static_cast<long>(c - r),
                          g.values().begin() + static_cast<long>(c + r + 1));
    return GridFunction(std::move(v), g.spacing(), g.tail_value());
}

FunctionalReport make_report(std::string name, const StableParams& params, double lambda,
                             GridFunction values, double tail_bound) {
    FunctionalReport r;
    r.name = std::move(name);
    r.params = params;
    r.lambda = lambda;
    r.values = std::move(values);
    r.tail_bound = tail_bound;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) r.p_norms[p] = lp_norm(r.values, p);
    return r;
}

// kernel |h|^{-1-alpha} restricted to h_min <= |h| <= radius, sampled on the
// grid with partial-cell fractions so the implicit dx-weighted sum is a
// midpoint rule
GridFunction difference_kernel(double alpha, double h_min, double radius, double L, double dx,
                               std::size_t n) {
    std::vector<double> w(n, 0.0);
    std::size_t c = (n - 1) / 2;
    for (std::size_t j = 1; j <= c; ++j) {
        double h = static_cast<double>(j) * dx;
        double lo = std::max(h - dx / 2.0, h_min);
        double hi = std::min(h + dx / 2.0, radius);
        if (hi <= lo) continue;
        double frac = (hi - lo) / dx;
        double val = frac * std::pow(h, -1.0 - alpha);
        w[c + j] = val;
        w[c - j] = val;
    }
    (void)L;
    return GridFunction(std::move(w), dx, 0.0);
}

GridFunction window_kernel(double radius, double dx, std::size_t n) {
    std::vector<double> w(n, 0.0);
    std::size_t c = (n - 1) / 2;
    w[c] = 1.0;
    for (std::size_t j = 1; j <= c; ++j) {
        double h = static_cast<double>(j) * dx;
        double hi = std::min(h + dx / 2.0, radius);
        double lo = h - dx / 2.0;
        double frac = (hi > lo) ? (hi - lo) / dx : 0.0;
        w[c + j] = frac;
        w[c - j] = frac;
    }
    return GridFunction(std::move(w), dx, 0.0);
}

// Gamma slice over the whole grid from the convolution identity
// int w(h) [f(x+h)-f(x)]^2 dh = (w*f^2)(x) - 2 f(x) (w*f)(x) + f(x)^2 W
std::vector<double> gamma_slice(const GridFunction& ft, const GridFunction& w,
                                const GridFunction& dxft, double patch_coeff) {
    std::vector<double> f2(ft.values());
    for (auto& v : f2) v *= v;
    GridFunction ft2(std::move(f2), ft.spacing(), 0.0);
    GridFunction a = convolve(ft2, w);
    GridFunction b = convolve(ft, w);
    double W = w.integral();
    std::vector<double> out(ft.size());
    for (std::size_t i = 0; i < ft.size(); ++i) {
        double g = a[i] - 2.0 * ft[i] * b[i] + ft[i] * ft[i] * W +
                   patch_coeff * dxft[i] * dxft[i];
        out[i] = std::max(g, 0.0);
    }
    return out;
}

}  // namespace

double LambdaKernel::operator()(double x) const {
    double u = std::pow(t, 2.0 / alpha);
    return std::pow(u / (u + std::abs(x)), lambda) / u;
}

double LambdaKernel::mass(double half_extent, double spacing) const {
    (void)spacing;
    if (lambda <= 1.0) throw std::invalid_argument("LambdaKernel: lambda must exceed 1");
    double u = std::pow(t, 2.0 / alpha);
    boost::math::quadrature::tanh_sinh<double> ts;
    double body = 2.0 * ts.integrate([&](double x) { return (*this)(x); }, 0.0, half_extent);
    double tail = 2.0 * std::pow(u, lambda - 1.0) * std::pow(u + half_extent, 1.0 - lambda) /
                  (lambda - 1.0);
    return body + tail;
}

double gamma_alpha(const ExtensionField& field, double t, double x, double radius,
                   std::size_t h_nodes) {
    if (t <= 0.0) throw std::invalid_argument("gamma_alpha: t must be positive");
    const GridFunction& base = field.base();
    if (std::abs(x) > base.half_extent() / 2.0)
        throw std::invalid_argument("gamma_alpha: x outside the inner half-grid");
    double alpha = field.params().alpha;
    double R = (radius > 0.0) ? radius : std::pow(t, 2.0 / alpha);
    double h_min = base.spacing() / 2.0;
    const GridFunction& ft = field.slice(t);
    const GridFunction& dxft = field.dxslice(t);
    double slope = dxft.interp(x);
    if (R <= h_min) return slope * slope * 2.0 * std::pow(R, 2.0 - alpha) / (2.0 - alpha);
    double patch = slope * slope * 2.0 * std::pow(h_min, 2.0 - alpha) / (2.0 - alpha);
    double fx = ft.interp(x);
    double lo = std::log(h_min), hi = std::log(R);
    double hstep = (hi - lo) / static_cast<double>(h_nodes);
    double sum = 0.0;
    for (std::size_t j = 0; j <= h_nodes; ++j) {
        double h = std::exp(lo + hstep * static_cast<double>(j));
        double dp = ft.interp(x + h) - fx;
        double dm = ft.interp(x - h) - fx;
        double g = (dp * dp + dm * dm) * std::pow(h, -1.0 - alpha) * h;  // log jacobian
        sum += (j == 0 || j == h_nodes) ? 0.5 * g : g;
    }
    return patch + sum * hstep;
}

double gamma_full(const ExtensionField& field, double t, double x, std::size_t h_nodes) {
    double L = field.base().half_extent();
    double alpha = field.params().alpha;
    double body = gamma_alpha(field, t, x, 2.0 * L, h_nodes);
    // both x+h and x-h are off-grid for h > 2L; there f = tail_value
    double fx = field.slice(t).interp(x) - field.base().tail_value();
    return body + fx * fx * 2.0 * std::pow(2.0 * L, -alpha) / alpha;
}

double gamma_full_tail_bound(const ExtensionField& field, double t) {
    double L = field.base().half_extent();
    double alpha = field.params().alpha;
    double s = sup_norm(field.slice(t));
    return 4.0 * s * s * 2.0 * std::pow(L / 2.0, -alpha) / alpha;
}

namespace {

struct Accums {
    std::vector<double> g_up2, ga2, gf2, area2, gsa2, gsu2, ls2;
    explicit Accums(std::size_t n)
        : g_up2(n, 0.0), ga2(n, 0.0), gf2(n, 0.0), area2(n, 0.0), gsa2(n, 0.0), gsu2(n, 0.0),
          ls2(n, 0.0) {}
};

GridFunction sqrt_grid(const std::vector<double>& v2, double dx) {
    std::vector<double> v(v2.size());
    for (std::size_t i = 0; i < v2.size(); ++i) v[i] = std::sqrt(std::max(v2[i], 0.0));
    return GridFunction(std::move(v), dx, 0.0);
}

}  // namespace

FunctionalSet compute_functionals(const GridFunction& f, const StableParams& params,
                                  double lambda, const FunctionalConfig& cfg) {
    validate(params);
    if (lambda <= 1.0) throw std::invalid_argument("compute_functionals: lambda must exceed 1");
    double alpha = params.alpha;
    double dx = f.spacing(), L = f.half_extent();
    std::size_t n = f.size();
    double h_min = dx / 2.0;
    TimeGrid tg(cfg.t_min, cfg.t_max, cfg.t_nodes);
    Accums acc(n);

    // Gamma and d/dt are invariant under adding constants, but the discrete
    // zero mode never decays under the semigroup; removing the grid mean up
    // front keeps the slices decaying so the finite window stays accurate at
    // large t
    GridFunction f0 = decaying_part(f);
    {
        double mean = 0.0;
        for (double v : f0.values()) mean += v;
        mean /= static_cast<double>(n);
        std::vector<double> v(f0.values());
        for (auto& x : v) x -= mean;
        f0 = GridFunction(std::move(v), dx, 0.0);
    }

    for (std::size_t j = 0; j < tg.size(); ++j) {
        double t = tg.nodes()[j], w = tg.weights()[j];
        GridFunction dft = d_dt_extend(f0, params, t);
        GridFunction dxft = x_derivative(f0, params, t);
        GridFunction ftd = extend(f0, params, t);

        double R = std::pow(t, 2.0 / alpha);
        double patch_trunc = (R <= h_min)
            ? 2.0 * std::pow(R, 2.0 - alpha) / (2.0 - alpha)
            : 2.0 * std::pow(h_min, 2.0 - alpha) / (2.0 - alpha);
        std::vector<double> gam;
        if (R <= h_min) {
            gam.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                gam[i] = patch_trunc * dxft[i] * dxft[i];
        } else {
            GridFunction wt = difference_kernel(alpha, h_min, R, L, dx, n);
            gam = gamma_slice(ftd, wt, dxft, patch_trunc);
        }

        GridFunction wfull = difference_kernel(alpha, h_min, 2.0 * L, L, dx, n);
        std::vector<double> gamf = gamma_slice(ftd, wfull, dxft,
                                               2.0 * std::pow(h_min, 2.0 - alpha) / (2.0 - alpha));
        double strip = 2.0 * std::pow(L, -alpha) / alpha;  // |h| beyond the kernel extent
        for (std::size_t i = 0; i < n; ++i) gamf[i] += ftd[i] * ftd[i] * strip;

        GridFunction gam_g(std::vector<double>(gam), dx, 0.0);
        GridFunction win = window_kernel(R, dx, n);
        GridFunction area_c = convolve(gam_g, win);

        LambdaKernel K{lambda, t, alpha};
        GridFunction Kg = GridFunction::sample(L, dx, [&](double x) { return K(x); });
        GridFunction gsa_c = convolve(gam_g, Kg);
        std::vector<double> df2(n);
        for (std::size_t i = 0; i < n; ++i) df2[i] = dft[i] * dft[i];
        GridFunction df2_g(std::move(df2), dx, 0.0);
        GridFunction gsu_c = convolve(df2_g, Kg);

        GridFunction qg = GridFunction::sample(L, dx, [&](double x) { return q_density(params, t, x); });
        GridFunction ls_c = convolve(gam_g, qg);

        double wt1 = w * t;
        double wa = w * std::pow(t, 1.0 - 2.0 / alpha);
        for (std::size_t i = 0; i < n; ++i) {
            acc.g_up2[i] += wt1 * dft[i] * dft[i];
            acc.ga2[i] += wt1 * gam[i];
            acc.gf2[i] += wt1 * gamf[i];
            acc.area2[i] += wa * area_c[i];
            acc.gsa2[i] += wt1 * gsa_c[i];
            acc.gsu2[i] += wt1 * gsu_c[i];
            acc.ls2[i] += wt1 * ls_c[i];
        }
    }

    // error bar for the truncated t-range: surviving slowest mode
    double xi_min = 2.0 * kPi / (2.0 * L + dx);
    double a_min = std::pow(xi_min, alpha / 2.0);
    double tail = std::exp(-2.0 * cfg.t_max * a_min) *
                  (cfg.t_max / (2.0 * a_min) + 0.25 / (a_min * a_min));

    auto finish = [&](const char* name, const std::vector<double>& v2) {
        return make_report(name, params, lambda, restrict_inner(sqrt_grid(v2, dx)), tail);
    };
    FunctionalSet set;
    set.g_up = finish("G_up", acc.g_up2);
    set.g_arrow = finish("G_arrow", acc.gf2);
    set.g_arrow_alpha = finish("G_arrow_alpha", acc.ga2);
    std::vector<double> tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = acc.gf2[i] + acc.g_up2[i];
    set.g_full = finish("G", tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = acc.ga2[i] + acc.g_up2[i];
    set.g_alpha = finish("G_alpha", tmp);
    set.area = finish("A", acc.area2);
    set.gstar_arrow = finish("G_star_arrow", acc.gsa2);
    set.gstar_up = finish("G_star_up", acc.gsu2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = acc.gsa2[i] + acc.gsu2[i];
    set.gstar = finish("G_star", tmp);
    set.l_star = finish("L_star", acc.ls2);
    return set;
}

FunctionalReport g_up(const GridFunction& f, const StableParams& params,
                      const FunctionalConfig& cfg) {
    validate(params);
    std::size_t n = f.size();
    double dx = f.spacing();
    TimeGrid tg(cfg.t_min, cfg.t_max, cfg.t_nodes);
    std::vector<double> acc(n, 0.0);
    for (std::size_t j = 0; j < tg.size(); ++j) {
        double t = tg.nodes()[j], w = tg.weights()[j];
        GridFunction dft = d_dt_extend(f, params, t);
        double wt = w * t;
        for (std::size_t i = 0; i < n; ++i) acc[i] += wt * dft[i] * dft[i];
    }
    double xi_min = 2.0 * kPi / (2.0 * f.half_extent() + dx);
    double a_min = std::pow(xi_min, params.alpha / 2.0);
    double tail = std::exp(-2.0 * cfg.t_max * a_min) *
                  (cfg.t_max / (2.0 * a_min) + 0.25 / (a_min * a_min));
    // kept on the full grid: the periodic spectral route has no boundary
    // layer here, and the full-grid norm is what the Plancherel constant
    // 1/2 refers to
    return make_report("G_up", params, 0.0, sqrt_grid(acc, dx), tail);
}

FunctionalReport area_functional(const GridFunction& f, const StableParams& params,
                                 const FunctionalConfig& cfg) {
    return compute_functionals(f, params, 2.0, cfg).area;
}

FunctionalSet g_star(const GridFunction& f, const StableParams& params, double lambda,
                     const FunctionalConfig& cfg) {
    return compute_functionals(f, params, lambda, cfg);
}

FunctionalReport l_star(const GridFunction& f, const StableParams& params,
                        const FunctionalConfig& cfg) {
    return compute_functionals(f, params, 2.0, cfg).l_star;
}

namespace {

std::vector<double> sliding_max(const std::vector<double>& v, std::size_t r) {
    std::size_t n = v.size();
    std::vector<double> out(n);
    std::deque<std::size_t> dq;  // indices with decreasing values
    for (std::size_t i = 0; i < n + r; ++i) {
        if (i < n) {
            while (!dq.empty() && v[dq.back()] <= v[i]) dq.pop_back();
            dq.push_back(i);
        }
        if (i >= r) {
            std::size_t center = i - r;  // window [center - r, center + r]
            while (dq.front() + r < center) dq.pop_front();
            out[center] = v[dq.front()];
        }
    }
    return out;
}

std::vector<double> n_alpha_pass(const GridFunction& f, const StableParams& params,
                                 const TimeGrid& tg) {
    std::size_t n = f.size();
    std::vector<double> best(n, 0.0);
    for (double t : tg.nodes()) {
        GridFunction ft = extend(f, params, t);
        std::vector<double> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(ft[i]);
        double R = std::pow(t, 2.0 / params.alpha);
        auto r = static_cast<std::size_t>(R / f.spacing());
        if (r >= (n - 1) / 2) r = (n - 1) / 2;
        std::vector<double> m = (r == 0) ? a : sliding_max(a, r);
        for (std::size_t i = 0; i < n; ++i) best[i] = std::max(best[i], m[i]);
    }
    return best;
}

}  // namespace

MaximalReport n_alpha_maximal(const GridFunction& f, const StableParams& params,
                              const FunctionalConfig& cfg) {
    validate(params);
    TimeGrid tg(cfg.t_min, cfg.t_max, cfg.t_nodes);
    TimeGrid tg3(cfg.t_min, cfg.t_max, cfg.t_nodes * 3);
    std::vector<double> pass1 = n_alpha_pass(f, params, tg);
    std::vector<double> pass3 = n_alpha_pass(f, params, tg3);
    double shift = 0.0;
    for (std::size_t i = 0; i < pass1.size(); ++i)
        shift = std::max(shift, std::abs(pass3[i] - pass1[i]));
    MaximalReport out;
    out.report = make_report("N_alpha", params, 0.0,
                             restrict_inner(GridFunction(std::move(pass3), f.spacing(), 0.0)), 0.0);
    out.refinement_shift = shift;
    return out;
}

FunctionalReport hl_maximal(const GridFunction& f) {
    std::size_t n = f.size();
    double dx = f.spacing();
    std::vector<double> af(n);
    for (std::size_t i = 0; i < n; ++i) af[i] = std::abs(f[i]);
    std::vector<double> pre(n + 1, 0.0);  // trapezoid prefix: int_{x_0}^{x_i} |f|
    for (std::size_t i = 1; i < n; ++i) pre[i] = pre[i - 1] + 0.5 * dx * (af[i - 1] + af[i]);
    auto seg = [&](long lo, long hi) {  // integral over [x_lo, x_hi] clipped
        long nn = static_cast<long>(n);
        lo = std::max(lo, 0L);
        hi = std::min(hi, nn - 1);
        if (hi <= lo) return 0.0;
        return pre[static_cast<std::size_t>(hi)] - pre[static_cast<std::size_t>(lo)];
    };
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = af[i];  // r -> 0
        auto li = static_cast<long>(i);
        for (std::size_t j = 1; j < n; ++j) {
            double r = static_cast<double>(j) * dx;
            double avg = seg(li - static_cast<long>(j), li + static_cast<long>(j)) / (2.0 * r);
            best = std::max(best, avg);
        }
        out[i] = best;
    }
    StableParams dummy{1.5, 1};
    return make_report("HL_max", dummy, 0.0,
                       restrict_inner(GridFunction(std::move(out), dx, 0.0)), 0.0);
}

double g_arrow_ratio_oracle(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("g_arrow_ratio_oracle: bad alpha");
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::gauss_kronrod<double, 15> gk;
    auto J = [&](double R) {
        if (R <= 0.0) return 0.0;
        if (R < 1e-4)  // leading order of the integrand, error O(R^2) relative
            return 2.0 * std::pow(R, 2.0 - alpha) / (2.0 - alpha);
        double r1 = std::min(R, 1.0);
        // 2 - 2cos u = 4 sin^2(u/2); factor out u^2 to avoid 0 * inf at tiny u
        double head = 2.0 * ts.integrate(
            [&](double u) {
                double s = 2.0 * std::sin(u / 2.0) / u;
                return s * s * std::pow(u, 1.0 - alpha);
            }, 0.0, r1);
        if (R <= 1.0) return head;
        double Rc = std::min(R, 2000.0);
        double power = 2.0 * 2.0 * (std::pow(1.0, -alpha) - std::pow(Rc, -alpha)) / alpha;
        double osc = -4.0 * gk.integrate(
            [&](double u) { return std::cos(u) * std::pow(u, -1.0 - alpha); }, 1.0, Rc, 12);
        return head + power + osc;
    };
    boost::math::quadrature::exp_sinh<double> es;
    double c2 = es.integrate([&](double tau) {
        return tau * std::exp(-2.0 * tau) * J(std::pow(tau, 2.0 / alpha));
    });
    return std::sqrt(c2);
}

}  // namespace slp
