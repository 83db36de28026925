#include "stablelp/suite.hpp"

#include "stablelp/extension.hpp"
#include "stablelp/fixtures.hpp"
#include "stablelp/functionals.hpp"
#include "stablelp/mc.hpp"
#include "stablelp/multiplier.hpp"
#include "stablelp/stable_density.hpp"
#include "stablelp/subordinator.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// --- criterion 1: density closed forms, cross-method, mass, semigroup ------

void criterion_density(SuiteReport& rep) {
    StableParams cauchy{1.0, 1};
    rep.add("c1_cauchy_p10", rel_err(p_density(cauchy, 1.0, 0.0), 1.0 / kPi) <= 1e-6,
            p_density(cauchy, 1.0, 0.0), 1e-6, "want 1/pi");
    TwoSidedRatio ts = check_two_sided(stable_density(cauchy, 1.0));
    bool two_ok = ts.ratio_min >= 1.0 / (2.0 * kPi) - 1e-6 && ts.ratio_max <= 1.0 / kPi + 1e-6;
    rep.add("c1_two_sided_band", two_ok, ts.ratio_min, 1e-6,
            "range [" + fmt(ts.ratio_min) + ", " + fmt(ts.ratio_max) + "], want within [1/2pi, 1/pi]");

    for (double alpha : {1.0, 1.5}) {
        StableParams P{alpha, 1};
        double worst = 0.0;
        for (double x : {0.0, 0.5, 1.0, 3.0, 10.0})
            worst = std::max(worst,
                             rel_err(subordination_density(P, 1.0, x), p_density(P, 1.0, x)));
        rep.add("c1_subordination_alpha" + fmt(alpha), worst <= 1e-4, worst, 1e-4,
                "max rel diff subordination vs spectral");
    }

    StableParams P{1.5, 1};
    DensityTable tab = stable_density(P, 1.0);
    rep.add("c1_mass", std::abs(tab.mass - 1.0) <= 1e-5, tab.mass, 1e-5, "tail-corrected mass");

    // independent quadrature of the inversion integral at s = 2
    {
        boost::math::quadrature::exp_sinh<double> es;
        double worst = 0.0;
        for (double x : {0.0, 1.0}) {
            double direct = es.integrate([&](double xi) {
                                return std::cos(x * xi) * std::exp(-2.0 * std::pow(xi, 1.5));
                            }) / kPi;
            worst = std::max(worst, rel_err(p_density(P, 2.0, x), direct));
        }
        rep.add("c1_scaling_oracle", worst <= 1e-6, worst, 1e-6,
                "p(2,x) vs direct quadrature of the symbol");
    }

    // semigroup p(1) * p(1) = p(2)
    {
        GridFunction p1 = default_grid_sample([&](double x) { return p_density(P, 1.0, x); });
        GridFunction p2c = convolve(p1, p1);
        double worst = 0.0;
        for (double x = -16.0; x <= 16.0; x += 0.25)
            worst = std::max(worst, std::abs(p2c.interp(x) - p_density(P, 2.0, x)));
        rep.add("c1_semigroup", worst <= 1e-5, worst, 1e-5, "max |p1*p1 - p2| on |x|<=16");
    }
}

// --- criterion 2: psi constants, Lemma 5 envelopes, Lemma 4 margins --------

double psi_envelope_const(const StableParams& P, double h, bool deriv) {
    double expo = deriv ? 2.0 + P.alpha / 2.0 : 1.0 + P.alpha / 2.0;
    double worst = 0.0;
    for (double x = 0.0; x <= kDefaultL; x += h) {
        double v = deriv ? std::abs(psi_deriv_eval(P, x)) : std::abs(psi_eval(P, x));
        worst = std::max(worst, v * std::pow(std::max(1.0, x), expo));
    }
    return worst;
}

void criterion_psi(SuiteReport& rep) {
    StableParams c{1.0, 1};
    rep.add("c2_psi0_cauchy", std::abs(psi_eval(c, 0.0) + 4.0 / kPi) <= 1e-5,
            psi_eval(c, 0.0), 1e-5, "want -4/pi");
    StableParams P{1.5, 1};
    double zi = psi_integral(P);
    rep.add("c2_psi_integral", std::abs(zi) <= 1e-6, zi, 1e-6, "want 0");

    for (bool deriv : {false, true}) {
        double c1 = psi_envelope_const(P, kDefaultDx, deriv);
        double c2 = psi_envelope_const(P, kDefaultDx / 2.0, deriv);
        bool ok = std::isfinite(c2) && std::abs(c2 - c1) <= 0.05 * c1;
        rep.add(std::string("c2_envelope_") + (deriv ? "dpsi" : "psi"), ok, c2, 0.05,
                "empirical constant, drift " + fmt(std::abs(c2 - c1) / c1));
    }

    for (double M : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        MuMomentBounds b = mu_moment_bounds(M);
        double m_left = std::sqrt(M) / std::sqrt(kPi) - b.left;
        double m_right = 1.0 / (std::sqrt(M) * std::sqrt(kPi)) - b.right;
        rep.add("c2_mu_moment_M" + fmt(M), m_left >= -1e-8 && m_right >= -1e-8,
                std::min(m_left, m_right), 1e-8, "margins of Lemma-style moment bounds");
    }
}

// --- criterion 3: Plancherel constant for G_up -----------------------------

void criterion_plancherel(SuiteReport& rep) {
    FunctionalConfig cfg;
    cfg.t_nodes = 1024;
    for (double alpha : {1.2, 1.5, 1.8}) {
        StableParams P{alpha, 1};
        for (const char* name : {"gauss", "indicator", "coswin"}) {
            GridFunction f = make_fixture(name, 640.0, 1.0 / 16);
            FunctionalReport r = g_up(f, P, cfg);
            double ratio = lp_norm(r.values, 2.0) / lp_norm(f, 2.0);
            rep.add("c3_gup_a" + fmt(alpha) + "_" + name, std::abs(ratio - 0.5) <= 1e-3,
                    ratio, 1e-3, "want 0.5");
        }
    }
}

// --- criteria 4 and 5: scaling constant and pointwise chains ---------------

void criteria_scaling_and_chains(SuiteReport& rep, bool quick, Stopwatch& sw,
                                 double& t4, double& t5) {
    StableParams P{1.5, 1};
    double lambda0 = (2.0 + P.alpha) / 2.0;
    FunctionalConfig cfg;
    cfg.t_nodes = quick ? 256 : 512;
    double oracle = g_arrow_ratio_oracle(P.alpha);

    FunctionalSet gauss_set;
    double lo = 1e9, hi = 0.0;
    for (const char* name : {"gauss", "indicator", "coswin"}) {
        GridFunction f = make_fixture(name, 320.0, 1.0 / 64);
        FunctionalSet S = compute_functionals(f, P, lambda0, cfg);
        double ratio = lp_norm(S.g_arrow_alpha.values, 2.0) / lp_norm(f, 2.0);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        rep.add("c4_ratio_" + std::string(name), rel_err(ratio, oracle) <= 1e-2, ratio, 1e-2,
                "oracle " + fmt(oracle));
        if (std::strcmp(name, "gauss") == 0) gauss_set = std::move(S);
    }
    rep.add("c4_fixture_spread", (hi - lo) / lo <= 1e-2, (hi - lo) / lo, 1e-2,
            "relative spread across fixtures");
    t4 = sw.seconds();

    // c5: chains on the gauss set (same lambda0 run)
    {
        double worst = 0.0;
        double c = std::pow(2.0, lambda0 / 2.0);
        const auto& A = gauss_set.area.values;
        const auto& G = gauss_set.gstar_arrow.values;
        for (std::size_t i = 0; i < A.size(); ++i)
            if (c * G[i] > 0.0) worst = std::max(worst, A[i] / (c * G[i]));
        rep.add("c5_area_vs_gstar", worst <= 1.0 + 1e-9, worst, 1e-9,
                "max A/(2^{lambda0/2} G*arrow), want <= 1");
    }
    {
        double worst = -1e9;
        const auto& Ga = gauss_set.g_alpha.values;
        const auto& Gu = gauss_set.g_up.values;
        for (std::size_t i = 0; i < Ga.size(); ++i) worst = std::max(worst, Gu[i] - Ga[i]);
        rep.add("c5_galpha_dominates_gup", worst <= 1e-12, worst, 1e-12,
                "max (G_up - G_alpha), want <= 0");
    }
    {
        GridFunction f = make_fixture("gauss");
        ExtensionField field(f, P);
        double worst = -1e9;
        for (double t : {0.5, 1.0, 2.0})
            for (double x : {0.0, 0.5, 1.0, 2.0})
                worst = std::max(worst, gamma_alpha(field, t, x) - gamma_full(field, t, x));
        rep.add("c5_gammafull_dominates", worst <= 1e-12, worst, 1e-12,
                "max (gamma_alpha - gamma_full), want <= 0");
    }
    {
        double m1 = LambdaKernel{2.0, 0.01, P.alpha}.mass(kDefaultL, kDefaultDx);
        double m2 = LambdaKernel{2.0, 1.0, P.alpha}.mass(kDefaultL, kDefaultDx);
        double m3 = LambdaKernel{2.0, 100.0, P.alpha}.mass(kDefaultL, kDefaultDx);
        double drift = std::max(rel_err(m1, m2), rel_err(m3, m2));
        rep.add("c5_kernel_mass_invariance", drift <= 1e-5, drift, 1e-5, "t in {0.01,1,100}");
        rep.add("c5_kernel_mass_closed_form", std::abs(m2 - 2.0) <= 1e-6, m2, 1e-6,
                "lambda=2 mass, want 2");
    }
    t5 = sw.seconds() - t4;
}

// --- criterion 6: maximal functions -----------------------------------------

double n_over_m_const(const GridFunction& f, const StableParams& P, const FunctionalConfig& cfg) {
    MaximalReport na = n_alpha_maximal(f, P, cfg);
    FunctionalReport hl = hl_maximal(f);
    double c = 0.0;
    for (std::size_t i = 0; i < na.report.values.size(); ++i)
        if (hl.values[i] > 0.0) c = std::max(c, na.report.values[i] / hl.values[i]);
    return c;
}

void criterion_maximal(SuiteReport& rep) {
    GridFunction ind = make_fixture("indicator");
    FunctionalReport hl = hl_maximal(ind);
    rep.add("c6_hl_center", std::abs(hl.values.interp(0.0) - 1.0) <= 1e-9,
            hl.values.interp(0.0), 1e-9, "M(indicator)(0), want 1");
    rep.add("c6_hl_offside", std::abs(hl.values.interp(2.0) - 1.0 / 3.0) <= kDefaultDx,
            hl.values.interp(2.0), kDefaultDx, "M(indicator)(2), want 1/3");

    StableParams P{1.5, 1};
    FunctionalConfig cfg;
    double c1 = n_over_m_const(make_fixture("gauss"), P, cfg);
    double c2 = n_over_m_const(make_fixture("gauss", kDefaultL, kDefaultDx / 2.0), P, cfg);
    bool ok = std::isfinite(c2) && std::abs(c2 - c1) <= 0.05 * c1;
    rep.add("c6_n_vs_m", ok, c2, 0.05,
            "empirical N_alpha <= c M(f) constant, drift " + fmt(std::abs(c2 - c1) / c1));
}

// --- criterion 7: multiplier pipeline ---------------------------------------

void criterion_multiplier(SuiteReport& rep) {
    StableParams P{1.5, 1};
    {
        KernelSpec pv = kernel_registry("pv_inverse", P.alpha);
        GridFunction f = make_fixture("gauss", 1024.0, 1.0 / 512);
        GridFunction Tf = apply_T(f, pv);
        double ratio = lp_norm(Tf, 2.0) / lp_norm(f, 2.0);
        rep.add("c7_pv_l2", std::abs(ratio - kPi) <= 1e-2, ratio, 1e-2, "want pi");
    }
    std::vector<std::string> fixtures{"gauss", "indicator", "coswin"};
    std::vector<double> ps{1.5, 2.0, 3.0};
    {
        CertificationReport r = certify(kernel_registry("test", P.alpha), P, fixtures, ps);
        rep.add("c7_test_certified", r.verdict == Verdict::certified, r.decay_const, 0.0,
                std::string("verdict ") + verdict_name(r.verdict) + "; " + r.note);
        rep.add("c7_test_cancelation", r.cancelation_max == 0.0, r.cancelation_max, 0.0,
                "odd kernel, want exactly 0");
        rep.add("c7_test_growth", r.cond_i_const <= 1.01 && r.cond_ii_const <= 1.01,
                std::max(r.cond_i_const, r.cond_ii_const), 1.01, "condition constants");
        bool finite = !r.norm_ratios.empty();
        for (const auto& [k, v] : r.norm_ratios) finite = finite && std::isfinite(v);
        rep.add("c7_test_ratios", finite && r.ratio_spread < 10.0, r.ratio_spread, 10.0,
                "norm-ratio spread across fixtures");
    }
    {
        CertificationReport r = certify(kernel_registry("even_inverse", P.alpha), P, fixtures, ps);
        rep.add("c7_even_violated", r.verdict == Verdict::violated, r.cancelation_max, 0.0,
                std::string("verdict ") + verdict_name(r.verdict));
    }
    {
        CertificationReport r = certify(kernel_registry("fat_tail", P.alpha), P, fixtures, ps);
        rep.add("c7_fat_inconclusive", r.verdict == Verdict::inconclusive, 0.0, 0.0,
                std::string("verdict ") + verdict_name(r.verdict) + "; " + r.note);
    }
}

// --- criterion 8: Monte Carlo -----------------------------------------------

void criterion_mc(SuiteReport& rep, const SuiteOptions& opt) {
    StableParams P{1.5, 1};
    std::size_t n = opt.quick ? 20000 : 100000;
    double bound = 1.63 / std::sqrt(static_cast<double>(n));
    McConfig cfg;
    cfg.n_paths = n;
    cfg.dt = 1e-3;
    cfg.seed = opt.seed;

    auto paths = run_paths(P, cfg, 0.0, 1.0);
    std::vector<double> t0, y0;
    std::size_t cens = 0;
    for (const auto& p : paths) {
        t0.push_back(p.t0);
        y0.push_back(p.y_at_t0);
        cens += p.censored ? 1 : 0;
    }
    ExitLaw mu(1.0);
    double ks1 = ks_statistic(t0, [&](double v) { return mu.cdf(v); });
    double ks2 = ks_statistic(y0, [&](double v) { return q_cdf(P, 1.0, v); });
    rep.add("c8_ks_exit_time", ks1 < bound, ks1, bound, "KS vs erfc CDF");
    rep.add("c8_ks_exit_position", ks2 < bound, ks2, bound, "KS vs q_1 CDF");
    rep.add("c8_censoring", static_cast<double>(cens) < 0.01 * static_cast<double>(n),
            static_cast<double>(cens), 0.01 * static_cast<double>(n), "censored paths");

    auto ind1 = [](double z) { return z <= 1.0 ? 1.0 : 0.0; };
    GreenResult g = green_identity_check(ind1, 1.0, 1.0, P, cfg);
    rep.add("c8_green_identity", std::abs(g.mc - g.exact) <= 3.0 * g.std_err + 2.0 * cfg.dt,
            g.mc, 3.0 * g.std_err + 2.0 * cfg.dt, "want 0.5, SE " + fmt(g.std_err));
    {
        McConfig bcfg = cfg;
        bcfg.n_paths = opt.quick ? 50000 : 200000;
        bcfg.dt = 0.08;
        double b1 = green_identity_check(ind1, 1.0, 1.0, P, bcfg).mc - 0.5;
        bcfg.dt = 0.04;
        double b2 = green_identity_check(ind1, 1.0, 1.0, P, bcfg).mc - 0.5;
        double ratio = std::abs(b1) / std::abs(b2);
        rep.add("c8_green_bias_halves", ratio >= 4.0 / 3.0 && ratio <= 4.0, ratio, 0.0,
                "bias(0.08)/bias(0.04), want in [4/3, 4]");
    }
    {
        GridFunction f = make_fixture("gauss");
        auto rows = martingale_check(f, P, 0.0, 1.0, {0.1, 0.5, 2.0}, cfg);
        bool ok = true;
        std::string detail;
        for (const auto& r : rows) {
            ok = ok && std::abs(r.mc - r.reference) <= 3.0 * r.std_err;
            detail += "s=" + fmt(r.s) + " dev/se=" +
                      fmt(std::abs(r.mc - r.reference) / r.std_err) + "; ";
        }
        rep.add("c8_martingale", ok, rows.empty() ? 0.0 : rows[0].mc, 0.0, detail);
    }
    {
        McConfig rcfg = cfg;
        rcfg.n_paths = 1000;
        auto a = run_paths(P, rcfg, 0.0, 1.0);
        auto b = run_paths(P, rcfg, 0.0, 1.0);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].t0 == b[i].t0 && a[i].y_at_t0 == b[i].y_at_t0;
        rep.add("c8_reproducible", same, same ? 1.0 : 0.0, 0.0,
                "bit-identical rerun with fixed seed");
    }
}

// --- criterion 9: Harnack ratios ---------------------------------------------

void criterion_harnack(SuiteReport& rep) {
    StableParams P{1.5, 1};
    auto ratios = harnack_sample(P, {"gauss", "gauss5", "indicator", "one"});
    bool finite = true;
    for (const auto& [k, v] : ratios) {
        finite = finite && std::isfinite(v) && v >= 1.0;
        rep.log("c9_ratio_" + k, v, "sup/inf over D_1 at t_c = 33");
    }
    rep.add("c9_finite", finite, ratios.at("gauss"), 0.0, "all box ratios finite");
    rep.add("c9_constant_one", std::abs(ratios.at("one") - 1.0) <= 1e-12, ratios.at("one"),
            1e-12, "f = 1, want exactly 1");
    double r1 = harnack_ratio(make_fixture("gauss"), P, 33.0, 17);
    double r2 = harnack_ratio(make_fixture("gauss"), P, 33.0, 33);
    rep.add("c9_refinement", std::abs(r2 - r1) <= 0.05 * (r1 - 1.0 + 1e-12) + 1e-9, r2, 0.05,
            "box sampling 17 vs 33 per side");
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& options) {
    SuiteReport rep;
    std::ostringstream cfg;
    cfg << "alpha=" << options.alpha << ";quick=" << options.quick << ";seed=" << options.seed;
    rep.config_hash = config_hash(cfg.str());

    Stopwatch total;
    auto timed = [&](const char* name, auto&& fn) {
        Stopwatch sw;
        fn();
        rep.log(name, sw.seconds(), "elapsed seconds");
    };
    timed("c1_runtime", [&] { criterion_density(rep); });
    timed("c2_runtime", [&] { criterion_psi(rep); });
    timed("c3_runtime", [&] { criterion_plancherel(rep); });
    {
        Stopwatch sw;
        double t4 = 0.0, t5 = 0.0;
        criteria_scaling_and_chains(rep, options.quick, sw, t4, t5);
        rep.log("c4_runtime", t4, "elapsed seconds");
        rep.log("c5_runtime", t5, "elapsed seconds");
    }
    timed("c6_runtime", [&] { criterion_maximal(rep); });
    timed("c7_runtime", [&] { criterion_multiplier(rep); });
    timed("c8_runtime", [&] { criterion_mc(rep, options); });
    timed("c9_runtime", [&] { criterion_harnack(rep); });
    rep.log("total_runtime", total.seconds(), "elapsed seconds");
    return rep;
}

}  // namespace slp
