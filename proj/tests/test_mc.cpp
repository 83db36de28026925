#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablelp/fixtures.hpp"
#include "stablelp/mc.hpp"
#include "stablelp/stable_density.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

using namespace slp;

namespace {

const StableParams kP{1.5, 1};

double ks_bound(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double corr(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
    double sab = 0.0, sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        sa += (a[i] - ma) * (a[i] - ma);
        sb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(sa * sb);
}

}  // namespace

TEST_CASE("stable sampler: characteristic function") {
    std::size_t n = 40000;
    double tol = 3.0 / std::sqrt(static_cast<double>(n));
    for (double alpha : {1.0, 1.5, 1.999}) {
        auto s = sample_stable({alpha, 1}, n, 7);
        for (double xi : {0.5, 1.0, 2.0}) {
            std::complex<double> acc = 0.0;
            for (double v : s) acc += std::exp(std::complex<double>(0.0, xi * v));
            acc /= static_cast<double>(n);
            CHECK(std::abs(acc.real() - std::exp(-std::pow(xi, alpha))) < tol);
            CHECK(std::abs(acc.imag()) < tol);
        }
        double signs = 0.0;
        for (double v : s) signs += (v > 0.0) ? 1.0 : -1.0;
        CHECK(std::abs(signs / static_cast<double>(n)) < 2.0 / std::sqrt(static_cast<double>(n)));
    }
    CHECK_THROWS_AS(sample_stable({2.5, 1}, 10, 1), std::invalid_argument);
}

TEST_CASE("stable sampler: Cauchy quartiles") {
    auto s = sample_stable({1.0, 1}, 40000, 11);
    std::sort(s.begin(), s.end());
    double q1 = s[s.size() / 4], q2 = s[s.size() / 2], q3 = s[3 * s.size() / 4];
    CHECK(std::abs(q2) < 0.05);          // median 0
    CHECK(q3 - q1 == doctest::Approx(2.0).epsilon(0.05));  // Cauchy IQR
}

TEST_CASE("exit time and exit position laws") {
    McConfig cfg;
    cfg.n_paths = 30000;
    cfg.seed = 44;
    auto paths = run_paths(kP, cfg, 0.0, 1.0);
    REQUIRE(paths.size() == cfg.n_paths);
    std::vector<double> t0, y0;
    std::size_t cens = 0;
    for (const auto& p : paths) {
        t0.push_back(p.t0);
        y0.push_back(p.y_at_t0);
        cens += p.censored ? 1 : 0;
        CHECK(p.t0 > 0.0);
    }
    ExitLaw mu(1.0);
    CHECK(ks_statistic(t0, [&](double v) { return mu.cdf(v); }) < ks_bound(cfg.n_paths));
    CHECK(ks_statistic(y0, [&](double v) { return q_cdf(kP, 1.0, v); }) < ks_bound(cfg.n_paths));
    CHECK(static_cast<double>(cens) < 0.01 * static_cast<double>(cfg.n_paths));
    // T0 and Y are independent; correlate bounded summaries because raw
    // stable samples have no finite variance (one large jump dominates a
    // plain sample correlation)
    std::vector<double> ft0, sy;
    for (std::size_t i = 0; i < t0.size(); ++i) {
        ft0.push_back(mu.cdf(t0[i]));
        sy.push_back(y0[i] > 0.0 ? 1.0 : -1.0);
    }
    CHECK(std::abs(corr(ft0, sy)) < 3.0 / std::sqrt(static_cast<double>(cfg.n_paths)));
    CHECK_THROWS_AS(run_paths(kP, cfg, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("boundary start exits immediately") {
    McConfig cfg;
    cfg.n_paths = 2000;
    auto paths = run_paths(kP, cfg, 0.0, 0.01);
    std::vector<double> t0;
    for (const auto& p : paths) t0.push_back(p.t0);
    std::sort(t0.begin(), t0.end());
    CHECK(t0[t0.size() / 2] < 1e-3);
}

TEST_CASE("reproducibility") {
    McConfig cfg;
    cfg.n_paths = 1000;
    auto a = run_paths(kP, cfg, 0.0, 1.0);
    auto b = run_paths(kP, cfg, 0.0, 1.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t0 == b[i].t0);
        CHECK(a[i].y_at_t0 == b[i].y_at_t0);
    }
    // independent seeds are statistically identical
    McConfig other = cfg;
    other.n_paths = 4000;
    other.seed = 99;
    cfg.n_paths = 4000;
    auto c = run_paths(kP, cfg, 0.0, 1.0);
    auto d = run_paths(kP, other, 0.0, 1.0);
    std::vector<double> tc, td;
    for (const auto& p : c) tc.push_back(p.t0);
    for (const auto& p : d) td.push_back(p.t0);
    double nm = static_cast<double>(tc.size());
    CHECK(ks_two_sample(tc, td) < 1.63 * std::sqrt(2.0 / nm));
}

TEST_CASE("Green identity") {
    McConfig cfg;
    cfg.n_paths = 30000;
    auto ind = [](double b) {
        return [b](double z) { return (z > 0.0 && z <= b) ? 1.0 : 0.0; };
    };
    GreenResult g1 = green_identity_check(ind(1.0), 1.0, 1.0, kP, cfg);
    CHECK(g1.exact == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(g1.mc - g1.exact) < 3.0 * g1.std_err + 2.0 * cfg.dt);
    GreenResult g2 = green_identity_check(ind(0.5), 0.5, 1.0, kP, cfg);
    CHECK(g2.exact == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(std::abs(g2.mc - g2.exact) < 3.0 * g2.std_err + 2.0 * cfg.dt);
    GreenResult z = green_identity_check([](double) { return 0.0; }, 1.0, 1.0, kP, cfg);
    CHECK(z.mc == 0.0);
    CHECK(z.exact == 0.0);
}

TEST_CASE("Green identity bias shrinks with dt") {
    McConfig cfg;
    cfg.n_paths = 50000;
    auto f = [](double z) { return (z > 0.0 && z <= 1.0) ? 1.0 : 0.0; };
    cfg.dt = 0.08;
    double b1 = green_identity_check(f, 1.0, 1.0, kP, cfg).mc - 0.5;
    cfg.dt = 0.04;
    double b2 = green_identity_check(f, 1.0, 1.0, kP, cfg).mc - 0.5;
    CHECK(std::abs(b1) > std::abs(b2));
    CHECK(std::abs(b1) / std::abs(b2) > 1.2);
    CHECK(std::abs(b1) / std::abs(b2) < 5.0);
}

TEST_CASE("martingale property of the extension") {
    McConfig cfg;
    cfg.n_paths = 20000;
    GridFunction f = make_fixture("gauss");
    auto rows = martingale_check(f, kP, 0.0, 1.0, {0.1, 0.5, 2.0}, cfg);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.reference == doctest::Approx(rows[0].reference).epsilon(1e-9));
        CHECK(std::abs(r.mc - r.reference) < 3.5 * r.std_err);
    }
    // constant fixture is exact
    auto ones = martingale_check(make_fixture("one"), kP, 0.0, 1.0, {0.5}, cfg);
    CHECK(ones[0].mc == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(ones[0].reference == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("Harnack box ratios") {
    auto r = harnack_sample(kP, {"gauss", "gauss5", "one"});
    CHECK(r.at("one") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.at("gauss") >= 1.0);
    CHECK(std::isfinite(r.at("gauss")));
    // translation robustness: within a factor 2 of the untranslated ratio
    double a = r.at("gauss") - 1.0, b = r.at("gauss5") - 1.0;
    CHECK(b < 2.0 * a + 1e-6);
    CHECK(a < 2.0 * b + 1e-6);
    CHECK_THROWS_AS(harnack_ratio(make_fixture("gauss"), kP, 10.0), std::invalid_argument);
}

TEST_CASE("KS statistic sanity") {
    std::vector<double> u;
    for (int i = 0; i < 200; ++i) u.push_back((static_cast<double>(i) + 0.5) / 200.0);
    CHECK(ks_statistic(u, [](double v) { return v; }) <= 0.5 / 200.0 + 1e-12);
    CHECK(ks_statistic(u, [](double v) { return v * v; }) > 0.2);
    CHECK(ks_two_sample(u, u) == 0.0);
}
