#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablelp/grid.hpp"
#include "stablelp/stable_density.hpp"
#include "stablelp/subordinator.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace slp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(p_density({0.0, 1}, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(p_density({2.0, 1}, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(p_density({1.5, 2}, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(p_density({1.5, 1}, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("Cauchy closed form, alpha = 1") {
    StableParams P{1.0, 1};
    for (double s : {0.5, 1.0, 3.0})
        for (double x : {0.0, 0.5, 1.0, 4.0, 20.0}) {
            double want = s / (kPi * (s * s + x * x));
            CHECK(p_density(P, s, x) == doctest::Approx(want).epsilon(1e-6));
        }
}

TEST_CASE("two-sided estimate band") {
    // paper: (1/2pi) min(s^{-1/a}, s|x|^{-1-a}) <= p <= (1/pi) min(...) at a=1
    TwoSidedRatio r = check_two_sided(stable_density({1.0, 1}, 1.0));
    CHECK(r.ratio_min >= 1.0 / (2.0 * kPi) - 1e-9);
    CHECK(r.ratio_max <= 1.0 / kPi + 1e-9);
    // the bound family is tight: both ends are approached
    CHECK(r.ratio_max > 0.9 / kPi);
    // alpha = 1.5: ratios finite and ordered, constants unspecified
    TwoSidedRatio r15 = check_two_sided(stable_density({1.5, 1}, 1.0));
    CHECK(r15.ratio_min > 0.0);
    CHECK(r15.ratio_min <= r15.ratio_max);
    CHECK(std::isfinite(r15.ratio_max));
}

TEST_CASE("mass, symmetry, scaling") {
    StableParams P{1.5, 1};
    DensityTable tab = stable_density(P, 1.0);
    CHECK(tab.mass == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(p_density(P, 1.0, 2.0) == doctest::Approx(p_density(P, 1.0, -2.0)).epsilon(1e-12));
    // p(s, x) = s^{-1/alpha} p(1, x s^{-1/alpha})
    for (double s : {0.25, 4.0})
        for (double x : {0.0, 1.0, 5.0}) {
            double sc = std::pow(s, -1.0 / P.alpha);
            CHECK(p_density(P, s, x) == doctest::Approx(sc * p_density(P, 1.0, x * sc)).epsilon(1e-9));
        }
}

TEST_CASE("spectral route vs independent quadrature") {
    boost::math::quadrature::exp_sinh<double> es;
    for (double alpha : {0.8, 1.5}) {
        StableParams P{alpha, 1};
        for (double x : {0.0, 0.7, 2.0}) {
            double direct = es.integrate([&](double xi) {
                                return std::cos(x * xi) * std::exp(-std::pow(xi, alpha));
                            }) / kPi;
            CHECK(p_density(P, 1.0, x) == doctest::Approx(direct).epsilon(1e-8));
        }
    }
}

TEST_CASE("subordination oracle agrees with the spectral route") {
    for (double alpha : {1.0, 1.5}) {
        StableParams P{alpha, 1};
        for (double x : {0.0, 0.5, 1.0, 3.0, 10.0})
            CHECK(subordination_density(P, 1.0, x) ==
                  doctest::Approx(p_density(P, 1.0, x)).epsilon(1e-4));
    }
}

TEST_CASE("subordinator density: closed form and Kanter route") {
    // beta = 1/2: g(v) = (4 pi)^{-1/2} v^{-3/2} e^{-1/(4v)}
    SubordinatorDensity half(0.5);
    for (double v : {0.1, 0.5, 1.0, 4.0}) {
        double want = std::pow(4.0 * kPi, -0.5) * std::pow(v, -1.5) * std::exp(-1.0 / (4.0 * v));
        CHECK(half(v) == doctest::Approx(want).epsilon(1e-10));
    }
    // beta = 0.75 via Kanter: positive, mass 1
    SubordinatorDensity k(0.75);
    boost::math::quadrature::exp_sinh<double> es;
    CHECK(es.integrate([&](double v) { return k(v); }) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(k(0.5) > 0.0);
}

TEST_CASE("semigroup property") {
    StableParams P{1.5, 1};
    GridFunction p1 = default_grid_sample([&](double x) { return p_density(P, 1.0, x); });
    GridFunction conv = convolve(p1, p1);
    for (double x : {0.0, 1.0, 4.0, 12.0})
        CHECK(conv.interp(x) == doctest::Approx(p_density(P, 2.0, x)).epsilon(1e-4));
}

TEST_CASE("exit position law q_t") {
    StableParams P{1.5, 1};
    CHECK(q_cdf(P, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(q_cdf(P, 1.0, 3.0) + q_cdf(P, 1.0, -3.0) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(q_cdf(P, 1.0, 2.0) > q_cdf(P, 1.0, 1.0));
    // q_t scaling exponent 2/alpha
    double sc = std::pow(2.0, -2.0 / P.alpha);
    CHECK(q_density(P, 2.0, 1.0) == doctest::Approx(sc * q_density(P, 1.0, sc)).epsilon(1e-8));
}

TEST_CASE("Brownian exit law") {
    ExitLaw mu(1.0);
    CHECK(mu.cdf(1e9) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(mu.cdf(0.25) == doctest::Approx(std::erfc(1.0)).epsilon(1e-12));
    // density integrates to the cdf
    boost::math::quadrature::tanh_sinh<double> ts;
    double m = ts.integrate([&](double s) { return mu.density(s); }, 0.0, 2.0);
    CHECK(m == doctest::Approx(mu.cdf(2.0)).epsilon(1e-9));
}

TEST_CASE("psi: value at zero, vanishing integral, envelopes") {
    CHECK(psi_eval({1.0, 1}, 0.0) == doctest::Approx(-4.0 / kPi).epsilon(1e-6));
    CHECK(std::abs(psi_integral({1.5, 1})) < 1e-6);
    StableParams P{1.5, 1};
    // |psi(x)| <= c max(1,|x|)^{-1-alpha/2}, |psi'(x)| <= c max(1,|x|)^{-2-alpha/2}
    double c0 = 0.0, c1 = 0.0;
    for (double x = 0.0; x <= 64.0; x += 0.125) {
        c0 = std::max(c0, std::abs(psi_eval(P, x)) * std::pow(std::max(1.0, x), 1.75));
        c1 = std::max(c1, std::abs(psi_deriv_eval(P, x)) * std::pow(std::max(1.0, x), 2.75));
    }
    CHECK(std::isfinite(c0));
    CHECK(std::isfinite(c1));
    CHECK(c0 < 100.0);
    CHECK(c1 < 100.0);
}

TEST_CASE("mu moment bounds (Lemma-style inequalities)") {
    for (double M : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        MuMomentBounds b = mu_moment_bounds(M);
        CHECK(b.left <= std::sqrt(M / kPi) + 1e-8);
        CHECK(b.right <= 1.0 / std::sqrt(M * kPi) + 1e-8);
        CHECK(b.left >= 0.0);
        CHECK(b.right >= 0.0);
    }
    CHECK_THROWS_AS(mu_moment_bounds(0.0), std::invalid_argument);
}

TEST_CASE("density derivative vs finite differences") {
    StableParams P{1.5, 1};
    GridFunction d1 = density_derivative(P, 1.0, 1);
    double h = 1e-4;
    for (double x : {0.5, 1.0, 3.0}) {
        double fd = (p_density(P, 1.0, x + h) - p_density(P, 1.0, x - h)) / (2.0 * h);
        CHECK(d1.interp(x) == doctest::Approx(fd).epsilon(1e-5));
    }
    CHECK_THROWS_AS(density_derivative(P, 1.0, 3), std::invalid_argument);
}
