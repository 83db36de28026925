#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablelp/grid.hpp"

#include <cmath>
#include <numbers>

using namespace slp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sampling geometry") {
    GridFunction f = GridFunction::sample(4.0, 0.5, [](double x) { return x; });
    CHECK(f.size() == 17);
    CHECK(f.center_index() == 8);
    CHECK(f.x(0) == doctest::Approx(-4.0));
    CHECK(f[f.center_index()] == 0.0);
    CHECK(f.at(1.5) == doctest::Approx(1.5));
    CHECK_THROWS_AS(GridFunction::sample(4.0, 0.3, [](double) { return 0.0; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({1.0, 2.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({1.0, std::nan(""), 1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("interpolation is exact on quadratics") {
    // Catmull-Rom reproduces polynomials up to degree 2
    GridFunction f = GridFunction::sample(4.0, 0.5,
                                          [](double x) { return 1.0 + x - 2.0 * x * x; });
    for (double x : {-2.3, -0.7, 0.1, 1.9, 3.2}) {
        double want = 1.0 + x - 2.0 * x * x;
        CHECK(f.interp(x) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(f.interp(100.0) == 0.0);  // tail_value
}

TEST_CASE("lp norms against Gaussian closed forms") {
    GridFunction g = default_grid_sample([](double x) { return std::exp(-x * x); });
    // int e^{-p x^2} dx = sqrt(pi/p)
    CHECK(lp_norm(g, 1.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
    CHECK(lp_norm(g, 2.0) == doctest::Approx(std::pow(kPi / 2.0, 0.25)).epsilon(1e-10));
    CHECK(lp_norm(g, 3.0) == doctest::Approx(std::pow(kPi / 3.0, 1.0 / 6.0)).epsilon(1e-10));
    CHECK(sup_norm(g) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lp_norm(g, 0.5), std::invalid_argument);
}

TEST_CASE("fourier transform of a Gaussian") {
    GridFunction g = default_grid_sample([](double x) { return std::exp(-x * x); });
    SpectrumGrid fh = fourier(g);
    double worst = 0.0;
    for (std::size_t k = 0; k < fh.size(); ++k) {
        double xi = fh.xi(k);
        if (std::abs(xi) > 10.0) continue;
        double want = std::sqrt(kPi) * std::exp(-xi * xi / 4.0);
        worst = std::max(worst, std::abs(fh.values[k].real() - want) +
                                    std::abs(fh.values[k].imag()));
    }
    CHECK(worst < 1e-9);
    GridFunction back = inverse_fourier(fh);
    double round = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) round = std::max(round, std::abs(back[i] - g[i]));
    CHECK(round < 1e-11);
}

TEST_CASE("multiplier application: identity and derivative") {
    GridFunction g = default_grid_sample([](double x) { return std::exp(-x * x); });
    GridFunction same = apply_multiplier(g, [](double) { return std::complex<double>(1.0, 0.0); });
    CHECK(std::abs(same.at(1.0) - g.at(1.0)) < 1e-12);
    GridFunction dg = apply_multiplier(g, [](double xi) { return std::complex<double>(0.0, xi); });
    for (double x : {-1.5, 0.0, 0.5, 2.0})
        CHECK(dg.interp(x) == doctest::Approx(-2.0 * x * std::exp(-x * x)).epsilon(1e-8));
}

TEST_CASE("convolution of Gaussians") {
    GridFunction g = default_grid_sample([](double x) { return std::exp(-x * x); });
    GridFunction c = convolve(g, g);
    // e^{-x^2} * e^{-x^2} = sqrt(pi/2) e^{-x^2/2}
    for (double x : {0.0, 1.0, 3.0, 6.0}) {
        double want = std::sqrt(kPi / 2.0) * std::exp(-x * x / 2.0);
        CHECK(c.interp(x) == doctest::Approx(want).epsilon(1e-9));
    }
    GridFunction other = GridFunction::sample(2.0, kDefaultDx, [](double) { return 1.0; });
    CHECK_THROWS_AS(convolve(g, other), std::invalid_argument);
}

TEST_CASE("time grid quadrature") {
    TimeGrid tg(1.0, std::exp(1.0), 64);
    // trapezoid in log coordinates is exact for 1/t
    CHECK(tg.integrate([](double t) { return 1.0 / t; }) == doctest::Approx(1.0).epsilon(1e-13));
    TimeGrid wide(1e-4, 1e3, 4096);
    CHECK(wide.integrate([](double t) { return t * std::exp(-2.0 * t); }) ==
          doctest::Approx(0.25).epsilon(1e-5));
    CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("csv round trip") {
    GridFunction g = GridFunction::sample(2.0, 0.25, [](double x) { return std::cos(x); });
    g.write_csv("grid_roundtrip.csv");
    GridFunction back = GridFunction::read_csv("grid_roundtrip.csv");
    REQUIRE(back.size() == g.size());
    CHECK(back.spacing() == doctest::Approx(g.spacing()));
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(back[i] == doctest::Approx(g[i]).epsilon(1e-10));
}
