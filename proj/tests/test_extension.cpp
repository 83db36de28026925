#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablelp/extension.hpp"
#include "stablelp/fixtures.hpp"
#include "stablelp/grid.hpp"
#include "stablelp/stable_density.hpp"

#include <cmath>

using namespace slp;

TEST_CASE("contraction and positivity") {
    StableParams P{1.5, 1};
    GridFunction f = make_fixture("indicator");
    for (double t : {0.01, 0.5, 5.0, 200.0}) {
        GridFunction ft = extend(f, P, t);
        CHECK(sup_norm(ft) <= 1.0 + 1e-9);
        double lo = 0.0;
        for (std::size_t i = 0; i < ft.size(); ++i) lo = std::min(lo, ft[i]);
        CHECK(lo >= -1e-9);
    }
}

TEST_CASE("constants are fixed points") {
    StableParams P{1.5, 1};
    GridFunction one = make_fixture("one");
    GridFunction ft = extend(one, P, 7.0);
    for (double x : {0.0, 10.0, 60.0}) CHECK(ft.interp(x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ft.tail_value() == 1.0);
}

TEST_CASE("slice matches the q_t convolution oracle") {
    StableParams P{1.5, 1};
    GridFunction f = make_fixture("gauss");
    for (double t : {0.5, 2.0}) {
        GridFunction ft = extend(f, P, t);
        GridFunction qt = default_grid_sample([&](double y) { return q_density(P, t, y); });
        GridFunction direct = convolve(f, qt);
        // the two routes differ by the wrapped-around heavy tail of q_t,
        // O(t L^{-alpha/2}) in absolute terms
        for (double x : {0.0, 1.0, 4.0, 10.0})
            CHECK(std::abs(ft.interp(x) - direct.interp(x)) < 1e-3);
    }
}

TEST_CASE("semigroup composition") {
    StableParams P{1.5, 1};
    GridFunction f = make_fixture("coswin");
    GridFunction two_step = extend(extend(f, P, 0.7), P, 1.3);
    GridFunction one_step = extend(f, P, 2.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(two_step[i] - one_step[i]));
    CHECK(worst < 1e-11);
}

TEST_CASE("d/dt slice vs finite differences") {
    StableParams P{1.5, 1};
    GridFunction f = make_fixture("gauss");
    double t = 1.0, h = 1e-5;
    GridFunction d = d_dt_extend(f, P, t);
    GridFunction up = extend(f, P, t + h);
    GridFunction dn = extend(f, P, t - h);
    for (double x : {0.0, 0.5, 2.0})
        CHECK(d.interp(x) == doctest::Approx((up.interp(x) - dn.interp(x)) / (2.0 * h))
                                 .epsilon(1e-6));
}

TEST_CASE("stable semigroup conserves mass") {
    StableParams P{1.5, 1};
    GridFunction f = make_fixture("gauss");
    for (double s : {0.1, 1.0, 10.0}) {
        InvariancePair pr = invariance_check(f, P, s);
        CHECK(pr.lhs == doctest::Approx(pr.rhs).epsilon(1e-8));
    }
}

TEST_CASE("extension field caches consistently") {
    StableParams P{1.5, 1};
    ExtensionField field(make_fixture("gauss"), P);
    const GridFunction& a = field.slice(3.0);
    const GridFunction& b = field.slice(3.0);
    CHECK(&a == &b);  // one table per t
    GridFunction fresh = extend(field.base(), P, 3.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < fresh.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - fresh[i]));
    CHECK(worst == 0.0);
    // dx slice vs centered differences
    const GridFunction& dx = field.dxslice(1.0);
    const GridFunction& ft = field.slice(1.0);
    double h = ft.spacing();
    for (double x : {0.0, 1.0, 2.5})
        CHECK(dx.interp(x) ==
              doctest::Approx((ft.interp(x + h) - ft.interp(x - h)) / (2.0 * h)).epsilon(1e-4));
}

TEST_CASE("t -> 0 recovers the base function") {
    StableParams P{1.5, 1};
    GridFunction f = make_fixture("gauss");
    GridFunction ft = extend(f, P, 1e-6);
    for (double x : {0.0, 1.0, 3.0})
        CHECK(ft.interp(x) == doctest::Approx(f.interp(x)).epsilon(1e-4));
}
