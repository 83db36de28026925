#pragma once

#include "stablelp/extension.hpp"
#include "stablelp/grid.hpp"
#include "stablelp/stable_density.hpp"

#include <map>
#include <string>

namespace slp {

/// K_t^lambda(x) = t^{-2d/alpha} (t^{2/alpha} / (t^{2/alpha} + |x|))^{lambda d},
/// the approximate-identity family of the G* functional (d = 1 here).
struct LambdaKernel {
    double lambda;
    double t;
    double alpha;

    double operator()(double x) const;
    /// ||K_t^lambda||_1 = grid quadrature + exact tail; equals 2/(lambda-1)
    /// in the continuum for every t
    double mass(double half_extent = kDefaultL, double spacing = kDefaultDx) const;
};

struct FunctionalConfig {
    double half_extent = kDefaultL;
    double spacing = kDefaultDx;
    double t_min = kDefaultTMin;
    double t_max = kDefaultTMax;
    std::size_t t_nodes = kDefaultTNodes;
    std::size_t h_nodes = 2048;  // log-grid nodes for the pointwise Gamma ops
};

struct FunctionalReport {
    std::string name;
    StableParams params;
    double lambda = 0.0;
    GridFunction values;                // on |x| <= L/2 (the inner half-grid)
    std::map<double, double> p_norms;   // p -> ||.||_p over the inner half
    double tail_bound = 0.0;            // t-quadrature tail error bar
};

/// Truncated carre du champ at one point:
///   Gamma_alpha(f_t, f_t)(x) = int_{|h| < radius} [f_t(x+h) - f_t(x)]^2 |h|^{-1-alpha} dh
/// with radius defaulting to t^{2/alpha}; |h| < h_min = dx/2 is replaced by
/// the analytic patch [f_t'(x)]^2 |h|^{1-alpha}.
double gamma_alpha(const ExtensionField& field, double t, double x, double radius = -1.0,
                   std::size_t h_nodes = 2048);
/// untruncated version (outer limit = grid extent; tail bound reported via
/// gamma_full_tail_bound)
double gamma_full(const ExtensionField& field, double t, double x, std::size_t h_nodes = 2048);
double gamma_full_tail_bound(const ExtensionField& field, double t);

/// Everything the t-streaming engine produces in one pass.
struct FunctionalSet {
    FunctionalReport g_up;           // vertical component
    FunctionalReport g_arrow;        // untruncated horizontal
    FunctionalReport g_arrow_alpha;  // truncated horizontal
    FunctionalReport g_full;         // sqrt(g_arrow^2 + g_up^2)
    FunctionalReport g_alpha;        // sqrt(g_arrow_alpha^2 + g_up^2)
    FunctionalReport area;           // A_f
    FunctionalReport gstar_arrow;    // G*-> (K-smoothed horizontal)
    FunctionalReport gstar_up;       // G*^  (K-smoothed vertical)
    FunctionalReport gstar;          // combined G*
    FunctionalReport l_star;         // q_t-smoothed horizontal
};

/// One streaming pass over the TimeGrid computing all square functionals.
/// `lambda` feeds the K_t^lambda smoothing (must be > 1).
FunctionalSet compute_functionals(const GridFunction& f, const StableParams& params,
                                  double lambda, const FunctionalConfig& cfg = {});

/// Vertical functional alone (cheap; used on enlarged grids).
FunctionalReport g_up(const GridFunction& f, const StableParams& params,
                      const FunctionalConfig& cfg = {});

FunctionalReport area_functional(const GridFunction& f, const StableParams& params,
                                 const FunctionalConfig& cfg = {});
FunctionalSet g_star(const GridFunction& f, const StableParams& params, double lambda,
                     const FunctionalConfig& cfg = {});
FunctionalReport l_star(const GridFunction& f, const StableParams& params,
                        const FunctionalConfig& cfg = {});

/// N_alpha(x) = sup{|f_t(y)| : t > 0, |x-y| < t^{2/alpha}} over the TimeGrid
/// plus a 3x refinement pass; sup movement under refinement is recorded.
struct MaximalReport {
    FunctionalReport report;
    double refinement_shift = 0.0;  // sup-norm move of the 3x-refined pass
};
MaximalReport n_alpha_maximal(const GridFunction& f, const StableParams& params,
                              const FunctionalConfig& cfg = {});

/// centered Hardy-Littlewood maximal function over all grid-aligned radii
FunctionalReport hl_maximal(const GridFunction& f);

/// L2 ratio ||G->_{f,alpha}||_2 / ||f||_2 predicted by the scaling argument:
/// sqrt( int_0^inf tau e^{-2 tau} int_{|u|<tau^{2/alpha}} (2-2cos u)|u|^{-1-alpha} du dtau )
double g_arrow_ratio_oracle(double alpha);

}  // namespace slp
