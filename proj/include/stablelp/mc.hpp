#pragma once

#include "stablelp/grid.hpp"
#include "stablelp/stable_density.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace slp {

/// xoshiro256++ with per-path streams seeded through splitmix64, so path k
/// is the same regardless of worker scheduling.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index);
    std::uint64_t next();
    double uniform();       ///< (0, 1]
    double normal();        ///< standard normal (Box-Muller, deterministic)
    double stable(double alpha);  ///< standard symmetric alpha-stable (CMS)

private:
    std::uint64_t s_[4];
};

struct McConfig {
    std::size_t n_paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 42;
    int worker_count = 1;
    bool keep_paths = false;
    double s_max = 1e4;    ///< censoring horizon
    double barrier = 5.0;  ///< exact-continuation level for the vertical part
};

struct PathRecord {
    double t0 = 0.0;
    double y_at_t0 = 0.0;
    bool censored = false;
    std::vector<double> y_samples, z_samples;  ///< populated when keep_paths
};

/// n draws of the standard symmetric alpha-stable law (char. fn e^{-|xi|^a}).
std::vector<double> sample_stable(const StableParams& params, std::size_t n,
                                  std::uint64_t seed);

/// Simulate (Y, Z) from (x, a) until Z hits 0. Vertical steps are
/// Normal(0, 2 dt); an intra-step Brownian-bridge crossing test removes the
/// discrete-monitoring bias, and above `barrier` the remaining hitting time
/// is drawn exactly from the level law so paths never run long.
std::vector<PathRecord> run_paths(const StableParams& params, const McConfig& config,
                                  double x, double a);

struct GreenResult {
    double mc = 0.0;
    double exact = 0.0;
    double std_err = 0.0;
};

/// E^a[int_0^{T0} f(Z_s) ds] vs the Green identity int (s ^ a) f(s) ds for f
/// supported in (0, support_end).
GreenResult green_identity_check(const std::function<double(double)>& f, double support_end,
                                 double a, const StableParams& params, const McConfig& config);

/// Bilinear-in-(x, log t) table of u(x, t) = Q_t f(x) with approximate
/// far-field and small-t fallbacks.
class UField {
public:
    UField(const GridFunction& f, const StableParams& params, double t_max,
           std::size_t t_nodes = 128);
    double operator()(double y, double t) const;
    const StableParams& params() const { return params_; }

private:
    GridFunction base_;
    StableParams params_;
    double mass_;
    std::vector<double> log_t_;
    std::vector<GridFunction> slices_;
};

struct MartingaleRow {
    double s = 0.0;
    double mc = 0.0;
    double std_err = 0.0;
    double reference = 0.0;  ///< u(x, a)
};

/// E[u(X_{s ^ T0})] for each horizon s, against the martingale value u(x,a).
std::vector<MartingaleRow> martingale_check(const GridFunction& f, const StableParams& params,
                                            double x, double a, const std::vector<double>& times,
                                            const McConfig& config);

/// sup u / inf u over an n x n sample of the D_1 box centered at (0, t_c);
/// deterministic (extension tables, no sampling noise).
double harnack_ratio(const GridFunction& f, const StableParams& params, double t_c,
                     std::size_t samples_per_side = 33);

std::map<std::string, double> harnack_sample(const StableParams& params,
                                             const std::vector<std::string>& fixtures,
                                             double t_c = 33.0);

/// Kolmogorov-Smirnov statistic of samples against a reference CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace slp
