#pragma once

#include "stablelp/grid.hpp"
#include "stablelp/stable_density.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace slp {

enum class Symmetry { odd, even, none };
enum class TailClass { classical, weakened };

/// A convolution kernel x -> kappa(x), defined away from x = 0.
struct KernelSpec {
    std::string name;
    Symmetry symmetry = Symmetry::none;
    TailClass tail = TailClass::classical;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;  ///< optional analytic derivative

    double operator()(double x) const { return eval(x); }
    bool has_deriv() const { return static_cast<bool>(deriv); }
};

/// Built-in kernels: "test", "pv_inverse", "even_inverse", "fat_tail".
KernelSpec kernel_registry(const std::string& name, double alpha);
std::vector<std::string> kernel_names();

/// Max over the (r, R) pairs of |int_{r<|x|<R} kappa|; exactly 0 for odd
/// kernels.
double check_cancelation(const KernelSpec& kernel,
                         const std::vector<std::pair<double, double>>& radii);

struct GrowthConstants {
    double cond_i_const = 0.0;   ///< |kappa| vs |x|^{-1} inside, |x|^{-a/2} outside
    double cond_ii_const = 0.0;  ///< |kappa'| vs |x|^{-2} inside, |x|^{-1-a/2} outside
};
GrowthConstants check_growth(const KernelSpec& kernel, const StableParams& params);

/// Smooth radial cutoff: 1 on [0,1], 0 on [2,inf), exp-based bridge between.
double smooth_cutoff(double r);

/// kappa = kappa_1 + kappa_2 with kappa_1 = kappa * phi(x^2) supported in
/// |x| <= sqrt(2) and kappa_2 vanishing on |x| <= 1.
std::pair<KernelSpec, KernelSpec> decompose(const KernelSpec& kernel);

/// (kappa_2 * psi)(x) by direct log-substituted quadrature over |y| > 1.
double dtQt_convolution(const KernelSpec& k2, const StableParams& params, double x,
                        std::size_t nodes = 4096);

/// Same convolution evaluated on a grid through the spectral product; used
/// as the independent cross-check route.
GridFunction dtQt_spectral(const KernelSpec& k2, const StableParams& params,
                           double half_extent, double spacing);

struct DecayBound {
    double decay_const = 0.0;  ///< smallest C with |kappa_2 * psi| <= C (1+|x|)^{-lambda}
    bool holds = false;        ///< C finite and refinement-stable (< 5% drift)
};
/// Throws std::domain_error when the kernel tail decays slower than
/// |x|^{-alpha/2} (the convolution bound breaks down).
DecayBound dtQt_kernel_bound(const KernelSpec& k2, const StableParams& params, double lambda);

/// The three region integrals I_1, I_2, I_3 of the tail estimate: the
/// convolution over |y| < |x|/2, |y - x| < |x|/2, and the remainder.
std::array<double, 3> proof_tail_integrals(const KernelSpec& k2, const StableParams& params,
                                           double x, std::size_t nodes = 4096);

/// Principal-value convolution Tf = f * kappa on the inner half-grid; the
/// cell at 0 is dropped so +-h contributions pair symmetrically.
GridFunction apply_T(const GridFunction& f, const KernelSpec& kernel);

enum class Verdict { certified, violated, inconclusive };
const char* verdict_name(Verdict v);

struct CertificationReport {
    std::string kernel;
    double cancelation_max = 0.0;
    double cond_i_const = 0.0;
    double cond_ii_const = 0.0;
    double lambda_used = 0.0;
    double decay_const = 0.0;
    std::map<std::string, double> norm_ratios;  ///< "fixture|p=…" -> |Tf|_p/|f|_p
    double ratio_spread = 0.0;                  ///< max/min ratio per p, worst case
    Verdict verdict = Verdict::inconclusive;
    std::string note;  ///< diagnostic when not certified
};

CertificationReport certify(const KernelSpec& kernel, const StableParams& params,
                            const std::vector<std::string>& fixtures,
                            const std::vector<double>& p_list);

}  // namespace slp
