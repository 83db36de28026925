#pragma once

#include <functional>
#include <vector>

namespace slp {

/// One singular term c * xi^e of a symbol's expansion at xi = 0+.
/// Used for the Navot (generalized Euler-Maclaurin) endpoint correction of
/// the trapezoid rule; without it the kink of e^{-xi^beta} at 0 limits the
/// inversion to O(dxi^{1+beta}) accuracy.
struct SingularTerm {
    double exponent;
    double coeff;
};

/// v_j = (1/pi) * integral_0^{xi_max} m(xi) cos(x_j xi) dxi at x_j = j*dx,
/// j = 0..k, with dx = pi / xi_max and k+1 output points (DCT-I under the
/// hood, trapezoid in xi with spacing xi_max/k plus endpoint corrections).
std::vector<double> half_cosine_inverse(const std::function<double(double)>& symbol,
                                        double xi_max, std::size_t k,
                                        const std::vector<SingularTerm>& singular = {});

/// w_j = (1/pi) * integral_0^{xi_max} m(xi) sin(x_j xi) dxi, j = 0..k (DST-I).
std::vector<double> half_sine_inverse(const std::function<double(double)>& symbol,
                                      double xi_max, std::size_t k);

/// Radially symmetric (or antisymmetric) function of one variable given by a
/// dense table on [0, x_wide] plus a power series Sum c_i |x|^{-e_i} beyond.
class RadialTable {
public:
    RadialTable() = default;
    RadialTable(std::vector<double> table, double dx, int parity,
                std::vector<SingularTerm> tail);

    double operator()(double x) const;
    double x_wide() const { return dx_ * static_cast<double>(table_.size() - 1); }
    double dx() const { return dx_; }
    int parity() const { return parity_; }
    const std::vector<double>& table() const { return table_; }

    /// integral over x > x0, one side only (requires x0 >= x_wide).
    double tail_integral(double x0) const;
    /// integral over the whole line: Simpson on the table + analytic tail.
    double total_integral() const;
    /// integral_{-inf}^{x} of the (even-parity) table; for CDF construction.
    double cdf(double x) const;

private:
    void build_cdf() const;

    std::vector<double> table_;
    double dx_ = 0.0;
    int parity_ = 1;  // +1 even, -1 odd
    std::vector<SingularTerm> tail_;
    mutable std::vector<double> cum_;  // cumulative integral on [0, x_wide]
};

}  // namespace slp
