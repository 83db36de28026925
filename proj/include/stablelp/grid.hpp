#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slp {

/// Real-valued function sampled on a uniform symmetric 1-D grid covering
/// [-L, L] with an odd number of points. Immutable after construction.
/// `tail_value` is the value the function takes outside the grid; it lets
/// constant fixtures behave exactly under mass/contraction checks.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<double> values, double spacing, double tail_value = 0.0);

    static GridFunction sample(double half_extent, double spacing,
                               const std::function<double(double)>& f,
                               double tail_value = 0.0);
    /// Same, but with the point count given directly (must be odd).
    static GridFunction sample_n(std::size_t n, double spacing,
                                 const std::function<double(double)>& f,
                                 double tail_value = 0.0);

    std::size_t size() const { return values_.size(); }
    double spacing() const { return spacing_; }
    double half_extent() const { return half_extent_; }
    double tail_value() const { return tail_value_; }
    std::size_t center_index() const { return (values_.size() - 1) / 2; }
    double x(std::size_t i) const { return -half_extent_ + static_cast<double>(i) * spacing_; }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    /// Value at the grid point nearest to x0 (x0 must be on-grid up to 1e-9).
    double at(double x0) const;
    /// Cubic (Catmull-Rom) interpolation at arbitrary x inside the grid;
    /// returns tail_value outside.
    double interp(double x0) const;
    /// Cubic interpolation with periodic wrap (period = n * spacing).
    double interp_periodic(double x0) const;

    bool same_grid(const GridFunction& other) const;

    /// Trapezoid integral over the grid plus tail_value * (rest of the line)
    /// is not defined for nonzero tails; this is the plain grid sum * dx.
    double integral() const;

    void write_csv(const std::string& path) const;
    static GridFunction read_csv(const std::string& path);

private:
    std::vector<double> values_;
    double spacing_ = 0.0;
    double half_extent_ = 0.0;
    double tail_value_ = 0.0;
};

/// Complex samples on the dual (frequency) grid of a GridFunction.
struct SpectrumGrid {
    std::vector<std::complex<double>> values;
    double spacing = 0.0;      // dxi
    double half_extent = 0.0;  // xi_max

    std::size_t size() const { return values.size(); }
    double xi(std::size_t k) const { return -half_extent + static_cast<double>(k) * spacing; }
    std::size_t center_index() const { return (values.size() - 1) / 2; }
};

/// (sum |f_i|^p dx)^(1/p); rejects p < 1 and non-finite samples.
double lp_norm(const GridFunction& f, double p);
double sup_norm(const GridFunction& f);

/// Discrete approximation of the continuum transform
/// fhat(xi) = integral f(x) e^(-i xi x) dx on the dual grid.
SpectrumGrid fourier(const GridFunction& f);
GridFunction inverse_fourier(const SpectrumGrid& s);

/// Applies a Fourier multiplier m(xi) to f and inverts; real output.
GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<std::complex<double>(double)>& m);

/// Linear convolution (f*g)(x) = integral f(y) g(x-y) dy via zero-padded
/// spectral multiplication; result on the common grid.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

/// Log-spaced quadrature nodes/weights on [t_min, t_max]; trapezoid in
/// log coordinates, so sum w_j g(t_j) ~ integral g(t) dt.
class TimeGrid {
public:
    TimeGrid(double t_min, double t_max, std::size_t n);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    std::size_t size() const { return nodes_.size(); }

    double integrate(const std::function<double(double)>& g) const;

private:
    std::vector<double> nodes_, weights_;
    double t_min_ = 0.0, t_max_ = 0.0;
};

/// Smallest odd n >= lo whose n-1 factors into small primes (fast FFT size).
std::size_t fast_odd_size(std::size_t lo);

// default spatial grid (d=1): [-64, 64] at spacing 1/64, 8193 points
inline constexpr double kDefaultL = 64.0;
inline constexpr double kDefaultDx = 1.0 / 64.0;
// default t-quadrature: 256 log-spaced nodes on [1e-4, 1e3]
inline constexpr double kDefaultTMin = 1e-4;
inline constexpr double kDefaultTMax = 1e3;
inline constexpr std::size_t kDefaultTNodes = 256;

inline TimeGrid default_time_grid() { return TimeGrid(kDefaultTMin, kDefaultTMax, kDefaultTNodes); }
inline GridFunction default_grid_sample(const std::function<double(double)>& f,
                                        double tail_value = 0.0) {
    return GridFunction::sample(kDefaultL, kDefaultDx, f, tail_value);
}

}  // namespace slp
