#include "stablelp/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe; executions on separate arrays are.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(fftw_mutex());
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> buf(n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign, FFTW_ESTIMATE);
    cache.emplace(key, plan);
    return plan;
}

void fft_inplace(std::vector<std::complex<double>>& a, int sign) {
    fftw_plan plan = plan_for(a.size(), sign);
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace

GridFunction::GridFunction(std::vector<double> values, double spacing, double tail_value)
    : values_(std::move(values)), spacing_(spacing), tail_value_(tail_value) {
    if (spacing_ <= 0.0) throw std::invalid_argument("GridFunction: spacing must be positive");
    if (values_.empty() || values_.size() % 2 == 0)
        throw std::invalid_argument("GridFunction: sample count must be odd");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite sample");
    half_extent_ = spacing_ * static_cast<double>((values_.size() - 1) / 2);
}

GridFunction GridFunction::sample(double half_extent, double spacing,
                                  const std::function<double(double)>& f, double tail_value) {
    if (half_extent <= 0.0 || spacing <= 0.0)
        throw std::invalid_argument("GridFunction: extent and spacing must be positive");
    double m = half_extent / spacing;
    auto half = static_cast<std::size_t>(std::llround(m));
    if (std::abs(m - static_cast<double>(half)) > 1e-9)
        throw std::invalid_argument("GridFunction: half_extent must be a multiple of spacing");
    return sample_n(2 * half + 1, spacing, f, tail_value);
}

GridFunction GridFunction::sample_n(std::size_t n, double spacing,
                                    const std::function<double(double)>& f, double tail_value) {
    if (n % 2 == 0) throw std::invalid_argument("GridFunction: sample count must be odd");
    std::vector<double> v(n);
    double L = spacing * static_cast<double>((n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(-L + static_cast<double>(i) * spacing);
    return GridFunction(std::move(v), spacing, tail_value);
}

double GridFunction::at(double x0) const {
    double idx = (x0 + half_extent_) / spacing_;
    auto i = static_cast<long long>(std::llround(idx));
    if (std::abs(idx - static_cast<double>(i)) > 1e-9 || i < 0 ||
        i >= static_cast<long long>(values_.size()))
        throw std::invalid_argument("GridFunction::at: point not on grid");
    return values_[static_cast<std::size_t>(i)];
}

namespace {
double catmull_rom(double fm1, double f0, double f1, double f2, double u) {
    double a = -0.5 * fm1 + 1.5 * f0 - 1.5 * f1 + 0.5 * f2;
    double b = fm1 - 2.5 * f0 + 2.0 * f1 - 0.5 * f2;
    double c = 0.5 * (f1 - fm1);
    return ((a * u + b) * u + c) * u + f0;
}
}  // namespace

double GridFunction::interp(double x0) const {
    if (x0 < -half_extent_ || x0 > half_extent_) return tail_value_;
    double idx = (x0 + half_extent_) / spacing_;
    auto i = static_cast<long long>(std::floor(idx));
    double u = idx - static_cast<double>(i);
    auto n = static_cast<long long>(values_.size());
    auto get = [&](long long j) {
        return (j < 0 || j >= n) ? tail_value_ : values_[static_cast<std::size_t>(j)];
    };
    return catmull_rom(get(i - 1), get(i), get(i + 1), get(i + 2), u);
}

double GridFunction::interp_periodic(double x0) const {
    auto n = static_cast<long long>(values_.size());
    double period = spacing_ * static_cast<double>(n);
    double idx = (x0 + half_extent_) / spacing_;
    idx -= std::floor(idx / static_cast<double>(n)) * static_cast<double>(n);
    auto i = static_cast<long long>(std::floor(idx));
    double u = idx - static_cast<double>(i);
    auto get = [&](long long j) { return values_[static_cast<std::size_t>(((j % n) + n) % n)]; };
    (void)period;
    return catmull_rom(get(i - 1), get(i), get(i + 1), get(i + 2), u);
}

bool GridFunction::same_grid(const GridFunction& other) const {
    return size() == other.size() && std::abs(spacing_ - other.spacing_) < 1e-12 * spacing_;
}

double GridFunction::integral() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * spacing_;
}

void GridFunction::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "x,value\n";
    char buf[64];
    for (std::size_t i = 0; i < size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.14g,%.14g\n", x(i), values_[i]);
        out << buf;
    }
}

GridFunction GridFunction::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> xs, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        xs.push_back(std::stod(a));
        vs.push_back(std::stod(b));
    }
    if (xs.size() < 3) throw std::runtime_error("CSV too short: " + path);
    double dx = xs[1] - xs[0];
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
        if (std::abs(xs[i + 1] - xs[i] - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
            throw std::runtime_error("CSV grid not uniform: " + path);
    if (std::abs(xs.front() + xs.back()) > 1e-9)
        throw std::runtime_error("CSV grid not symmetric about 0: " + path);
    return GridFunction(std::move(vs), dx);
}

double lp_norm(const GridFunction& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    for (double v : f.values()) s += std::pow(std::abs(v), p);
    return std::pow(s * f.spacing(), 1.0 / p);
}

double sup_norm(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s = std::max(s, std::abs(v));
    return s;
}

SpectrumGrid fourier(const GridFunction& f) {
    std::size_t n = f.size();
    std::size_t m = (n - 1) / 2;
    double dx = f.spacing();
    double dxi = 2.0 * kPi / (static_cast<double>(n) * dx);

    std::vector<std::complex<double>> a(n);
    double w = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
        a[j] = f[j] * std::polar(1.0, w * static_cast<double>(j));
    fft_inplace(a, FFTW_FORWARD);

    SpectrumGrid out;
    out.spacing = dxi;
    out.half_extent = dxi * static_cast<double>(m);
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double ph = w * static_cast<double>(k) - w * static_cast<double>(m);
        out.values[k] = dx * std::polar(1.0, ph) * a[k];
    }
    return out;
}

GridFunction inverse_fourier(const SpectrumGrid& s) {
    std::size_t n = s.size();
    std::size_t m = (n - 1) / 2;
    double dxi = s.spacing;
    double dx = 2.0 * kPi / (static_cast<double>(n) * dxi);

    std::vector<std::complex<double>> a(n);
    double w = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
        a[k] = s.values[k] * std::polar(1.0, -w * static_cast<double>(k));
    fft_inplace(a, FFTW_BACKWARD);

    std::vector<double> v(n);
    double scale = dxi / (2.0 * kPi);
    for (std::size_t j = 0; j < n; ++j) {
        double ph = -w * static_cast<double>(j) + w * static_cast<double>(m);
        v[j] = scale * std::real(std::polar(1.0, ph) * a[j]);
    }
    return GridFunction(std::move(v), dx);
}

GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<std::complex<double>(double)>& m) {
    SpectrumGrid s = fourier(f);
    for (std::size_t k = 0; k < s.size(); ++k) s.values[k] *= m(s.xi(k));
    GridFunction g = inverse_fourier(s);
    return GridFunction(g.values(), g.spacing(), f.tail_value());
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
    if (!f.same_grid(g)) throw std::invalid_argument("convolve: grid mismatch");
    std::size_t n = f.size();
    std::size_t m = (n - 1) / 2;
    std::size_t p = 1;
    while (p < 2 * n) p <<= 1;

    std::vector<std::complex<double>> a(p, 0.0), b(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = f[i];
        b[i] = g[i];
    }
    fft_inplace(a, FFTW_FORWARD);
    fft_inplace(b, FFTW_FORWARD);
    for (std::size_t i = 0; i < p; ++i) a[i] *= b[i];
    fft_inplace(a, FFTW_BACKWARD);

    std::vector<double> v(n);
    double scale = f.spacing() / static_cast<double>(p);
    for (std::size_t i = 0; i < n; ++i) v[i] = scale * std::real(a[i + m]);
    return GridFunction(std::move(v), f.spacing());
}

TimeGrid::TimeGrid(double t_min, double t_max, std::size_t n) : t_min_(t_min), t_max_(t_max) {
    if (t_min <= 0.0 || t_max <= t_min) throw std::invalid_argument("TimeGrid: need 0 < t_min < t_max");
    if (n < 2) throw std::invalid_argument("TimeGrid: need at least 2 nodes");
    double u0 = std::log(t_min), u1 = std::log(t_max);
    double h = (u1 - u0) / static_cast<double>(n - 1);
    nodes_.resize(n);
    weights_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = std::exp(u0 + h * static_cast<double>(j));
        nodes_[j] = t;
        double w = (j == 0 || j == n - 1) ? 0.5 * h : h;
        weights_[j] = w * t;  // dt = t du
    }
}

double TimeGrid::integrate(const std::function<double(double)>& g) const {
    double s = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) s += weights_[j] * g(nodes_[j]);
    return s;
}

std::size_t fast_odd_size(std::size_t lo) {
    auto smooth = [](std::size_t v) {
        for (std::size_t p : {2, 3, 5, 7, 11, 13})
            while (v % p == 0) v /= p;
        return v == 1;
    };
    std::size_t n = lo | 1;
    while (!smooth(n - 1)) n += 2;
    return n;
}

}  // namespace slp
