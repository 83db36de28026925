#include "stablelp/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

// zeta(-e) for e > 0 via the reflection formula; zeta(1+e) is on the
// positive axis where std::riemann_zeta is reliable.
double zeta_neg(double e) {
    if (e == 0.0) return -0.5;
    return std::pow(2.0, -e) * std::pow(kPi, -e - 1.0) * std::sin(-kPi * e / 2.0) *
           std::tgamma(1.0 + e) * std::riemann_zeta(1.0 + e);
}

}  // namespace

std::vector<double> half_cosine_inverse(const std::function<double(double)>& symbol,
                                        double xi_max, std::size_t k,
                                        const std::vector<SingularTerm>& singular) {
    if (xi_max <= 0.0 || k < 2) throw std::invalid_argument("half_cosine_inverse: bad parameters");
    double dxi = xi_max / static_cast<double>(k);
    std::vector<double> a(k + 1);
    for (std::size_t i = 0; i <= k; ++i) a[i] = symbol(dxi * static_cast<double>(i));

    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(k + 1), a.data(), a.data(),
                                          FFTW_REDFT00, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    // trapezoid value = dxi/2 * REDFT00 output; subtract Navot endpoint terms
    double corr = 0.0;
    for (const auto& t : singular) corr += zeta_neg(t.exponent) * t.coeff * std::pow(dxi, 1.0 + t.exponent);
    double scale = dxi / (2.0 * kPi);
    std::vector<double> out(k + 1);
    for (std::size_t j = 0; j <= k; ++j) out[j] = scale * a[j] - corr / kPi;
    return out;
}

std::vector<double> half_sine_inverse(const std::function<double(double)>& symbol,
                                      double xi_max, std::size_t k) {
    if (xi_max <= 0.0 || k < 2) throw std::invalid_argument("half_sine_inverse: bad parameters");
    double dxi = xi_max / static_cast<double>(k);
    std::vector<double> a(k - 1);
    for (std::size_t i = 1; i < k; ++i) a[i - 1] = symbol(dxi * static_cast<double>(i));

    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(k - 1), a.data(), a.data(),
                                          FFTW_RODFT00, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    double scale = dxi / (2.0 * kPi);
    std::vector<double> out(k + 1, 0.0);
    for (std::size_t j = 1; j < k; ++j) out[j] = scale * a[j - 1];
    return out;
}

RadialTable::RadialTable(std::vector<double> table, double dx, int parity,
                         std::vector<SingularTerm> tail)
    : table_(std::move(table)), dx_(dx), parity_(parity), tail_(std::move(tail)) {
    if (table_.size() < 4 || dx_ <= 0.0) throw std::invalid_argument("RadialTable: bad table");
}

double RadialTable::operator()(double x) const {
    double ax = std::abs(x);
    double sgn = (x < 0.0 && parity_ < 0) ? -1.0 : 1.0;
    double xw = x_wide();
    if (ax > xw) {
        double s = 0.0;
        for (const auto& t : tail_) s += t.coeff * std::pow(ax, -t.exponent);
        return sgn * s;
    }
    double idx = ax / dx_;
    auto i = static_cast<long long>(std::floor(idx));
    double u = idx - static_cast<double>(i);
    auto n = static_cast<long long>(table_.size());
    auto get = [&](long long j) {
        if (j < 0) return static_cast<double>(parity_) * table_[static_cast<std::size_t>(-j)];
        if (j >= n) {
            double xx = dx_ * static_cast<double>(j);
            double s = 0.0;
            for (const auto& t : tail_) s += t.coeff * std::pow(xx, -t.exponent);
            return s;
        }
        return table_[static_cast<std::size_t>(j)];
    };
    double fm1 = get(i - 1), f0 = get(i), f1 = get(i + 1), f2 = get(i + 2);
    double a = -0.5 * fm1 + 1.5 * f0 - 1.5 * f1 + 0.5 * f2;
    double b = fm1 - 2.5 * f0 + 2.0 * f1 - 0.5 * f2;
    double c = 0.5 * (f1 - fm1);
    return sgn * (((a * u + b) * u + c) * u + f0);
}

double RadialTable::tail_integral(double x0) const {
    if (x0 < x_wide() * (1.0 - 1e-12))
        throw std::invalid_argument("RadialTable::tail_integral: x0 below table edge");
    double s = 0.0;
    for (const auto& t : tail_) {
        if (t.exponent <= 1.0) throw std::runtime_error("RadialTable: non-integrable tail");
        s += t.coeff * std::pow(x0, 1.0 - t.exponent) / (t.exponent - 1.0);
    }
    return s;
}

void RadialTable::build_cdf() const {
    if (!cum_.empty()) return;
    cum_.resize(table_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < table_.size(); ++i)
        cum_[i] = cum_[i - 1] + 0.5 * dx_ * (table_[i - 1] + table_[i]);
}

double RadialTable::total_integral() const {
    if (parity_ < 0) return 0.0;
    // composite Simpson; 3/8 rule on the last cells when the count is even
    std::size_t n = table_.size();
    double s = 0.0;
    std::size_t m = (n % 2 == 1) ? n : n - 3;
    for (std::size_t i = 0; i + 2 < m + (n % 2 == 1 ? 1 : 0); i += 2)
        s += (dx_ / 3.0) * (table_[i] + 4.0 * table_[i + 1] + table_[i + 2]);
    if (n % 2 == 0)
        s += (3.0 * dx_ / 8.0) * (table_[n - 4] + 3.0 * table_[n - 3] + 3.0 * table_[n - 2] + table_[n - 1]);
    return 2.0 * (s + tail_integral(x_wide()));
}

double RadialTable::cdf(double x) const {
    if (parity_ < 0) throw std::runtime_error("RadialTable::cdf: odd parity");
    build_cdf();
    double half = cum_.back() + tail_integral(x_wide());
    double ax = std::abs(x);
    double from0;
    if (ax >= x_wide()) {
        from0 = half - tail_integral(ax);
    } else {
        double idx = ax / dx_;
        auto i = static_cast<std::size_t>(std::floor(idx));
        double u = idx - static_cast<double>(i);
        double lo = cum_[i];
        double hi = (i + 1 < cum_.size()) ? cum_[i + 1] : cum_.back();
        from0 = lo + u * (hi - lo);
    }
    return (x >= 0.0) ? half + from0 : half - from0;
}

}  // namespace slp
