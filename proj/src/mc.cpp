#include "stablelp/mc.hpp"

#include "stablelp/extension.hpp"
#include "stablelp/fixtures.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path_index) {
    std::uint64_t st = seed ^ (path_index * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL);
    for (auto& w : s_) w = splitmix64(st);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t PathRng::next() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double PathRng::uniform() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
}

double PathRng::normal() {
    double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double PathRng::stable(double alpha) {
    double v = kPi * (uniform() - 0.5);
    if (std::abs(alpha - 1.0) < 1e-12) return std::tan(v);
    double w = -std::log(uniform());
    double s = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
    return s * std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_stable(const StableParams& params, std::size_t n,
                                  std::uint64_t seed) {
    validate(params);
    std::vector<double> out(n);
    PathRng rng(seed, 0);
    for (auto& v : out) v = rng.stable(params.alpha);
    return out;
}

std::vector<PathRecord> run_paths(const StableParams& params, const McConfig& config,
                                  double x, double a) {
    validate(params);
    if (!(a > 0.0)) throw std::invalid_argument("run_paths: need a > 0");
    double alpha = params.alpha, dt = config.dt;
    double step_scale = std::pow(dt, 1.0 / alpha), z_scale = std::sqrt(2.0 * dt);
    std::vector<PathRecord> out(config.n_paths);
    for (std::size_t k = 0; k < config.n_paths; ++k) {
        PathRng rng(config.seed, k);
        PathRecord& rec = out[k];
        double y = x, z = a, s = 0.0;
        if (config.keep_paths) {
            rec.y_samples.push_back(y);
            rec.z_samples.push_back(z);
        }
        for (;;) {
            if (z >= config.barrier) {
                // T0 from level z has cdf erfc(z / (2 sqrt(s))); invert it,
                // then move Y by one exact stable increment (Y and T0 are
                // independent)
                double ei = boost::math::erfc_inv(rng.uniform());
                double tau = (ei > 0.0) ? (z / (2.0 * ei)) * (z / (2.0 * ei)) : config.s_max;
                rec.t0 = s + tau;
                rec.y_at_t0 = y + std::pow(tau, 1.0 / alpha) * rng.stable(alpha);
                break;
            }
            double zn = z + z_scale * rng.normal();
            double tau = -1.0;
            if (zn <= 0.0) {
                tau = dt * z / (z - zn);
            } else if (rng.uniform() < std::exp(-z * zn / dt)) {
                tau = dt * z / (z + zn);  // bridge-detected crossing
            }
            if (tau >= 0.0) {
                rec.t0 = s + tau;
                rec.y_at_t0 = y + std::pow(tau, 1.0 / alpha) * rng.stable(alpha);
                break;
            }
            y += step_scale * rng.stable(alpha);
            z = zn;
            s += dt;
            if (config.keep_paths) {
                rec.y_samples.push_back(y);
                rec.z_samples.push_back(z);
            }
            if (s >= config.s_max) {
                rec.censored = true;
                rec.t0 = s;
                rec.y_at_t0 = y;
                break;
            }
        }
    }
    return out;
}

GreenResult green_identity_check(const std::function<double(double)>& f, double support_end,
                                 double a, const StableParams& params, const McConfig& config) {
    validate(params);
    double alpha = params.alpha, dt = config.dt;
    double barrier = std::max(config.barrier, support_end);
    boost::math::quadrature::tanh_sinh<double> ts;
    double m1 = ts.integrate([&](double s) { return s * f(s); }, 0.0, support_end);
    double cut = std::min(a, support_end);
    GreenResult res;
    res.exact = ts.integrate([&](double s) { return s * f(s); }, 0.0, cut);
    if (support_end > cut)
        res.exact += a * ts.integrate(f, cut, support_end);

    double z_scale = std::sqrt(2.0 * dt);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t k = 0; k < config.n_paths; ++k) {
        PathRng rng(config.seed, k);
        double z = a, s = 0.0, acc = 0.0;
        for (;;) {
            if (z >= barrier) {
                acc += m1;  // exact remainder: int (s ^ z) f = m1 since z covers supp f
                break;
            }
            double zn = z + z_scale * rng.normal();
            if (zn <= 0.0) {
                acc += f(z) * dt * z / (z - zn);
                break;
            }
            if (rng.uniform() < std::exp(-z * zn / dt)) {
                acc += f(z) * dt * z / (z + zn);
                break;
            }
            acc += f(z) * dt;
            z = zn;
            s += dt;
            if (s >= config.s_max) break;
        }
        sum += acc;
        sumsq += acc * acc;
    }
    auto n = static_cast<double>(config.n_paths);
    res.mc = sum / n;
    res.std_err = std::sqrt(std::max(sumsq / n - res.mc * res.mc, 0.0) / n);
    return res;
}

UField::UField(const GridFunction& f, const StableParams& params, double t_max,
               std::size_t t_nodes)
    : base_(f), params_(params),
      // far-field formula is tail + (mass of the decaying part) * q_t; the
      // constant part rides through the semigroup unchanged
      mass_(f.integral() -
            f.tail_value() * static_cast<double>(f.size()) * f.spacing()) {
    double t_min = 1e-3;
    log_t_.resize(t_nodes);
    slices_.reserve(t_nodes);
    double lo = std::log(t_min), hi = std::log(std::max(t_max, 10.0 * t_min));
    for (std::size_t j = 0; j < t_nodes; ++j) {
        log_t_[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(t_nodes - 1);
        slices_.push_back(extend(base_, params_, std::exp(log_t_[j])));
    }
}

double UField::operator()(double y, double t) const {
    if (std::abs(y) > 0.75 * base_.half_extent())
        return base_.tail_value() + mass_ * q_density(params_, std::max(t, 1e-3), y);
    double lt = std::log(std::max(t, 1e-12));
    if (lt <= log_t_.front()) {
        // below the table the semigroup is close to identity; blend to f
        double w = std::max(t, 0.0) / std::exp(log_t_.front());
        return (1.0 - w) * base_.interp(y) + w * slices_.front().interp(y);
    }
    if (lt >= log_t_.back()) return slices_.back().interp(y);
    auto it = std::upper_bound(log_t_.begin(), log_t_.end(), lt);
    auto j = static_cast<std::size_t>(it - log_t_.begin()) - 1;
    double w = (lt - log_t_[j]) / (log_t_[j + 1] - log_t_[j]);
    return (1.0 - w) * slices_[j].interp(y) + w * slices_[j + 1].interp(y);
}

std::vector<MartingaleRow> martingale_check(const GridFunction& f, const StableParams& params,
                                            double x, double a, const std::vector<double>& times,
                                            const McConfig& config) {
    validate(params);
    if (times.empty()) return {};
    std::vector<double> ts_sorted(times);
    std::sort(ts_sorted.begin(), ts_sorted.end());
    double s_last = ts_sorted.back(), dt = config.dt, alpha = params.alpha;
    UField u(f, params, a + 8.0 * std::sqrt(2.0 * s_last) + 1.0);
    double reference = u(x, a);

    std::vector<double> sum(ts_sorted.size(), 0.0), sumsq(ts_sorted.size(), 0.0);
    double step_scale = std::pow(dt, 1.0 / alpha), z_scale = std::sqrt(2.0 * dt);
    for (std::size_t k = 0; k < config.n_paths; ++k) {
        PathRng rng(config.seed, k);
        double y = x, z = a, s = 0.0;
        bool alive = true;
        double frozen = 0.0;
        std::size_t next = 0;
        while (next < ts_sorted.size()) {
            while (next < ts_sorted.size() && ts_sorted[next] <= s + dt * 0.5) {
                double v = alive ? u(y, z) : frozen;
                sum[next] += v;
                sumsq[next] += v * v;
                ++next;
            }
            if (next >= ts_sorted.size()) break;
            if (alive) {
                double zn = z + z_scale * rng.normal();
                double tau = -1.0;
                if (zn <= 0.0)
                    tau = dt * z / (z - zn);
                else if (rng.uniform() < std::exp(-z * zn / dt))
                    tau = dt * z / (z + zn);
                if (tau >= 0.0) {
                    y += std::pow(tau, 1.0 / alpha) * rng.stable(alpha);
                    frozen = std::abs(y) <= f.half_extent() ? f.interp(y) : f.tail_value();
                    alive = false;
                } else {
                    y += step_scale * rng.stable(alpha);
                    z = zn;
                }
            }
            s += dt;
        }
    }
    std::vector<MartingaleRow> rows(ts_sorted.size());
    auto n = static_cast<double>(config.n_paths);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].s = ts_sorted[i];
        rows[i].mc = sum[i] / n;
        rows[i].std_err = std::sqrt(std::max(sumsq[i] / n - rows[i].mc * rows[i].mc, 0.0) / n);
        rows[i].reference = reference;
    }
    return rows;
}

double harnack_ratio(const GridFunction& f, const StableParams& params, double t_c,
                     std::size_t samples_per_side) {
    validate(params);
    if (!(t_c > 16.0)) throw std::invalid_argument("harnack_ratio: need t_c > 16 so D_32 stays in t > 0");
    double half_x = 0.5 * std::pow(1.0, 2.0 / params.alpha);  // D_1 spatial half-width
    double half_t = 0.5;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t j = 0; j < samples_per_side; ++j) {
        double t = t_c - half_t +
                   2.0 * half_t * static_cast<double>(j) / static_cast<double>(samples_per_side - 1);
        GridFunction ft = extend(f, params, t);
        for (std::size_t i = 0; i < samples_per_side; ++i) {
            double x = -half_x + 2.0 * half_x * static_cast<double>(i) /
                                     static_cast<double>(samples_per_side - 1);
            double v = ft.interp(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo > 0.0)) throw std::domain_error("harnack_ratio: extension not positive on the box");
    return hi / lo;
}

std::map<std::string, double> harnack_sample(const StableParams& params,
                                             const std::vector<std::string>& fixtures,
                                             double t_c) {
    std::map<std::string, double> out;
    for (const auto& name : fixtures)
        out[name] = harnack_ratio(make_fixture(name), params, t_c);
    return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double c = cdf(samples[i]);
        d = std::max({d, std::abs(c - static_cast<double>(i + 1) / n),
                      std::abs(c - static_cast<double>(i) / n)});
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        // consume ties in both samples before comparing the empirical CDFs
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                                 static_cast<double>(j) / static_cast<double>(b.size())));
    }
    return d;
}

}  // namespace slp
