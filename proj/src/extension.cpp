#include "stablelp/extension.hpp"

#include <cmath>
#include <stdexcept>

namespace slp {

namespace {

GridFunction spectral_op(const GridFunction& f, const std::function<double(double)>& m,
                         double tail_factor) {
    // peel off the constant part so tails are exact
    double tv = f.tail_value();
    GridFunction g = f;
    if (tv != 0.0) {
        std::vector<double> v(f.values());
        for (auto& x : v) x -= tv;
        g = GridFunction(std::move(v), f.spacing(), 0.0);
    }
    GridFunction out = apply_multiplier(g, [&](double xi) { return std::complex<double>(m(xi), 0.0); });
    if (tv != 0.0) {
        std::vector<double> v(out.values());
        for (auto& x : v) x += tv * tail_factor;
        out = GridFunction(std::move(v), out.spacing(), tv * tail_factor);
    }
    return out;
}

}  // namespace

GridFunction extend(const GridFunction& f, const StableParams& params, double t) {
    validate(params);
    if (t <= 0.0) throw std::invalid_argument("extend: t must be positive");
    double b = params.alpha / 2.0;
    return spectral_op(f, [t, b](double xi) { return std::exp(-t * std::pow(std::abs(xi), b)); },
                       1.0);
}

GridFunction d_dt_extend(const GridFunction& f, const StableParams& params, double t) {
    validate(params);
    if (t <= 0.0) throw std::invalid_argument("d_dt_extend: t must be positive");
    double b = params.alpha / 2.0;
    return spectral_op(f,
                       [t, b](double xi) {
                           double a = std::pow(std::abs(xi), b);
                           return -a * std::exp(-t * a);
                       },
                       0.0);
}

InvariancePair invariance_check(const GridFunction& f, const StableParams& params, double s) {
    validate(params);
    if (s <= 0.0) throw std::invalid_argument("invariance_check: s must be positive");
    if (f.tail_value() != 0.0)
        throw std::invalid_argument("invariance_check: f must be integrable-decaying");
    GridFunction g = spectral_op(
        f, [&](double xi) { return std::exp(-s * std::pow(std::abs(xi), params.alpha)); }, 1.0);
    double rhs = f.integral();
    // the periodic spectral route conserves the zero mode, so the heavy tail
    // of P_s f wraps around instead of leaving the grid; the plain grid sum
    // is the right total
    double lhs = g.integral();
    return {lhs, rhs};
}

ExtensionField::ExtensionField(GridFunction base, StableParams params)
    : base_(std::move(base)), params_(params) {
    validate(params_);
}

const GridFunction& ExtensionField::cached(std::map<long long, std::unique_ptr<GridFunction>>& m,
                                           double t, int kind) const {
    if (t <= 0.0) throw std::invalid_argument("ExtensionField: t must be positive");
    long long key = std::llround(t * 1e12);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = m.find(key);
    if (it == m.end()) {
        GridFunction g;
        switch (kind) {
            case 0: g = extend(base_, params_, t); break;
            case 1: g = d_dt_extend(base_, params_, t); break;
            default: {
                double tv = base_.tail_value();
                GridFunction f0 = base_;
                if (tv != 0.0) {
                    std::vector<double> v(base_.values());
                    for (auto& x : v) x -= tv;
                    f0 = GridFunction(std::move(v), base_.spacing(), 0.0);
                }
                double b = params_.alpha / 2.0;
                g = apply_multiplier(f0, [t, b](double xi) {
                    return std::complex<double>(0.0, xi) *
                           std::exp(-t * std::pow(std::abs(xi), b));
                });
                break;
            }
        }
        it = m.emplace(key, std::make_unique<GridFunction>(std::move(g))).first;
    }
    return *it->second;
}

const GridFunction& ExtensionField::slice(double t) const { return cached(slices_, t, 0); }
const GridFunction& ExtensionField::dslice(double t) const { return cached(dslices_, t, 1); }
const GridFunction& ExtensionField::dxslice(double t) const { return cached(dxslices_, t, 2); }

}  // namespace slp
