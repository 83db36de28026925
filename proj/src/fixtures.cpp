#include "stablelp/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace slp {

std::vector<std::string> fixture_names() {
    return {"gauss", "indicator", "coswin", "gauss5", "indicator3", "one", "zero"};
}

bool is_fixture(const std::string& name) {
    for (const auto& n : fixture_names())
        if (n == name) return true;
    return false;
}

double fixture_eval(const std::string& name, double x) {
    if (name == "gauss") return std::exp(-x * x);
    if (name == "indicator") return std::abs(x) <= 1.0 ? 1.0 : 0.0;
    if (name == "coswin") return std::cos(x) * std::exp(-(x / 8.0) * (x / 8.0));
    if (name == "gauss5") return std::exp(-(x - 5.0) * (x - 5.0));
    if (name == "indicator3") return (x >= 2.0 && x <= 4.0) ? 1.0 : 0.0;
    if (name == "one") return 1.0;
    if (name == "zero") return 0.0;
    throw std::invalid_argument("unknown fixture: " + name);
}

GridFunction make_fixture(const std::string& name, double half_extent, double spacing) {
    double tail = (name == "one") ? 1.0 : 0.0;
    return GridFunction::sample(half_extent, spacing,
                                [&](double x) { return fixture_eval(name, x); }, tail);
}

}  // namespace slp
