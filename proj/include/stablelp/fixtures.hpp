#pragma once

#include "stablelp/grid.hpp"

#include <string>
#include <vector>

namespace slp {

/// Fixed fixture registry so tolerances are meaningful across runs:
///   gauss      e^{-x^2}
///   indicator  1_{[-1,1]}
///   coswin     cos(x) e^{-(x/8)^2}
///   gauss5     e^{-(x-5)^2}
///   indicator3 1_{[2,4]}
///   one        f == 1 (tail_value 1)
///   zero       f == 0
std::vector<std::string> fixture_names();
bool is_fixture(const std::string& name);
double fixture_eval(const std::string& name, double x);
GridFunction make_fixture(const std::string& name, double half_extent = kDefaultL,
                          double spacing = kDefaultDx);

}  // namespace slp
