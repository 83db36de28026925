#pragma once

#include "stablelp/report.hpp"

#include <cstdint>

namespace slp {

struct SuiteOptions {
    double alpha = 1.5;      ///< used by criteria whose alpha is not pinned
    bool quick = false;      ///< smaller Monte Carlo budgets, coarser t-grids
    std::uint64_t seed = 44; ///< Monte Carlo seed
};

/// Runs the nine acceptance criteria; check names are prefixed c1_..c9_ and
/// a "cN_runtime" record logs each criterion's elapsed seconds.
SuiteReport run_suite(const SuiteOptions& options);

}  // namespace slp
