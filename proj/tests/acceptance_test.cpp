// Acceptance gate: runs the nine-criterion suite and prints one line per
// criterion. Exit status is the number of failing criteria.

#include "stablelp/report.hpp"
#include "stablelp/suite.hpp"

#include <cstdio>
#include <map>
#include <string>

namespace {

const char* kTitles[9] = {
    "density suite (Cauchy closed forms, two-sided band, subordination, semigroup)",
    "psi suite (psi(0) = -4/pi, vanishing integral, envelope and moment lemmas)",
    "Plancherel constant ||G_up f||_2 / ||f||_2 = 1/2",
    "scaling constant of G_arrow_alpha vs quadrature oracle",
    "pointwise chains (A <= 2^{l/2} G*_arrow, Gamma ordering, kernel mass)",
    "maximal functions (Hardy-Littlewood closed forms, N_alpha <= c M)",
    "multiplier pipeline (p.v. 1/x = pi, certify / violate / inconclusive)",
    "Monte Carlo (KS exit laws, Green identity, martingale, reproducibility)",
    "Harnack box ratios",
};

}  // namespace

int main() {
    slp::SuiteOptions opt;
    slp::SuiteReport rep = slp::run_suite(opt);

    int failed_criteria = 0;
    for (int c = 1; c <= 9; ++c) {
        std::string prefix = "c" + std::to_string(c) + "_";
        int fails = 0, checks = 0;
        double runtime = 0.0;
        for (const auto& r : rep.checks) {
            if (r.name.rfind(prefix, 0) != 0) continue;
            if (r.name == prefix + "runtime") {
                runtime = r.value;
                continue;
            }
            if (r.status == "logged") continue;
            ++checks;
            if (r.status == "fail") ++fails;
        }
        bool ok = (fails == 0 && checks > 0);
        if (!ok) ++failed_criteria;
        std::printf("criterion %d: %s  (%d/%d checks, %.1fs)  %s\n", c,
                    ok ? "PASS" : "FAIL", checks - fails, checks, runtime, kTitles[c - 1]);
        if (fails > 0)
            for (const auto& r : rep.checks)
                if (r.name.rfind(prefix, 0) == 0 && r.status == "fail")
                    std::printf("    fail: %s  value=%g tol=%g  %s\n", r.name.c_str(), r.value,
                                r.tolerance, r.detail.c_str());
    }
    slp::write_text_file("acceptance_report.json", slp::report_to_json(rep));
    std::printf("%s (%d/9 criteria)\n", failed_criteria == 0 ? "ACCEPTED" : "REJECTED",
                9 - failed_criteria);
    return failed_criteria;
}
