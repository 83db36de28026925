// stablelp: density tables, harmonic extensions, Littlewood-Paley
// functionals, singular-multiplier certification, and Monte Carlo checks for
// the symmetric alpha-stable half-space process.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 config error.

#include "stablelp/extension.hpp"
#include "stablelp/fixtures.hpp"
#include "stablelp/functionals.hpp"
#include "stablelp/mc.hpp"
#include "stablelp/multiplier.hpp"
#include "stablelp/report.hpp"
#include "stablelp/stable_density.hpp"
#include "stablelp/suite.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace slp;

struct RunConfig {
    double alpha = 1.5;
    double s = 1.0;
    double a = 1.0;
    double lambda = 1.75;
    double half_extent = kDefaultL;
    double spacing = kDefaultDx;
    double t_min = kDefaultTMin;
    double t_max = kDefaultTMax;
    std::size_t t_nodes = kDefaultTNodes;
    std::size_t n_paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 42;
    int workers = 1;
    bool quick = false;
    bool emit_samples = false;
    std::string output_dir;
    std::vector<std::string> fixtures;
    std::vector<std::string> kernels;
    std::vector<double> times{0.1, 1.0, 10.0};

    std::string canonical() const {
        std::ostringstream os;
        os << "alpha=" << alpha << ";s=" << s << ";a=" << a << ";lambda=" << lambda
           << ";L=" << half_extent << ";dx=" << spacing << ";t_min=" << t_min
           << ";t_max=" << t_max << ";t_nodes=" << t_nodes << ";n_paths=" << n_paths
           << ";dt=" << dt << ";seed=" << seed << ";workers=" << workers
           << ";quick=" << quick << ";fixtures=";
        for (const auto& f : fixtures) os << f << ",";
        os << ";kernels=";
        for (const auto& k : kernels) os << k << ",";
        return os.str();
    }
};

const std::set<std::string> kConfigKeys = {
    "alpha",   "s",     "a",      "lambda",  "grid.L",  "grid.dx",  "t_min",
    "t_max",   "t_nodes", "n_paths", "dt",    "seed",    "workers",  "quick",
    "output_dir", "fixtures", "kernels", "times"};

// Flat key=value file; '#' comments; unknown keys are hard errors so a typo
// in alpha/lambda cannot silently fall back to a default.
void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("config", "cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError(
                "config", path + ":" + std::to_string(lineno) + ": expected key=value");
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (!kConfigKeys.count(key))
            throw CLI::ValidationError(
                "config", path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        auto split_list = [](const std::string& v) {
            std::vector<std::string> out;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) out.push_back(item);
            return out;
        };
        try {
            if (key == "alpha") cfg.alpha = std::stod(val);
            else if (key == "s") cfg.s = std::stod(val);
            else if (key == "a") cfg.a = std::stod(val);
            else if (key == "lambda") cfg.lambda = std::stod(val);
            else if (key == "grid.L") cfg.half_extent = std::stod(val);
            else if (key == "grid.dx") cfg.spacing = std::stod(val);
            else if (key == "t_min") cfg.t_min = std::stod(val);
            else if (key == "t_max") cfg.t_max = std::stod(val);
            else if (key == "t_nodes") cfg.t_nodes = std::stoul(val);
            else if (key == "n_paths") cfg.n_paths = std::stoul(val);
            else if (key == "dt") cfg.dt = std::stod(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "workers") cfg.workers = std::stoi(val);
            else if (key == "quick") cfg.quick = (val == "1" || val == "true");
            else if (key == "output_dir") cfg.output_dir = val;
            else if (key == "fixtures") cfg.fixtures = split_list(val);
            else if (key == "kernels") cfg.kernels = split_list(val);
            else if (key == "times") {
                cfg.times.clear();
                for (const auto& t : split_list(val)) cfg.times.push_back(std::stod(t));
            }
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError(
                "config", path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
}

std::string output_dir_or_default(const RunConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("STABLELP_OUTPUT_DIR")) return env;
    return ".";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ostringstream os;
    os.precision(12);
    for (std::size_t j = 0; j < header.size(); ++j)
        os << header[j] << (j + 1 < header.size() ? "," : "\n");
    std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < columns.size(); ++j)
            os << columns[j][i] << (j + 1 < columns.size() ? "," : "\n");
    write_text_file(path, os.str());
}

void require_fixtures(const RunConfig& cfg) {
    if (cfg.fixtures.empty())
        throw CLI::ValidationError("fixtures", "fixture list must not be empty");
    for (const auto& f : cfg.fixtures)
        if (!is_fixture(f))
            throw CLI::ValidationError("fixtures", "unknown fixture '" + f + "'");
}

int finish(SuiteReport& rep, const RunConfig& cfg, const std::string& name) {
    rep.config_hash = config_hash(cfg.canonical());
    std::filesystem::create_directories(output_dir_or_default(cfg));
    std::string json_path = output_dir_or_default(cfg) + "/" + name + "_report.json";
    write_text_file(json_path, report_to_json(rep));
    for (const auto& c : rep.checks)
        if (c.status != "logged")
            std::cout << (c.status == "pass" ? "PASS " : "FAIL ") << c.name << "  value="
                      << c.value << "  tol=" << c.tolerance
                      << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    std::cout << "report: " << json_path << "\n";
    if (rep.fail_count() > 0) {
        std::cout << rep.fail_count() << " check(s) failed\n";
        return 1;
    }
    return 0;
}

int cmd_density(const RunConfig& cfg) {
    StableParams P{cfg.alpha, 1};
    GridFunction p = GridFunction::sample(cfg.half_extent, cfg.spacing,
                                          [&](double x) { return p_density(P, cfg.s, x); });
    std::vector<double> xs, vals;
    for (std::size_t i = 0; i < p.size(); ++i) {
        xs.push_back((static_cast<double>(i) - static_cast<double>(p.center_index())) *
                     p.spacing());
        vals.push_back(p[i]);
    }
    std::filesystem::create_directories(output_dir_or_default(cfg));
    write_csv(output_dir_or_default(cfg) + "/density.csv", {"x", "p"}, {xs, vals});

    SuiteReport rep;
    rep.log("density_mass", p.integral(), "grid integral of the sampled density");
    rep.log("density_at_zero", p_density(P, cfg.s, 0.0), "p(s, 0)");
    if (cfg.alpha == 1.0 && cfg.s == 1.0)
        rep.add("cauchy_center", std::abs(p_density(P, 1.0, 0.0) - 1.0 / std::numbers::pi) <= 1e-9,
                p_density(P, 1.0, 0.0), 1e-9, "want 1/pi");
    RunConfig c = cfg;
    return finish(rep, c, "density");
}

int cmd_extend(RunConfig cfg) {
    require_fixtures(cfg);
    StableParams P{cfg.alpha, 1};
    SuiteReport rep;
    for (const auto& name : cfg.fixtures) {
        GridFunction f = make_fixture(name, cfg.half_extent, cfg.spacing);
        ExtensionField field(f, P);
        std::vector<std::string> header{"x"};
        std::vector<std::vector<double>> cols(1);
        for (std::size_t i = 0; i < f.size(); ++i)
            cols[0].push_back((static_cast<double>(i) - static_cast<double>(f.center_index())) *
                              f.spacing());
        for (double t : cfg.times) {
            GridFunction ft = field.slice(t);
            header.push_back("t=" + std::to_string(t));
            cols.emplace_back(ft.values().begin(), ft.values().end());
            rep.log("sup_" + name + "_t" + std::to_string(t), sup_norm(ft),
                    "contraction: must not exceed sup |f|");
        }
        std::filesystem::create_directories(output_dir_or_default(cfg));
        write_csv(output_dir_or_default(cfg) + "/extend_" + name + ".csv", header, cols);
    }
    return finish(rep, cfg, "extend");
}

int cmd_lp(RunConfig cfg) {
    require_fixtures(cfg);
    StableParams P{cfg.alpha, 1};
    FunctionalConfig fc;
    fc.t_min = cfg.t_min;
    fc.t_max = cfg.t_max;
    fc.t_nodes = cfg.t_nodes;
    SuiteReport rep;
    for (const auto& name : cfg.fixtures) {
        GridFunction f = make_fixture(name, cfg.half_extent, cfg.spacing);
        FunctionalSet S = compute_functionals(f, P, cfg.lambda, fc);
        const FunctionalReport* reports[] = {&S.g_up,       &S.g_arrow, &S.g_arrow_alpha,
                                             &S.g_full,     &S.g_alpha, &S.area,
                                             &S.gstar_arrow, &S.gstar_up, &S.gstar, &S.l_star};
        std::vector<std::string> header{"x"};
        std::vector<std::vector<double>> cols(1);
        const GridFunction& g0 = S.g_up.values;
        for (std::size_t i = 0; i < g0.size(); ++i)
            cols[0].push_back((static_cast<double>(i) - static_cast<double>(g0.center_index())) *
                              g0.spacing());
        for (const auto* r : reports) {
            header.push_back(r->name);
            cols.emplace_back(r->values.values().begin(), r->values.values().end());
            for (const auto& [p, v] : r->p_norms)
                rep.log(name + "_" + r->name + "_p" + std::to_string(p), v, "inner-half norm");
        }
        std::filesystem::create_directories(output_dir_or_default(cfg));
        write_csv(output_dir_or_default(cfg) + "/lp_" + name + ".csv", header, cols);
    }
    return finish(rep, cfg, "lp");
}

int cmd_multiplier(RunConfig cfg) {
    if (cfg.fixtures.empty()) cfg.fixtures = {"gauss", "indicator", "coswin"};
    require_fixtures(cfg);
    if (cfg.kernels.empty()) cfg.kernels = {"test"};
    StableParams P{cfg.alpha, 1};
    SuiteReport rep;
    for (const auto& kname : cfg.kernels) {
        CertificationReport r = certify(kernel_registry(kname, cfg.alpha), P, cfg.fixtures,
                                        {1.5, 2.0, 3.0});
        rep.log(kname + "_cancelation", r.cancelation_max, "max |annulus integral|");
        rep.log(kname + "_cond_i", r.cond_i_const, "size-condition constant");
        rep.log(kname + "_cond_ii", r.cond_ii_const, "smoothness-condition constant");
        rep.log(kname + "_decay", r.decay_const, "dtQt decay constant, lambda=" +
                                                      std::to_string(r.lambda_used));
        rep.log(kname + "_ratio_spread", r.ratio_spread, "worst-case per-p norm-ratio spread");
        for (const auto& [k, v] : r.norm_ratios) rep.log(kname + "_" + k, v, "|Tf|_p / |f|_p");
        rep.add(kname + "_verdict_resolved", r.verdict != Verdict::inconclusive || kname == "fat_tail",
                0.0, 0.0, std::string("verdict ") + verdict_name(r.verdict) +
                              (r.note.empty() ? "" : "; " + r.note));
    }
    return finish(rep, cfg, "multiplier");
}

int cmd_mc(RunConfig cfg) {
    StableParams P{cfg.alpha, 1};
    McConfig mc;
    mc.n_paths = cfg.n_paths;
    mc.dt = cfg.dt;
    mc.seed = cfg.seed;
    mc.worker_count = cfg.workers;
    SuiteReport rep;
    auto paths = run_paths(P, mc, 0.0, cfg.a);
    std::vector<double> t0, y0;
    std::size_t cens = 0;
    for (const auto& p : paths) {
        t0.push_back(p.t0);
        y0.push_back(p.y_at_t0);
        cens += p.censored ? 1 : 0;
    }
    double bound = 1.63 / std::sqrt(static_cast<double>(cfg.n_paths));
    ExitLaw mu(cfg.a);
    double ks_t = ks_statistic(t0, [&](double v) { return mu.cdf(v); });
    double ks_y = ks_statistic(y0, [&](double v) { return q_cdf(P, cfg.a, v); });
    rep.add("ks_exit_time", ks_t < bound, ks_t, bound, "KS vs erfc CDF");
    rep.add("ks_exit_position", ks_y < bound, ks_y, bound, "KS vs q_a CDF");
    rep.add("censoring", static_cast<double>(cens) < 0.01 * static_cast<double>(cfg.n_paths),
            static_cast<double>(cens), 0.01 * static_cast<double>(cfg.n_paths), "censored paths");
    GreenResult g = green_identity_check([](double z) { return z <= 1.0 ? 1.0 : 0.0; }, 1.0,
                                         cfg.a, P, mc);
    rep.add("green_identity", std::abs(g.mc - g.exact) <= 3.0 * g.std_err + 2.0 * cfg.dt, g.mc,
            3.0 * g.std_err + 2.0 * cfg.dt, "exact " + std::to_string(g.exact));
    if (cfg.emit_samples) {
        std::filesystem::create_directories(output_dir_or_default(cfg));
        write_csv(output_dir_or_default(cfg) + "/mc_samples.csv", {"t0", "y_at_t0"}, {t0, y0});
    }
    return finish(rep, cfg, "mc");
}

int cmd_suite(const RunConfig& cfg) {
    SuiteOptions opt;
    opt.alpha = cfg.alpha;
    opt.quick = cfg.quick;
    opt.seed = cfg.seed;
    SuiteReport rep = run_suite(opt);
    RunConfig c = cfg;
    return finish(rep, c, "suite");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric alpha-stable extension / Littlewood-Paley toolbox"};
    app.require_subcommand(1);
    app.fallthrough();  // --config / --output-dir may follow the subcommand

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file (strict keys)");
    app.add_option("--output-dir", cfg.output_dir,
                   "artifact directory (default: $STABLELP_OUTPUT_DIR or .)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "stability index in (0,2)");
        sub->add_option("--grid-L", cfg.half_extent, "grid half extent");
        sub->add_option("--grid-dx", cfg.spacing, "grid spacing");
    };

    auto* density = app.add_subcommand("density", "stable density table -> CSV");
    add_common(density);
    density->add_option("--s", cfg.s, "time parameter");

    auto* extend = app.add_subcommand("extend", "extension slices Q_t f -> CSV");
    add_common(extend);
    extend->add_option("--fixture", cfg.fixtures, "fixture names (repeatable)");
    extend->add_option("--t", cfg.times, "slice times (repeatable)");

    auto* lp = app.add_subcommand("lp", "Littlewood-Paley functional profiles -> CSV");
    add_common(lp);
    lp->add_option("--fixture", cfg.fixtures, "fixture names (repeatable)");
    lp->add_option("--lambda", cfg.lambda, "K_t^lambda exponent (> 1)");
    lp->add_option("--t-nodes", cfg.t_nodes, "time-quadrature nodes");

    auto* mult = app.add_subcommand("multiplier", "kernel certification report");
    add_common(mult);
    mult->add_option("--kernel", cfg.kernels, "kernel names (repeatable; default: test)");
    mult->add_option("--fixture", cfg.fixtures, "fixture names (repeatable)");

    auto* mc = app.add_subcommand("mc", "Monte Carlo exit-law / Green / KS checks");
    mc->add_option("--alpha", cfg.alpha, "stability index in (0,2)");
    mc->add_option("--a", cfg.a, "starting height");
    mc->add_option("--n-paths", cfg.n_paths, "path count");
    mc->add_option("--dt", cfg.dt, "step size");
    mc->add_option("--seed", cfg.seed, "RNG seed");
    mc->add_option("--workers", cfg.workers, "worker count");
    mc->add_flag("--emit-samples", cfg.emit_samples, "write raw t0 / y_at_t0 CSV");

    auto* suite = app.add_subcommand("suite", "run the full acceptance suite");
    suite->add_option("--alpha", cfg.alpha, "stability index (reference checks pin 1.5)");
    suite->add_flag("--quick", cfg.quick, "reduced path counts and time grids");
    suite->add_option("--seed", cfg.seed, "RNG seed for the MC criterion");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            RunConfig file_cfg;
            load_config_file(config_path, file_cfg);
            // file provides defaults; re-parse so explicit flags win
            std::string keep_out = cfg.output_dir;
            cfg = file_cfg;
            if (!keep_out.empty()) cfg.output_dir = keep_out;
            app.clear();
            app.parse(argc, argv);
        }
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (density->parsed()) return cmd_density(cfg);
        if (extend->parsed()) return cmd_extend(cfg);
        if (lp->parsed()) return cmd_lp(cfg);
        if (mult->parsed()) return cmd_multiplier(cfg);
        if (mc->parsed()) return cmd_mc(cfg);
        if (suite->parsed()) return cmd_suite(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
