#include <CLI11.hpp>
#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include "uavcache/errors.hpp"
#include "uavcache/experiments.hpp"

namespace {

long long parse_ll(const std::string& text, const char* what) {
    long long v = 0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw uavcache::ConfigError(std::string(what) + ": cannot parse '" +
                                    text + "'");
    return v;
}

std::pair<long long, long long> parse_seeds(const std::string& arg) {
    const std::size_t at = arg.find("..");
    if (at == std::string::npos) {
        const long long s = parse_ll(arg, "--seeds");
        return {s, s};
    }
    const long long lo = parse_ll(arg.substr(0, at), "--seeds");
    const long long hi = parse_ll(arg.substr(at + 2), "--seeds");
    if (hi < lo) throw uavcache::ConfigError("--seeds: range end below start");
    return {lo, hi};
}

std::vector<double> parse_thetas(const std::string& arg) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
        const std::size_t comma = arg.find(',', pos);
        const std::string tok =
            arg.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw uavcache::ConfigError("--thetas: cannot parse '" + tok + "'");
        }
        if (used != tok.size())
            throw uavcache::ConfigError("--thetas: cannot parse '" + tok + "'");
        if (!(v >= 0.0 && v <= 1.0))
            throw uavcache::ConfigError("--thetas: " + tok +
                                        " outside [0, 1]");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw uavcache::ConfigError("--thetas: empty list");
    return out;
}

std::vector<double> default_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 20; ++i) g.push_back(0.05 * i);
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "UAV proactive-caching experiments: joint file placement, flight "
        "path, and transmission scheduling"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config, thetas_arg, seeds_arg = "1", algorithm = "alg2",
                         out_dir = ".";
    int workers = 0;
    bool full_scale = false;
    app.add_option("--config", config,
                   "key=value parameter file (built-in defaults when omitted)");
    app.add_option("--thetas", thetas_arg,
                   "comma-separated weights in [0,1]; default 0.05,0.10,...,1.0 "
                   "for sweep/compare and 0.6 for converge/stats");
    app.add_option("--seeds", seeds_arg,
                   "scenario seed or inclusive range n..m (default 1)");
    app.add_option("--algorithm", algorithm,
                   "alg1 = exact joint greedy, alg2 = overhearing estimate "
                   "(default)")
        ->check(CLI::IsMember({"alg1", "alg2"}));
    app.add_option("--out", out_dir, "output directory (default: .)");
    app.add_option("--workers", workers,
                   "cap for the (theta, seed) worker pool; 0 = auto");
    app.add_flag("--full-scale", full_scale,
                 "run alg1 on the full default scale instead of the desk "
                 "scale K=25, N=10, Q=2 (no effect with --config)");

    CLI::App* sweep =
        app.add_subcommand("sweep", "cost trade-off across the theta grid");
    CLI::App* converge = app.add_subcommand(
        "converge", "per-iteration trace of one greedy run");
    CLI::App* stats = app.add_subcommand(
        "stats", "cached-copy counts versus file popularity");
    CLI::App* compare = app.add_subcommand(
        "compare", "proposed scheme against both benchmark placements");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        uavcache::RunOptions opt;
        if (!config.empty()) {
            opt.params = uavcache::load_config(config);
        } else if (algorithm == "alg1" && !full_scale) {
            // alg1 resolves every candidate with an exact plan+LP solve;
            // the default scale stays practical on a desk machine.
            opt.params.K = 25;
            opt.params.N = 10;
            opt.params.Q = 2;
        }
        opt.algorithm = algorithm == "alg1"
                            ? uavcache::AlgorithmKind::JointGreedy
                            : uavcache::AlgorithmKind::OverhearGreedy;
        std::tie(opt.seed_lo, opt.seed_hi) = parse_seeds(seeds_arg);
        opt.out_dir = out_dir;
        opt.workers = workers;
        if (!thetas_arg.empty())
            opt.thetas = parse_thetas(thetas_arg);
        else if (converge->parsed() || stats->parsed())
            opt.thetas = {0.6};
        else
            opt.thetas = default_grid();

        for (const std::string& w : uavcache::param_warnings(opt.params))
            std::cerr << "warning: " << w << "\n";

        if (sweep->parsed()) {
            const uavcache::SweepResult res = uavcache::cmd_sweep(opt);
            std::cout << "wrote " << out_dir << "/sweep.csv and sweep.svg ("
                      << res.rows.size() << " rows)\n";
        } else if (converge->parsed()) {
            const uavcache::ConvergeResult res =
                uavcache::cmd_converge(opt, opt.thetas.front(), opt.seed_lo);
            std::cout << "wrote " << out_dir << "/converge.csv and "
                      << "converge.svg (" << res.rows.size() << " rows); "
                      << "final C_U = " << res.final_report.C_U
                      << " s, C_G = " << res.final_report.C_G << " s\n";
        } else if (stats->parsed()) {
            const uavcache::StatsResult res =
                uavcache::cmd_stats(opt, opt.thetas.front());
            std::cout << "wrote " << out_dir << "/stats.csv and stats.svg ("
                      << res.rows.size() << " files, theta = " << res.theta
                      << ")\n";
        } else if (compare->parsed()) {
            const uavcache::CompareResult res = uavcache::cmd_compare(opt);
            std::cout << "wrote " << out_dir << "/compare.csv and compare.svg ("
                      << res.rows.size() << " rows)\n";
        }
        return 0;
    } catch (const uavcache::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const uavcache::InfeasibleError& e) {
        std::cerr << "infeasible instance: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
