#include "uavcache/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <tuple>

#include "uavcache/errors.hpp"
#include "uavcache/greedy.hpp"
#include "uavcache/mission.hpp"
#include "uavcache/parallel.hpp"
#include "uavcache/radio.hpp"
#include "uavcache/svg.hpp"

namespace uavcache {

namespace {

// Shortest representation that parses back to the same double, so CSV rows
// are bit-for-bit reproducible and still readable.
std::string fmt(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::ofstream open_out(const RunOptions& opt, const std::string& name,
                       std::filesystem::path* path_out = nullptr) {
    std::filesystem::create_directories(opt.out_dir);
    const std::filesystem::path path = std::filesystem::path(opt.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
    if (path_out) *path_out = path;
    return f;
}

std::string out_path(const RunOptions& opt, const std::string& name) {
    return (std::filesystem::path(opt.out_dir) / name).string();
}

std::vector<long long> seed_list(const RunOptions& opt) {
    if (opt.seed_hi < opt.seed_lo)
        throw ConfigError("empty seed range: hi below lo");
    std::vector<long long> seeds;
    for (long long s = opt.seed_lo; s <= opt.seed_hi; ++s) seeds.push_back(s);
    return seeds;
}

Scenario make_instance(const RunOptions& opt, long long seed) {
    SystemParams p = opt.params;
    p.rng_seed = seed;
    return generate_scenario(p);
}

GreedyResult run_algorithm(const Scenario& s, double theta, AlgorithmKind a) {
    return a == AlgorithmKind::JointGreedy ? greedy_joint(s, theta)
                                           : greedy_estimated(s, theta);
}

// The joint greedy saturates the machine on its own candidate solves, so
// its cells run one at a time unless the caller asks otherwise.
int cell_workers(const RunOptions& opt) {
    if (opt.workers > 0) return opt.workers;
    return opt.algorithm == AlgorithmKind::JointGreedy ? 1 : 0;
}

// Seed-averaged (C_U, C_G) per theta, ascending, for overlay curves.
std::vector<Vec2> theta_averages(const std::vector<SweepRow>& rows) {
    std::map<double, std::pair<Vec2, int>> acc;
    for (const SweepRow& r : rows) {
        auto& [sum, count] = acc[r.theta];
        sum += Vec2(r.C_U, r.C_G);
        ++count;
    }
    std::vector<Vec2> avg;
    for (const auto& [theta, sc] : acc) avg.push_back(sc.first / sc.second);
    return avg;
}

}  // namespace

const char* algorithm_name(AlgorithmKind a) {
    return a == AlgorithmKind::JointGreedy ? "alg1" : "alg2";
}

SweepResult cmd_sweep(const RunOptions& opt) {
    validate(opt.params);
    if (opt.thetas.empty()) throw ConfigError("sweep needs a theta grid");
    const std::vector<long long> seeds = seed_list(opt);

    struct Cell {
        double theta;
        long long seed;
    };
    std::vector<Cell> cells;
    for (double theta : opt.thetas)
        for (long long seed : seeds) cells.push_back({theta, seed});

    SweepResult result;
    result.rows.resize(cells.size());
    parallel_for(
        static_cast<int>(cells.size()),
        [&](int i) {
            const auto t0 = std::chrono::steady_clock::now();
            const Scenario s = make_instance(opt, cells[i].seed);
            const GreedyResult r =
                run_algorithm(s, cells[i].theta, opt.algorithm);
            SweepRow& row = result.rows[i];
            row.algorithm = algorithm_name(opt.algorithm);
            row.theta = cells[i].theta;
            row.seed = cells[i].seed;
            row.C_U = r.report.C_U;
            row.C_G = r.report.C_G;
            row.C_theta = weighted_cost(row.C_U, row.C_G, row.theta);
            row.M_slots =
                static_cast<long long>(std::ceil(row.C_U / s.params.delta_t));
            row.iterations = static_cast<int>(r.trace.size());
            row.cached_pairs = r.policy.total_pairs();
            row.caching_gns = static_cast<int>(r.policy.caching_gns().size());
            row.covered = r.policy.covers_all_files();
            row.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
        },
        cell_workers(opt));

    std::sort(result.rows.begin(), result.rows.end(),
              [](const SweepRow& a, const SweepRow& b) {
                  return std::tie(a.theta, a.seed) < std::tie(b.theta, b.seed);
              });

    std::ofstream csv = open_out(opt, "sweep.csv");
    csv << "algorithm,theta,seed,C_U,C_G,C_theta,M_slots,iterations,"
           "cached_pairs,caching_gns,covered\n";
    for (const SweepRow& r : result.rows)
        csv << r.algorithm << "," << fmt(r.theta) << "," << r.seed << ","
            << fmt(r.C_U) << "," << fmt(r.C_G) << "," << fmt(r.C_theta) << ","
            << r.M_slots << "," << r.iterations << "," << r.cached_pairs << ","
            << r.caching_gns << "," << (r.covered ? 1 : 0) << "\n";
    csv.close();

    SvgPlot plot("file caching time C_U [s]", "average retrieval time C_G [s]");
    std::vector<Vec2> pts;
    for (const SweepRow& r : result.rows) pts.push_back(Vec2(r.C_U, r.C_G));
    plot.add_scatter(std::move(pts), "per-seed runs", "#9ecae1");
    plot.add_polyline(theta_averages(result.rows), "seed average over theta",
                      "#d62728", 2.2);
    plot.write(out_path(opt, "sweep.svg"));
    return result;
}

ConvergeResult cmd_converge(const RunOptions& opt, double theta,
                            long long seed) {
    validate(opt.params);
    const Scenario s = make_instance(opt, seed);
    const GreedyResult r = run_algorithm(s, theta, opt.algorithm);

    ConvergeResult out;
    out.final_report = r.report;
    // Row 0 is the empty placement: its C_G equals the evaluator sentinel
    // state, computed through the same path the greedy itself uses.
    const double empty_cg =
        RetrievalEvaluator(s, link_budget(s.params), FadingModel::rayleigh())
            .cost();
    out.rows.push_back({0, -1, -1, 0.0, 0.0, empty_cg});
    for (const GreedyStep& st : r.trace)
        out.rows.push_back(
            {st.iteration, st.gn, st.file, st.delta, st.C_U, st.C_G});
    out.rows.push_back({static_cast<int>(r.trace.size()) + 1, -1, -1, 0.0,
                        r.report.C_U, r.report.C_G});

    std::ofstream csv = open_out(opt, "converge.csv");
    csv << "iteration,gn,file,delta,C_U,C_G\n";
    for (const ConvergeRow& row : out.rows)
        csv << row.iteration << "," << row.gn << "," << row.file << ","
            << fmt(row.delta) << "," << fmt(row.C_U) << "," << fmt(row.C_G)
            << "\n";
    csv.close();

    SvgPlot plot("iteration (accepted pairs)", "cost [s], log scale", true);
    std::vector<Vec2> cg, cu;
    for (const ConvergeRow& row : out.rows) {
        cg.push_back(Vec2(row.iteration, row.C_G));
        cu.push_back(Vec2(row.iteration, row.C_U));
    }
    plot.add_polyline(std::move(cg), "C_G (retrieval)", "#d62728", 2.0);
    plot.add_polyline(std::move(cu), "C_U (caching)", "#1f77b4", 2.0);
    plot.write(out_path(opt, "converge.svg"));
    return out;
}

StatsResult cmd_stats(const RunOptions& opt, double theta) {
    validate(opt.params);
    const std::vector<long long> seeds = seed_list(opt);
    const int N = opt.params.N;

    std::vector<Eigen::VectorXi> reps(seeds.size());
    parallel_for(
        static_cast<int>(seeds.size()),
        [&](int i) {
            const Scenario s = make_instance(opt, seeds[i]);
            reps[i] = repetition_stats(
                run_algorithm(s, theta, opt.algorithm).policy);
        },
        cell_workers(opt));

    const Eigen::VectorXd pop = zipf_popularity(N, opt.params.kappa);
    StatsResult out;
    out.theta = theta;
    for (int n = 0; n < N; ++n) {
        double sum = 0;
        for (const Eigen::VectorXi& r : reps) sum += r(n);
        out.rows.push_back({n, pop(n), sum / static_cast<double>(seeds.size())});
    }

    std::ofstream csv = open_out(opt, "stats.csv");
    csv << "file,popularity,avg_copies\n";
    for (const StatsRow& r : out.rows)
        csv << r.file << "," << fmt(r.popularity) << "," << fmt(r.avg_copies)
            << "\n";
    csv.close();

    double max_copies = 0, max_pop = 0;
    for (const StatsRow& r : out.rows) {
        max_copies = std::max(max_copies, r.avg_copies);
        max_pop = std::max(max_pop, r.popularity);
    }
    const double scale = max_pop > 0 ? max_copies / max_pop : 1.0;
    SvgPlot plot("file index (popularity rank)", "average cached copies");
    std::vector<Vec2> copies, scaled_pop;
    for (const StatsRow& r : out.rows) {
        copies.push_back(Vec2(r.file, r.avg_copies));
        scaled_pop.push_back(Vec2(r.file, r.popularity * scale));
    }
    plot.add_polyline(std::move(copies), "avg copies per file", "#1f77b4", 2.0);
    plot.add_polyline(std::move(scaled_pop), "popularity (scaled)", "#d62728",
                      1.6);
    plot.write(out_path(opt, "stats.svg"));
    return out;
}

CompareResult cmd_compare(const RunOptions& opt) {
    validate(opt.params);
    if (opt.thetas.empty()) throw ConfigError("compare needs a theta grid");
    const std::vector<long long> seeds = seed_list(opt);

    std::vector<std::vector<CompareRow>> per_seed(seeds.size());
    parallel_for(
        static_cast<int>(seeds.size()),
        [&](int i) {
            const long long seed = seeds[i];
            const Scenario s = make_instance(opt, seed);
            const LinkBudget budget = link_budget(s.params);
            std::vector<CompareRow>& rows = per_seed[i];

            for (double theta : opt.thetas) {
                const GreedyResult r = greedy_estimated(s, theta);
                rows.push_back({"proposed", theta, seed, r.report.C_U,
                                r.report.C_G, r.policy.covers_all_files()});
            }

            {
                const CachingPolicy pol = random_proportional_policy(s);
                const MissionPlan plan =
                    plan_mission(s, pol, budget, PlannerKind::ClusterRefined);
                RetrievalEvaluator eval(s, budget, FadingModel::rayleigh());
                eval.add_policy(pol);
                rows.push_back({"benchmark1",
                                std::numeric_limits<double>::quiet_NaN(), seed,
                                plan.schedule.C_U, eval.cost(),
                                pol.covers_all_files()});
            }

            {
                const CachingPolicy pol = globally_greedy_retrieval(s);
                const MissionPlan plan =
                    plan_mission(s, pol, budget, PlannerKind::TspOverGns);
                RetrievalEvaluator eval(s, budget, FadingModel::rayleigh());
                eval.add_policy(pol);
                rows.push_back({"benchmark2",
                                std::numeric_limits<double>::quiet_NaN(), seed,
                                plan.schedule.C_U, eval.cost(),
                                pol.covers_all_files()});
            }
        },
        opt.workers > 0 ? opt.workers : 0);

    CompareResult result;
    for (const auto& rows : per_seed)
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    auto rank = [](const std::string& label) {
        return label == "proposed" ? 0 : label == "benchmark1" ? 1 : 2;
    };
    std::sort(result.rows.begin(), result.rows.end(),
              [&](const CompareRow& a, const CompareRow& b) {
                  const int ra = rank(a.label), rb = rank(b.label);
                  if (ra != rb) return ra < rb;
                  if (a.theta != b.theta && !(std::isnan(a.theta) && std::isnan(b.theta)))
                      return a.theta < b.theta;
                  return a.seed < b.seed;
              });

    std::ofstream csv = open_out(opt, "compare.csv");
    csv << "label,theta,seed,C_U,C_G,covered\n";
    for (const CompareRow& r : result.rows)
        csv << r.label << "," << fmt(r.theta) << "," << r.seed << ","
            << fmt(r.C_U) << "," << fmt(r.C_G) << "," << (r.covered ? 1 : 0)
            << "\n";
    csv.close();

    // Seed averages per point; uncovered benchmark-1 draws carry sentinel
    // C_G and would flatten the plot, so only covered rows are drawn (the
    // CSV keeps everything).
    auto avg_of = [&](const std::string& label) {
        Vec2 sum(0, 0);
        int count = 0;
        for (const CompareRow& r : result.rows)
            if (r.label == label && r.covered) {
                sum += Vec2(r.C_U, r.C_G);
                ++count;
            }
        return count ? std::optional<Vec2>(sum / count) : std::nullopt;
    };
    std::map<double, std::pair<Vec2, int>> acc;
    for (const CompareRow& r : result.rows)
        if (r.label == "proposed") {
            auto& [sum, count] = acc[r.theta];
            sum += Vec2(r.C_U, r.C_G);
            ++count;
        }
    std::vector<Vec2> curve;
    for (const auto& [theta, sc] : acc) curve.push_back(sc.first / sc.second);

    SvgPlot plot("file caching time C_U [s]", "average retrieval time C_G [s]");
    plot.add_polyline(std::move(curve), "proposed (alg2), theta grid",
                      "#1f77b4", 2.2);
    if (auto b1 = avg_of("benchmark1"))
        plot.add_scatter({*b1}, "benchmark 1: random placement", "#e8871e", 6);
    if (auto b2 = avg_of("benchmark2"))
        plot.add_scatter({*b2}, "benchmark 2: retrieval-only + TSP", "#2ca02c",
                         6);
    plot.write(out_path(opt, "compare.svg"));
    return result;
}

}  // namespace uavcache
