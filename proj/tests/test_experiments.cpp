#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "uavcache/experiments.hpp"
#include "uavcache/greedy.hpp"
#include "uavcache/radio.hpp"

using uavcache::AlgorithmKind;
using uavcache::RunOptions;
using uavcache::SystemParams;

namespace {

namespace fs = std::filesystem;

// Unique scratch directory per test run; callers append their own name.
fs::path scratch_dir(const std::string& name) {
    const fs::path dir =
        fs::temp_directory_path() / ("uavsim_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(
                pos, comma == std::string::npos ? comma : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

SystemParams desk_params() {
    SystemParams p;
    p.K = 20;
    p.N = 6;
    p.Q = 2;
    p.area_side = 800;
    return p;
}

RunOptions desk_options(const fs::path& out) {
    RunOptions opt;
    opt.params = desk_params();
    opt.out_dir = out.string();
    return opt;
}

}  // namespace

TEST_CASE("sweep artifacts") {
    SUBCASE("CSV identical across runs and worker counts") {
        RunOptions a = desk_options(scratch_dir("sweep_a"));
        a.thetas = {0.3, 1.0};
        a.seed_lo = 1;
        a.seed_hi = 2;
        RunOptions b = a;
        b.out_dir = scratch_dir("sweep_b").string();
        b.workers = 1;
        uavcache::cmd_sweep(a);
        uavcache::cmd_sweep(b);
        CHECK(slurp(fs::path(a.out_dir) / "sweep.csv") ==
              slurp(fs::path(b.out_dir) / "sweep.csv"));
        CHECK(fs::exists(fs::path(a.out_dir) / "sweep.svg"));
    }

    SUBCASE("row layout and weighted-cost recomputation") {
        RunOptions opt = desk_options(scratch_dir("sweep_layout"));
        opt.thetas = {0.2, 0.7};
        opt.seed_lo = 3;
        opt.seed_hi = 4;
        const uavcache::SweepResult res = uavcache::cmd_sweep(opt);
        CHECK(res.rows.size() == 4);  // one per (theta, seed)

        const auto rows = parse_csv(fs::path(opt.out_dir) / "sweep.csv");
        REQUIRE(rows.size() == 5);
        CHECK(rows[0][0] == "algorithm");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            REQUIRE(rows[i].size() == 11);
            const double theta = std::stod(rows[i][1]);
            const double cu = std::stod(rows[i][3]);
            const double cg = std::stod(rows[i][4]);
            const double ct = std::stod(rows[i][5]);
            // shortest-round-trip printing makes this an exact identity
            CHECK(ct == uavcache::weighted_cost(cu, cg, theta));
            CHECK(rows[i][10] == "1");
        }
    }

    SUBCASE("theta=1 rows of both algorithms carry identical C_G per seed") {
        RunOptions alg2 = desk_options(scratch_dir("sweep_t1_alg2"));
        alg2.params.epsilon_term = 0.0;
        alg2.thetas = {1.0};
        alg2.seed_lo = 1;
        alg2.seed_hi = 3;
        RunOptions alg1 = alg2;
        alg1.out_dir = scratch_dir("sweep_t1_alg1").string();
        alg1.algorithm = AlgorithmKind::JointGreedy;
        const auto r2 = uavcache::cmd_sweep(alg2);
        const auto r1 = uavcache::cmd_sweep(alg1);
        REQUIRE(r1.rows.size() == r2.rows.size());
        for (std::size_t i = 0; i < r1.rows.size(); ++i) {
            CHECK(r1.rows[i].seed == r2.rows[i].seed);
            CHECK(r1.rows[i].C_G == r2.rows[i].C_G);
            CHECK(r1.rows[i].C_U == r2.rows[i].C_U);
        }
    }
}

TEST_CASE("converge artifacts") {
    RunOptions opt = desk_options(scratch_dir("converge"));
    const double theta = 0.5;
    const long long seed = 7;
    const uavcache::ConvergeResult res =
        uavcache::cmd_converge(opt, theta, seed);

    SUBCASE("bookend rows") {
        REQUIRE(res.rows.size() >= 2);
        const auto& first = res.rows.front();
        CHECK(first.iteration == 0);
        CHECK(first.gn == -1);
        CHECK(first.C_U == 0.0);
        SystemParams p = opt.params;
        p.rng_seed = seed;
        const uavcache::Scenario s = uavcache::generate_scenario(p);
        const double sentinel =
            uavcache::RetrievalEvaluator(s, uavcache::link_budget(p),
                                         uavcache::FadingModel::rayleigh())
                .cost();
        CHECK(first.C_G == sentinel);

        const auto& last = res.rows.back();
        CHECK(last.gn == -1);
        CHECK(last.C_U == res.final_report.C_U);
        CHECK(last.C_G == res.final_report.C_G);
    }

    SUBCASE("C_G column nonincreasing, trace bounded") {
        for (std::size_t i = 1; i < res.rows.size(); ++i)
            CHECK(res.rows[i].C_G <= res.rows[i - 1].C_G + 1e-9);
        const int bound = std::min(opt.params.K * opt.params.N,
                                   opt.params.K * opt.params.Q);
        CHECK(static_cast<int>(res.rows.size()) - 2 <= bound);
    }

    SUBCASE("final row equals the sweep row for the same cell") {
        RunOptions sw = desk_options(scratch_dir("converge_sweep"));
        sw.thetas = {theta};
        sw.seed_lo = seed;
        sw.seed_hi = seed;
        const auto sweep = uavcache::cmd_sweep(sw);
        REQUIRE(sweep.rows.size() == 1);
        CHECK(sweep.rows[0].C_U == res.final_report.C_U);
        CHECK(sweep.rows[0].C_G == res.final_report.C_G);
    }
}

TEST_CASE("stats artifacts") {
    RunOptions opt = desk_options(scratch_dir("stats"));
    opt.seed_lo = 1;
    opt.seed_hi = 10;
    const uavcache::StatsResult res = uavcache::cmd_stats(opt, 0.6);
    REQUIRE(static_cast<int>(res.rows.size()) == opt.params.N);

    const Eigen::VectorXd pop =
        uavcache::zipf_popularity(opt.params.N, opt.params.kappa);
    double total = 0;
    for (const auto& r : res.rows) {
        CHECK(r.popularity == pop(r.file));
        CHECK(r.avg_copies >= 0.0);
        total += r.avg_copies;
    }
    CHECK(total <= opt.params.K * opt.params.Q + 1e-9);
    CHECK(fs::exists(fs::path(opt.out_dir) / "stats.csv"));
    CHECK(fs::exists(fs::path(opt.out_dir) / "stats.svg"));
}

TEST_CASE("compare artifacts") {
    RunOptions opt = desk_options(scratch_dir("compare"));
    opt.thetas = {0.2, 1.0};
    opt.seed_lo = 1;
    opt.seed_hi = 2;
    const uavcache::CompareResult res = uavcache::cmd_compare(opt);

    std::map<long long, double> proposed_t1_cg, proposed_t1_cu;
    std::map<long long, double> b2_cg, b2_cu;
    int proposed_rows = 0, b1_rows = 0, b2_rows = 0;
    for (const auto& r : res.rows) {
        if (r.label == "proposed") {
            ++proposed_rows;
            CHECK(r.covered);
            if (r.theta == 1.0) {
                proposed_t1_cg[r.seed] = r.C_G;
                proposed_t1_cu[r.seed] = r.C_U;
            }
        } else if (r.label == "benchmark1") {
            ++b1_rows;
        } else {
            REQUIRE(r.label == "benchmark2");
            ++b2_rows;
            b2_cg[r.seed] = r.C_G;
            b2_cu[r.seed] = r.C_U;
        }
    }
    CHECK(proposed_rows == 4);
    CHECK(b1_rows == 2);
    CHECK(b2_rows == 2);

    // retrieval-only benchmark reaches the same placement quality as the
    // full-weight greedy, but pays for it with a TSP tour over every GN
    for (const auto& [seed, cg] : b2_cg) {
        REQUIRE(proposed_t1_cg.count(seed));
        CHECK(cg == proposed_t1_cg[seed]);  // bitwise: same evaluator state
        CHECK(b2_cu[seed] >= proposed_t1_cu[seed] - 1e-9);
    }
}

TEST_CASE("command-line driver") {
    // ctest runs with the build tree as working directory, next to uavsim.
    if (!fs::exists("uavsim")) {
        WARN("uavsim binary not in working directory; CLI checks skipped");
        return;
    }
    const fs::path dir = scratch_dir("cli");
    const std::string out = " --out " + (dir / "o").string();
    auto run = [&](const std::string& args) {
        const std::string cmd = "./uavsim " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };

    SystemParams small;
    small.K = 8;
    small.N = 3;
    small.Q = 1;
    small.area_side = 400;
    const fs::path good_cfg = dir / "good.cfg";
    uavcache::save_config(small, good_cfg.string());
    SystemParams bad = small;
    bad.K = 2;  // capacity 2 below N = 3
    const fs::path bad_cfg = dir / "bad.cfg";
    uavcache::save_config(bad, bad_cfg.string());

    CHECK(run("sweep --config " + good_cfg.string() +
              " --thetas 0.5 --seeds 1" + out) == 0);
    CHECK(run("sweep --config " + good_cfg.string() +
              " --thetas 1.5 --seeds 1" + out) == 2);
    CHECK(run("sweep --config " + bad_cfg.string() + " --thetas 0.5" + out) ==
          3);
    CHECK(run("sweep --config " + (dir / "missing.cfg").string() + out) == 2);
    CHECK(run("definitely-not-a-subcommand") == 2);
    CHECK(run("--help") == 0);
}
