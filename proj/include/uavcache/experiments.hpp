#pragma once

#include <string>
#include <vector>

#include "uavcache/caching.hpp"
#include "uavcache/scenario.hpp"

namespace uavcache {

enum class AlgorithmKind { JointGreedy, OverhearGreedy };

/// "alg1" (joint, exact per-candidate solves) / "alg2" (overhearing estimate).
const char* algorithm_name(AlgorithmKind a);

struct RunOptions {
    SystemParams params;
    std::vector<double> thetas;  // weight grid, ascending
    long long seed_lo = 1;
    long long seed_hi = 1;  // inclusive
    AlgorithmKind algorithm = AlgorithmKind::OverhearGreedy;
    std::string out_dir = ".";
    int workers = 0;  // cap on the (theta, seed)-cell pool, 0 = hardware
};

/// One (theta, seed) cell of a sweep. wall_seconds stays in memory only:
/// every CSV column must be reproducible bit-for-bit from (config, seed,
/// theta), which a timing can never be.
struct SweepRow {
    std::string algorithm;
    double theta = 0;
    long long seed = 0;
    double C_U = 0;
    double C_G = 0;
    double C_theta = 0;
    long long M_slots = 0;  // ceil(C_U / delta_t), slotted-form bookkeeping
    int iterations = 0;     // accepted pairs
    int cached_pairs = 0;
    int caching_gns = 0;
    bool covered = true;
    double wall_seconds = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (theta, seed)
};

/// Runs the selected greedy per (theta, seed); writes sweep.csv and
/// sweep.svg (cost-plane scatter plus the per-theta seed average) under
/// opt.out_dir.
SweepResult cmd_sweep(const RunOptions& opt);

struct ConvergeRow {
    int iteration;  // 0 = empty start, then one row per accepted pair
    int gn;         // -1 on the bookend rows
    int file;
    double delta;
    double C_U;  // exact (alg1), running estimate (alg2), NaN at theta = 1
    double C_G;
};

struct ConvergeResult {
    std::vector<ConvergeRow> rows;  // last row holds the solved final costs
    CostReport final_report;
};

/// Per-iteration trace of one greedy run; writes converge.csv/.svg.
ConvergeResult cmd_converge(const RunOptions& opt, double theta,
                            long long seed);

struct StatsRow {
    int file;
    double popularity;
    double avg_copies;  // seed average of the per-file cached-copy count
};

struct StatsResult {
    std::vector<StatsRow> rows;
    double theta;
};

/// Caching repetitions versus popularity rank; writes stats.csv/.svg.
StatsResult cmd_stats(const RunOptions& opt, double theta);

struct CompareRow {
    std::string label;  // proposed / benchmark1 / benchmark2
    double theta;       // NaN for the benchmarks
    long long seed;
    double C_U;
    double C_G;
    bool covered;
};

struct CompareResult {
    std::vector<CompareRow> rows;
};

/// Proposed alg2 across the theta grid against benchmark 1 (proportional
/// random placement + full trajectory/scheduling pipeline) and benchmark 2
/// (retrieval-only greedy placement + TSP over the caching GNs + the same
/// scheduler); writes compare.csv/.svg. Uncovered benchmark-1 draws keep
/// their sentinel-priced C_G and are flagged in the covered column.
CompareResult cmd_compare(const RunOptions& opt);

}  // namespace uavcache
