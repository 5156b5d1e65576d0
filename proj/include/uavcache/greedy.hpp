#pragma once

#include <vector>

#include "uavcache/mission.hpp"
#include "uavcache/radio.hpp"

namespace uavcache {

/// Incremental average-retrieval-cost bookkeeping shared by every greedy
/// construction. Holds the K x K clamped packet-cost matrix between GNs and
/// the current cheapest source cost per (GN, file) pair, so evaluating one
/// candidate placement is an O(K) column scan instead of a full policy
/// re-evaluation. Because per-pair costs only ever improve via exact min()
/// updates, two evaluators fed the same placement set in any order hold
/// bitwise-identical state.
class RetrievalEvaluator {
  public:
    RetrievalEvaluator(const Scenario& s, const LinkBudget& budget,
                       const FadingModel& fading);

    /// C_G of everything add()ed so far, seconds. Agrees with
    /// average_retrieval_cost on the same placement to roundoff.
    double cost() const;

    /// Retrieval-cost reduction from additionally caching file n at GN k,
    /// seconds. Nonnegative: an extra copy can only shorten retrievals.
    double gain(int k, int n) const;

    /// Commit the placement; later gains see the new copy.
    void add(int k, int n);

    /// Commit every pair of an existing policy.
    void add_policy(const CachingPolicy& policy);

  private:
    Eigen::MatrixXd pair_cost_;  // K x K packet cost between distinct GNs
    Eigen::MatrixXd cur_;        // K x N cheapest-source packet cost so far
    Eigen::MatrixXd pop_;        // K x N request probabilities
    double scale_ = 0;           // t_p_G / K
};

/// One accepted greedy step, for convergence traces. C_U holds whatever
/// caching-cost figure the algorithm itself tracked at that step: the exact
/// solved cost for the joint greedy below theta = 1, the running distance
/// estimate for the overhearing variant, 0 for the retrieval-only
/// benchmark, and NaN for the joint greedy at theta = 1 where the caching
/// term carries zero weight and is never evaluated.
struct GreedyStep {
    int iteration = 0;  // 1-based
    int gn = 0;
    int file = 0;
    double delta = 0;  // weighted-cost reduction of the accepted candidate
    double C_U = 0;    // seconds, see above
    double C_G = 0;    // seconds, after the step
};

struct GreedyResult {
    CachingPolicy policy;
    MissionPlan plan;  // solved on the final placement
    CostReport report;
    std::vector<GreedyStep> trace;
};

/// Retrieval-only benchmark: repeatedly caches the pair with the largest
/// retrieval gain until no GN can take another file. Requires K*Q >= N so
/// full coverage is reachable. On layouts sparse enough that every distant
/// source costs the sentinel, duplicates of popular files can exhaust the
/// storage before a rare file gets its first copy; the returned policy then
/// leaves that file uncached and its sentinel terms stay in C_G.
CachingPolicy globally_greedy_retrieval(const Scenario& s,
                                        std::vector<GreedyStep>* trace = nullptr);

/// Joint greedy: per iteration every candidate (GN, file) pair is scored as
///   theta * [C_G(I_S) - C_G(I_S + c)] - (1-theta) * [C_U(I_S + c) - C_U(I_S)]
/// with C_U from an exact route + schedule solve of the augmented
/// placement, and the best candidate is kept while the reduction exceeds
/// params.epsilon_term. theta = 0 keeps the hard coverage constraint
/// binding: candidates are restricted to uncached files and the caching
/// increment alone is minimized until every file has a copy. theta = 1
/// skips the caching solves entirely (the term carries zero weight), which
/// leaves the selected sequence unchanged.
GreedyResult greedy_joint(const Scenario& s, double theta,
                          PlannerKind planner = PlannerKind::ClusterRefined);

/// Overhearing variant of the joint greedy: the per-candidate caching
/// increment is estimated as 0 when GN k already overheard file n, else as
/// d(k)/V_max + Y*t_p_U with d(k) the distance from k to the nearest
/// already-visited GN (to the depot before any visit). Accepting a
/// not-overheard pair marks its GN visited and the file overheard at every
/// GN within D_U. Stops when no candidate reduces the weighted cost; one
/// route + schedule solve on the final placement produces the reported
/// costs. theta = 0 behaves as in greedy_joint, with estimated increments.
GreedyResult greedy_estimated(const Scenario& s, double theta,
                              PlannerKind planner = PlannerKind::ClusterRefined);

/// Benchmark placement: each GN independently fills its Q slots by
/// popularity-proportional sampling without replacement, seeded from the
/// scenario seed on a stream separate from the position draw. Coverage is
/// not enforced; callers flag uncached files themselves.
CachingPolicy random_proportional_policy(const Scenario& s);

}  // namespace uavcache
