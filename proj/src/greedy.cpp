#include "uavcache/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

#include "uavcache/errors.hpp"
#include "uavcache/parallel.hpp"

namespace uavcache {

namespace {

struct Candidate {
    int k = 0;
    int n = 0;
    double gain = 0;   // retrieval-side reduction, seconds
    double delta = 0;  // weighted-cost reduction, seconds
    double C_U = std::numeric_limits<double>::quiet_NaN();
};

// Enumerated GN-major so that keeping the first strict maximum resolves
// argmax ties to the lowest GN index, then the lowest file index.
std::vector<Candidate> list_candidates(const CachingPolicy& policy,
                                       bool uncached_files_only) {
    std::vector<Candidate> out;
    for (int k = 0; k < policy.K(); ++k) {
        if (policy.fill(k) >= policy.Q()) continue;
        for (int n = 0; n < policy.N(); ++n) {
            if (policy.cached(k, n)) continue;
            if (uncached_files_only && policy.copies(n) > 0) continue;
            out.push_back({k, n, 0.0, 0.0, 0.0});
        }
    }
    return out;
}

std::size_t argmax_delta(const std::vector<Candidate>& cands) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
        if (cands[i].delta > cands[best].delta) best = i;
    return best;
}

// Exact caching cost per candidate. The route depends only on the set of
// caching GNs, so one geometry is planned per distinct augmented set (the
// incumbent set when the candidate's GN already caches, otherwise the set
// grown by that GN) and each candidate solves its schedule against the
// shared geometry. Numerically identical to planning per candidate.
void solve_candidate_costs(const Scenario& s, const LinkBudget& budget,
                           PlannerKind planner, const CachingPolicy& policy,
                           std::vector<Candidate>& cands) {
    const std::vector<int> base = policy.caching_gns();
    auto in_base = [&base](int k) {
        return std::binary_search(base.begin(), base.end(), k);
    };

    std::vector<int> keys;  // -1: incumbent set; otherwise the grown-by GN
    for (const Candidate& c : cands) {
        int key = in_base(c.k) ? -1 : c.k;
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            keys.push_back(key);
    }

    std::vector<RouteGeometry> geoms(keys.size());
    parallel_for(static_cast<int>(keys.size()), [&](int i) {
        std::vector<int> gns = base;
        if (keys[i] >= 0)
            gns.insert(std::upper_bound(gns.begin(), gns.end(), keys[i]),
                       keys[i]);
        geoms[i] = plan_route(s, gns, budget, planner);
    });

    std::vector<const RouteGeometry*> geom_of(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        int key = in_base(cands[i].k) ? -1 : cands[i].k;
        std::size_t at = static_cast<std::size_t>(
            std::find(keys.begin(), keys.end(), key) - keys.begin());
        geom_of[i] = &geoms[at];
    }

    parallel_for(static_cast<int>(cands.size()), [&](int i) {
        CachingPolicy aug = policy;
        aug.add(cands[i].k, cands[i].n);
        cands[i].C_U = solve_p4(geom_of[i]->segments, aug, budget,
                                s.params.V_max, s.params.Y)
                           .C_U;
    });
}

void check_theta(double theta, const char* who) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw ContractError(std::string(who) + ": theta outside [0,1]");
}

void finish_result(GreedyResult& out, const Scenario& s,
                   const LinkBudget& budget, PlannerKind planner,
                   const RetrievalEvaluator& eval, double theta) {
    out.plan = plan_mission(s, out.policy, budget, planner);
    out.report.C_U = out.plan.schedule.C_U;
    out.report.C_G = eval.cost();
    out.report.theta = theta;
    out.report.C_theta = weighted_cost(out.report.C_U, out.report.C_G, theta);
    // An uncached file is possible on sparse instances when duplicates of
    // popular files exhaust storage first; the sentinel terms in C_G keep
    // the report honest, so no exception here.
}

}  // namespace

RetrievalEvaluator::RetrievalEvaluator(const Scenario& s,
                                       const LinkBudget& budget,
                                       const FadingModel& fading) {
    const int K = s.params.K;
    const int N = s.params.N;
    pair_cost_.resize(K, K);
    for (int k = 0; k < K; ++k) {
        pair_cost_(k, k) = 0.0;
        for (int j = k + 1; j < K; ++j) {
            const double d = (s.positions[k] - s.positions[j]).norm();
            double c;
            if (d == 0.0) {
                c = 0.0;  // coincident holder, same branch as a local copy
            } else {
                const double ps =
                    packet_success_prob(d, budget, fading, s.params.alpha);
                c = ps <= 0.0 ? C_MAX : std::min(s.params.Y / ps, C_MAX);
            }
            pair_cost_(k, j) = c;
            pair_cost_(j, k) = c;
        }
    }
    cur_ = Eigen::MatrixXd::Constant(K, N, C_MAX);
    pop_ = s.popularity;
    scale_ = budget.t_p_G / K;
}

double RetrievalEvaluator::cost() const {
    return scale_ * (pop_.array() * cur_.array()).sum();
}

double RetrievalEvaluator::gain(int k, int n) const {
    return scale_ * (pop_.col(n).array() *
                     (cur_.col(n) - pair_cost_.col(k)).array().max(0.0))
                        .sum();
}

void RetrievalEvaluator::add(int k, int n) {
    cur_.col(n) = cur_.col(n).cwiseMin(pair_cost_.col(k));
}

void RetrievalEvaluator::add_policy(const CachingPolicy& policy) {
    for (int k = 0; k < policy.K(); ++k)
        for (int n = 0; n < policy.N(); ++n)
            if (policy.cached(k, n)) add(k, n);
}

CachingPolicy globally_greedy_retrieval(const Scenario& s,
                                        std::vector<GreedyStep>* trace) {
    const SystemParams& p = s.params;
    if (static_cast<long long>(p.K) * p.Q < p.N)
        throw InfeasibleError("total storage K*Q below library size N");

    const LinkBudget budget = link_budget(p);
    RetrievalEvaluator eval(s, budget, FadingModel::rayleigh());
    CachingPolicy policy(p.K, p.N, p.Q);

    for (int it = 1;; ++it) {
        std::vector<Candidate> cands = list_candidates(policy, false);
        if (cands.empty()) break;  // every storage filled (or holds all N)
        for (Candidate& c : cands) c.delta = c.gain = eval.gain(c.k, c.n);
        const Candidate& best = cands[argmax_delta(cands)];
        policy.add(best.k, best.n);
        eval.add(best.k, best.n);
        if (trace)
            trace->push_back(
                {it, best.k, best.n, best.delta, 0.0, eval.cost()});
    }
    // Duplicates of popular files can exhaust storage before rare files get a
    // copy when GNs sit beyond D2D reach of each other; the caller sees that
    // as sentinel-priced rows in C_G rather than an error.
    return policy;
}

GreedyResult greedy_joint(const Scenario& s, double theta,
                          PlannerKind planner) {
    check_theta(theta, "greedy_joint");
    const SystemParams& p = s.params;
    const LinkBudget budget = link_budget(p);
    RetrievalEvaluator eval(s, budget, FadingModel::rayleigh());

    GreedyResult out;
    out.policy = CachingPolicy(p.K, p.N, p.Q);
    const bool coverage_only = (theta == 0.0);
    double cur_CU = 0.0;  // nothing cached: the UAV never takes off
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (int it = 1;; ++it) {
        if (coverage_only && out.policy.covers_all_files()) break;
        std::vector<Candidate> cands = list_candidates(out.policy, coverage_only);
        if (cands.empty()) break;

        for (Candidate& c : cands) c.gain = eval.gain(c.k, c.n);
        if (theta < 1.0) {
            solve_candidate_costs(s, budget, planner, out.policy, cands);
            for (Candidate& c : cands)
                c.delta = theta * c.gain - (1.0 - theta) * (c.C_U - cur_CU);
        } else {
            // (1-theta) = 0: the caching term cannot move the argmax or the
            // stop test, so the route solves are skipped outright.
            for (Candidate& c : cands) c.delta = c.gain;
        }

        const Candidate& best = cands[argmax_delta(cands)];
        if (!coverage_only && !(best.delta > p.epsilon_term)) break;

        out.policy.add(best.k, best.n);
        eval.add(best.k, best.n);
        if (theta < 1.0) cur_CU = best.C_U;
        out.trace.push_back({it, best.k, best.n, best.delta,
                             theta < 1.0 ? best.C_U : nan, eval.cost()});
    }

    finish_result(out, s, budget, planner, eval, theta);
    return out;
}

GreedyResult greedy_estimated(const Scenario& s, double theta,
                              PlannerKind planner) {
    check_theta(theta, "greedy_estimated");
    const SystemParams& p = s.params;
    const LinkBudget budget = link_budget(p);
    RetrievalEvaluator eval(s, budget, FadingModel::rayleigh());

    GreedyResult out;
    out.policy = CachingPolicy(p.K, p.N, p.Q);
    const bool coverage_only = (theta == 0.0);
    const Vec2 depot = gn_centroid(s);
    const double hover = p.Y * budget.t_p_U;

    std::vector<char> visited(p.K, 0);  // GNs the UAV committed to reach
    bool any_visited = false;
    Eigen::MatrixXi overheard = Eigen::MatrixXi::Zero(p.K, p.N);
    double est_CU = 0.0;

    auto reach = [&](int k) {
        if (!any_visited) return (s.positions[k] - depot).norm();
        double d = std::numeric_limits<double>::infinity();
        for (int j = 0; j < p.K; ++j)
            if (visited[j])
                d = std::min(d, (s.positions[k] - s.positions[j]).norm());
        return d;
    };

    for (int it = 1;; ++it) {
        if (coverage_only && out.policy.covers_all_files()) break;
        std::vector<Candidate> cands = list_candidates(out.policy, coverage_only);
        if (cands.empty()) break;

        for (Candidate& c : cands) {
            c.gain = eval.gain(c.k, c.n);
            c.C_U = overheard(c.k, c.n) ? 0.0
                                        : reach(c.k) / p.V_max + hover;
            c.delta = theta == 1.0 ? c.gain
                                   : theta * c.gain - (1.0 - theta) * c.C_U;
        }

        const Candidate& best = cands[argmax_delta(cands)];
        if (!coverage_only && !(best.delta > 0.0)) break;

        out.policy.add(best.k, best.n);
        eval.add(best.k, best.n);
        est_CU += best.C_U;
        if (!overheard(best.k, best.n)) {
            visited[best.k] = 1;
            any_visited = true;
            for (int k = 0; k < p.K; ++k)
                if ((s.positions[k] - s.positions[best.k]).norm() <=
                    budget.D_U)
                    overheard(k, best.n) = 1;
        }
        out.trace.push_back(
            {it, best.k, best.n, best.delta, est_CU, eval.cost()});
    }

    finish_result(out, s, budget, planner, eval, theta);
    return out;
}

CachingPolicy random_proportional_policy(const Scenario& s) {
    const SystemParams& p = s.params;
    CachingPolicy policy(p.K, p.N, p.Q);
    // Same seed as the scenario, fixed salt: reproducible, yet decoupled
    // from the position stream.
    std::mt19937_64 rng(static_cast<std::uint64_t>(p.rng_seed) ^
                        0x7f4a7c15f39cc060ULL);
    auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };

    for (int k = 0; k < p.K; ++k) {
        Eigen::VectorXd w = s.popularity.row(k);
        for (int slot = 0; slot < p.Q; ++slot) {
            const double total = w.sum();
            if (!(total > 0.0)) break;  // library exhausted (Q >= N)
            const double u = unit() * total;
            int pick = -1;
            double acc = 0.0;
            for (int n = 0; n < p.N; ++n) {
                if (w(n) <= 0.0) continue;
                pick = n;
                acc += w(n);
                if (u < acc) break;
            }
            // pick falls back to the last remaining file if rounding pushed
            // u past the accumulated total
            policy.add(k, pick);
            w(pick) = 0.0;
        }
    }
    return policy;
}

}  // namespace uavcache
